#pragma once

#include <cstddef>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/qmem.hpp"

namespace qsearch {

/// Number of addresses whose record equals s.
std::size_t multiplicity(const Database &db, Record s);

/// Diagonal of the ideal phase oracle: -1 where d_x == s, +1 elsewhere.
struct PhaseDiagonal {
    std::vector<double> entries;
    std::size_t dim() const noexcept { return entries.size(); }
};

/// Throws MatrixCapExceeded for n > 12.
PhaseDiagonal ideal_phase_oracle_matrix(const Database &db, Record s);

enum class EquivalenceMode {
    /// Simulate each initialized input with the statevector kernel.
    Subspace,
    /// Multiply each initialized input by the dense unitary (<= 12 qubits).
    Matrix,
    /// Push the two nonzero basis indices of each input through the gates
    /// classically; permutation circuits only, any width.
    Basis,
    /// Subspace up to 16 qubits, Basis beyond.
    Auto,
};

struct EquivalenceResult {
    /// Largest L2 distance between actual and ideal output over inputs.
    double max_error = 0.0;
    /// Frobenius norm of the restricted difference operator.
    double frobenius = 0.0;
    std::size_t worst_address = 0;
};

/// Compares `double_query` with (ideal phase oracle) x (identity on the
/// ancillas) on the 2^n inputs |x>|0>_d|s>|->|0>_c|1>. Outside that
/// subspace the two operators legitimately differ.
EquivalenceResult oracle_equivalence(const Circuit &double_query, const Database &db,
                                     Record s, const QubitLayout &layout,
                                     EquivalenceMode mode = EquivalenceMode::Subspace);

/// Builds the double query for (db, s) and returns its max error.
double oracle_equivalence_check(const Database &db, Record s, const QubitLayout &layout,
                                EquivalenceMode mode = EquivalenceMode::Subspace);

/// sin^2((2r+1) asin(sqrt(M/N))), and 0 for M == 0.
double ideal_success_probability(std::size_t n_items, std::size_t matches,
                                 std::size_t iterations);

} // namespace qsearch
