#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/qmem.hpp"
#include "qsearch/statevector.hpp"

namespace qsearch {

struct SearchOptions {
    /// nullopt selects floor(pi / (4 asin(sqrt(M/N)))).
    std::optional<std::size_t> iterations;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    /// Fold target_s and the constant-one wire into classical bits.
    bool fold = false;
    std::size_t qubit_cap = kDefaultQubitCap;
};

struct RunReport {
    std::size_t n = 0;
    std::size_t m = 0;
    Record s = 0;
    std::size_t multiplicity = 0;
    std::size_t iterations = 0;
    bool auto_schedule = true;
    std::size_t query_count = 0;
    double initial_success_probability = 0.0;
    /// Entry k is the success probability after iteration k+1.
    std::vector<double> success_probabilities;
    /// Worst |1 - P(data = 0)| or |1 - P(c = 0)| seen after a double query.
    double max_restore_deviation = 0.0;
    Histogram histogram;
    std::optional<std::size_t> reported_address;
    bool found = false;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    bool folded = false;
    std::size_t total_qubits = 0;
    std::size_t simulated_qubits = 0;
    GateStats load_stats;
    GateStats query_stats;
    GateStats iteration_stats;
    double wall_time_s = 0.0;
};

/// X/H gates that prepare the initial register state from |0...0>.
Circuit build_initialization_circuit(const QubitLayout &layout, Record s);

/// Address in uniform superposition, data = 0, target_s = s, kickback in
/// (|0> - |1>)/sqrt2, c_flag = 0, one_wire = 1. Throws ValueOutOfRange.
StateVector build_initial_state(const Database &db, Record s, const QubitLayout &layout,
                                std::size_t qubit_cap = kDefaultQubitCap);

/// Reflection about the uniform address state, up to a global phase of -1.
/// The multi-controlled Z is H-conjugated MCX on address qubit 0.
Circuit build_diffusion(const QubitLayout &layout);

/// floor(pi / (4 asin(sqrt(M/N)))). Throws ZeroMultiplicity for M == 0 and
/// ValueOutOfRange for N == 0 or M > N.
std::size_t iteration_count(std::size_t n_items, std::size_t matches);

double success_probability(const StateVector &state, const Database &db, Record s,
                           const RegisterSlice &address);
double success_probability(const StateVector &state, const Database &db, Record s,
                           const QubitLayout &layout);

/// Initialization followed by `iterations` rounds of double query and
/// diffusion, for export.
Circuit build_grover_circuit(const Database &db, Record s, const QubitLayout &layout,
                             std::size_t iterations);

/// Full search. M = 0 falls back to the M = 1 schedule and reports
/// found = false. Throws InvariantViolation if a double query fails to
/// restore the data register or c_flag.
RunReport run_search(const Database &db, Record s, const SearchOptions &options = {});

} // namespace qsearch
