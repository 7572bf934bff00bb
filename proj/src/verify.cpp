#include "qsearch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qsearch/error.hpp"
#include "qsearch/matrix.hpp"
#include "qsearch/oracle.hpp"
#include "qsearch/statevector.hpp"

namespace qsearch {

std::size_t multiplicity(const Database &db, Record s) {
    return static_cast<std::size_t>(
        std::count(db.records().begin(), db.records().end(), s));
}

PhaseDiagonal ideal_phase_oracle_matrix(const Database &db, Record s) {
    if (db.address_bits() > kMatrixQubitCap) {
        throw Error(ErrorKind::MatrixCapExceeded,
                    "phase oracle for n=" + std::to_string(db.address_bits()));
    }
    PhaseDiagonal diag;
    diag.entries.reserve(db.size());
    for (Record d : db.records()) {
        diag.entries.push_back(d == s ? -1.0 : 1.0);
    }
    return diag;
}

namespace {

// |x>|0>|s>|->|0>|1> written out amplitude by amplitude.
std::vector<Amplitude> initialized_input(const QubitLayout &layout, std::size_t x,
                                         Record s) {
    std::vector<Amplitude> v(std::size_t{1} << layout.total_qubits());
    const BasisIndex base = (BasisIndex{x} << layout.address.offset) |
                            (BasisIndex{s} << layout.target_s.offset) |
                            (BasisIndex{1} << layout.one_wire.offset);
    const double h = 1.0 / std::numbers::sqrt2;
    v[base] = h;
    v[base | (BasisIndex{1} << layout.kickback.offset)] = -h;
    return v;
}

// Image of a basis index under a permutation circuit.
BasisIndex permute(const Circuit &circuit, BasisIndex index) {
    for (const auto &g : circuit.gates()) {
        bool fire = true;
        for (const auto &c : g.controls()) {
            fire = fire && (((index >> c.qubit) & 1U) != 0) ==
                               (c.polarity == Polarity::Positive);
        }
        if (fire) {
            for (Qubit t : g.targets()) {
                index ^= BasisIndex{1} << t;
            }
        }
    }
    return index;
}

// Permutation circuits map the two components of each input to two basis
// states, so the output difference is a handful of sparse entries.
EquivalenceResult basis_equivalence(const Circuit &circuit, const QubitLayout &layout,
                                    const PhaseDiagonal &ideal, Record s) {
    EquivalenceResult result;
    double sum_sq = 0.0;
    const double h = 1.0 / std::numbers::sqrt2;
    for (std::size_t x = 0; x < ideal.dim(); ++x) {
        const BasisIndex base = (BasisIndex{x} << layout.address.offset) |
                                (BasisIndex{s} << layout.target_s.offset) |
                                (BasisIndex{1} << layout.one_wire.offset);
        const BasisIndex kick = BasisIndex{1} << layout.kickback.offset;
        const BasisIndex out0 = permute(circuit, base);
        const BasisIndex out1 = permute(circuit, base | kick);
        std::map<BasisIndex, double> diff;
        diff[out0] += h;
        diff[out1] -= h;
        diff[base] -= ideal.entries[x] * h;
        diff[base | kick] += ideal.entries[x] * h;
        double err_sq = 0.0;
        for (const auto &[index, d] : diff) {
            err_sq += d * d;
        }
        sum_sq += err_sq;
        const double err = std::sqrt(err_sq);
        if (err > result.max_error) {
            result.max_error = err;
            result.worst_address = x;
        }
    }
    result.frobenius = std::sqrt(sum_sq);
    return result;
}

} // namespace

EquivalenceResult oracle_equivalence(const Circuit &double_query, const Database &db,
                                     Record s, const QubitLayout &layout,
                                     EquivalenceMode mode) {
    if (double_query.qubit_count() != layout.total_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "circuit does not match layout");
    }
    const PhaseDiagonal ideal = ideal_phase_oracle_matrix(db, s);
    if (mode == EquivalenceMode::Auto) {
        mode = layout.total_qubits() <= 16 ? EquivalenceMode::Subspace
                                           : EquivalenceMode::Basis;
    }
    if (mode == EquivalenceMode::Basis) {
        for (const auto &g : double_query.gates()) {
            if (!g.is_permutation()) {
                throw Error(ErrorKind::InvalidGate,
                            "basis-tracking check needs a permutation circuit");
            }
        }
        return basis_equivalence(double_query, layout, ideal, s);
    }
    ComplexMatrix unitary;
    if (mode == EquivalenceMode::Matrix) {
        unitary = to_unitary(double_query);
    }
    EquivalenceResult result;
    double sum_sq = 0.0;
    for (std::size_t x = 0; x < db.size(); ++x) {
        const auto input = initialized_input(layout, x, s);
        std::vector<Amplitude> actual;
        if (mode == EquivalenceMode::Matrix) {
            actual = unitary.apply(input);
        } else {
            StateVector state = StateVector::from_amplitudes(input);
            state.apply(double_query);
            actual.assign(state.amplitudes().begin(), state.amplitudes().end());
        }
        double err_sq = 0.0;
        for (std::size_t i = 0; i < input.size(); ++i) {
            err_sq += std::norm(actual[i] - ideal.entries[x] * input[i]);
        }
        sum_sq += err_sq;
        const double err = std::sqrt(err_sq);
        if (err > result.max_error) {
            result.max_error = err;
            result.worst_address = x;
        }
    }
    result.frobenius = std::sqrt(sum_sq);
    return result;
}

double oracle_equivalence_check(const Database &db, Record s, const QubitLayout &layout,
                                EquivalenceMode mode) {
    return oracle_equivalence(build_double_query(db, s, layout).double_query, db, s,
                              layout, mode)
        .max_error;
}

double ideal_success_probability(std::size_t n_items, std::size_t matches,
                                 std::size_t iterations) {
    if (n_items == 0 || matches > n_items) {
        throw Error(ErrorKind::ValueOutOfRange, "need 0 <= M <= N and N >= 1");
    }
    if (matches == 0) {
        return 0.0;
    }
    const double theta = std::asin(std::sqrt(static_cast<double>(matches) /
                                             static_cast<double>(n_items)));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
    return s * s;
}

} // namespace qsearch
