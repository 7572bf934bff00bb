#include "qsearch/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "qsearch/error.hpp"

namespace qsearch {

namespace {

constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;
constexpr std::size_t kChunk = std::size_t{1} << 12;

void check_register(const RegisterSlice &reg, std::size_t qubit_count) {
    if (reg.end() > qubit_count) {
        throw Error(ErrorKind::QubitOutOfRange,
                    "register [" + std::to_string(reg.offset) + ", " +
                        std::to_string(reg.end()) + ") exceeds " +
                        std::to_string(qubit_count) + " qubits");
    }
}

// Spreads the bits of `k` around zero bits at the given ascending positions.
inline BasisIndex insert_zeros(BasisIndex k, std::span<const Qubit> positions) {
    for (Qubit p : positions) {
        const BasisIndex low = k & ((BasisIndex{1} << p) - 1);
        k = ((k >> p) << (p + 1)) | low;
    }
    return k;
}

// Sum of f(k) for k in [0, count) with a summation tree that depends only
// on `count`: sequential within fixed chunks, pairwise across chunks.
template <class F> double deterministic_sum(std::size_t count, F &&f) {
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    const auto n_chunks = static_cast<std::int64_t>(chunks);
#if defined(QSEARCH_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (count >= static_cast<std::size_t>(kParallelThreshold))
#endif
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
        const std::size_t end = std::min(count, begin + kChunk);
        double acc = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            acc += f(k);
        }
        partial[static_cast<std::size_t>(c)] = acc;
    }
    for (std::size_t width = 1; width < partial.size(); width *= 2) {
        for (std::size_t i = 0; i + width < partial.size(); i += 2 * width) {
            partial[i] += partial[i + width];
        }
    }
    return partial.empty() ? 0.0 : partial.front();
}

void apply_hadamard(std::vector<Amplitude> &amps, std::size_t qubit_count,
                    Qubit target) {
    const Qubit positions[] = {target};
    const BasisIndex bit = BasisIndex{1} << target;
    const auto pairs = static_cast<std::int64_t>(BasisIndex{1} << (qubit_count - 1));
    const double s = 1.0 / std::numbers::sqrt2;
    Amplitude *a = amps.data();
#if defined(QSEARCH_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (pairs >= kParallelThreshold)
#endif
    for (std::int64_t k = 0; k < pairs; ++k) {
        const BasisIndex i0 = insert_zeros(static_cast<BasisIndex>(k), positions);
        const BasisIndex i1 = i0 | bit;
        const Amplitude v0 = a[i0];
        const Amplitude v1 = a[i1];
        a[i0] = s * (v0 + v1);
        a[i1] = s * (v0 - v1);
    }
}

// Swaps a[i] and a[i ^ flip] for every i whose control bits match. Only
// indices with the lowest target bit clear are visited, so each pair is
// touched exactly once and untouched amplitudes keep their bits.
void apply_controlled_flip(std::vector<Amplitude> &amps, std::size_t qubit_count,
                           const std::vector<Control> &controls,
                           const std::vector<Qubit> &targets) {
    BasisIndex flip = 0;
    for (Qubit t : targets) {
        flip |= BasisIndex{1} << t;
    }
    BasisIndex control_value = 0;
    std::vector<Qubit> positions;
    positions.reserve(controls.size() + 1);
    for (const auto &c : controls) {
        positions.push_back(c.qubit);
        if (c.polarity == Polarity::Positive) {
            control_value |= BasisIndex{1} << c.qubit;
        }
    }
    positions.push_back(*std::min_element(targets.begin(), targets.end()));
    std::sort(positions.begin(), positions.end());

    const auto pairs = static_cast<std::int64_t>(
        BasisIndex{1} << (qubit_count - positions.size()));
    Amplitude *a = amps.data();
    const std::span<const Qubit> pos(positions);
#if defined(QSEARCH_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (pairs >= kParallelThreshold)
#endif
    for (std::int64_t k = 0; k < pairs; ++k) {
        const BasisIndex i0 =
            insert_zeros(static_cast<BasisIndex>(k), pos) | control_value;
        std::swap(a[i0], a[i0 ^ flip]);
    }
}

} // namespace

StateVector StateVector::basis(std::size_t qubit_count, BasisIndex index,
                               std::size_t qubit_cap) {
    if (qubit_count > qubit_cap || qubit_count >= 63) {
        throw Error(ErrorKind::QubitCapExceeded,
                    std::to_string(qubit_count) + " qubits exceeds the cap of " +
                        std::to_string(qubit_cap));
    }
    const BasisIndex dim = BasisIndex{1} << qubit_count;
    if (index >= dim) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "basis index " + std::to_string(index) + " out of range for " +
                        std::to_string(qubit_count) + " qubits");
    }
    std::vector<Amplitude> amps(dim);
    amps[index] = 1.0;
    return StateVector(qubit_count, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes,
                                         std::size_t qubit_cap) {
    if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
        throw Error(ErrorKind::DimensionMismatch,
                    "amplitude count must be a power of two");
    }
    const auto qubits = static_cast<std::size_t>(std::countr_zero(amplitudes.size()));
    if (qubits > qubit_cap) {
        throw Error(ErrorKind::QubitCapExceeded,
                    std::to_string(qubits) + " qubits exceeds the cap of " +
                        std::to_string(qubit_cap));
    }
    StateVector out(qubits, std::move(amplitudes));
    const double drift = std::abs(out.norm_squared() - 1.0);
    if (drift > kNormTolerance) {
        throw Error(ErrorKind::InvariantViolation,
                    "state is not normalized (|norm^2 - 1| = " +
                        std::to_string(drift) + ")");
    }
    return out;
}

double StateVector::norm_squared() const {
    const Amplitude *a = amplitudes_.data();
    return deterministic_sum(amplitudes_.size(),
                             [a](std::size_t k) { return std::norm(a[k]); });
}

void StateVector::check_norm(const Gate &gate) const {
    const double drift = std::abs(norm_squared() - 1.0);
    if (drift > kNormTolerance) {
        throw Error(ErrorKind::InvariantViolation,
                    "norm drift " + std::to_string(drift) + " after " +
                        to_string(gate));
    }
}

void StateVector::apply(const Gate &gate) {
    if (gate.max_qubit() >= qubit_count_) {
        throw Error(ErrorKind::QubitOutOfRange,
                    "gate " + to_string(gate) + " exceeds " +
                        std::to_string(qubit_count_) + " qubits");
    }
    switch (gate.kind()) {
    case GateKind::Hadamard:
        apply_hadamard(amplitudes_, qubit_count_, gate.targets().front());
        break;
    case GateKind::PauliX:
        apply_controlled_flip(amplitudes_, qubit_count_, {}, gate.targets());
        break;
    case GateKind::MultiControlledX:
        apply_controlled_flip(amplitudes_, qubit_count_, gate.controls(),
                              gate.targets());
        break;
    }
    check_norm(gate);
}

void StateVector::apply(const Circuit &circuit) {
    if (circuit.qubit_count() != qubit_count_) {
        throw Error(ErrorKind::DimensionMismatch,
                    "circuit has " + std::to_string(circuit.qubit_count()) +
                        " qubits, state has " + std::to_string(qubit_count_));
    }
    for (const auto &g : circuit.gates()) {
        apply(g);
    }
}

StateVector apply_gate(StateVector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

StateVector apply_circuit(StateVector state, const Circuit &circuit) {
    state.apply(circuit);
    return state;
}

double marginal_probability(const StateVector &state, const RegisterSlice &reg,
                            BasisIndex value) {
    check_register(reg, state.qubit_count());
    if (reg.width < 64 && value >= (BasisIndex{1} << reg.width)) {
        throw Error(ErrorKind::ValueOutOfRange,
                    "value " + std::to_string(value) + " does not fit in " +
                        std::to_string(reg.width) + " bits");
    }
    const auto amps = state.amplitudes();
    const BasisIndex low_mask = (BasisIndex{1} << reg.offset) - 1;
    const BasisIndex fixed = value << reg.offset;
    const std::size_t count = std::size_t{1} << (state.qubit_count() - reg.width);
    return deterministic_sum(count, [&](std::size_t k) {
        const BasisIndex low = k & low_mask;
        const BasisIndex high = (k >> reg.offset) << reg.end();
        return std::norm(amps[high | fixed | low]);
    });
}

std::vector<double> marginal_distribution(const StateVector &state,
                                          const RegisterSlice &reg) {
    check_register(reg, state.qubit_count());
    std::vector<double> dist(std::size_t{1} << reg.width, 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        dist[reg.extract(i)] += std::norm(amps[i]);
    }
    return dist;
}

Histogram sample_register(const StateVector &state, const RegisterSlice &reg,
                          std::uint64_t shots, std::uint64_t seed) {
    Histogram hist;
    if (shots == 0) {
        return hist;
    }
    const auto dist = marginal_distribution(state, reg);
    std::vector<double> cdf(dist.size());
    double running = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t v = 0; v < dist.size(); ++v) {
        running += dist[v];
        cdf[v] = running;
        if (dist[v] > 0.0) {
            last_nonzero = v;
        }
    }
    // Uniform doubles from the top 53 bits so the draw sequence does not
    // depend on the standard library's distribution implementation.
    std::mt19937_64 rng(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = static_cast<double>(rng() >> 11) * 0x1p-53 * running;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto v = static_cast<std::size_t>(it - cdf.begin());
        ++hist[std::min(v, last_nonzero)];
    }
    return hist;
}

} // namespace qsearch
