#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/register.hpp"

namespace qsearch {

using Amplitude = std::complex<double>;

/// 2^26 amplitudes of 16 bytes is 1 GiB.
inline constexpr std::size_t kDefaultQubitCap = 26;
inline constexpr double kNormTolerance = 1e-10;

/// Dense statevector. Basis index bit i is the value of qubit i.
///
/// Every gate application re-checks the norm and throws InvariantViolation
/// on drift beyond kNormTolerance; the state is never renormalized.
class StateVector {
  public:
    /// Throws IndexOutOfRange or QubitCapExceeded.
    static StateVector basis(std::size_t qubit_count, BasisIndex index,
                             std::size_t qubit_cap = kDefaultQubitCap);
    /// Length must be a power of two and the norm within kNormTolerance.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes,
                                       std::size_t qubit_cap = kDefaultQubitCap);

    std::size_t qubit_count() const noexcept { return qubit_count_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    const Amplitude &operator[](BasisIndex index) const {
        return amplitudes_[index];
    }

    /// Fixed-shape pairwise sum; identical for any thread count.
    double norm_squared() const;

    /// Throws QubitOutOfRange.
    void apply(const Gate &gate);
    /// Throws DimensionMismatch when the widths differ.
    void apply(const Circuit &circuit);

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    StateVector(std::size_t qubit_count, std::vector<Amplitude> amplitudes)
        : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {}

    void check_norm(const Gate &gate) const;

    std::size_t qubit_count_;
    std::vector<Amplitude> amplitudes_;
};

StateVector apply_gate(StateVector state, const Gate &gate);
StateVector apply_circuit(StateVector state, const Circuit &circuit);

/// Probability that `reg` reads `value`. Throws ValueOutOfRange.
double marginal_probability(const StateVector &state, const RegisterSlice &reg,
                            BasisIndex value);
/// Full marginal distribution of `reg`, indexed by register value.
std::vector<double> marginal_distribution(const StateVector &state,
                                          const RegisterSlice &reg);

using Histogram = std::map<BasisIndex, std::uint64_t>;

/// `shots` independent draws from the marginal of `reg`, driven by a
/// mt19937_64 seeded with `seed`.
Histogram sample_register(const StateVector &state, const RegisterSlice &reg,
                          std::uint64_t shots, std::uint64_t seed);

} // namespace qsearch
