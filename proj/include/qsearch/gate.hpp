#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qsearch {

using Qubit = std::size_t;
using BasisIndex = std::uint64_t;

enum class Polarity : std::uint8_t { Negative, Positive };

/// A control fires when its qubit reads 1 (Positive) or 0 (Negative).
struct Control {
    Qubit qubit;
    Polarity polarity;

    friend bool operator==(const Control &, const Control &) = default;
};

inline Control pos(Qubit q) { return {q, Polarity::Positive}; }
inline Control neg(Qubit q) { return {q, Polarity::Negative}; }

struct Hadamard {
    Qubit target;
    friend bool operator==(const Hadamard &, const Hadamard &) = default;
};

struct PauliX {
    Qubit target;
    friend bool operator==(const PauliX &, const PauliX &) = default;
};

/// Generalized Toffoli: flips every target when all controls fire.
/// With no controls it is a simultaneous X on all targets.
struct MultiControlledX {
    std::vector<Control> controls;
    std::vector<Qubit> targets;
    friend bool operator==(const MultiControlledX &,
                           const MultiControlledX &) = default;
};

enum class GateKind : std::uint8_t { Hadamard, PauliX, MultiControlledX };

class Gate {
  public:
    using Op = std::variant<Hadamard, PauliX, MultiControlledX>;

    static Gate h(Qubit target);
    static Gate x(Qubit target);
    /// Throws OverlappingControlTarget on repeated qubits, InvalidGate on
    /// an empty target list.
    static Gate mcx(std::vector<Control> controls, std::vector<Qubit> targets);
    static Gate cnot(Qubit control, Qubit target) {
        return mcx({pos(control)}, {target});
    }

    GateKind kind() const noexcept {
        return static_cast<GateKind>(op_.index());
    }
    const Op &op() const noexcept { return op_; }

    /// Controls followed by targets; empty controls for H and X.
    const std::vector<Control> &controls() const noexcept;
    std::vector<Qubit> targets() const;
    std::vector<Qubit> qubits() const;
    std::size_t arity() const noexcept;
    Qubit max_qubit() const noexcept;
    /// True for gates whose unitary is a basis permutation.
    bool is_permutation() const noexcept {
        return kind() != GateKind::Hadamard;
    }

    friend bool operator==(const Gate &, const Gate &) = default;

  private:
    explicit Gate(Op op) : op_(std::move(op)) {}
    Op op_;
};

std::string to_string(const Gate &gate);

} // namespace qsearch
