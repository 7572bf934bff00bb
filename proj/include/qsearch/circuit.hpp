#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qsearch/gate.hpp"

namespace qsearch {

/// Label attached between gates; `position` is the index of the gate that
/// follows it (== size() for a trailing marker).
struct Marker {
    std::size_t position;
    std::string label;
    friend bool operator==(const Marker &, const Marker &) = default;
};

/// Label used for oracle query boundaries. One marker per single query.
inline constexpr std::string_view kQueryMarker = "query";

/// Ordered gate list over a fixed number of qubits.
///
/// Circuits are assembled with add/mark/append and then treated as
/// immutable values. Gates are stored in canonical form: a
/// multi-controlled X without controls is stored as one PauliX per target,
/// so that the QASM text round trip reproduces the gate list exactly.
class Circuit {
  public:
    explicit Circuit(std::size_t qubit_count = 0) : qubit_count_(qubit_count) {}

    /// Throws QubitOutOfRange if the gate touches a qubit >= qubit_count().
    Circuit &add(Gate gate);
    Circuit &mark(std::string label);
    /// Concatenates `other`, shifting its markers. Throws DimensionMismatch.
    Circuit &append(const Circuit &other);

    std::size_t qubit_count() const noexcept { return qubit_count_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }
    const std::vector<Marker> &markers() const noexcept { return markers_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

    std::size_t count_markers(std::string_view label) const;

    /// Same gates on a different register width. Throws QubitOutOfRange when
    /// a gate does not fit.
    Circuit resized(std::size_t qubit_count) const;
    /// Copy with gate `index` removed (markers after it shift down).
    Circuit without_gate(std::size_t index) const;

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    std::size_t qubit_count_;
    std::vector<Gate> gates_;
    std::vector<Marker> markers_;
};

struct GateStats {
    std::size_t hadamard = 0;
    std::size_t pauli_x = 0;
    std::size_t mcx = 0;
    std::size_t total = 0;
    /// Sum of target counts; equals the number of QASM gate lines.
    std::size_t target_lines = 0;
    /// Controls + targets, maximized over gates; 0 for an empty circuit.
    std::size_t max_arity = 0;
    std::size_t qubit_count = 0;
    /// MCX histogram keyed by number of controls.
    std::map<std::size_t, std::size_t> mcx_by_controls;

    friend bool operator==(const GateStats &, const GateStats &) = default;
};

GateStats gate_stats(const Circuit &circuit);

} // namespace qsearch
