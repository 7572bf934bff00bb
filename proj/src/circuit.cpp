#include "qsearch/circuit.hpp"

#include <algorithm>

#include "qsearch/error.hpp"

namespace qsearch {

Circuit &Circuit::add(Gate gate) {
    if (gate.max_qubit() >= qubit_count_) {
        throw Error(ErrorKind::QubitOutOfRange,
                    "gate " + to_string(gate) + " does not fit in " +
                        std::to_string(qubit_count_) + " qubits");
    }
    if (gate.kind() == GateKind::MultiControlledX && gate.controls().empty()) {
        for (Qubit t : gate.targets()) {
            gates_.push_back(Gate::x(t));
        }
        return *this;
    }
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::mark(std::string label) {
    markers_.push_back({gates_.size(), std::move(label)});
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.qubit_count_ != qubit_count_) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cannot append a " + std::to_string(other.qubit_count_) +
                        "-qubit circuit to a " + std::to_string(qubit_count_) +
                        "-qubit circuit");
    }
    const std::size_t shift = gates_.size();
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    for (const auto &m : other.markers_) {
        markers_.push_back({m.position + shift, m.label});
    }
    return *this;
}

std::size_t Circuit::count_markers(std::string_view label) const {
    return static_cast<std::size_t>(
        std::count_if(markers_.begin(), markers_.end(),
                      [&](const Marker &m) { return m.label == label; }));
}

Circuit Circuit::resized(std::size_t qubit_count) const {
    Circuit out(qubit_count);
    for (const auto &g : gates_) {
        out.add(g);
    }
    out.markers_ = markers_;
    return out;
}

Circuit Circuit::without_gate(std::size_t index) const {
    if (index >= gates_.size()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "gate index " + std::to_string(index) + " out of range");
    }
    Circuit out = *this;
    out.gates_.erase(out.gates_.begin() + static_cast<std::ptrdiff_t>(index));
    for (auto &m : out.markers_) {
        if (m.position > index) {
            --m.position;
        }
    }
    return out;
}

GateStats gate_stats(const Circuit &circuit) {
    GateStats stats;
    stats.qubit_count = circuit.qubit_count();
    for (const auto &g : circuit.gates()) {
        switch (g.kind()) {
        case GateKind::Hadamard:
            ++stats.hadamard;
            break;
        case GateKind::PauliX:
            ++stats.pauli_x;
            break;
        case GateKind::MultiControlledX:
            ++stats.mcx;
            ++stats.mcx_by_controls[g.controls().size()];
            break;
        }
        ++stats.total;
        stats.target_lines += g.targets().size();
        stats.max_arity = std::max(stats.max_arity, g.arity());
    }
    return stats;
}

} // namespace qsearch
