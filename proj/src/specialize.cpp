#include "qsearch/specialize.hpp"

#include "qsearch/error.hpp"

namespace qsearch {

RegisterSlice SpecializedCircuit::remap(const RegisterSlice &slice) const {
    if (slice.width == 0) {
        return slice;
    }
    std::optional<Qubit> first;
    for (std::size_t i = 0; i < slice.width; ++i) {
        const Qubit q = slice.qubit(i);
        if (q >= qubit_map.size() || !qubit_map[q]) {
            throw Error(ErrorKind::ValueOutOfRange,
                        "register qubit " + std::to_string(q) +
                            " was folded away");
        }
        if (!first) {
            first = qubit_map[q];
        } else if (*qubit_map[q] != *first + i) {
            throw Error(ErrorKind::ValueOutOfRange,
                        "register is not contiguous after folding");
        }
    }
    return {*first, slice.width};
}

namespace {

[[noreturn]] void not_foldable(const Gate &g, Qubit q) {
    throw Error(ErrorKind::NotClassicallyFoldable,
                "fixed qubit " + std::to_string(q) + " is targeted by " +
                    to_string(g));
}

} // namespace

SpecializedCircuit specialize_circuit(const Circuit &circuit,
                                      const ClassicalBits &fixed) {
    const std::size_t q_count = circuit.qubit_count();
    SpecializedCircuit out;
    out.qubit_map.assign(q_count, std::nullopt);
    for (const auto &[q, value] : fixed) {
        if (q >= q_count) {
            throw Error(ErrorKind::QubitOutOfRange,
                        "fixed qubit " + std::to_string(q) + " out of range");
        }
    }
    Qubit next = 0;
    for (Qubit q = 0; q < q_count; ++q) {
        if (!fixed.contains(q)) {
            out.qubit_map[q] = next++;
        }
    }
    out.circuit = Circuit(next);
    out.final_bits = fixed;
    auto &bits = out.final_bits;
    const auto &map = out.qubit_map;

    const auto &markers = circuit.markers();
    std::size_t next_marker = 0;
    auto flush_markers = [&](std::size_t position) {
        while (next_marker < markers.size() &&
               markers[next_marker].position == position) {
            out.circuit.mark(markers[next_marker].label);
            ++next_marker;
        }
    };

    const auto &gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        flush_markers(i);
        const Gate &g = gates[i];
        switch (g.kind()) {
        case GateKind::Hadamard: {
            const Qubit t = g.targets().front();
            if (!map[t]) {
                not_foldable(g, t);
            }
            out.circuit.add(Gate::h(*map[t]));
            break;
        }
        case GateKind::PauliX: {
            const Qubit t = g.targets().front();
            if (map[t]) {
                out.circuit.add(Gate::x(*map[t]));
            } else {
                bits[t] = !bits[t];
            }
            break;
        }
        case GateKind::MultiControlledX: {
            std::vector<Control> live_controls;
            bool satisfied = true;
            for (const auto &c : g.controls()) {
                if (map[c.qubit]) {
                    live_controls.push_back({*map[c.qubit], c.polarity});
                } else if (bits.at(c.qubit) != (c.polarity == Polarity::Positive)) {
                    satisfied = false;
                }
            }
            std::vector<Qubit> live_targets;
            std::vector<Qubit> fixed_targets;
            for (Qubit t : g.targets()) {
                if (map[t]) {
                    live_targets.push_back(*map[t]);
                } else {
                    fixed_targets.push_back(t);
                }
            }
            if (!satisfied) {
                break;
            }
            if (!fixed_targets.empty() && !live_controls.empty()) {
                not_foldable(g, fixed_targets.front());
            }
            for (Qubit t : fixed_targets) {
                bits[t] = !bits[t];
            }
            if (!live_targets.empty()) {
                out.circuit.add(Gate::mcx(std::move(live_controls),
                                          std::move(live_targets)));
            }
            break;
        }
        }
    }
    flush_markers(gates.size());
    return out;
}

} // namespace qsearch
