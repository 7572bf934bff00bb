#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/register.hpp"

namespace qsearch {

/// Classical value of every qubit that stays in the computational basis.
using ClassicalBits = std::map<Qubit, bool>;

struct SpecializedCircuit {
    /// Acts on the qubits not in the fixed set, renumbered in order.
    Circuit circuit;
    /// Original qubit -> new index, nullopt for fixed qubits.
    std::vector<std::optional<Qubit>> qubit_map;
    /// Fixed qubit values after the circuit has run.
    ClassicalBits final_bits;

    /// Throws ValueOutOfRange if the slice touches a fixed qubit.
    RegisterSlice remap(const RegisterSlice &slice) const;
};

/// Evaluates every control on a fixed qubit at build time: unsatisfied
/// controls drop the gate, satisfied ones are removed. X on fixed qubits
/// with only fixed controls updates `final_bits`.
///
/// Throws NotClassicallyFoldable when a fixed qubit is the target of a
/// Hadamard or of a gate that still has a quantum control, and
/// QubitOutOfRange for fixed qubits outside the circuit.
SpecializedCircuit specialize_circuit(const Circuit &circuit,
                                      const ClassicalBits &fixed);

} // namespace qsearch
