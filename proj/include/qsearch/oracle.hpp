#pragma once

#include <cstddef>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/qmem.hpp"

namespace qsearch {

/// XORs target_s into data, flips the kickback qubit when data is all zero
/// and c_flag is 1, then uncomputes the XOR. With the kickback qubit in
/// (|0> - |1>)/sqrt2 this multiplies the amplitude by -1 exactly when
/// data == s and c == 1; data and target_s are restored on every input.
Circuit build_comparator(const QubitLayout &layout);

/// One oracle query: toggle c_flag from the constant-one wire, LOAD, then
/// compare. Starts with a kQueryMarker. Throws ValueOutOfRange when `s`
/// does not fit in m bits and LayoutMismatch for a foreign layout.
Circuit build_oracle_query(const Database &db, Record s, const QubitLayout &layout);

struct OracleBlock {
    Circuit single_query;
    /// single_query followed by itself. The second copy sees c_flag == 0,
    /// so it only unloads the data register.
    Circuit double_query;
    /// Gate positions where each query starts inside double_query.
    std::vector<std::size_t> query_positions;
};

OracleBlock build_double_query(const Database &db, Record s, const QubitLayout &layout);

} // namespace qsearch
