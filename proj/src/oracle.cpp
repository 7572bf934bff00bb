#include "qsearch/oracle.hpp"

#include "qsearch/error.hpp"

namespace qsearch {

Circuit build_comparator(const QubitLayout &layout) {
    Circuit circuit(layout.total_qubits());
    for (std::size_t i = 0; i < layout.m; ++i) {
        circuit.add(Gate::cnot(layout.target_s.qubit(i), layout.data.qubit(i)));
    }
    std::vector<Control> controls;
    for (std::size_t i = 0; i < layout.m; ++i) {
        controls.push_back(neg(layout.data.qubit(i)));
    }
    controls.push_back(pos(layout.c_flag.offset));
    circuit.add(Gate::mcx(std::move(controls), {layout.kickback.offset}));
    for (std::size_t i = layout.m; i-- > 0;) {
        circuit.add(Gate::cnot(layout.target_s.qubit(i), layout.data.qubit(i)));
    }
    return circuit;
}

Circuit build_oracle_query(const Database &db, Record s, const QubitLayout &layout) {
    if (s >> layout.m != 0) {
        throw Error(ErrorKind::ValueOutOfRange,
                    "target " + std::to_string(s) + " does not fit in " +
                        std::to_string(layout.m) + " bits");
    }
    Circuit query(layout.total_qubits());
    query.mark(std::string(kQueryMarker));
    query.add(Gate::cnot(layout.one_wire.offset, layout.c_flag.offset));
    query.append(build_load_circuit(db, layout));
    query.append(build_comparator(layout));
    return query;
}

OracleBlock build_double_query(const Database &db, Record s, const QubitLayout &layout) {
    OracleBlock block;
    block.single_query = build_oracle_query(db, s, layout);
    block.double_query = block.single_query;
    block.double_query.append(block.single_query);
    block.query_positions = {0, block.single_query.size()};
    return block;
}

} // namespace qsearch
