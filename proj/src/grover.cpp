#include "qsearch/grover.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "qsearch/error.hpp"
#include "qsearch/oracle.hpp"
#include "qsearch/specialize.hpp"
#include "qsearch/verify.hpp"

namespace qsearch {

namespace {

void check_target(Record s, const QubitLayout &layout) {
    if (s >> layout.m != 0) {
        throw Error(ErrorKind::ValueOutOfRange,
                    "target " + std::to_string(s) + " does not fit in " +
                        std::to_string(layout.m) + " bits");
    }
}

} // namespace

Circuit build_initialization_circuit(const QubitLayout &layout, Record s) {
    check_target(s, layout);
    Circuit init(layout.total_qubits());
    for (std::size_t i = 0; i < layout.n; ++i) {
        init.add(Gate::h(layout.address.qubit(i)));
    }
    for (std::size_t i = 0; i < layout.m; ++i) {
        if ((s >> i) & 1U) {
            init.add(Gate::x(layout.target_s.qubit(i)));
        }
    }
    init.add(Gate::x(layout.kickback.offset));
    init.add(Gate::h(layout.kickback.offset));
    init.add(Gate::x(layout.one_wire.offset));
    return init;
}

StateVector build_initial_state(const Database &db, Record s, const QubitLayout &layout,
                                std::size_t qubit_cap) {
    if (!layout.matches(db)) {
        throw Error(ErrorKind::LayoutMismatch, "layout does not match database");
    }
    StateVector state = StateVector::basis(layout.total_qubits(), 0, qubit_cap);
    state.apply(build_initialization_circuit(layout, s));
    return state;
}

Circuit build_diffusion(const QubitLayout &layout) {
    Circuit circuit(layout.total_qubits());
    const auto &a = layout.address;
    for (std::size_t i = 0; i < a.width; ++i) {
        circuit.add(Gate::h(a.qubit(i)));
    }
    for (std::size_t i = 0; i < a.width; ++i) {
        circuit.add(Gate::x(a.qubit(i)));
    }
    std::vector<Control> controls;
    for (std::size_t i = 1; i < a.width; ++i) {
        controls.push_back(pos(a.qubit(i)));
    }
    circuit.add(Gate::h(a.qubit(0)));
    circuit.add(Gate::mcx(std::move(controls), {a.qubit(0)}));
    circuit.add(Gate::h(a.qubit(0)));
    for (std::size_t i = 0; i < a.width; ++i) {
        circuit.add(Gate::x(a.qubit(i)));
    }
    for (std::size_t i = 0; i < a.width; ++i) {
        circuit.add(Gate::h(a.qubit(i)));
    }
    return circuit;
}

std::size_t iteration_count(std::size_t n_items, std::size_t matches) {
    if (n_items == 0 || matches > n_items) {
        throw Error(ErrorKind::ValueOutOfRange, "need N >= 1 and M <= N");
    }
    if (matches == 0) {
        throw Error(ErrorKind::ZeroMultiplicity, "no record matches the target");
    }
    const double theta = std::asin(std::sqrt(static_cast<double>(matches) /
                                             static_cast<double>(n_items)));
    return static_cast<std::size_t>(std::floor(std::numbers::pi / (4.0 * theta)));
}

double success_probability(const StateVector &state, const Database &db, Record s,
                           const RegisterSlice &address) {
    const auto dist = marginal_distribution(state, address);
    double p = 0.0;
    for (std::size_t x = 0; x < db.size(); ++x) {
        if (db.record(x) == s) {
            p += dist[x];
        }
    }
    return p;
}

double success_probability(const StateVector &state, const Database &db, Record s,
                           const QubitLayout &layout) {
    return success_probability(state, db, s, layout.address);
}

Circuit build_grover_circuit(const Database &db, Record s, const QubitLayout &layout,
                             std::size_t iterations) {
    Circuit circuit = build_initialization_circuit(layout, s);
    const Circuit dq = build_double_query(db, s, layout).double_query;
    const Circuit diffusion = build_diffusion(layout);
    for (std::size_t r = 0; r < iterations; ++r) {
        circuit.append(dq);
        circuit.append(diffusion);
    }
    return circuit;
}

RunReport run_search(const Database &db, Record s, const SearchOptions &options) {
    const auto started = std::chrono::steady_clock::now();
    const QubitLayout layout = QubitLayout::for_database(db);
    check_target(s, layout);

    RunReport report;
    report.n = db.address_bits();
    report.m = db.record_bits();
    report.s = s;
    report.multiplicity = multiplicity(db, s);
    report.auto_schedule = !options.iterations.has_value();
    report.iterations = options.iterations.value_or(
        iteration_count(db.size(), std::max<std::size_t>(report.multiplicity, 1)));
    report.shots = options.shots;
    report.seed = options.seed;
    report.folded = options.fold;
    report.total_qubits = layout.total_qubits();

    const Circuit load = build_load_circuit(db, layout);
    const OracleBlock oracle = build_double_query(db, s, layout);
    const Circuit diffusion_full = build_diffusion(layout);
    Circuit iteration = oracle.double_query;
    iteration.append(diffusion_full);
    report.load_stats = gate_stats(load);
    report.query_stats = gate_stats(oracle.single_query);
    report.iteration_stats = gate_stats(iteration);

    Circuit init = build_initialization_circuit(layout, s);
    Circuit double_query = oracle.double_query;
    Circuit diffusion = diffusion_full;
    RegisterSlice address = layout.address;
    RegisterSlice data = layout.data;
    RegisterSlice c_flag = layout.c_flag;
    ClassicalBits classical;
    if (options.fold) {
        ClassicalBits fixed;
        for (std::size_t i = 0; i < layout.m; ++i) {
            fixed[layout.target_s.qubit(i)] = false;
        }
        fixed[layout.one_wire.offset] = false;
        const auto init_f = specialize_circuit(init, fixed);
        classical = init_f.final_bits;
        const auto dq_f = specialize_circuit(double_query, classical);
        const auto diff_f = specialize_circuit(diffusion, classical);
        if (dq_f.final_bits != classical || diff_f.final_bits != classical) {
            throw Error(ErrorKind::InvariantViolation,
                        "folded registers changed during an iteration");
        }
        init = init_f.circuit;
        double_query = dq_f.circuit;
        diffusion = diff_f.circuit;
        address = init_f.remap(layout.address);
        data = init_f.remap(layout.data);
        c_flag = init_f.remap(layout.c_flag);
    }

    StateVector state = StateVector::basis(init.qubit_count(), 0, options.qubit_cap);
    state.apply(init);
    report.simulated_qubits = state.qubit_count();
    report.initial_success_probability = success_probability(state, db, s, address);

    for (std::size_t r = 0; r < report.iterations; ++r) {
        state.apply(double_query);
        report.query_count += double_query.count_markers(kQueryMarker);
        const double deviation =
            std::max(std::abs(1.0 - marginal_probability(state, data, 0)),
                     std::abs(1.0 - marginal_probability(state, c_flag, 0)));
        report.max_restore_deviation = std::max(report.max_restore_deviation, deviation);
        if (deviation > kNormTolerance) {
            throw Error(ErrorKind::InvariantViolation,
                        "double query " + std::to_string(r + 1) +
                            " did not restore data/c_flag (deviation " +
                            std::to_string(deviation) + ")");
        }
        state.apply(diffusion);
        report.success_probabilities.push_back(success_probability(state, db, s, address));
    }

    report.histogram = sample_register(state, address, options.shots, options.seed);
    std::uint64_t best = 0;
    for (const auto &[value, count] : report.histogram) {
        if (count > best) {
            best = count;
            report.reported_address = static_cast<std::size_t>(value);
        }
    }
    report.found = report.reported_address.has_value() &&
                   db.record(*report.reported_address) == s;
    report.wall_time_s = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    return report;
}

} // namespace qsearch
