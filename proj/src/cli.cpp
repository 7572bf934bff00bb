#include "qsearch/cli.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "qsearch/error.hpp"
#include "qsearch/grover.hpp"
#include "qsearch/matrix.hpp"
#include "qsearch/oracle.hpp"
#include "qsearch/qasm.hpp"
#include "qsearch/qmem.hpp"
#include "qsearch/report.hpp"
#include "qsearch/specialize.hpp"
#include "qsearch/verify.hpp"

namespace qsearch::cli {

namespace {

constexpr double kCheckThreshold = 1e-9;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string db;
    std::string target;
    std::string iterations = "auto";
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    bool fold = false;
    std::string out;
    std::string sweep;
    std::string format = "qasm3";
    std::optional<std::size_t> corrupt_drop_gate;
};

std::optional<std::size_t> parse_iterations(const std::string &text) {
    if (text == "auto") {
        return std::nullopt;
    }
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError("--iterations expects 'auto' or a non-negative integer, got '" +
                         text + "'");
    }
    return value;
}

void require(const std::string &value, const char *flag) {
    if (value.empty()) {
        throw UsageError(std::string(flag) + " is required");
    }
}

Record parse_target(const Flags &f, const Database &db) {
    try {
        return parse_bits(f.target, db.record_bits());
    } catch (const Error &e) {
        throw Error(e.kind(), "--target: " + e.detail());
    }
}

std::size_t resolve_iterations(const Flags &f, const Database &db, std::optional<Record> s) {
    if (auto explicit_r = parse_iterations(f.iterations)) {
        return *explicit_r;
    }
    const std::size_t matches = s ? multiplicity(db, *s) : 0;
    return iteration_count(db.size(), std::max<std::size_t>(matches, 1));
}

void emit(const Flags &f, const std::string &contents, std::ostream &out) {
    if (f.out.empty()) {
        out << contents;
    } else {
        write_file_atomically(f.out, contents);
    }
}

// ---------------------------------------------------------------- run

int cmd_run(const Flags &f, std::ostream &out) {
    require(f.db, "--db");
    require(f.target, "--target");
    const Database db = load_database_file(f.db);
    const Record s = parse_target(f, db);
    SearchOptions options;
    options.iterations = parse_iterations(f.iterations);
    options.shots = f.shots;
    options.seed = f.seed;
    options.fold = f.fold;
    const RunReport report = run_search(db, s, options);

    out << "database: n=" << report.n << " m=" << report.m << " N=" << db.size()
        << " target=" << format_bits(s, report.m) << "\n";
    out << "multiplicity M=" << report.multiplicity << ", iterations r=" << report.iterations
        << (report.auto_schedule ? " (auto)" : " (explicit)")
        << ", oracle queries=" << report.query_count << "\n";
    out << "qubits: " << report.total_qubits << " (simulated " << report.simulated_qubits
        << (report.folded ? ", folded" : "") << ")\n";
    out << std::setprecision(12);
    for (std::size_t k = 0; k < report.success_probabilities.size(); ++k) {
        out << "  iteration " << (k + 1) << ": success probability "
            << report.success_probabilities[k] << "\n";
    }
    if (report.reported_address) {
        out << "measured address " << *report.reported_address << " ("
            << report.histogram.at(*report.reported_address) << "/" << report.shots
            << " shots), record " << format_bits(db.record(*report.reported_address), report.m)
            << ": " << (report.found ? "found" : "not found") << "\n";
    } else {
        out << "no shots taken: not found\n";
    }
    if (!f.out.empty()) {
        write_file_atomically(f.out, to_json(report).dump(2) + "\n");
    }
    return kOk;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    double value = 0.0;
    bool skipped = false;
    std::string note;
};

Check measured(std::string name, double value) { return {std::move(name), value, false, {}}; }

double restore_deviation(const Database &db, Record s, const QubitLayout &layout,
                         const Circuit &double_query, std::size_t iterations) {
    StateVector state = build_initial_state(db, s, layout);
    const Circuit diffusion = build_diffusion(layout);
    double worst = 0.0;
    for (std::size_t r = 0; r < std::max<std::size_t>(iterations, 1); ++r) {
        state.apply(double_query);
        worst = std::max({worst, std::abs(1.0 - marginal_probability(state, layout.data, 0)),
                          std::abs(1.0 - marginal_probability(state, layout.c_flag, 0))});
        state.apply(diffusion);
    }
    return worst;
}

std::vector<Check> verify_database(const Database &db, Record s,
                                   std::optional<std::size_t> drop_gate,
                                   std::size_t iterations, bool full) {
    const QubitLayout layout = QubitLayout::for_database(db);
    Circuit dq = build_double_query(db, s, layout).double_query;
    if (drop_gate) {
        dq = dq.without_gate(*drop_gate % dq.size());
    }
    std::vector<Check> checks;
    checks.push_back(measured("load_involution", load_twice_is_identity(db, layout)));

    auto unitarity = [&](const std::string &name, const Circuit &c) {
        if (c.qubit_count() > kMatrixQubitCap) {
            checks.push_back({name, 0.0, true, "more than 12 qubits"});
        } else {
            checks.push_back(measured(name, unitarity_check(c)));
        }
    };
    unitarity("unitarity_load", build_load_circuit(db, layout).resized(layout.n + layout.m));
    unitarity("unitarity_diffusion", build_diffusion(layout).resized(layout.n));
    if (full) {
        unitarity("unitarity_comparator", build_comparator(layout));
        unitarity("unitarity_double_query", dq);
    }
    checks.push_back(measured("restore", restore_deviation(db, s, layout, dq, iterations)));
    checks.push_back(measured(
        "oracle_equivalence", oracle_equivalence(dq, db, s, layout, EquivalenceMode::Auto).max_error));
    if (full) {
        SearchOptions options;
        options.iterations = iterations;
        options.shots = 0;
        double worst = 0.0;
        try {
            const RunReport report = run_search(db, s, options);
            for (std::size_t k = 0; k < report.success_probabilities.size(); ++k) {
                worst = std::max(worst, std::abs(report.success_probabilities[k] -
                                                 ideal_success_probability(
                                                     db.size(), report.multiplicity, k + 1)));
            }
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::InvariantViolation) {
                throw;
            }
            worst = 1.0;
        }
        checks.push_back(measured("grover_curve", worst));
    }
    return checks;
}

bool print_checks(const std::vector<Check> &checks, std::ostream &out) {
    bool ok = true;
    const Check *worst = nullptr;
    out << std::scientific << std::setprecision(3);
    for (const auto &c : checks) {
        if (c.skipped) {
            out << "SKIP " << c.name << " (" << c.note << ")\n";
            continue;
        }
        const bool pass = c.value <= kCheckThreshold;
        ok = ok && pass;
        out << (pass ? "PASS " : "FAIL ") << c.name << " " << c.value << "\n";
        if (!worst || c.value > worst->value) {
            worst = &c;
        }
    }
    if (!ok && worst) {
        out << "worst offender: " << worst->name << " = " << worst->value << "\n";
    }
    out << std::defaultfloat;
    return ok;
}

int cmd_verify_sweep(const Flags &f, std::ostream &out) {
    if (f.sweep != "small") {
        throw UsageError("--sweep only accepts 'small', got '" + f.sweep + "'");
    }
    struct Case {
        Database db;
        Record s;
    };
    std::vector<Case> cases;
    for (std::size_t n = 1; n <= 2; ++n) {
        const std::size_t size = std::size_t{1} << n;
        for (std::size_t bits = 0; bits < (std::size_t{1} << size); ++bits) {
            std::vector<Record> records(size);
            for (std::size_t k = 0; k < size; ++k) {
                records[k] = (bits >> k) & 1U;
            }
            for (Record s = 0; s <= 1; ++s) {
                cases.push_back({Database::create(n, 1, records), s});
            }
        }
    }
    const std::size_t exhaustive = cases.size();
    std::mt19937_64 rng(f.seed);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 1 + rng() % 3;
        const std::size_t m = 1 + rng() % 2;
        std::vector<Record> records(std::size_t{1} << n);
        for (auto &r : records) {
            r = rng() % (Record{1} << m);
        }
        // Bias towards targets that are present so the comparator fires.
        const Record s = (rng() % 4 == 0) ? rng() % (Record{1} << m)
                                          : records[rng() % records.size()];
        cases.push_back({Database::create(n, m, records), s});
    }

    std::vector<Check> worst_per_check;
    std::string worst_case;
    double worst_value = -1.0;
    for (const auto &c : cases) {
        const std::size_t r =
            iteration_count(c.db.size(), std::max<std::size_t>(multiplicity(c.db, c.s), 1));
        const auto checks = verify_database(c.db, c.s, f.corrupt_drop_gate, r, false);
        for (const auto &chk : checks) {
            auto it = std::find_if(worst_per_check.begin(), worst_per_check.end(),
                                   [&](const Check &w) { return w.name == chk.name; });
            if (it == worst_per_check.end()) {
                worst_per_check.push_back(chk);
            } else if (!chk.skipped && chk.value > it->value) {
                it->value = chk.value;
                it->skipped = false;
            }
            if (!chk.skipped && chk.value > worst_value) {
                worst_value = chk.value;
                std::ostringstream desc;
                desc << "n=" << c.db.address_bits() << " m=" << c.db.record_bits()
                     << " records=[";
                for (std::size_t k = 0; k < c.db.size(); ++k) {
                    desc << (k ? "," : "") << format_bits(c.db.record(k), c.db.record_bits());
                }
                desc << "] s=" << format_bits(c.s, c.db.record_bits()) << " (" << chk.name
                     << ")";
                worst_case = desc.str();
            }
        }
    }
    out << "sweep small: " << exhaustive << " exhaustive cases (n<=2, m=1) + 30 random (n<=3, m<=2)\n";
    const bool ok = print_checks(worst_per_check, out);
    if (!ok) {
        out << "worst case: " << worst_case << "\n";
    }
    return ok ? kOk : kInvariant;
}

int cmd_verify(const Flags &f, std::ostream &out) {
    if (!f.sweep.empty()) {
        return cmd_verify_sweep(f, out);
    }
    require(f.db, "--db");
    require(f.target, "--target");
    const Database db = load_database_file(f.db);
    const Record s = parse_target(f, db);
    const std::size_t r = resolve_iterations(f, db, s);
    const bool ok = print_checks(verify_database(db, s, f.corrupt_drop_gate, r, true), out);
    return ok ? kOk : kInvariant;
}

// ---------------------------------------------------------------- export

int cmd_export(const Flags &f, std::ostream &out) {
    require(f.db, "--db");
    require(f.target, "--target");
    if (f.format != "qasm3") {
        throw UsageError("--format only accepts 'qasm3', got '" + f.format + "'");
    }
    const Database db = load_database_file(f.db);
    const Record s = parse_target(f, db);
    const QubitLayout layout = QubitLayout::for_database(db);
    Circuit circuit = build_grover_circuit(db, s, layout, resolve_iterations(f, db, s));
    if (f.fold) {
        ClassicalBits fixed;
        for (std::size_t i = 0; i < layout.m; ++i) {
            fixed[layout.target_s.qubit(i)] = false;
        }
        fixed[layout.one_wire.offset] = false;
        circuit = specialize_circuit(circuit, fixed).circuit;
    }
    emit(f, export_qasm(circuit), out);
    return kOk;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const Flags &f, std::ostream &out) {
    require(f.db, "--db");
    const Database db = load_database_file(f.db);
    std::optional<Record> s;
    if (!f.target.empty()) {
        s = parse_target(f, db);
    }
    const QubitLayout layout = QubitLayout::for_database(db);
    const std::size_t r = resolve_iterations(f, db, s);
    const Record probe = s.value_or(0);
    const GateStats load = gate_stats(build_load_circuit(db, layout));
    const GateStats query = gate_stats(build_oracle_query(db, probe, layout));
    const GateStats comparator = gate_stats(build_comparator(layout));
    const GateStats diffusion = gate_stats(build_diffusion(layout));
    const GateStats init = gate_stats(build_initialization_circuit(layout, probe));
    const GateStats full = gate_stats(build_grover_circuit(db, probe, layout, r));

    nlohmann::json j = {
        {"n", db.address_bits()},
        {"m", db.record_bits()},
        {"total_qubits", layout.total_qubits()},
        {"iterations", r},
        {"load_gates", load.total},
        {"load_max_arity", load.max_arity},
        {"arity_bound", db.address_bits() + db.record_bits()},
        {"per_query_gates", query.total},
        {"per_iteration_gates", 2 * query.total + diffusion.total},
        {"total_gates", full.total},
        {"initialization_gates", init.total},
        {"load", to_json(load)},
        {"comparator", to_json(comparator)},
        {"query", to_json(query)},
        {"diffusion", to_json(diffusion)},
        {"full_circuit", to_json(full)},
    };
    out << "qubits Q = n+2m+3 = " << layout.total_qubits() << "\n";
    out << "LOAD gates: " << load.total << ", max arity " << load.max_arity
        << " (bound n+m = " << db.address_bits() + db.record_bits() << ")\n";
    out << "per-query gates: " << query.total << ", comparator gates: " << comparator.total
        << ", diffusion gates: " << diffusion.total << "\n";
    out << "total gates for r=" << r << " iterations: " << full.total << " (max arity "
        << full.max_arity << ")\n";
    if (!f.out.empty()) {
        write_file_atomically(f.out, j.dump(2) + "\n");
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Grover search over a classical database held in a quantum memory oracle",
                 "qsearch"};
    app.require_subcommand(1);
    Flags f;
    std::size_t drop_gate = 0;

    auto add_common = [&](CLI::App *sub, bool with_shots) {
        sub->add_option("--db", f.db, "Database file")->type_name("FILE");
        sub->add_option("--target", f.target, "Target record, MSB first")->type_name("BITS");
        sub->add_option("--iterations", f.iterations, "auto or an explicit count")
            ->type_name("auto|K");
        if (with_shots) {
            sub->add_option("--shots", f.shots, "Measurement shots")->type_name("S");
            sub->add_option("--seed", f.seed, "Sampling seed")->type_name("U64");
            sub->add_flag("--fold", f.fold, "Fold target and constant wires classically");
        }
        sub->add_option("--out", f.out, "Output file")->type_name("FILE");
    };
    auto *run_cmd = app.add_subcommand("run", "Run the search and report");
    add_common(run_cmd, true);
    auto *verify_cmd = app.add_subcommand("verify", "Check circuits against independent oracles");
    add_common(verify_cmd, false);
    verify_cmd->add_option("--seed", f.seed, "Seed for the random sweep")->type_name("U64");
    verify_cmd->add_option("--sweep", f.sweep, "Built-in sweep")->type_name("small");
    auto *corrupt = verify_cmd->add_option("--corrupt-drop-gate", drop_gate);
    corrupt->group("");
    auto *export_cmd = app.add_subcommand("export", "Write the full circuit as QASM 3");
    add_common(export_cmd, false);
    export_cmd->add_flag("--fold", f.fold, "Fold target and constant wires classically");
    export_cmd->add_option("--format", f.format, "Output format")->type_name("qasm3");
    auto *stats_cmd = app.add_subcommand("stats", "Resource statistics");
    add_common(stats_cmd, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    if (corrupt->count() > 0) {
        f.corrupt_drop_gate = drop_gate;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(f, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(f, out);
        }
        if (export_cmd->parsed()) {
            return cmd_export(f, out);
        }
        return cmd_stats(f, out);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvariantViolation ? kInvariant : kUsage;
    }
}

} // namespace qsearch::cli
