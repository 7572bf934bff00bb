#include "qsearch/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qsearch/error.hpp"

namespace qsearch {

nlohmann::json to_json(const GateStats &stats) {
    nlohmann::json by_controls = nlohmann::json::object();
    for (const auto &[controls, count] : stats.mcx_by_controls) {
        by_controls[std::to_string(controls)] = count;
    }
    return {
        {"hadamard", stats.hadamard},
        {"pauli_x", stats.pauli_x},
        {"mcx", stats.mcx},
        {"total", stats.total},
        {"target_lines", stats.target_lines},
        {"max_arity", stats.max_arity},
        {"qubit_count", stats.qubit_count},
        {"mcx_by_controls", by_controls},
    };
}

nlohmann::json to_json(const RunReport &report, bool include_wall_time) {
    nlohmann::json histogram = nlohmann::json::array();
    for (const auto &[address, count] : report.histogram) {
        histogram.push_back({{"address", address}, {"count", count}});
    }
    nlohmann::json j = {
        {"n", report.n},
        {"m", report.m},
        {"s", format_bits(report.s, report.m)},
        {"s_value", report.s},
        {"multiplicity", report.multiplicity},
        {"iterations", report.iterations},
        {"auto_schedule", report.auto_schedule},
        {"query_count", report.query_count},
        {"initial_success_probability", report.initial_success_probability},
        {"success_probabilities", report.success_probabilities},
        {"max_restore_deviation", report.max_restore_deviation},
        {"histogram", histogram},
        {"reported_address", nullptr},
        {"found", report.found},
        {"shots", report.shots},
        {"seed", report.seed},
        {"folded", report.folded},
        {"total_qubits", report.total_qubits},
        {"simulated_qubits", report.simulated_qubits},
        {"load_stats", to_json(report.load_stats)},
        {"query_stats", to_json(report.query_stats)},
        {"iteration_stats", to_json(report.iteration_stats)},
    };
    if (report.reported_address) {
        j["reported_address"] = *report.reported_address;
    }
    if (include_wall_time) {
        j["wall_time_s"] = report.wall_time_s;
    }
    return j;
}

void write_file_atomically(const std::string &path, const std::string &contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << contents;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw Error(ErrorKind::ParseError,
                    "cannot write '" + path + "': " + ec.message());
    }
}

} // namespace qsearch
