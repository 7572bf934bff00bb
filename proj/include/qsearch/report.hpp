#pragma once

#include <string>

#include "json.hpp"

#include "qsearch/circuit.hpp"
#include "qsearch/grover.hpp"

namespace qsearch {

nlohmann::json to_json(const GateStats &stats);

/// Snake-case mirror of RunReport. Object keys are sorted, so identical
/// runs serialize to identical bytes apart from `wall_time_s`.
nlohmann::json to_json(const RunReport &report, bool include_wall_time = true);

/// Writes through a sibling temporary and renames it into place, so a
/// failed write leaves no partial file. Throws Error(ParseError) on I/O
/// failure.
void write_file_atomically(const std::string &path, const std::string &contents);

} // namespace qsearch
