#pragma once

#include <string>
#include <string_view>

#include "qsearch/circuit.hpp"

namespace qsearch {

/// OpenQASM 3 text for the {h, x, ctrl/negctrl @ x} subset.
///
/// Layout: `OPENQASM 3.0;`, `qubit[Q] q;`, then one statement per line.
/// A multi-target MCX becomes one line per target with the same modifier
/// chain (one `ctrl @` / `negctrl @` per control, in control order).
/// Markers are written as `// @marker <label>` comment lines.
std::string export_qasm(const Circuit &circuit);

/// Parses the subset produced by export_qasm. Consecutive controlled-x
/// lines with an identical control list are regrouped into one
/// multi-target gate, so import(export(c)) == c for circuits in canonical
/// form. `ctrl(k) @` and an `include "stdgates.inc";` line are accepted.
///
/// Throws ParseError (with line number) on malformed input and
/// UnsupportedGate for gates outside the subset.
Circuit import_qasm(std::string_view text);

} // namespace qsearch
