#include "qsearch/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "qsearch/error.hpp"

namespace qsearch {

namespace {
constexpr std::string_view kHeader = "OPENQASM 3.0;";
constexpr std::string_view kMarkerPrefix = "// @marker ";
} // namespace

std::string export_qasm(const Circuit &circuit) {
    std::ostringstream os;
    os << kHeader << "\n";
    os << "qubit[" << circuit.qubit_count() << "] q;\n";

    const auto &markers = circuit.markers();
    std::size_t next_marker = 0;
    auto flush_markers = [&](std::size_t position) {
        while (next_marker < markers.size() &&
               markers[next_marker].position == position) {
            os << kMarkerPrefix << markers[next_marker].label << "\n";
            ++next_marker;
        }
    };

    const auto &gates = circuit.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        flush_markers(i);
        const Gate &g = gates[i];
        switch (g.kind()) {
        case GateKind::Hadamard:
            os << "h q[" << g.targets().front() << "];\n";
            break;
        case GateKind::PauliX:
            os << "x q[" << g.targets().front() << "];\n";
            break;
        case GateKind::MultiControlledX: {
            std::string prefix;
            std::string args;
            for (const auto &c : g.controls()) {
                prefix += c.polarity == Polarity::Positive ? "ctrl @ " : "negctrl @ ";
                args += "q[" + std::to_string(c.qubit) + "], ";
            }
            for (Qubit t : g.targets()) {
                os << prefix << "x " << args << "q[" << t << "];\n";
            }
            break;
        }
        }
    }
    flush_markers(gates.size());
    return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool consume(std::string_view &s, std::string_view token) {
    s = trim(s);
    if (s.substr(0, token.size()) == token) {
        s.remove_prefix(token.size());
        return true;
    }
    return false;
}

std::optional<std::size_t> parse_uint(std::string_view &s) {
    s = trim(s);
    std::size_t value = 0;
    const auto *begin = s.data();
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) {
        return std::nullopt;
    }
    s.remove_prefix(static_cast<std::size_t>(ptr - begin));
    return value;
}

std::string_view take_identifier(std::string_view &s) {
    s = trim(s);
    std::size_t len = 0;
    while (len < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[len])) || s[len] == '_')) {
        ++len;
    }
    auto id = s.substr(0, len);
    s.remove_prefix(len);
    return id;
}

struct Statement {
    std::vector<Polarity> modifiers;
    std::string_view name;
    std::vector<Qubit> args;
};

class Importer {
  public:
    Circuit run(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            ++line_no;
            line(text.substr(start, end - start), line_no);
            start = end + 1;
        }
        if (!circuit_) {
            throw Error(ErrorKind::ParseError, "missing qubit declaration",
                        line_no);
        }
        flush();
        return *circuit_;
    }

  private:
    void line(std::string_view raw, std::size_t line_no) {
        std::string_view s = trim(raw);
        if (s.substr(0, kMarkerPrefix.size()) == kMarkerPrefix) {
            if (!circuit_) {
                throw Error(ErrorKind::ParseError, "marker before declaration",
                            line_no);
            }
            flush();
            circuit_->mark(std::string(trim(s.substr(kMarkerPrefix.size()))));
            return;
        }
        if (auto comment = s.find("//"); comment != std::string_view::npos) {
            s = trim(s.substr(0, comment));
        }
        if (s.empty()) {
            return;
        }
        if (!seen_header_) {
            if (s != kHeader) {
                throw Error(ErrorKind::ParseError,
                            "expected 'OPENQASM 3.0;' header", line_no);
            }
            seen_header_ = true;
            return;
        }
        if (!circuit_) {
            if (s == "include \"stdgates.inc\";") {
                return;
            }
            declaration(s, line_no);
            return;
        }
        gate(parse_statement(s, line_no), line_no);
    }

    void declaration(std::string_view s, std::size_t line_no) {
        std::optional<std::size_t> width;
        if (consume(s, "qubit") && consume(s, "[")) {
            width = parse_uint(s);
        }
        if (!width || !consume(s, "]") || take_identifier(s) != "q" ||
            !consume(s, ";") || !trim(s).empty()) {
            throw Error(ErrorKind::ParseError,
                        "expected 'qubit[N] q;' declaration", line_no);
        }
        circuit_.emplace(*width);
    }

    Statement parse_statement(std::string_view s, std::size_t line_no) {
        Statement st;
        for (;;) {
            std::string_view probe = s;
            const auto word = take_identifier(probe);
            if (word != "ctrl" && word != "negctrl") {
                break;
            }
            std::size_t repeat = 1;
            if (consume(probe, "(")) {
                auto k = parse_uint(probe);
                if (!k || *k == 0 || !consume(probe, ")")) {
                    throw Error(ErrorKind::ParseError,
                                "bad modifier argument", line_no);
                }
                repeat = *k;
            }
            if (!consume(probe, "@")) {
                throw Error(ErrorKind::ParseError, "expected '@' after modifier",
                            line_no);
            }
            st.modifiers.insert(st.modifiers.end(), repeat,
                                word == "ctrl" ? Polarity::Positive
                                               : Polarity::Negative);
            s = probe;
        }
        st.name = take_identifier(s);
        if (st.name.empty()) {
            throw Error(ErrorKind::ParseError, "expected gate name", line_no);
        }
        if (st.name != "h" && st.name != "x") {
            throw Error(ErrorKind::UnsupportedGate,
                        "gate '" + std::string(st.name) +
                            "' is outside the supported subset",
                        line_no);
        }
        for (;;) {
            if (take_identifier(s) != "q" || !consume(s, "[")) {
                throw Error(ErrorKind::ParseError, "expected qubit operand q[i]",
                            line_no);
            }
            auto index = parse_uint(s);
            if (!index || !consume(s, "]")) {
                throw Error(ErrorKind::ParseError, "bad qubit index", line_no);
            }
            st.args.push_back(*index);
            if (consume(s, ",")) {
                continue;
            }
            if (!consume(s, ";") || !trim(s).empty()) {
                throw Error(ErrorKind::ParseError, "expected ';'", line_no);
            }
            break;
        }
        if (st.args.size() != st.modifiers.size() + 1) {
            throw Error(ErrorKind::ParseError,
                        "operand count does not match modifiers", line_no);
        }
        return st;
    }

    void gate(const Statement &st, std::size_t line_no) {
        try {
            if (st.name == "h") {
                if (!st.modifiers.empty()) {
                    throw Error(ErrorKind::UnsupportedGate,
                                "controlled h is outside the supported subset",
                                line_no);
                }
                flush();
                circuit_->add(Gate::h(st.args.front()));
                return;
            }
            if (st.modifiers.empty()) {
                flush();
                circuit_->add(Gate::x(st.args.front()));
                return;
            }
            std::vector<Control> controls;
            for (std::size_t i = 0; i < st.modifiers.size(); ++i) {
                controls.push_back({st.args[i], st.modifiers[i]});
            }
            const Qubit target = st.args.back();
            if (pending_ && pending_->controls == controls &&
                std::find(pending_->targets.begin(), pending_->targets.end(),
                          target) == pending_->targets.end()) {
                pending_->targets.push_back(target);
            } else {
                flush();
                pending_ = MultiControlledX{std::move(controls), {target}};
            }
            // Validate eagerly so the error carries this line number.
            (void)Circuit(circuit_->qubit_count())
                .add(Gate::mcx(pending_->controls, pending_->targets));
        } catch (const Error &e) {
            if (e.line()) {
                throw;
            }
            throw Error(e.kind(), e.detail(), line_no);
        }
    }

    void flush() {
        if (pending_) {
            circuit_->add(Gate::mcx(std::move(pending_->controls),
                                    std::move(pending_->targets)));
            pending_.reset();
        }
    }

    bool seen_header_ = false;
    std::optional<Circuit> circuit_;
    std::optional<MultiControlledX> pending_;
};

} // namespace

Circuit import_qasm(std::string_view text) { return Importer{}.run(text); }

} // namespace qsearch
