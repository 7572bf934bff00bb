#include "qsearch/qmem.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qsearch/error.hpp"
#include "qsearch/matrix.hpp"
#include "qsearch/statevector.hpp"

namespace qsearch {

Database Database::create(std::size_t n, std::size_t m, std::vector<Record> records) {
    if (n < 1 || n > kMaxAddressBits) {
        throw Error(ErrorKind::BadHeader, "address bits must be in [1, " +
                                              std::to_string(kMaxAddressBits) + "]");
    }
    if (m < 1 || m > kMaxRecordBits) {
        throw Error(ErrorKind::BadHeader, "record bits must be in [1, " +
                                              std::to_string(kMaxRecordBits) + "]");
    }
    const std::size_t expected = std::size_t{1} << n;
    if (records.size() != expected) {
        throw Error(ErrorKind::WrongRecordCount,
                    "expected " + std::to_string(expected) + " records, got " +
                        std::to_string(records.size()));
    }
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (records[k] >> m != 0) {
            throw Error(ErrorKind::RecordWidthMismatch,
                        "record " + std::to_string(k) + " does not fit in " +
                            std::to_string(m) + " bits");
        }
    }
    return Database(n, m, std::move(records));
}

Record parse_bits(std::string_view bits, std::size_t width) {
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw Error(ErrorKind::BadBitChar,
                        std::string("unexpected character '") + ch +
                            "' in bit string");
        }
    }
    if (bits.size() != width) {
        throw Error(ErrorKind::RecordWidthMismatch,
                    "bit string '" + std::string(bits) + "' has " +
                        std::to_string(bits.size()) + " bits, expected " +
                        std::to_string(width));
    }
    Record value = 0;
    for (char ch : bits) {
        value = (value << 1) | static_cast<Record>(ch == '1');
    }
    return value;
}

std::string format_bits(Record value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((value >> i) & 1U) {
            out[width - 1 - i] = '1';
        }
    }
    return out;
}

namespace {

bool parse_decimal(std::string_view s, std::size_t &out) {
    if (s.empty() || (s.size() > 1 && s.front() == '0')) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

Database parse_database(std::string_view text) {
    std::size_t n = 0;
    std::size_t m = 0;
    bool have_header = false;
    std::vector<Record> records;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!have_header) {
            const auto space = line.find(' ');
            if (space == std::string_view::npos ||
                !parse_decimal(line.substr(0, space), n) ||
                !parse_decimal(line.substr(space + 1), m)) {
                throw Error(ErrorKind::BadHeader,
                            "expected 'n m' header, got '" + std::string(line) + "'",
                            line_no);
            }
            if (n < 1 || n > kMaxAddressBits || m < 1 || m > kMaxRecordBits) {
                throw Error(ErrorKind::BadHeader,
                            "n must be in [1, " + std::to_string(kMaxAddressBits) +
                                "] and m in [1, " + std::to_string(kMaxRecordBits) + "]",
                            line_no);
            }
            have_header = true;
            continue;
        }
        if (records.size() == (std::size_t{1} << n)) {
            throw Error(ErrorKind::WrongRecordCount,
                        "more than " + std::to_string(records.size()) + " records",
                        line_no);
        }
        try {
            records.push_back(parse_bits(line, m));
        } catch (const Error &e) {
            throw Error(e.kind(), e.detail(), line_no);
        }
    }
    if (!have_header) {
        throw Error(ErrorKind::BadHeader, "missing 'n m' header");
    }
    if (records.size() != (std::size_t{1} << n)) {
        throw Error(ErrorKind::WrongRecordCount,
                    "expected " + std::to_string(std::size_t{1} << n) +
                        " records, got " + std::to_string(records.size()));
    }
    return Database::create(n, m, std::move(records));
}

Database load_database_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open database file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_database(buf.str());
}

std::string format_database(const Database &db) {
    std::string out = std::to_string(db.address_bits()) + " " +
                      std::to_string(db.record_bits()) + "\n";
    for (Record r : db.records()) {
        out += format_bits(r, db.record_bits());
        out += '\n';
    }
    return out;
}

QubitLayout QubitLayout::make(std::size_t n, std::size_t m) {
    QubitLayout l;
    l.n = n;
    l.m = m;
    l.address = {0, n};
    l.data = {n, m};
    l.target_s = {n + m, m};
    l.kickback = {n + 2 * m, 1};
    l.c_flag = {n + 2 * m + 1, 1};
    l.one_wire = {n + 2 * m + 2, 1};
    return l;
}

Circuit build_load_circuit(const Database &db, const QubitLayout &layout) {
    if (!layout.matches(db)) {
        throw Error(ErrorKind::LayoutMismatch,
                    "layout is for n=" + std::to_string(layout.n) + ", m=" +
                        std::to_string(layout.m) + " but the database has n=" +
                        std::to_string(db.address_bits()) + ", m=" +
                        std::to_string(db.record_bits()));
    }
    Circuit circuit(layout.total_qubits());
    for (std::size_t k = 0; k < db.size(); ++k) {
        const Record d = db.record(k);
        if (d == 0) {
            continue;
        }
        std::vector<Control> controls;
        controls.reserve(layout.n);
        for (std::size_t i = 0; i < layout.n; ++i) {
            const bool one = ((k >> i) & 1U) != 0;
            controls.push_back({layout.address.qubit(i),
                                one ? Polarity::Positive : Polarity::Negative});
        }
        std::vector<Qubit> targets;
        for (std::size_t i = 0; i < layout.m; ++i) {
            if ((d >> i) & 1U) {
                targets.push_back(layout.data.qubit(i));
            }
        }
        circuit.add(Gate::mcx(std::move(controls), std::move(targets)));
    }
    return circuit;
}

namespace {

std::vector<Amplitude> random_state(std::size_t qubits, std::mt19937_64 &rng) {
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5; };
    std::vector<Amplitude> amps(std::size_t{1} << qubits);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {uniform(), uniform()};
        norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &a : amps) {
        a *= scale;
    }
    return amps;
}

} // namespace

double load_twice_is_identity(const Database &db, const QubitLayout &layout,
                              InvolutionCheck mode, std::uint64_t seed,
                              std::size_t trials) {
    const Circuit load = build_load_circuit(db, layout);
    const std::size_t active = layout.n + layout.m;
    if (mode == InvolutionCheck::Auto) {
        mode = active <= 10 ? InvolutionCheck::Matrix : InvolutionCheck::State;
    }
    if (mode == InvolutionCheck::Matrix) {
        Circuit twice = load.resized(active);
        twice.append(load.resized(active));
        return max_abs_diff(to_unitary(twice), ComplexMatrix::identity(std::size_t{1} << active));
    }
    // Address and data are the only qubits LOAD touches; simulate just those
    // when the full layout is too wide.
    const std::size_t width =
        layout.total_qubits() <= 20 ? layout.total_qubits() : active;
    const Circuit local = load.resized(width);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const StateVector input =
            StateVector::from_amplitudes(random_state(width, rng));
        StateVector out = input;
        out.apply(local);
        out.apply(local);
        for (std::size_t i = 0; i < out.size(); ++i) {
            worst = std::max(worst, std::abs(out[i] - input[i]));
        }
    }
    return worst;
}

} // namespace qsearch
