#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/register.hpp"

namespace qsearch {

using Record = std::uint64_t;

inline constexpr std::size_t kMaxAddressBits = 30;
inline constexpr std::size_t kMaxRecordBits = 62;

/// Classical database of 2^n records of m bits, in address order.
class Database {
  public:
    /// Throws BadHeader for n or m out of range, WrongRecordCount and
    /// RecordWidthMismatch for bad record lists.
    static Database create(std::size_t address_bits, std::size_t record_bits,
                           std::vector<Record> records);

    std::size_t address_bits() const noexcept { return n_; }
    std::size_t record_bits() const noexcept { return m_; }
    std::size_t size() const noexcept { return records_.size(); }
    const std::vector<Record> &records() const noexcept { return records_; }
    Record record(std::size_t address) const { return records_.at(address); }

    friend bool operator==(const Database &, const Database &) = default;

  private:
    Database(std::size_t n, std::size_t m, std::vector<Record> records)
        : n_(n), m_(m), records_(std::move(records)) {}

    std::size_t n_;
    std::size_t m_;
    std::vector<Record> records_;
};

/// Parses the text database format:
///
///     n m          (decimal, one space)
///     <2^n lines of exactly m '0'/'1' characters, MSB first>
///
/// `#` comment lines and blank lines are skipped anywhere; LF or CRLF.
Database parse_database(std::string_view text);
Database load_database_file(const std::string &path);
std::string format_database(const Database &db);

/// MSB-left bit string of exactly `width` characters. Throws BadBitChar
/// or RecordWidthMismatch.
Record parse_bits(std::string_view bits, std::size_t width);
std::string format_bits(Record value, std::size_t width);

/// Global qubit assignment for the full oracle:
/// address | data | target_s | kickback | c_flag | one_wire.
struct QubitLayout {
    std::size_t n = 0;
    std::size_t m = 0;
    RegisterSlice address;
    RegisterSlice data;
    RegisterSlice target_s;
    RegisterSlice kickback;
    RegisterSlice c_flag;
    RegisterSlice one_wire;

    static QubitLayout make(std::size_t n, std::size_t m);
    static QubitLayout for_database(const Database &db) {
        return make(db.address_bits(), db.record_bits());
    }

    std::size_t total_qubits() const noexcept { return n + 2 * m + 3; }
    bool matches(const Database &db) const noexcept {
        return n == db.address_bits() && m == db.record_bits();
    }

    friend bool operator==(const QubitLayout &, const QubitLayout &) = default;
};

/// One generalized Toffoli per nonzero record: the address qubits are
/// controls whose polarities spell the address (negative for 0), and the
/// targets are the data qubits where the record has a 1. The whole circuit
/// maps |x>|d> to |x>|d xor d_x>. Throws LayoutMismatch.
Circuit build_load_circuit(const Database &db, const QubitLayout &layout);

enum class InvolutionCheck { Auto, Matrix, State };

/// Deviation of LOAD*LOAD from the identity. Matrix mode (n+m <= 10)
/// compares the dense product on address+data; state mode applies LOAD
/// twice to seeded random states. Auto picks matrix when it fits.
double load_twice_is_identity(const Database &db, const QubitLayout &layout,
                              InvolutionCheck mode = InvolutionCheck::Auto,
                              std::uint64_t seed = 0, std::size_t trials = 4);

} // namespace qsearch
