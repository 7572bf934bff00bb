#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsearch {

enum class ErrorKind {
    IndexOutOfRange,
    QubitCapExceeded,
    QubitOutOfRange,
    OverlappingControlTarget,
    InvalidGate,
    DimensionMismatch,
    ValueOutOfRange,
    MatrixCapExceeded,
    ParseError,
    UnsupportedGate,
    NotClassicallyFoldable,
    WrongRecordCount,
    BadBitChar,
    BadHeader,
    RecordWidthMismatch,
    LayoutMismatch,
    ZeroMultiplicity,
    InvariantViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` identifies the failure.
/// Parse failures also carry the 1-based source line.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message,
          std::optional<std::size_t> line = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    /// Message without the kind/line decoration.
    const std::string &detail() const noexcept { return detail_; }

  private:
    ErrorKind kind_;
    std::string detail_;
    std::optional<std::size_t> line_;
};

} // namespace qsearch
