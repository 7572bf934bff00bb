#include "qsearch/error.hpp"

namespace qsearch {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::IndexOutOfRange:
        return "IndexOutOfRange";
    case ErrorKind::QubitCapExceeded:
        return "QubitCapExceeded";
    case ErrorKind::QubitOutOfRange:
        return "QubitOutOfRange";
    case ErrorKind::OverlappingControlTarget:
        return "OverlappingControlTarget";
    case ErrorKind::InvalidGate:
        return "InvalidGate";
    case ErrorKind::DimensionMismatch:
        return "DimensionMismatch";
    case ErrorKind::ValueOutOfRange:
        return "ValueOutOfRange";
    case ErrorKind::MatrixCapExceeded:
        return "MatrixCapExceeded";
    case ErrorKind::ParseError:
        return "ParseError";
    case ErrorKind::UnsupportedGate:
        return "UnsupportedGate";
    case ErrorKind::NotClassicallyFoldable:
        return "NotClassicallyFoldable";
    case ErrorKind::WrongRecordCount:
        return "WrongRecordCount";
    case ErrorKind::BadBitChar:
        return "BadBitChar";
    case ErrorKind::BadHeader:
        return "BadHeader";
    case ErrorKind::RecordWidthMismatch:
        return "RecordWidthMismatch";
    case ErrorKind::LayoutMismatch:
        return "LayoutMismatch";
    case ErrorKind::ZeroMultiplicity:
        return "ZeroMultiplicity";
    case ErrorKind::InvariantViolation:
        return "InvariantViolation";
    }
    return "Unknown";
}

namespace {
std::string decorate(ErrorKind kind, const std::string &message,
                     std::optional<std::size_t> line) {
    std::string out(to_string(kind));
    if (line) {
        out += " (line " + std::to_string(*line) + ")";
    }
    out += ": ";
    out += message;
    return out;
}
} // namespace

Error::Error(ErrorKind kind, const std::string &message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(kind, message, line)), kind_(kind),
      detail_(message), line_(line) {}

} // namespace qsearch
