#ifndef RES2D_ERROR_HPP
#define RES2D_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace res2d
{

enum class ErrorKind {
    InvalidPrime,
    InvalidInput,
    NotIrreducibleCertified,
    FieldMismatch,
    CarrierMismatch,
    DivisionByZero,
    DivisionByZeroAtPrecision,
    PrecisionLoss,
    DegenerateAtPrecision,
    NonUnitLeadingCoefficient,
    TruncationExhausted,
    ZeroAtPrecision,
    NotSquarefree,
};

constexpr std::string_view error_name(ErrorKind k) noexcept
{
    switch (k) {
        case ErrorKind::InvalidPrime: return "InvalidPrime";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NotIrreducibleCertified: return "NotIrreducibleCertified";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::CarrierMismatch: return "CarrierMismatch";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::DivisionByZeroAtPrecision: return "DivisionByZeroAtPrecision";
        case ErrorKind::PrecisionLoss: return "PrecisionLoss";
        case ErrorKind::DegenerateAtPrecision: return "DegenerateAtPrecision";
        case ErrorKind::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
        case ErrorKind::TruncationExhausted: return "TruncationExhausted";
        case ErrorKind::ZeroAtPrecision: return "ZeroAtPrecision";
        case ErrorKind::NotSquarefree: return "NotSquarefree";
    }
    return "Unknown";
}

// Every failure raised by the library carries one of the kinds above; the CLI
// maps InvalidInput to exit code 2 and everything else to 3.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

} // namespace res2d

#endif
