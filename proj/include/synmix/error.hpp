#ifndef SYNMIX_ERROR_HPP
#define SYNMIX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace synmix {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input syntax. Carries the 1-based line/column when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ")"
                         : msg),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that breaks a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Caller broke an operation precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Numerical procedure has no valid answer for the given inputs
/// (e.g. a power law that never reaches the target).
class NumericError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace synmix

#endif  // SYNMIX_ERROR_HPP
