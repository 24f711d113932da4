#ifndef LECERT_ERRORS_HPP
#define LECERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lecert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// Malformed polynomial source text. Line and column are 1-based.
class ParseError : public Error
{
    public:
        ParseError(const std::string& what, int line, int column)
            : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
              line_(line), column_(column)
        {
        }

        int line() const { return line_; }
        int column() const { return column_; }

    private:
        int line_;
        int column_;
};

/// Numeric evaluation produced a non-finite value.
class EvaluationError : public Error
{
    public:
        using Error::Error;
};

/// A precondition on the mathematical input does not hold
/// (e.g. the Newton number of a non-convenient germ was requested).
class DomainError : public Error
{
    public:
        using Error::Error;
};

}   // namespace lecert

#endif
