#ifndef PATHWISE_ERRORS_HPP
#define PATHWISE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathwise {

    class Error : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    class ParseError : public Error {
    public:
        ParseError(const std::string& message, std::size_t line, std::size_t column = 0);

        [[nodiscard]] std::size_t line() const noexcept { return _line; }
        [[nodiscard]] std::size_t column() const noexcept { return _column; }

    private:
        std::size_t _line;
        std::size_t _column;
    };

    class InconsistentData : public Error {
    public:
        using Error::Error;
    };

    class InvalidArc : public Error {
    public:
        using Error::Error;
    };

    class EmptyGraph : public Error {
    public:
        using Error::Error;
    };

    class UnknownNode : public Error {
    public:
        using Error::Error;
    };

    class ConfigError : public Error {
    public:
        using Error::Error;
    };

    class InvalidNgSize : public Error {
    public:
        using Error::Error;
    };

    class InfeasibleAtSource : public Error {
    public:
        using Error::Error;
    };

    class TooLarge : public Error {
    public:
        using Error::Error;
    };

    /// Raised when a decoded path disagrees with the label that produced it. Always an internal bug.
    class DecodeMismatch : public Error {
    public:
        using Error::Error;
    };

    class NonTerminating : public Error {
    public:
        using Error::Error;
    };

} // namespace pathwise

#endif // PATHWISE_ERRORS_HPP
