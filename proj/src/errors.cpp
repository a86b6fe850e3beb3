#include "pathwise/errors.hpp"

namespace pathwise {

    ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : std::string())
                + ": " + message),
          _line(line), _column(column) {}

} // namespace pathwise
