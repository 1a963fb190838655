#pragma once

#include <stdexcept>
#include <string>

namespace mlpw {

/// Malformed input file (ARFF/CSV/JSON). Carries a 1-based line number when known.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Invalid user-supplied configuration: unknown label name, bad threshold, empty variant list, ...
class config_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numeric failure at runtime (non-finite intermediate, undefined statistic, ...).
class numeric_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mlpw
