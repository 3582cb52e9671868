#pragma once

#include <stdexcept>
#include <string>

namespace mbistat {

// Data cannot support the requested analysis: too few observations,
// zero variance against a nonzero difference, nonpositive values on the
// log pathway. Maps to CLI exit code 3.
class degenerate_data_error : public std::runtime_error {
public:
  explicit degenerate_data_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative numeric routine failed to converge within its budget.
// Never silently swallowed. Maps to CLI exit code 4.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: unreadable files, bad CSV cells, invalid flags or config.
// Maps to CLI exit code 2.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mbistat
