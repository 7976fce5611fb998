#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vdw {

// Argument outside the domain of an operation (vertex out of range, empty
// input where a non-empty one is required, unsupported parameters).
class domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A matching that is not a matching: duplicate faces, non-cover pairs, pairs
// crossing fibers.  Distinct from an acyclicity failure.
class structural_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Hypotheses of a construction are not met.
class precondition_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// An internal claim that must hold under the stated hypotheses failed.
class invariant_violation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class parse_error : public std::runtime_error {
  public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

}  // namespace vdw
