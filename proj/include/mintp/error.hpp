#pragma once

#include <stdexcept>
#include <string>

namespace mintp {

// Bad input: malformed documents, invalid graphs, infeasible requirements.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised with the 1-based line number of the offending directive.
class parse_error : public input_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : input_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A broken internal invariant (flow conservation, coverage, ...). Always a bug.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw invariant_error(what);
}

}  // namespace mintp
