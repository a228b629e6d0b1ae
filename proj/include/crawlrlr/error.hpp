#pragma once

#include <stdexcept>
#include <string>

namespace crawlrlr {

// Invalid argument or precondition violation on a public entry point.
class ArgumentError : public std::runtime_error {
 public:
  explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; message carries the line number.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inconsistent data (graph/sample/tour invariants violated).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration (unknown attribute names, infeasible settings, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// SGD weight blow-up; reports the step and learning rate it happened at.
class SgdDivergenceError : public std::runtime_error {
 public:
  SgdDivergenceError(std::size_t step, double rate, const std::string& msg)
      : std::runtime_error(msg), step(step), rate(rate) {}
  std::size_t step;
  double rate;
};

}  // namespace crawlrlr
