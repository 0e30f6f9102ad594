#pragma once

#include <stdexcept>
#include <string>

namespace fractal_ineq {

// Invalid arguments, malformed JSON, violated preconditions. CLI exit code 2.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// NaN/overflow or a result outside the representable range. CLI exit code 3.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation asked of a function family it has no closed form for. CLI exit code 3.
class unsupported_family_error : public std::runtime_error {
 public:
  explicit unsupported_family_error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation outside a function's domain (negative base, no matching guard).
class eval_domain_error : public std::domain_error {
 public:
  explicit eval_domain_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace fractal_ineq
