#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fractal_ineq/alpha.hpp"

namespace fractal_ineq {

// One <= link of an inequality chain. slack = right - left, so satisfied
// links keep slack >= -10 * tolerance.
struct IneqLink {
  std::string name;
  bool satisfied = false;
  double slack = 0.0;
};

struct IneqReport {
  std::string label;
  double alpha = 1.0;
  std::optional<double> s;
  std::optional<double> p1;
  std::optional<double> p2;
  double lo = 0.0;
  double hi = 1.0;
  double lhs = 0.0;
  std::optional<double> middle;
  double rhs = 0.0;
  std::vector<IneqLink> links;
  std::vector<std::string> notes;
  double tolerance = 1e-9;

  void add_link(std::string name, double left, double right) {
    const double slack = right - left;
    links.push_back({std::move(name), slack >= -10.0 * tolerance, slack});
  }

  bool all_satisfied() const {
    for (const auto& l : links) {
      if (!l.satisfied) return false;
    }
    return true;
  }
};

// Conjugate exponents 1/p1 + 1/p2 = 1 with p1, p2 > 1.
struct HolderPair {
  double p1;
  double p2;

  HolderPair(double p1_, double p2_) : p1(p1_), p2(p2_) {
    if (!(p1 > 1.0) || !(p2 > 1.0)) {
      std::ostringstream os;
      os << "Holder pair requires p1, p2 > 1, got p1 = " << p1 << ", p2 = " << p2;
      throw input_error(os.str());
    }
    if (std::fabs(1.0 / p1 + 1.0 / p2 - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "Holder pair requires 1/p1 + 1/p2 = 1, got p1 = " << p1
         << ", p2 = " << p2;
      throw input_error(os.str());
    }
  }
};

}  // namespace fractal_ineq
