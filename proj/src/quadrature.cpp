#include "solenoid/quadrature.hpp"

#include <algorithm>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

#include "solenoid/errors.hpp"

namespace solenoid {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauge_builder: Gauss-Legendre rule needs n >= 1 (got " + std::to_string(n) + ")");
  // Boost returns the non-negative roots of P_n; mirror them to get the full set.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  GaussLegendreRule rule;
  for (double x : half) {
    rule.nodes.push_back(x);
    if (x != 0.0) rule.nodes.push_back(-x);
  }
  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (double x : rule.nodes) {
    const double dp = boost::math::legendre_p_prime(n, x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

}  // namespace solenoid
