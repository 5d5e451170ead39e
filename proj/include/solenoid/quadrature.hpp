#pragma once

#include <vector>

namespace solenoid {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

}  // namespace solenoid
