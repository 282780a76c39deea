#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "extremes/cluster.hpp"

namespace extremes {

/// A bounded functional on clusters that vanishes when the sup norm is at or
/// below `floor` (the class over which block point processes are compared
/// with their limit). When `radial` is set it must return the exact value of
/// int_0^inf f(y * shape) alpha y^{-alpha-1} dy for a unit-sup-norm shape;
/// limit functionals then carry Monte Carlo error only through the shape law.
struct ClusterFunctional {
  std::string name;
  double floor = 0.0;
  std::function<double(const Cluster&)> eval;
  std::function<double(const Cluster& shape, double alpha)> radial;

  double operator()(const Cluster& c) const { return eval(c); }
};

/// f(x) = 1{sup|x| > y0}. Radial integral: y0^{-alpha}.
ClusterFunctional sup_threshold_functional(double y0);

/// f(x) = min(sum|x_j|, cap) * 1{sup|x| > floor}.
ClusterFunctional capped_abs_sum_functional(double cap, double floor);

}  // namespace extremes
