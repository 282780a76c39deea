#include "extremes/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extremes {

Cluster::Cluster(std::vector<double> values, long offset) {
  std::size_t first = 0;
  while (first < values.size() && values[first] == 0.0) ++first;
  std::size_t last = values.size();
  while (last > first && values[last - 1] == 0.0) --last;
  values_.assign(values.begin() + static_cast<long>(first),
                 values.begin() + static_cast<long>(last));
  offset_ = values_.empty() ? 0 : offset + static_cast<long>(first);
}

double Cluster::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Cluster::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double Cluster::abs_sum() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s;
}

std::pair<double, double> Cluster::prefix_sum_range() const {
  double lo = 0.0, hi = 0.0, run = 0.0;
  for (double v : values_) {
    run += v;
    lo = std::min(lo, run);
    hi = std::max(hi, run);
  }
  return {lo, hi};
}

Cluster Cluster::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return Cluster(std::move(v), offset_);
}

namespace seqspace {

double shift_metric(const Cluster& a, const Cluster& b) {
  const auto& av = a.values();
  const auto& bv = b.values();
  const double disjoint = std::max(a.sup_norm(), b.sup_norm());
  if (av.empty() || bv.empty()) return disjoint;
  const long la = static_cast<long>(av.size());
  const long lb = static_cast<long>(bv.size());
  double best = disjoint;
  // Relative shift k places bv over indices [k, k+lb) against av on [0, la).
  for (long k = -lb + 1; k <= la - 1; ++k) {
    double d = 0.0;
    const long lo = std::min<long>(0, k);
    const long hi = std::max<long>(la, k + lb);
    for (long i = lo; i < hi && d < best; ++i) {
      const double x = (i >= 0 && i < la) ? av[static_cast<std::size_t>(i)] : 0.0;
      const double y = (i >= k && i < k + lb)
                           ? bv[static_cast<std::size_t>(i - k)]
                           : 0.0;
      d = std::max(d, std::abs(x - y));
    }
    best = std::min(best, d);
  }
  return best;
}

double boundedness_metric(const Cluster& a, const Cluster& b) {
  if (a.is_zero() || b.is_zero())
    throw std::domain_error("boundedness_metric: zero element");
  const double d = std::min(shift_metric(a, b), 1.0);
  const double inv_gap = std::abs(1.0 / a.sup_norm() - 1.0 / b.sup_norm());
  return std::max(d, inv_gap);
}

Cluster truncate(const Cluster& a, double zeta) {
  if (zeta <= 0.0) throw std::invalid_argument("truncate: zeta must be > 0");
  std::vector<double> v(a.values());
  for (double& x : v)
    if (std::abs(x) <= zeta) x = 0.0;
  return Cluster(std::move(v), a.offset());
}

Polar polar(const Cluster& a) {
  if (a.is_zero()) throw std::domain_error("polar: zero element");
  const double m = a.sup_norm();
  return Polar{m, a.scaled(1.0 / m)};
}

}  // namespace seqspace
}  // namespace extremes
