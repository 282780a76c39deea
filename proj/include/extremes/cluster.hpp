#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace extremes {

/// A finite-support two-sided real sequence, stored in canonical trimmed
/// form: leading and trailing zeros are removed, the empty vector is the
/// zero element. Equality is equality of the trimmed coordinate vectors, so
/// values related by an index shift compare equal; the offset of the first
/// stored coordinate is kept only as metadata.
class Cluster {
 public:
  Cluster() = default;
  Cluster(std::vector<double> values, long offset = 0);

  bool is_zero() const { return values_.empty(); }
  std::size_t support_size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  long offset() const { return offset_; }

  double sup_norm() const;
  /// Sum of coordinates.
  double sum() const;
  /// Sum of absolute coordinates.
  double abs_sum() const;

  /// Range of the anchored prefix sums sum_{j<=k}, k sweeping from below the
  /// support to past it. The empty prefix contributes 0, so the range always
  /// contains 0.
  std::pair<double, double> prefix_sum_range() const;

  Cluster scaled(double factor) const;
  Cluster negated() const { return scaled(-1.0); }
  /// Same values with the offset moved by k (a representative shift; the
  /// equivalence class is unchanged).
  Cluster shifted(long k) const { return Cluster(values_, offset_ + k); }

  friend bool operator==(const Cluster& a, const Cluster& b) {
    return a.values_ == b.values_;
  }
  friend bool operator!=(const Cluster& a, const Cluster& b) {
    return !(a == b);
  }

 private:
  std::vector<double> values_;
  long offset_ = 0;
};

namespace seqspace {

/// Exact shift-invariant distance: the infimum of the sup distance over all
/// relative shifts of representatives. Attained for finite supports, so the
/// scan over overlapping shifts together with the disjoint-support value
/// max(sup a, sup b) is exact.
double shift_metric(const Cluster& a, const Cluster& b);

/// (d~ ^ 1) v |1/||a|| - 1/||b|||, the boundedness-controlling metric on the
/// punctured space. Throws std::domain_error on the zero element.
double boundedness_metric(const Cluster& a, const Cluster& b);

/// Zero out coordinates with |x_i| <= zeta and re-canonicalize.
Cluster truncate(const Cluster& a, double zeta);

struct Polar {
  double magnitude;
  Cluster shape;  // sup-norm exactly 1
};

/// Split a nonzero cluster into (sup norm, unit-sup-norm shape).
/// Throws std::domain_error on the zero element.
Polar polar(const Cluster& a);

}  // namespace seqspace
}  // namespace extremes
