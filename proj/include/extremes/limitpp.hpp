#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "extremes/cluster.hpp"
#include "extremes/clusters.hpp"
#include "extremes/functionals.hpp"
#include "extremes/rng.hpp"

namespace extremes::limitpp {

/// A generator of unit-sup-norm cluster shapes.
using QSampler = std::function<Cluster(Rng&)>;

/// Always emits the given shape normalized to unit sup norm.
QSampler deterministic_q(const Cluster& shape);
/// Resamples uniformly from an empirical collection of shapes (each
/// normalized on construction).
QSampler empirical_q(std::vector<Cluster> shapes);
/// The limiting shape of a linear model: normalized coefficients with a
/// random +-1 factor.
QSampler linear_q(const models::LinearModel& model);
/// Single-point shape +-1 with P(+1) = p (the iid cluster shape).
QSampler sign_point_q(double p);

struct LimitPoint {
  double t;
  double p;
  Cluster q;
};

/// Finite restriction P > p_min of the limiting Poisson process of clusters.
struct LimitPointProcess {
  std::vector<LimitPoint> points;  // sorted by time
  double theta = 1.0;
  double alpha = 1.0;
  double p_min = 1.0;
  double t_max = 1.0;
};

/// Point count Poisson(t_max * theta * p_min^{-alpha}), times uniform,
/// magnitudes p_min-floored Pareto(alpha), shapes i.i.d. from q and
/// independent of everything else.
LimitPointProcess sample_limit_pp(double theta, double alpha, const QSampler& q,
                                  double p_min, double t_max, Rng& rng);
LimitPointProcess sample_limit_pp(double theta, double alpha, const QSampler& q,
                                  double p_min, double t_max,
                                  std::uint64_t seed);

struct NuLimitValue {
  double value = 0.0;
  double se = 0.0;  // Monte Carlo error over the shape law only
};

/// theta * E_Q[ int f(yQ) alpha y^{-alpha-1} dy ]. Uses the functional's
/// exact radial integral when available; otherwise importance-samples the
/// magnitude from the Pareto law restricted to (floor, inf), whose total
/// mass theta * floor^{-alpha} is applied analytically.
NuLimitValue nu_limit(const ClusterFunctional& f, double theta, double alpha,
                      const QSampler& q, std::size_t mc_samples,
                      std::uint64_t seed);

struct NuComparisonRow {
  std::string functional;
  double empirical = 0.0;
  double empirical_se = 0.0;
  double limit = 0.0;
  double limit_se = 0.0;
  double z = 0.0;
};

/// Replicates series, averages the per-series block functional sums, and
/// scores them against the limit intensity values.
std::vector<NuComparisonRow> compare_empirical_limit(
    const clusters::SeriesGen& gen, const clusters::BlockingPlan& plan,
    double theta, double alpha, const QSampler& q,
    const std::vector<ClusterFunctional>& functionals,
    std::size_t replications, std::size_t limit_mc, std::uint64_t seed,
    int threads = 1);

}  // namespace extremes::limitpp
