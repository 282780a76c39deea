#include "extremes/limitpp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extremes/stats.hpp"

namespace extremes::limitpp {

QSampler deterministic_q(const Cluster& shape) {
  if (shape.is_zero())
    throw std::invalid_argument("deterministic_q: zero shape");
  const Cluster unit = seqspace::polar(shape).shape;
  return [unit](Rng&) { return unit; };
}

QSampler empirical_q(std::vector<Cluster> shapes) {
  if (shapes.empty())
    throw std::invalid_argument("empirical_q: empty shape collection");
  for (auto& s : shapes) {
    if (s.is_zero()) throw std::invalid_argument("empirical_q: zero shape");
    s = seqspace::polar(s).shape;
  }
  return [shapes = std::move(shapes)](Rng& rng) {
    return shapes[rng.uniform_index(shapes.size())];
  };
}

QSampler linear_q(const models::LinearModel& model) {
  model.validate();
  return [model](Rng& rng) { return models::q_sequence_linear(model, rng); };
}

QSampler sign_point_q(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("sign_point_q: p in [0,1]");
  return [p](Rng& rng) { return Cluster({rng.sign(p)}); };
}

LimitPointProcess sample_limit_pp(double theta, double alpha, const QSampler& q,
                                  double p_min, double t_max, Rng& rng) {
  if (!(theta > 0.0) || !(alpha > 0.0) || !(t_max > 0.0))
    throw std::invalid_argument("sample_limit_pp: parameters must be > 0");
  if (!(p_min > 0.0))
    throw std::invalid_argument(
        "sample_limit_pp: p_min = 0 gives infinite intensity");
  const double mean = t_max * theta * std::pow(p_min, -alpha);
  const long count = rng.poisson(mean);
  LimitPointProcess out;
  out.theta = theta;
  out.alpha = alpha;
  out.p_min = p_min;
  out.t_max = t_max;
  out.points.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    LimitPoint pt;
    pt.t = t_max * rng.uniform01();
    pt.p = p_min * rng.pareto(alpha);
    pt.q = q(rng);
    out.points.push_back(std::move(pt));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const LimitPoint& a, const LimitPoint& b) { return a.t < b.t; });
  return out;
}

LimitPointProcess sample_limit_pp(double theta, double alpha, const QSampler& q,
                                  double p_min, double t_max,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return sample_limit_pp(theta, alpha, q, p_min, t_max, rng);
}

NuLimitValue nu_limit(const ClusterFunctional& f, double theta, double alpha,
                      const QSampler& q, std::size_t mc_samples,
                      std::uint64_t seed) {
  if (!(f.floor > 0.0))
    throw std::invalid_argument(
        "nu_limit: functional must declare a support floor");
  if (mc_samples == 0) throw std::invalid_argument("nu_limit: mc_samples == 0");
  Rng rng(seed);
  std::vector<double> draws(mc_samples);
  if (f.radial) {
    for (auto& d : draws) d = theta * f.radial(q(rng), alpha);
  } else {
    // Magnitude importance-sampled from Pareto(alpha) on (floor, inf); the
    // restricted intensity mass theta * floor^{-alpha} enters analytically.
    const double mass = theta * std::pow(f.floor, -alpha);
    for (auto& d : draws) {
      const Cluster shape = q(rng);
      const double y = f.floor * rng.pareto(alpha);
      d = mass * f(shape.scaled(y));
    }
  }
  NuLimitValue out;
  out.value = stats::mean(draws);
  out.se = stats::se_of_mean(draws);
  return out;
}

std::vector<NuComparisonRow> compare_empirical_limit(
    const clusters::SeriesGen& gen, const clusters::BlockingPlan& plan,
    double theta, double alpha, const QSampler& q,
    const std::vector<ClusterFunctional>& functionals,
    std::size_t replications, std::size_t limit_mc, std::uint64_t seed,
    int threads) {
  plan.validate();
  if (replications < 2)
    throw std::invalid_argument("compare_empirical_limit: need replications");
  std::vector<std::vector<double>> per_rep(
      functionals.size(), std::vector<double>(replications, 0.0));
  parallel_for(replications, threads, [&](std::size_t rep) {
    const models::SeriesSample s = gen(Rng::derive(seed, rep));
    const clusters::ClusterPP pp = clusters::block_series(s, plan);
    for (std::size_t fi = 0; fi < functionals.size(); ++fi) {
      double acc = 0.0;
      for (const auto& [t, c] : pp.points) acc += functionals[fi](c);
      per_rep[fi][rep] = acc;
    }
  });
  std::vector<NuComparisonRow> rows;
  rows.reserve(functionals.size());
  for (std::size_t fi = 0; fi < functionals.size(); ++fi) {
    NuComparisonRow row;
    row.functional = functionals[fi].name;
    row.empirical = stats::mean(per_rep[fi]);
    row.empirical_se = stats::se_of_mean(per_rep[fi]);
    const NuLimitValue lim = nu_limit(functionals[fi], theta, alpha, q,
                                      limit_mc, Rng::derive(seed, 7700 + fi));
    row.limit = lim.value;
    row.limit_se = lim.se;
    const double denom = std::sqrt(row.empirical_se * row.empirical_se +
                                   row.limit_se * row.limit_se);
    row.z = denom > 0.0 ? (row.empirical - row.limit) / denom : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace extremes::limitpp
