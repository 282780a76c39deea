#include "extremes/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extremes/rng.hpp"
#include "extremes/stats.hpp"

namespace extremes {

ClusterFunctional sup_threshold_functional(double y0) {
  if (!(y0 > 0.0))
    throw std::invalid_argument("sup_threshold_functional: y0 must be > 0");
  ClusterFunctional f;
  f.name = "ind_sup_gt_" + std::to_string(y0);
  f.floor = y0;
  f.eval = [y0](const Cluster& c) { return c.sup_norm() > y0 ? 1.0 : 0.0; };
  f.radial = [y0](const Cluster&, double alpha) {
    return std::pow(y0, -alpha);
  };
  return f;
}

ClusterFunctional capped_abs_sum_functional(double cap, double floor) {
  if (!(cap > 0.0) || !(floor > 0.0))
    throw std::invalid_argument("capped_abs_sum_functional: cap, floor > 0");
  ClusterFunctional f;
  f.name = "capped_abs_sum_" + std::to_string(cap) + "_gt_" +
           std::to_string(floor);
  f.floor = floor;
  f.eval = [cap, floor](const Cluster& c) {
    if (c.sup_norm() <= floor) return 0.0;
    return std::min(c.abs_sum(), cap);
  };
  f.radial = [cap, floor](const Cluster& shape, double alpha) {
    // int_floor^inf min(yW, cap) alpha y^{-alpha-1} dy with W = sum|q_j|.
    const double w = shape.abs_sum();
    const double split = cap / w;
    if (split <= floor) return cap * std::pow(floor, -alpha);
    double ramp;  // int_floor^split y alpha y^{-alpha-1} dy
    if (alpha == 1.0)
      ramp = std::log(split / floor);
    else
      ramp = alpha * (std::pow(split, 1.0 - alpha) -
                      std::pow(floor, 1.0 - alpha)) /
             (1.0 - alpha);
    return w * ramp + cap * std::pow(split, -alpha);
  };
  return f;
}

namespace clusters {

void BlockingPlan::validate() const {
  if (r_n < 1 || r_n > n)
    throw std::invalid_argument("BlockingPlan: require 1 <= r_n <= n");
  if (k_n() < 1) throw std::invalid_argument("BlockingPlan: k_n < 1");
  if (!(a_n > 0.0)) throw std::invalid_argument("BlockingPlan: a_n must be > 0");
  if (!(u > 0.0)) throw std::invalid_argument("BlockingPlan: u must be > 0");
}

BlockingPlan BlockingPlan::default_for(std::size_t n, double a_n) {
  BlockingPlan plan;
  plan.n = n;
  plan.r_n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)))));
  plan.a_n = a_n;
  plan.u = 1.0;
  return plan;
}

ClusterPP block_series(const models::SeriesSample& sample,
                       const BlockingPlan& plan) {
  plan.validate();
  if (sample.size() < plan.n)
    throw std::invalid_argument("block_series: sample shorter than plan.n");
  ClusterPP out;
  out.plan = plan;
  const std::size_t k = plan.k_n();
  const double inv_a = 1.0 / plan.a_n;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> block(plan.r_n);
    for (std::size_t j = 0; j < plan.r_n; ++j)
      block[j] = sample.values[i * plan.r_n + j] * inv_a;
    Cluster c(std::move(block));
    if (c.is_zero()) continue;  // zero blocks carry no point
    const double t = static_cast<double>(i + 1) / static_cast<double>(k);
    out.points.emplace_back(t, std::move(c));
  }
  return out;
}

void ThetaCounts::accumulate(const models::SeriesSample& sample,
                             const BlockingPlan& plan) {
  plan.validate();
  if (r_n == 0) r_n = plan.r_n;
  if (r_n != plan.r_n)
    throw std::invalid_argument("ThetaCounts: mixed block lengths");
  const double thr = plan.threshold();
  const std::size_t k = plan.k_n();
  for (std::size_t i = 0; i < k; ++i) {
    double m = 0.0;
    for (std::size_t j = 0; j < plan.r_n; ++j)
      m = std::max(m, std::abs(sample.values[i * plan.r_n + j]));
    if (m > thr) ++block_exceedances;
  }
  blocks += k;
  for (std::size_t i = 0; i < plan.n; ++i)
    if (std::abs(sample.values[i]) > thr) ++marginal_exceedances;
  values += plan.n;
}

ThetaCounts& ThetaCounts::operator+=(const ThetaCounts& other) {
  if (r_n == 0) r_n = other.r_n;
  if (other.r_n != 0 && other.r_n != r_n)
    throw std::invalid_argument("ThetaCounts: mixed block lengths");
  blocks += other.blocks;
  block_exceedances += other.block_exceedances;
  values += other.values;
  marginal_exceedances += other.marginal_exceedances;
  return *this;
}

ThetaEstimate theta_from_counts(const ThetaCounts& counts) {
  if (counts.marginal_exceedances == 0)
    throw std::runtime_error(
        "empirical_theta: no marginal exceedances above a_n u");
  const double p_block = static_cast<double>(counts.block_exceedances) /
                         static_cast<double>(counts.blocks);
  const double p_marg = static_cast<double>(counts.marginal_exceedances) /
                        static_cast<double>(counts.values);
  ThetaEstimate est;
  est.value = p_block / (static_cast<double>(counts.r_n) * p_marg);
  // Both frequencies are driven by the same rare exceedances, so treat the
  // counts as near-Poisson: relative variance 1/N1 + 1/N2 - 2/max(N1,N2)
  // underestimates correlation; keep the conservative uncorrelated form.
  const double rel_var =
      1.0 / static_cast<double>(counts.block_exceedances == 0
                                    ? 1
                                    : counts.block_exceedances) +
      1.0 / static_cast<double>(counts.marginal_exceedances);
  est.se = est.value * std::sqrt(rel_var);
  est.low_counts = counts.block_exceedances < 30;
  return est;
}

ThetaEstimate empirical_theta(const models::SeriesSample& sample,
                              const BlockingPlan& plan) {
  ThetaCounts counts;
  counts.accumulate(sample, plan);
  return theta_from_counts(counts);
}

void AnticlusterCounts::accumulate(const models::SeriesSample& sample,
                                   const BlockingPlan& plan, std::size_t m) {
  plan.validate();
  if (m >= plan.r_n)
    throw std::invalid_argument("anticluster_diagnostic: require m < r_n");
  const double thr = plan.threshold();
  const auto& x = sample.values;
  const std::size_t r = plan.r_n;
  if (x.size() < 2 * r + 1) return;
  for (std::size_t i = r; i + r < x.size(); ++i) {
    if (std::abs(x[i]) <= thr) continue;
    ++anchors;
    bool hit = false;
    for (std::size_t lag = m; lag <= r && !hit; ++lag) {
      if (lag == 0) continue;
      hit = std::abs(x[i - lag]) > thr || std::abs(x[i + lag]) > thr;
    }
    if (hit) ++recurrences;
  }
}

double anticluster_diagnostic(const models::SeriesSample& sample,
                              const BlockingPlan& plan, std::size_t m) {
  AnticlusterCounts counts;
  counts.accumulate(sample, plan, m);
  if (counts.anchors == 0)
    throw std::runtime_error("anticluster_diagnostic: no exceedances");
  return static_cast<double>(counts.recurrences) /
         static_cast<double>(counts.anchors);
}

std::vector<ClusterLawPair> empirical_cluster_law(
    const models::SeriesSample& sample, const BlockingPlan& plan) {
  plan.validate();
  const double thr = plan.threshold();
  std::vector<ClusterLawPair> out;
  const std::size_t k = plan.k_n();
  for (std::size_t i = 0; i < k; ++i) {
    double m = 0.0;
    for (std::size_t j = 0; j < plan.r_n; ++j)
      m = std::max(m, std::abs(sample.values[i * plan.r_n + j]));
    if (m <= thr) continue;
    std::vector<double> shape(plan.r_n);
    for (std::size_t j = 0; j < plan.r_n; ++j)
      shape[j] = sample.values[i * plan.r_n + j] / m;
    out.push_back(ClusterLawPair{m / thr, Cluster(std::move(shape))});
  }
  return out;
}

LQTestResult independence_test_LQ(
    const std::vector<ClusterLawPair>& pairs,
    const std::function<double(const Cluster&)>& g, std::size_t min_pairs,
    int permutations, std::uint64_t seed) {
  if (pairs.size() < min_pairs)
    throw std::invalid_argument("independence_test_LQ: too few pairs");
  std::vector<double> ls(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) ls[i] = pairs[i].l;
  const double v = stats::quantile(ls, 0.5);
  std::vector<double> low, high;
  for (const auto& pr : pairs)
    (pr.l > v ? high : low).push_back(g(pr.q));
  LQTestResult res;
  res.n_low = low.size();
  res.n_high = high.size();
  if (low.empty() || high.empty()) {
    res.degenerate = true;
    return res;
  }
  const auto [lo_min, lo_max] = std::minmax_element(low.begin(), low.end());
  const auto [hi_min, hi_max] = std::minmax_element(high.begin(), high.end());
  if (*lo_min == *lo_max && *hi_min == *hi_max && *lo_min == *hi_min) {
    res.degenerate = true;  // constant g carries no information
    return res;
  }
  res.statistic = stats::ks_statistic(low, high);
  res.p_asymptotic =
      stats::ks_asymptotic_pvalue(res.statistic, low.size(), high.size());
  res.p_value = stats::ks_permutation_pvalue(low, high, permutations, seed);
  return res;
}

double cluster_functional_nu(const models::SeriesSample& sample,
                             const BlockingPlan& plan,
                             const ClusterFunctional& f) {
  plan.validate();
  if (!(f.floor > 0.0))
    throw std::invalid_argument(
        "cluster_functional_nu: functional must declare a support floor");
  const ClusterPP pp = block_series(sample, plan);
  double acc = 0.0;
  for (const auto& [t, c] : pp.points) acc += f(c);
  return acc;  // k_n * mean over all k_n blocks (zero blocks contribute 0)
}

LaplaceGap laplace_gap_diagnostic(const SeriesGen& gen,
                                  const BlockingPlan& plan,
                                  const TimeBlockFunctional& f,
                                  std::size_t replications, std::uint64_t seed,
                                  int threads, int bootstrap_resamples) {
  plan.validate();
  if (replications < 2)
    throw std::invalid_argument("laplace_gap_diagnostic: need replications");
  const std::size_t k = plan.k_n();
  // f evaluated per block for every replication; exp(-sum) gives the
  // dependent term, resampling blocks across replications the independent one.
  std::vector<std::vector<double>> fvals(replications,
                                         std::vector<double>(k, 0.0));
  parallel_for(replications, threads, [&](std::size_t rep) {
    const models::SeriesSample s = gen(Rng::derive(seed, rep));
    if (s.size() < plan.n)
      throw std::invalid_argument("laplace_gap_diagnostic: short series");
    const double inv_a = 1.0 / plan.a_n;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> block(plan.r_n);
      for (std::size_t j = 0; j < plan.r_n; ++j)
        block[j] = s.values[i * plan.r_n + j] * inv_a;
      const double t = static_cast<double>(i + 1) / static_cast<double>(k);
      fvals[rep][i] = f(t, Cluster(std::move(block)));
    }
  });

  std::vector<double> dep(replications), indep(replications);
  Rng shuffle_rng(Rng::derive(seed, 0x5eedb10cULL));
  for (std::size_t rep = 0; rep < replications; ++rep) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += fvals[rep][i];
    dep[rep] = std::exp(-s);
    double si = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      si += fvals[shuffle_rng.uniform_index(replications)][i];
    indep[rep] = std::exp(-si);
  }

  LaplaceGap out;
  out.dependent_term = stats::mean(dep);
  out.independent_term = stats::mean(indep);
  out.gap = out.dependent_term - out.independent_term;
  out.low_replications = replications < 50;

  // Bootstrap over replications; the independent term is re-estimated from
  // resampled rows so both sources of noise enter the spread.
  Rng boot_rng(Rng::derive(seed, 0xb007ULL));
  std::vector<double> gaps(static_cast<std::size_t>(bootstrap_resamples));
  for (int b = 0; b < bootstrap_resamples; ++b) {
    std::vector<std::size_t> pick(replications);
    for (auto& p : pick) p = boot_rng.uniform_index(replications);
    double dep_b = 0.0, indep_b = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
      dep_b += dep[pick[r]];
      double si = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        si += fvals[pick[boot_rng.uniform_index(replications)]][i];
      indep_b += std::exp(-si);
    }
    gaps[static_cast<std::size_t>(b)] =
        (dep_b - indep_b) / static_cast<double>(replications);
  }
  out.se = stats::sample_sd(gaps);
  return out;
}

}  // namespace clusters
}  // namespace extremes
