#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "extremes/cluster.hpp"
#include "extremes/functionals.hpp"
#include "extremes/models.hpp"

namespace extremes::clusters {

/// How a series of length n is cut into k_n = floor(n/r_n) blocks of length
/// r_n, scaled by a_n, with exceedances measured against a_n * u.
struct BlockingPlan {
  std::size_t n = 0;
  std::size_t r_n = 1;
  double a_n = 1.0;
  double u = 1.0;

  std::size_t k_n() const { return n / r_n; }
  double threshold() const { return a_n * u; }
  void validate() const;
  /// r_n = floor(sqrt(n)), u = 1.
  static BlockingPlan default_for(std::size_t n, double a_n);
};

/// The point process of scaled blocks: times i/k_n, zero blocks omitted.
struct ClusterPP {
  std::vector<std::pair<double, Cluster>> points;
  BlockingPlan plan;
};

ClusterPP block_series(const models::SeriesSample& sample,
                       const BlockingPlan& plan);

/// Raw counts behind the block-maximum extremal-index estimate; counts from
/// independent replications add.
struct ThetaCounts {
  std::size_t blocks = 0;
  std::size_t block_exceedances = 0;
  std::size_t values = 0;
  std::size_t marginal_exceedances = 0;
  std::size_t r_n = 0;

  void accumulate(const models::SeriesSample& sample, const BlockingPlan& plan);
  ThetaCounts& operator+=(const ThetaCounts& other);
};

struct ThetaEstimate {
  double value = 0.0;
  double se = 0.0;       // delta-method on the two exceedance frequencies
  bool low_counts = false;  // fewer than 30 exceeding blocks
};

ThetaEstimate theta_from_counts(const ThetaCounts& counts);

/// P(block max > a_n u) / (r_n P(|X_0| > a_n u)) from a single series.
/// Throws when the series has no marginal exceedance.
ThetaEstimate empirical_theta(const models::SeriesSample& sample,
                              const BlockingPlan& plan);

/// Empirical P(max_{m <= |i| <= r_n} |X_i| > a_n u given |X_0| > a_n u) over
/// anchors with a full window inside the series.
struct AnticlusterCounts {
  std::size_t anchors = 0;
  std::size_t recurrences = 0;
  void accumulate(const models::SeriesSample& sample, const BlockingPlan& plan,
                  std::size_t m);
};
double anticluster_diagnostic(const models::SeriesSample& sample,
                              const BlockingPlan& plan, std::size_t m);

/// Qualifying blocks (block max above a_n u) decomposed as magnitude
/// L = M / (a_n u) and shape Q = block / M with sup norm exactly 1.
struct ClusterLawPair {
  double l;
  Cluster q;
};
std::vector<ClusterLawPair> empirical_cluster_law(
    const models::SeriesSample& sample, const BlockingPlan& plan);

struct LQTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double p_asymptotic = 1.0;
  bool degenerate = false;  // constant g; p forced to 1
  std::size_t n_low = 0;
  std::size_t n_high = 0;
};

/// Split the pairs at v = median(L) and compare the law of g(Q) on the two
/// sides with a two-sample KS test. The returned p-value is the permutation
/// p-value of the KS statistic; the asymptotic one is reported alongside.
LQTestResult independence_test_LQ(const std::vector<ClusterLawPair>& pairs,
                                  const std::function<double(const Cluster&)>& g,
                                  std::size_t min_pairs = 500,
                                  int permutations = 999,
                                  std::uint64_t seed = 12345);

/// k_n * mean over blocks of f(X_{n,i}); estimates nu_n(f).
double cluster_functional_nu(const models::SeriesSample& sample,
                             const BlockingPlan& plan,
                             const ClusterFunctional& f);

/// Generates one series per replication from a derived seed.
using SeriesGen =
    std::function<models::SeriesSample(std::uint64_t replication_seed)>;

/// A time-dependent functional on (i/k_n, block) pairs.
using TimeBlockFunctional =
    std::function<double(double t, const Cluster& block)>;

struct LaplaceGap {
  double gap = 0.0;
  double se = 0.0;
  double dependent_term = 0.0;
  double independent_term = 0.0;
  bool low_replications = false;
};

/// Empirical check of the asymptotic block-independence hypothesis: the
/// difference between E[exp(-sum_i f(i/k_n, X_{n,i}))] over real series and
/// the same expectation with blocks resampled independently across
/// replications, with a bootstrap standard error.
LaplaceGap laplace_gap_diagnostic(const SeriesGen& gen,
                                  const BlockingPlan& plan,
                                  const TimeBlockFunctional& f,
                                  std::size_t replications, std::uint64_t seed,
                                  int threads = 1,
                                  int bootstrap_resamples = 200);

}  // namespace extremes::clusters
