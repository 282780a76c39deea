#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "extremes/cluster.hpp"
#include "extremes/limitpp.hpp"
#include "extremes/rng.hpp"

namespace extremes::records {

/// Number of records above threshold y in the stored left-to-right order:
/// count of j with x_j > max(y, sup_{i<j} x_i). Records are counted with
/// strict inequality; coordinates are expected nonnegative.
int cluster_records(const Cluster& x, double y);

/// 1-based indices i with X_i > max_{j<i} X_j (the first observation is
/// always a record).
std::vector<std::size_t> series_record_times(const std::vector<double>& x);

/// A counting measure on (0, infty): strictly increasing times with positive
/// integer multiplicities.
struct RecordMeasure {
  std::vector<std::pair<double, int>> atoms;
  long total_mass() const;
};

/// Records of a time-ordered list of clusters: each cluster contributes
/// cluster_records against the running maximum of the previous sup norms;
/// zero-multiplicity atoms are omitted. Throws on duplicate times; requires
/// nonnegative coordinates.
RecordMeasure record_pp_from_clusters(
    const std::vector<std::pair<double, Cluster>>& points);

/// The limiting record process on a window [s, T]: atom count
/// Poisson(log(T/s)), times with density 1/(x log(T/s)), multiplicities
/// i.i.d. cluster_records(Q, 1/sigma) with sigma Pareto(alpha).
RecordMeasure simulate_limit_records(double alpha, const limitpp::QSampler& q,
                                     double s, double t, Rng& rng);
RecordMeasure simulate_limit_records(double alpha, const limitpp::QSampler& q,
                                     double s, double t, std::uint64_t seed);

/// The two-point multiplicity law of the order-1 moving average with
/// coefficient c > 1: {1: 1 - c^{-alpha}, 2: c^{-alpha}}.
std::map<int, double> ma1_kappa_law(double c, double alpha);

/// Exact multiplicity law for a deterministic nonnegative unit-sup-norm
/// shape: with record levels r_1 < ... < r_m = 1 of the shape,
/// P(kappa >= k) = r_{m-k+1}^alpha.
std::map<int, double> exact_kappa_law(const Cluster& q_unit, double alpha);

/// Warns when a deterministic linear cluster has repeated nonzero magnitudes
/// (the limit law requires mutually different nonzero coordinates).
bool q_has_distinct_nonzero_coords(const Cluster& q);

struct RecordExperimentReport {
  std::size_t replications = 0;
  double window_s = 0.0;
  double window_t = 0.0;
  // empirical block-merged atoms from the raw series
  std::vector<long> atom_counts;          // per replication
  std::vector<int> multiplicities;        // pooled
  double kappa2_hat = 0.0;                // P(kappa = 2)
  double kappa2_se = 0.0;
  double atom_chi2_p = 1.0;               // against Poisson(log(t/s))
  double limit_kappa2 = 0.0;              // from the sampled limit law
  double limit_atom_chi2_p = 1.0;
  bool empty = false;
};

/// Builds record measures from replicated raw series (records merged per
/// r_n-block, restricted to the scaled window) and compares the atom-count
/// and multiplicity laws against the limit sampler.
RecordExperimentReport record_convergence_experiment(
    const std::function<std::vector<double>(std::uint64_t)>& series_gen,
    std::size_t n, std::size_t r_n, double window_s, double window_t,
    double alpha, const limitpp::QSampler& q, std::size_t replications,
    std::size_t limit_draws, std::uint64_t seed, int threads = 1);

}  // namespace extremes::records
