#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extremes/cluster.hpp"
#include "extremes/rng.hpp"

namespace extremes::models {

/// Two-sided Pareto law: P(|X| > x) = x^{-alpha} exactly for x >= 1, the
/// sign is +1 with probability p independently of |X|. Keeping the modulus
/// exactly Pareto makes tail probabilities and truncated moments closed-form.
struct RegVarLaw {
  double alpha = 1.0;
  double p = 1.0;
  void validate() const;
};

/// Finite-support linear filter X_t = sum_j c_j xi_{t-j}, innovations
/// two-sided Pareto. coeffs[k] is c_{j_min + k}; the coefficient at lag 0
/// must be present and nonzero.
struct LinearModel {
  std::vector<double> coeffs;
  long j_min = 0;
  RegVarLaw innovation;
  void validate() const;
  long j_max() const { return j_min + static_cast<long>(coeffs.size()) - 1; }
  double coeff_at(long j) const;
  double max_abs_coeff() const;
  /// sum_j |c_j|^alpha
  double abs_coeff_power_sum() const;
};

/// GARCH(1,1): X_t = sigma_t Z_t, sigma_t^2 = a0 + a1 X_{t-1}^2 + b1
/// sigma_{t-1}^2, standard normal innovations. The tail index is never
/// derived here; supply tail_alpha_hint or estimate it with hill_estimate.
struct GarchModel {
  double a0 = 1.0;
  double a1 = 0.1;
  double b1 = 0.1;
  std::optional<double> tail_alpha_hint;
  void validate() const;
};

struct SeriesSample {
  std::vector<double> values;
  std::string model_desc;
  std::uint64_t seed = 0;
  std::size_t size() const { return values.size(); }
};

SeriesSample sample_regvar(const RegVarLaw& law, std::size_t n,
                           std::uint64_t seed);

/// The scaling sequence a_n with n P(|X_0| > a_n) -> 1: n^{1/alpha} for the
/// Pareto law and (n sum|c_j|^alpha)^{1/alpha} for a linear model (tail
/// equivalence applied to the innovation quantile).
double quantile_an(const RegVarLaw& law, std::size_t n);
double quantile_an(const LinearModel& model, std::size_t n);
/// Requires tail_alpha_hint; returns n^{1/hint} (Pareto-convention scale).
double quantile_an(const GarchModel& model, std::size_t n);

SeriesSample simulate_linear(const LinearModel& model, std::size_t n,
                             std::uint64_t seed);

/// Apply the filter to explicit innovations; innovations must have length
/// n + (j_max - j_min). Exposed as the deterministic debug hook.
std::vector<double> linear_filter(const LinearModel& model,
                                  const std::vector<double>& innovations);

SeriesSample simulate_garch(const GarchModel& model, std::size_t n,
                            std::size_t burnin, std::uint64_t seed);

/// Hill estimator: reciprocal mean log-spacing of the top-k order statistics
/// of |X| against the (k+1)-th. Throws on k out of range; returns +inf when
/// all top spacings vanish (constant modulus).
double hill_estimate(const SeriesSample& sample, std::size_t k);

/// theta = max_j |c_j|^alpha / sum_j |c_j|^alpha for the linear model.
double theta_linear(const LinearModel& model);

/// Probability that the spectral tail process of the linear model has
/// Theta_0 = +1 (the process-level sign probability; differs from the
/// innovation p when some coefficients are negative).
double linear_sign_prob(const LinearModel& model);

/// One draw of the limiting cluster shape of the linear model: the
/// coefficient vector normalized by max|c_i|, multiplied by a +-1 innovation
/// sign. Deterministic up to the sign.
Cluster q_sequence_linear(const LinearModel& model, Rng& rng);
Cluster q_sequence_linear(const LinearModel& model, std::uint64_t seed);

/// All rows (X_{i-m..i+m})/|X_i| over exceedances |X_i| > u with a full
/// window inside the series. Throws (with the count in the message) when
/// fewer than min_exceedances rows qualify.
std::vector<std::vector<double>> spectral_tail_empirical(
    const SeriesSample& sample, double u, int m,
    std::size_t min_exceedances = 100);

/// Truncated-mean of the Pareto law at level u >= 1:
/// E[X 1{|X| <= u}] = (2p-1) * alpha (1 - u^{1-alpha})/(alpha-1), with the
/// log form at alpha = 1.
double pareto_truncated_mean(const RegVarLaw& law, double u);

std::string describe(const RegVarLaw& law);
std::string describe(const LinearModel& model);
std::string describe(const GarchModel& model);

}  // namespace extremes::models
