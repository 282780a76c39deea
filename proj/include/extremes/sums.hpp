#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "extremes/cluster.hpp"
#include "extremes/espace.hpp"
#include "extremes/limitpp.hpp"
#include "extremes/models.hpp"

namespace extremes::sums {

/// S_n as a step path: jumps of X_i/a_n at t = i/n, starting at 0.
espace::StepPath partial_sum_path(const std::vector<double>& values,
                                  double a_n);

struct CenteringSpec {
  enum class Mode { none, truncated_mean };
  Mode mode = Mode::none;
  /// Truncation level of the limit construction (matches the point process
  /// magnitude floor when alpha >= 1).
  double epsilon = 1.0;
  /// E[(X_1/a_n) 1{|X_1| <= a_n}] when known in closed form; otherwise the
  /// plug-in estimate from the series is used.
  std::optional<double> analytic_mean;
  /// Sign probability p of the limiting jump measure (drives the analytic
  /// drift of the truncated limit construction).
  double sign_prob = 1.0;
};

/// V_n: the partial sum path minus floor(nt) times the truncated mean.
/// low_sample is set when a plug-in mean had to be estimated from fewer than
/// 1000 values.
espace::StepPath centered_path(const std::vector<double>& values, double a_n,
                               const CenteringSpec& spec,
                               bool* low_sample = nullptr);

/// int_{eps < |x| <= 1} x mu(dx) for the limit measure with tail index alpha
/// and sign probability p.
double mu_truncated_mean(double alpha, double p, double eps);

/// The decorated limit path V' built from a sampled limit point process:
/// jumps of P_i sum_j Q_{i,j} at T_i for alpha < 1, the epsilon-truncated
/// jumps minus the analytic drift t * m_eps for alpha >= 1; decorations are
/// the anchored prefix-sum ranges. The continuous drift is discretized on
/// `grid` steps (decoration translations stay exact). Point times are
/// affinely rescaled from [0, t_max] onto [0, 1], where decorated paths
/// live.
espace::DecoratedPath limit_decorated_path(const limitpp::LimitPointProcess& pp,
                                           double alpha,
                                           const CenteringSpec& centering,
                                           int grid = 1024);

/// Exact window maxima of the limit path V' (step part plus linear drift
/// plus decorations) without discretizing the drift. Unlike
/// limit_decorated_path, times are kept on the process scale [0, t_max].
class LimitPathEvaluator {
 public:
  /// extra_drift adds a linear term on top of the centering drift (used for
  /// the mean of the truncated sub-floor jump mass when alpha < 1).
  LimitPathEvaluator(const limitpp::LimitPointProcess& pp, double alpha,
                     const CenteringSpec& centering, double extra_drift = 0.0);
  /// Evaluator of t -> M_{t1,t2}(-V').
  LimitPathEvaluator negated() const;

  double window_max(double t1, double t2) const;
  /// sup over [0, t_max] of V^+ (window_max over the full span).
  double sup() const;
  double end_value() const;

 private:
  LimitPathEvaluator() = default;
  std::vector<double> times_;
  std::vector<double> before_;   // V(T_i-) without drift
  std::vector<double> tops_;     // P_i * sup_k prefix(Q_i)
  std::vector<double> bottoms_;  // P_i * inf_k prefix(Q_i)
  double drift_ = 0.0;
  double total_ = 0.0;
  double t_max_ = 1.0;
};

struct StableParams {
  double alpha = 1.0;
  double sigma = 0.0;
  double beta = 0.0;
  double location = 0.0;
  double c0 = 0.0;
  double sigma_alpha = 0.0;  // sigma^alpha with its direct Monte Carlo SE
  double sigma_alpha_se = 0.0;
  double beta_se = 0.0;
  double location_se = 0.0;
  double dh95_residual = 0.0;
  double dh95_se = 0.0;
  bool flagged = false;  // moment condition looked divergent
};

/// Scale/skewness/location of the stable limit from the cluster shape law:
/// sigma^alpha = theta E|sum Q|^alpha, beta the signed-power ratio, location
/// by the alpha-regime formulas; also reports the residual of
/// theta E[sum_j Q_j |Q_j|^{alpha-1}] - (2p - 1).
StableParams stable_params_from_Q(double alpha, double theta,
                                  const limitpp::QSampler& q, double p,
                                  std::size_t mc_samples, std::uint64_t seed);

/// Same parameters from forward spectral sequences (Theta_0, Theta_1, ...)
/// with |Theta_0| = 1, via the telescoped difference form.
using ForwardThetaSampler = std::function<std::vector<double>(Rng&)>;
ForwardThetaSampler forward_theta_linear(const models::LinearModel& model);
StableParams stable_params_from_forward_theta(double alpha,
                                              const ForwardThetaSampler& sampler,
                                              std::size_t mc_samples,
                                              std::uint64_t seed);

struct M2ConditionResult {
  double fraction = 0.0;
  std::vector<bool> per_sample;
};

/// Checks -(sum Q)_- = inf_k prefix and sup_k prefix = (sum Q)_+ per sample
/// on full prefix sweeps (empty prefix included).
M2ConditionResult m2_condition_check(const std::vector<Cluster>& q_samples);

struct SmallJumpPoint {
  double epsilon;
  double value;
};

/// max_k |sum_{i<=k} (X_i 1{|X_i| <= a_n eps} - m)| / a_n across an epsilon
/// grid; m analytic for a Pareto marginal, plug-in otherwise.
std::vector<SmallJumpPoint> small_jump_diagnostic(
    const std::vector<double>& values, double a_n,
    const std::vector<double>& eps_grid,
    const std::optional<models::RegVarLaw>& analytic_law);

struct SupLawReport {
  double ks = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t empirical_draws = 0;
  std::size_t limit_draws = 0;
  double empirical_mean = 0.0;
  double limit_mean = 0.0;
};

struct SupLawConfig {
  double theta = 1.0;
  double alpha = 1.0;
  double p_min = 1e-4;
  double sign_prob = 1.0;
  /// For alpha < 1: add the mean of the discarded sub-floor jump mass as a
  /// linear drift so the truncation bias vanishes.
  bool compensate_small_mass = true;
  double tolerance = 0.03;
  std::size_t replications = 1000;
  std::size_t limit_draws = 10000;
};

/// Distribution of sup_{s<=1} V_n(s) from replicated series against the
/// simulated law of sup V^+ built from the limit point process. The series
/// generator must deliver the raw increments for alpha < 1 and the centered
/// increments (the V_n steps) when alpha >= 1.
SupLawReport sup_law_experiment(
    const std::function<std::vector<double>(std::uint64_t)>& series_gen,
    double a_n, const limitpp::QSampler& q, const SupLawConfig& cfg,
    std::uint64_t seed, int threads = 1);

struct KaramataCheck {
  double estimate = 0.0;
  double se = 0.0;
  double target = 0.0;
};

/// Monte Carlo (n/a_n) E[|X| 1{|X| <= a_n eps}] for the Pareto modulus
/// against the slowly-varying-tail limit alpha eps^{1-alpha}/(1-alpha).
KaramataCheck karamata_check(double alpha, double eps, std::size_t n,
                             std::size_t mc_samples, std::uint64_t seed);

}  // namespace extremes::sums
