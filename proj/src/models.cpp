#include "extremes/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace extremes::models {

void RegVarLaw::validate() const {
  if (!(alpha > 0.0))
    throw std::invalid_argument("RegVarLaw: alpha must be > 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("RegVarLaw: p must lie in [0,1]");
}

void LinearModel::validate() const {
  innovation.validate();
  if (coeffs.empty())
    throw std::invalid_argument("LinearModel: empty coefficient vector");
  if (j_min > 0 || j_max() < 0)
    throw std::invalid_argument("LinearModel: lag 0 not in coefficient range");
  if (coeff_at(0) == 0.0)
    throw std::invalid_argument("LinearModel: c_0 must be nonzero");
  bool any = false;
  for (double c : coeffs) any = any || c != 0.0;
  if (!any) throw std::invalid_argument("LinearModel: all coefficients zero");
}

double LinearModel::coeff_at(long j) const {
  const long k = j - j_min;
  if (k < 0 || k >= static_cast<long>(coeffs.size())) return 0.0;
  return coeffs[static_cast<std::size_t>(k)];
}

double LinearModel::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

double LinearModel::abs_coeff_power_sum() const {
  double s = 0.0;
  for (double c : coeffs)
    if (c != 0.0) s += std::pow(std::abs(c), innovation.alpha);
  return s;
}

void GarchModel::validate() const {
  if (!(a0 > 0.0 && a1 > 0.0 && b1 > 0.0))
    throw std::invalid_argument("GarchModel: a0, a1, b1 must be > 0");
  if (tail_alpha_hint && !(*tail_alpha_hint > 0.0))
    throw std::invalid_argument("GarchModel: tail_alpha_hint must be > 0");
}

namespace {

double draw_regvar(const RegVarLaw& law, Rng& rng) {
  const double magnitude = rng.pareto(law.alpha);
  const double sign = rng.sign(law.p);
  return sign * magnitude;
}

}  // namespace

SeriesSample sample_regvar(const RegVarLaw& law, std::size_t n,
                           std::uint64_t seed) {
  law.validate();
  if (n == 0) throw std::invalid_argument("sample_regvar: n must be >= 1");
  SeriesSample out;
  out.model_desc = describe(law);
  out.seed = seed;
  out.values.resize(n);
  Rng rng(seed);
  for (double& v : out.values) v = draw_regvar(law, rng);
  return out;
}

double quantile_an(const RegVarLaw& law, std::size_t n) {
  law.validate();
  if (n == 0) throw std::invalid_argument("quantile_an: n must be >= 1");
  return std::pow(static_cast<double>(n), 1.0 / law.alpha);
}

double quantile_an(const LinearModel& model, std::size_t n) {
  model.validate();
  if (n == 0) throw std::invalid_argument("quantile_an: n must be >= 1");
  return std::pow(static_cast<double>(n) * model.abs_coeff_power_sum(),
                  1.0 / model.innovation.alpha);
}

double quantile_an(const GarchModel& model, std::size_t n) {
  model.validate();
  if (!model.tail_alpha_hint)
    throw std::invalid_argument(
        "quantile_an: GARCH requires tail_alpha_hint (run hill_estimate "
        "first)");
  return std::pow(static_cast<double>(n), 1.0 / *model.tail_alpha_hint);
}

std::vector<double> linear_filter(const LinearModel& model,
                                  const std::vector<double>& innovations) {
  const std::size_t span =
      static_cast<std::size_t>(model.j_max() - model.j_min);
  if (innovations.size() <= span)
    throw std::invalid_argument("linear_filter: too few innovations");
  const std::size_t n = innovations.size() - span;
  std::vector<double> out(n, 0.0);
  // X_t = sum_j c_j xi_{t-j}; innovations[0] holds xi_{1 - j_max}, so X_t
  // (t = 1..n) reads innovations[t - 1 + j_max - j].
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < model.coeffs.size(); ++k) {
      const long j = model.j_min + static_cast<long>(k);
      acc += model.coeffs[k] *
             innovations[t + static_cast<std::size_t>(model.j_max() - j)];
    }
    out[t] = acc;
  }
  return out;
}

SeriesSample simulate_linear(const LinearModel& model, std::size_t n,
                             std::uint64_t seed) {
  model.validate();
  if (n == 0) throw std::invalid_argument("simulate_linear: n must be >= 1");
  const std::size_t span =
      static_cast<std::size_t>(model.j_max() - model.j_min);
  std::vector<double> innovations(n + span);
  Rng rng(seed);
  for (double& v : innovations) v = draw_regvar(model.innovation, rng);
  SeriesSample out;
  out.model_desc = describe(model);
  out.seed = seed;
  out.values = linear_filter(model, innovations);
  return out;
}

SeriesSample simulate_garch(const GarchModel& model, std::size_t n,
                            std::size_t burnin, std::uint64_t seed) {
  model.validate();
  if (n == 0) throw std::invalid_argument("simulate_garch: n must be >= 1");
  Rng rng(seed);
  double var = (model.a1 + model.b1 < 1.0)
                   ? model.a0 / (1.0 - model.a1 - model.b1)
                   : model.a0;
  double x = std::sqrt(var) * rng.normal();
  SeriesSample out;
  out.model_desc = describe(model);
  out.seed = seed;
  out.values.reserve(n);
  for (std::size_t t = 0; t < burnin + n; ++t) {
    var = model.a0 + model.a1 * x * x + model.b1 * var;
    x = std::sqrt(var) * rng.normal();
    if (t >= burnin) out.values.push_back(x);
  }
  return out;
}

double hill_estimate(const SeriesSample& sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 1 || k >= n)
    throw std::invalid_argument("hill_estimate: require 1 <= k < n");
  std::vector<double> mags(n);
  for (std::size_t i = 0; i < n; ++i) mags[i] = std::abs(sample.values[i]);
  std::nth_element(mags.begin(), mags.begin() + static_cast<long>(k),
                   mags.end(), std::greater<double>());
  const double base = mags[k];
  if (base <= 0.0)
    throw std::domain_error("hill_estimate: nonpositive order statistic");
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(mags[i] / base);
  if (acc == 0.0)
    return std::numeric_limits<double>::infinity();  // zero spacings
  return static_cast<double>(k) / acc;
}

double theta_linear(const LinearModel& model) {
  model.validate();
  return std::pow(model.max_abs_coeff(), model.innovation.alpha) /
         model.abs_coeff_power_sum();
}

double linear_sign_prob(const LinearModel& model) {
  model.validate();
  const double alpha = model.innovation.alpha;
  const double p_xi = model.innovation.p;
  const double total = model.abs_coeff_power_sum();
  double acc = 0.0;
  for (double c : model.coeffs) {
    if (c == 0.0) continue;
    const double w = std::pow(std::abs(c), alpha) / total;
    acc += w * (c > 0.0 ? p_xi : 1.0 - p_xi);
  }
  return acc;
}

Cluster q_sequence_linear(const LinearModel& model, Rng& rng) {
  model.validate();
  const double sign = rng.sign(model.innovation.p);
  const double scale = sign / model.max_abs_coeff();
  std::vector<double> v(model.coeffs);
  for (double& c : v) c *= scale;
  return Cluster(std::move(v), model.j_min);
}

Cluster q_sequence_linear(const LinearModel& model, std::uint64_t seed) {
  Rng rng(seed);
  return q_sequence_linear(model, rng);
}

std::vector<std::vector<double>> spectral_tail_empirical(
    const SeriesSample& sample, double u, int m,
    std::size_t min_exceedances) {
  if (m < 0) throw std::invalid_argument("spectral_tail_empirical: m < 0");
  const auto& x = sample.values;
  std::vector<std::vector<double>> rows;
  const std::size_t mm = static_cast<std::size_t>(m);
  for (std::size_t i = mm; i + mm < x.size(); ++i) {
    const double center = std::abs(x[i]);
    if (center <= u) continue;
    std::vector<double> row(2 * mm + 1);
    for (std::size_t k = 0; k <= 2 * mm; ++k)
      row[k] = x[i - mm + k] / center;
    rows.push_back(std::move(row));
  }
  if (rows.size() < min_exceedances) {
    std::ostringstream msg;
    msg << "spectral_tail_empirical: only " << rows.size()
        << " exceedances above u=" << u << " (need " << min_exceedances
        << ")";
    throw std::runtime_error(msg.str());
  }
  return rows;
}

double pareto_truncated_mean(const RegVarLaw& law, double u) {
  law.validate();
  if (u < 1.0) return 0.0;  // |X| >= 1, nothing below the truncation level
  const double a = law.alpha;
  const double skew = 2.0 * law.p - 1.0;
  if (a == 1.0) return skew * std::log(u);
  return skew * a * (1.0 - std::pow(u, 1.0 - a)) / (a - 1.0);
}

std::string describe(const RegVarLaw& law) {
  std::ostringstream s;
  s << "regvar(alpha=" << law.alpha << ",p=" << law.p << ")";
  return s.str();
}

std::string describe(const LinearModel& model) {
  std::ostringstream s;
  s << "linear(c=[";
  for (std::size_t i = 0; i < model.coeffs.size(); ++i)
    s << (i ? "," : "") << model.coeffs[i];
  s << "],j_min=" << model.j_min << "," << describe(model.innovation) << ")";
  return s.str();
}

std::string describe(const GarchModel& model) {
  std::ostringstream s;
  s << "garch(a0=" << model.a0 << ",a1=" << model.a1 << ",b1=" << model.b1
    << ")";
  return s.str();
}

}  // namespace extremes::models
