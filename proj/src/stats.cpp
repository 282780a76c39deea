#include "extremes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extremes/rng.hpp"

namespace extremes::stats {

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double se_of_mean(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  return sample_sd(v) / std::sqrt(static_cast<double>(v.size()));
}

double quantile(std::vector<double> v, double q) {
  return quantiles(std::move(v), {q})[0];
}

std::vector<double> quantiles(std::vector<double> v, const std::vector<double>& qs) {
  if (v.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  out.reserve(qs.size());
  for (double q : qs) {
    if (q <= 0.0) {
      out.push_back(v.front());
      continue;
    }
    if (q >= 1.0) {
      out.push_back(v.back());
      continue;
    }
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    out.push_back(v[lo] * (1.0 - frac) + v[hi] * frac);
  }
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

namespace {

// Kolmogorov survival Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

}  // namespace

double ks_asymptotic_pvalue(double d, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * static_cast<double>(m) /
                    static_cast<double>(n + m);
  return kolmogorov_survival(std::sqrt(ne) * d);
}

double ks_permutation_pvalue(const std::vector<double>& a,
                             const std::vector<double>& b, int permutations,
                             std::uint64_t seed) {
  const double observed = ks_statistic(a, b);
  std::vector<double> pool(a);
  pool.insert(pool.end(), b.begin(), b.end());
  Rng rng(seed);
  int at_least = 0;
  for (int p = 0; p < permutations; ++p) {
    // Fisher-Yates on the pooled sample, then split at |a|.
    for (std::size_t i = pool.size() - 1; i > 0; --i) {
      const std::size_t j = rng.uniform_index(i + 1);
      std::swap(pool[i], pool[j]);
    }
    std::vector<double> pa(pool.begin(), pool.begin() + a.size());
    std::vector<double> pb(pool.begin() + a.size(), pool.end());
    if (ks_statistic(pa, pb) >= observed - 1e-15) ++at_least;
  }
  return (1.0 + at_least) / (1.0 + permutations);
}

namespace {

// Regularized upper incomplete gamma Q(a,x), series/continued-fraction split.
double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Q(a,x) by Lentz continued fraction.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double chi_square_survival(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return gamma_q(dof / 2.0, x / 2.0);
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi_square_gof: size mismatch");
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0)
      throw std::invalid_argument("chi_square_gof: nonpositive expected cell");
    const double d = observed[i] - expected[i];
    r.statistic += d * d / expected[i];
  }
  r.dof = static_cast<double>(observed.size() - 1);
  r.p_value = chi_square_survival(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_poisson(const std::vector<long>& counts, double mean,
                                   int max_bin) {
  const double n = static_cast<double>(counts.size());
  std::vector<double> obs(static_cast<std::size_t>(max_bin) + 1, 0.0);
  for (long c : counts) {
    const int bin = std::min<long>(c, max_bin);
    obs[static_cast<std::size_t>(bin)] += 1.0;
  }
  std::vector<double> exp_counts(obs.size(), 0.0);
  double pmf = std::exp(-mean);
  double tail = 1.0;
  for (int k = 0; k < max_bin; ++k) {
    exp_counts[static_cast<std::size_t>(k)] = n * pmf;
    tail -= pmf;
    pmf *= mean / static_cast<double>(k + 1);
  }
  exp_counts.back() = n * std::max(tail, 1e-12);
  return chi_square_gof(obs, exp_counts);
}

namespace {

double simpson_rule(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
  const double lm = (a + m) / 2.0;
  const double rm = (m + b) / 2.0;
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(a, fa, m, fm, flm);
  const double right = simpson_rule(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0,
                              depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double m = (a + b) / 2.0;
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson_rule(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

double c0_integration_by_parts() {
  // int_0^1 (sin y - y)/y^2 dy: the integrand extends continuously by 0 at 0.
  auto head = [](double y) {
    if (y < 1e-6) return -y / 6.0 + y * y * y / 120.0;
    return (std::sin(y) - y) / (y * y);
  };
  const double part1 = adaptive_simpson(head, 0.0, 1.0, 1e-12);
  // int_1^inf sin(y)/y^2 dy = cos 1 - 2 sin 1 ... after integrating by parts
  // twice the remaining integrand decays like y^-4, so a finite upper limit
  // leaves a tail below 1/(3 Y^3).
  auto weighted = [](double y) { return std::sin(y) / (y * y * y * y); };
  const double y_max = 2000.0;
  double osc = 0.0;
  double lo = 1.0;
  while (lo < y_max) {
    const double hi = std::min(lo + 20.0, y_max);
    osc += adaptive_simpson(weighted, lo, hi, 1e-13);
    lo = hi;
  }
  const double part2 = std::cos(1.0) - 2.0 * (-std::sin(1.0) + 3.0 * osc);
  return part1 + part2;
}

double c0_panel_sum() {
  auto head = [](double y) {
    if (y < 1e-6) return -y / 6.0 + y * y * y / 120.0;
    return (std::sin(y) - y) / (y * y);
  };
  const double part1 = adaptive_simpson(head, 0.0, 1.0, 1e-12);
  // Direct summation of int_1^inf sin(y)/y^2 over half-period panels; the
  // panel integrals alternate in sign, so partial sums bracket the limit.
  auto tail = [](double y) { return std::sin(y) / (y * y); };
  const double pi = 3.14159265358979323846;
  double sum = adaptive_simpson(tail, 1.0, pi, 1e-13);
  double prev = 0.0;
  for (int k = 1; k < 2000000; ++k) {
    const double a = k * pi;
    const double b = (k + 1) * pi;
    const double panel = adaptive_simpson(tail, a, b, 1e-14);
    prev = sum;
    sum += panel;
    if (std::abs(panel) < 2e-10 && std::abs(sum - prev) < 2e-10) {
      // Alternating tail: the true value lies between consecutive partials.
      sum = (sum + prev) / 2.0;
      break;
    }
  }
  return part1 + sum;
}

double c0_constant() {
  static const double value = c0_integration_by_parts();
  return value;
}

}  // namespace extremes::stats
