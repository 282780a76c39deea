#include <doctest.h>

#include <cmath>
#include <numeric>

#include "extremes/models.hpp"
#include "extremes/stats.hpp"

using namespace extremes;

namespace {

models::LinearModel ma1(double c, double alpha, double p = 1.0) {
  models::LinearModel lm;
  lm.coeffs = {1.0, c};
  lm.innovation = models::RegVarLaw{alpha, p};
  return lm;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(models::sample_regvar({-1.0, 0.5}, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(models::sample_regvar({1.0, 1.5}, 10, 1),
                  std::invalid_argument);
  models::LinearModel bad;
  bad.coeffs = {0.0, 1.0};
  bad.innovation = {1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // c_0 zero
  models::GarchModel g{1.0, 0.0, 0.1, {}};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("regvar sampling: regeneration, signs, exact tail") {
  const models::RegVarLaw law{1.0, 1.0};
  const auto s1 = models::sample_regvar(law, 5000, 42);
  const auto s2 = models::sample_regvar(law, 5000, 42);
  CHECK(s1.values == s2.values);  // bit-identical regeneration

  for (double v : s1.values) CHECK(v > 0.0);  // p = 1: all positive

  // Empirical P(X > 2) at alpha=1 within 3 binomial SE of 0.5.
  const auto big = models::sample_regvar(law, 400000, 7);
  std::size_t hit = 0;
  for (double v : big.values)
    if (v > 2.0) ++hit;
  const double p_hat = static_cast<double>(hit) / big.size();
  const double se = std::sqrt(0.25 / static_cast<double>(big.size()));
  CHECK(std::abs(p_hat - 0.5) <= 3.0 * se);

  // alpha = 0.5, p = 0: P(X < -4) -> 4^{-1/2} = 0.5.
  const auto neg = models::sample_regvar({0.5, 0.0}, 400000, 8);
  hit = 0;
  for (double v : neg.values)
    if (v < -4.0) ++hit;
  CHECK(std::abs(static_cast<double>(hit) / neg.size() - 0.5) <= 3.0 * se);
}

TEST_CASE("tail exactness on the |X| grid at n = 1e6") {
  const double alpha = 0.7;
  const auto s = models::sample_regvar({alpha, 0.5}, 1000000, 77);
  for (double x : {1.0, 2.0, 4.0, 8.0}) {
    std::size_t hit = 0;
    for (double v : s.values)
      if (std::abs(v) > x) ++hit;
    const double target = std::pow(x, -alpha);
    const double se =
        std::sqrt(target * (1.0 - target) / static_cast<double>(s.size()));
    CHECK(std::abs(static_cast<double>(hit) / s.size() - target) <=
          3.0 * se + 1e-12);
  }
}

TEST_CASE("scaling sequence a_n") {
  CHECK(models::quantile_an(models::RegVarLaw{1.0, 1.0}, 100) ==
        doctest::Approx(100.0));
  CHECK(models::quantile_an(models::RegVarLaw{2.0, 1.0}, 4) ==
        doctest::Approx(2.0));
  const auto lm = ma1(0.7, 0.7);
  CHECK(models::quantile_an(lm, 1000) ==
        doctest::Approx(
            std::pow(1000.0 * (1.0 + std::pow(0.7, 0.7)), 1.0 / 0.7)));
  models::GarchModel g{0.01, 1.45, 0.1, {}};
  CHECK_THROWS_AS(models::quantile_an(g, 100), std::invalid_argument);
  g.tail_alpha_hint = 0.8;
  CHECK(models::quantile_an(g, 100) == doctest::Approx(std::pow(100.0, 1.25)));
}

TEST_CASE("linear filter identities") {
  models::LinearModel identity;
  identity.coeffs = {1.0};
  identity.innovation = {1.0, 1.0};
  const std::vector<double> xi{3.0, 1.0, 4.0, 1.5};
  CHECK(models::linear_filter(identity, xi) == xi);

  models::LinearModel diff;
  diff.coeffs = {1.0, -1.0};
  diff.innovation = {1.0, 1.0};
  const std::vector<double> constant(10, 2.5);
  for (double v : models::linear_filter(diff, constant))
    CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("linear simulation regenerates and has the right length") {
  const auto lm = ma1(0.7, 0.7);
  const auto s1 = models::simulate_linear(lm, 1234, 5);
  const auto s2 = models::simulate_linear(lm, 1234, 5);
  CHECK(s1.values == s2.values);
  CHECK(s1.size() == 1234);
}

TEST_CASE("tail equivalence of the linear filter") {
  // P(|X| > u) / P(|xi| > u) -> sum |c_j|^alpha within 10% relative at
  // u = a_n(innovation) * {1, 2}.
  const double alpha = 0.7;
  const auto lm = ma1(0.7, alpha);
  const double target = 1.0 + std::pow(0.7, alpha);
  const std::size_t n = 100000;
  const double base = models::quantile_an(lm.innovation, n);
  for (double mult : {1.0, 2.0}) {
    const double u = base * mult;
    std::size_t hits = 0;
    std::size_t total = 0;
    for (std::uint64_t rep = 0; rep < 400; ++rep) {
      const auto s = models::simulate_linear(lm, n, 900 + rep);
      for (double v : s.values)
        if (std::abs(v) > u) ++hits;
      total += s.size();
    }
    const double p_emp = static_cast<double>(hits) / total;
    const double p_xi = std::pow(u, -alpha);
    CHECK(p_emp / p_xi == doctest::Approx(target).epsilon(0.10));
  }
}

TEST_CASE("garch degenerate recursion and stability across seeds") {
  models::GarchModel tiny{1.0, 1e-6, 1e-6, {}};
  const auto s = models::simulate_garch(tiny, 200000, 1000, 3);
  double var = 0.0;
  for (double v : s.values) var += v * v;
  var /= s.size();
  // variance of sqrt(a0) Z is a0; normal fourth-moment SE
  const double se = std::sqrt(2.0 / static_cast<double>(s.size()));
  CHECK(std::abs(var - 1.0) <= 3.0 * se + 1e-3);

  models::GarchModel paper{0.01, 1.45, 0.1, {}};
  const auto g1 = models::simulate_garch(paper, 300000, 1000, 10);
  const auto g2 = models::simulate_garch(paper, 300000, 1000, 20);
  const double h1 = models::hill_estimate(g1, 3000);
  const double h2 = models::hill_estimate(g2, 3000);
  CHECK(std::abs(h1 - h2) / h1 < 0.2);
  // heavy-tailed output: max dwarfs the median scale
  double mx = 0.0;
  for (double v : g1.values) mx = std::max(mx, std::abs(v));
  CHECK(mx > 100.0 * std::sqrt(0.01));
}

TEST_CASE("hill estimator consistency") {
  const auto s1 = models::sample_regvar({1.0, 1.0}, 100000, 21);
  CHECK(models::hill_estimate(s1, 1000) == doctest::Approx(1.0).epsilon(0.1));
  const auto s5 = models::sample_regvar({0.5, 1.0}, 100000, 22);
  CHECK(models::hill_estimate(s5, 1000) == doctest::Approx(0.5).epsilon(0.1));
  models::SeriesSample constant;
  constant.values.assign(100, 2.0);
  CHECK(std::isinf(models::hill_estimate(constant, 10)));
  CHECK_THROWS_AS(models::hill_estimate(constant, 100), std::invalid_argument);
}

TEST_CASE("theta closed form for linear models") {
  models::LinearModel only;
  only.coeffs = {1.0};
  only.innovation = {1.3, 0.5};
  CHECK(models::theta_linear(only) == doctest::Approx(1.0));
  CHECK(models::theta_linear(ma1(-1.0, 1.0)) == doctest::Approx(0.5));
  CHECK(models::theta_linear(ma1(0.7, 0.7)) ==
        doctest::Approx(1.0 / (1.0 + std::pow(0.7, 0.7))));

  // theta lies in (0,1] and hits 1 exactly when a single coefficient is
  // nonzero
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    models::LinearModel lm;
    const int len = 1 + static_cast<int>(rng.uniform_index(5));
    lm.coeffs.resize(len);
    int nonzero = 0;
    for (auto& c : lm.coeffs) {
      c = rng.uniform01() < 0.3 ? 0.0 : 2.0 * rng.uniform01() - 1.0;
      if (c != 0.0) ++nonzero;
    }
    if (lm.coeffs[0] == 0.0) {
      lm.coeffs[0] = 0.5;
      ++nonzero;
    }
    lm.innovation = {0.5 + rng.uniform01(), 1.0};
    const double theta = models::theta_linear(lm);
    CHECK(theta > 0.0);
    CHECK(theta <= 1.0 + 1e-12);
    if (nonzero == 1) CHECK(theta == doctest::Approx(1.0));
    if (theta > 1.0 - 1e-12) CHECK(nonzero == 1);
  }
}

TEST_CASE("process-level sign probability") {
  CHECK(models::linear_sign_prob(ma1(0.7, 0.7, 0.7)) == doctest::Approx(0.7));
  CHECK(models::linear_sign_prob(ma1(-1.0, 1.0, 1.0)) == doctest::Approx(0.5));
}

TEST_CASE("limiting cluster shape of a linear model") {
  CHECK(models::q_sequence_linear(ma1(0.7, 0.7), 1) == Cluster({1.0, 0.7}));
  models::LinearModel single;
  single.coeffs = {1.0};
  single.innovation = {0.7, 1.0};
  CHECK(models::q_sequence_linear(single, 1) == Cluster({1.0}));
  models::LinearModel two;
  two.coeffs = {2.0, -1.0};
  two.innovation = {0.7, 1.0};
  CHECK(models::q_sequence_linear(two, 1) == Cluster({1.0, -0.5}));
  // unit sup norm always
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Cluster q = models::q_sequence_linear(ma1(-0.3, 1.2, 0.4), rng);
    CHECK(q.sup_norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("empirical spectral tail rows") {
  const auto iid = models::sample_regvar({1.0, 1.0}, 200000, 31);
  const double u = 50.0;
  const auto rows = models::spectral_tail_empirical(iid, u, 1);
  REQUIRE(rows.size() >= 100);
  double lag_mean = 0.0;
  for (const auto& r : rows) {
    CHECK(std::abs(r[1]) == doctest::Approx(1.0));  // center self-normalizes
    lag_mean += r[2];
  }
  lag_mean /= rows.size();
  // lag coordinate vanishes for iid input: |X_1|/|X_0| <= 1/u in mean scale
  CHECK(std::abs(lag_mean) < 3.0 / u + 0.05);

  CHECK_THROWS_AS(models::spectral_tail_empirical(iid, 1e12, 1),
                  std::runtime_error);
}

TEST_CASE("spectral tail of the moving average hits the anchor branch") {
  // P(Theta_1 = 0.7) equals the weight of the anchor at lag 0, which is
  // 1/(1 + 0.7^0.7): conditioned on a large value, the next coordinate is
  // 0.7 exactly when the innovation at the center caused the exceedance.
  const double alpha = 0.7;
  const auto lm = ma1(0.7, alpha);
  const double theta = models::theta_linear(lm);
  std::size_t near = 0, total = 0;
  for (std::uint64_t rep = 0; rep < 60; ++rep) {
    const auto s = models::simulate_linear(lm, 100000, 4000 + rep);
    const double u = models::quantile_an(lm, 20000);  // deep tail threshold
    std::vector<std::vector<double>> rows;
    try {
      rows = models::spectral_tail_empirical(s, u, 1, 1);
    } catch (const std::runtime_error&) {
      continue;
    }
    for (const auto& r : rows) {
      ++total;
      if (std::abs(r[2] - 0.7) < 0.2) ++near;
    }
  }
  REQUIRE(total >= 200);
  const double p_hat = static_cast<double>(near) / total;
  const double se = std::sqrt(theta * (1.0 - theta) / total);
  CHECK(std::abs(p_hat - theta) <= 3.0 * se + 0.01);
}

TEST_CASE("pareto truncated mean matches quadrature") {
  const models::RegVarLaw law{1.5, 1.0};
  const double u = 1000.0;
  const double analytic = models::pareto_truncated_mean(law, u);
  CHECK(analytic == doctest::Approx(3.0 * (1.0 - std::pow(u, -0.5))));
  const double numeric = stats::adaptive_simpson(
      [](double x) { return x * 1.5 * std::pow(x, -2.5); }, 1.0, u, 1e-10);
  CHECK(analytic == doctest::Approx(numeric).epsilon(1e-8));
}
