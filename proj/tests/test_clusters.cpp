#include <doctest.h>

#include <cmath>

#include "extremes/clusters.hpp"
#include "extremes/rng.hpp"
#include "extremes/stats.hpp"

using namespace extremes;

namespace {

models::SeriesSample make_series(std::vector<double> values) {
  models::SeriesSample s;
  s.values = std::move(values);
  s.model_desc = "fixed";
  return s;
}

models::LinearModel ma1(double c, double alpha, double p = 1.0) {
  models::LinearModel lm;
  lm.coeffs = {1.0, c};
  lm.innovation = models::RegVarLaw{alpha, p};
  return lm;
}

}  // namespace

TEST_CASE("blocking mechanics") {
  const auto s = make_series({1, 2, 3, 4, 5, 6});
  clusters::BlockingPlan plan{6, 3, 1.0, 1.0};
  const auto pp = clusters::block_series(s, plan);
  REQUIRE(pp.points.size() == 2);
  CHECK(pp.points[0].first == doctest::Approx(0.5));
  CHECK(pp.points[1].first == doctest::Approx(1.0));
  CHECK(pp.points[0].second == Cluster({1, 2, 3}));
  CHECK(pp.points[1].second == Cluster({4, 5, 6}));

  // trailing partial block discarded
  const auto s7 = make_series({1, 2, 3, 4, 5, 6, 7});
  clusters::BlockingPlan plan7{7, 3, 1.0, 1.0};
  CHECK(clusters::block_series(s7, plan7).points.size() == 2);

  // zero blocks omitted
  const auto z = make_series({0, 0, 0, 0});
  clusters::BlockingPlan planz{4, 2, 1.0, 1.0};
  CHECK(clusters::block_series(z, planz).points.empty());

  // a_n scaling halves values
  clusters::BlockingPlan plan_half{6, 3, 2.0, 1.0};
  const auto half = clusters::block_series(s, plan_half);
  CHECK(half.points[0].second == Cluster({0.5, 1.0, 1.5}));

  clusters::BlockingPlan badplan{3, 5, 1.0, 1.0};
  CHECK_THROWS_AS(clusters::block_series(s, badplan), std::invalid_argument);
}

TEST_CASE("block scaling commutes") {
  Rng rng(9);
  std::vector<double> values(60);
  for (auto& v : values) v = rng.pareto(1.0) * rng.sign(0.5);
  const double c = 2.5;
  std::vector<double> scaled(values);
  for (auto& v : scaled) v /= c;
  clusters::BlockingPlan p1{60, 10, 3.0 * c, 1.0};
  clusters::BlockingPlan p2{60, 10, 3.0, 1.0};
  const auto a = clusters::block_series(make_series(values), p1);
  const auto b = clusters::block_series(make_series(scaled), p2);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    REQUIRE(a.points[i].second.support_size() ==
            b.points[i].second.support_size());
    for (std::size_t j = 0; j < a.points[i].second.support_size(); ++j)
      CHECK(a.points[i].second.values()[j] ==
            doctest::Approx(b.points[i].second.values()[j]).epsilon(1e-12));
  }
}

TEST_CASE("extremal index estimate on a constructed series") {
  // 12 values, r_n = 4: blocks (0,9,0,0), (0,0,0,0), (9,8,0,0); threshold 5.
  const auto s = make_series({0, 9, 0, 0, 0, 0, 0, 0, 9, 8, 0, 0});
  clusters::BlockingPlan plan{12, 4, 5.0, 1.0};
  const auto est = clusters::empirical_theta(s, plan);
  // 2 of 3 blocks exceed; 3 of 12 marginals exceed.
  CHECK(est.value == doctest::Approx((2.0 / 3.0) / (4.0 * 3.0 / 12.0)));
  CHECK(est.low_counts);

  const auto cold = make_series(std::vector<double>(12, 0.1));
  CHECK_THROWS_AS(clusters::empirical_theta(cold, plan), std::runtime_error);
}

TEST_CASE("pooled extremal index approaches 1 for iid input") {
  const models::RegVarLaw law{1.0, 1.0};
  const std::size_t n = 20000;
  clusters::BlockingPlan plan{n, 100, models::quantile_an(law, n), 0.25};
  clusters::ThetaCounts pooled;
  for (std::uint64_t rep = 0; rep < 60; ++rep)
    pooled.accumulate(models::sample_regvar(law, n, 100 + rep), plan);
  const auto est = clusters::theta_from_counts(pooled);
  CHECK(est.value == doctest::Approx(1.0).epsilon(0.12));
}

TEST_CASE("anticlustering diagnostic against the iid oracle") {
  const models::RegVarLaw law{1.0, 1.0};
  const std::size_t n = 100000;
  const double u_level = 1000.0;  // exact tail: P = 1e-3
  clusters::BlockingPlan plan{n, 50, u_level, 1.0};
  clusters::AnticlusterCounts counts;
  for (std::uint64_t rep = 0; rep < 40; ++rep)
    counts.accumulate(models::sample_regvar(law, n, 200 + rep), plan, 1);
  const double got = static_cast<double>(counts.recurrences) /
                     static_cast<double>(counts.anchors);
  const double p = 1e-3;
  const double want = 1.0 - std::pow(1.0 - p, 2.0 * 50.0);
  const double se =
      std::sqrt(want * (1.0 - want) / static_cast<double>(counts.anchors));
  CHECK(std::abs(got - want) <= 3.0 * se + 1e-3);

  // MA(1) beyond the dependence range: the window is independent of the
  // anchor, and the no-recurrence probability factorizes over innovations.
  // Interior innovations reach the window through both coefficients (cause
  // probability 1/u at alpha = 1), one edge innovation per side only
  // through the 0.7 coefficient.
  const auto lm = ma1(0.7, 1.0);
  clusters::AnticlusterCounts mac;
  for (std::uint64_t rep = 0; rep < 40; ++rep)
    mac.accumulate(models::simulate_linear(lm, n, 300 + rep), plan, 2);
  const double got_ma = static_cast<double>(mac.recurrences) /
                        static_cast<double>(mac.anchors);
  const double want_ma = 1.0 - std::pow(1.0 - 1.0 / u_level, 2.0 * 49.0) *
                                   std::pow(1.0 - 0.7 / u_level, 2.0);
  const double se_ma = std::sqrt(want_ma * (1.0 - want_ma) /
                                 static_cast<double>(mac.anchors));
  CHECK(std::abs(got_ma - want_ma) <= 3.0 * se_ma + 2e-3);

  const auto s = models::sample_regvar(law, 1000, 1);
  clusters::BlockingPlan small{1000, 10, 1.0, 1.0};
  CHECK_THROWS_AS(clusters::anticluster_diagnostic(s, small, 10),
                  std::invalid_argument);
}

TEST_CASE("empirical cluster law emits unit shapes above the threshold") {
  const auto s = make_series({0, 9, 3, 0, 0, 0, 1, 2, 0, 12, 6, 0});
  clusters::BlockingPlan plan{12, 3, 4.0, 1.0};
  const auto pairs = clusters::empirical_cluster_law(s, plan);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].l == doctest::Approx(9.0 / 4.0));
  CHECK(pairs[0].q == Cluster({0.0, 1.0, 3.0 / 9.0}));
  CHECK(pairs[1].l == doctest::Approx(3.0));
  for (const auto& pr : pairs)
    CHECK(pr.q.sup_norm() == doctest::Approx(1.0));
}

TEST_CASE("cluster magnitude is Pareto and the shape concentrates") {
  const double alpha = 0.7;
  const auto lm = ma1(0.7, alpha);
  const std::size_t n = 10000;
  clusters::BlockingPlan plan{n, 100, models::quantile_an(lm, n), 0.1};
  std::vector<clusters::ClusterLawPair> pairs;
  for (std::uint64_t rep = 0; rep < 500 && pairs.size() < 800; ++rep) {
    const auto chunk = clusters::empirical_cluster_law(
        models::simulate_linear(lm, n, 500 + rep), plan);
    pairs.insert(pairs.end(), chunk.begin(), chunk.end());
  }
  REQUIRE(pairs.size() >= 800);
  std::size_t above = 0;
  for (const auto& pr : pairs)
    if (pr.l > 2.0) ++above;
  const double target = std::pow(2.0, -alpha);
  const double se =
      std::sqrt(target * (1.0 - target) / static_cast<double>(pairs.size()));
  CHECK(std::abs(static_cast<double>(above) / pairs.size() - target) <=
        3.0 * se + 0.01);

  // shapes approach the coefficient profile in the shift metric
  const Cluster limit_shape({1.0, 0.7});
  double mean_dist = 0.0;
  for (const auto& pr : pairs)
    mean_dist += seqspace::shift_metric(seqspace::truncate(pr.q, 0.05),
                                        limit_shape);
  mean_dist /= static_cast<double>(pairs.size());
  CHECK(mean_dist < 0.15);
}

TEST_CASE("L-Q independence test: calibration, power, degeneracy") {
  Rng rng(77);
  // Null: synthetic pairs with L and Q drawn independently.
  int rejections = 0;
  const int reps = 100;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<clusters::ClusterLawPair> pairs;
    for (int i = 0; i < 600; ++i) {
      const double l = rng.pareto(0.7);
      pairs.push_back({l, Cluster({rng.sign(0.5), rng.uniform01()})});
    }
    const auto res = clusters::independence_test_LQ(
        pairs, [](const Cluster& q) { return q.values()[0]; }, 500, 399,
        900 + rep);
    if (res.p_value < 0.05) ++rejections;
  }
  const double frac = rejections / static_cast<double>(reps);
  CHECK(frac >= 0.0);
  CHECK(frac <= 0.12);  // 0.05 +- binomial noise

  // Power: shapes coupled to the magnitude through their sign.
  std::vector<clusters::ClusterLawPair> coupled;
  std::vector<double> ls;
  for (int i = 0; i < 10000; ++i) ls.push_back(rng.pareto(0.7));
  const double med = stats::quantile(ls, 0.5);
  for (double l : ls)
    coupled.push_back({l, Cluster({l > med ? 1.0 : -1.0, rng.uniform01()})});
  const auto strong = clusters::independence_test_LQ(
      coupled, [](const Cluster& q) { return q.values()[0]; }, 500, 399, 5);
  CHECK(strong.p_value < 0.01);

  // Constant g is flagged with p = 1.
  const auto flat = clusters::independence_test_LQ(
      coupled, [](const Cluster&) { return 1.0; }, 500, 99, 6);
  CHECK(flat.degenerate);
  CHECK(flat.p_value == doctest::Approx(1.0));

  CHECK_THROWS_AS(clusters::independence_test_LQ(
                      {}, [](const Cluster&) { return 0.0; }, 500, 99, 7),
                  std::invalid_argument);
}

TEST_CASE("block functional sums and their monotonicity") {
  const auto s = make_series({0, 9, 0, 0, 0, 0, 0, 0, 9, 8, 0, 0});
  clusters::BlockingPlan plan{12, 4, 5.0, 1.0};
  const auto f1 = sup_threshold_functional(1.0);
  CHECK(clusters::cluster_functional_nu(s, plan, f1) == doctest::Approx(2.0));

  Rng rng(8);
  std::vector<double> values(4000);
  for (auto& v : values) v = rng.pareto(0.8);
  clusters::BlockingPlan rplan{4000, 60, 40.0, 1.0};
  const auto rs = make_series(values);
  double prev = 1e300;
  for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double nu = clusters::cluster_functional_nu(
        rs, rplan, sup_threshold_functional(y));
    CHECK(nu <= prev + 1e-12);
    prev = nu;
  }

  ClusterFunctional no_floor;
  no_floor.name = "bad";
  no_floor.floor = 0.0;
  no_floor.eval = [](const Cluster&) { return 1.0; };
  CHECK_THROWS_AS(clusters::cluster_functional_nu(rs, rplan, no_floor),
                  std::invalid_argument);
}

TEST_CASE("iid blocks produce essentially single-point shapes") {
  const models::RegVarLaw law{1.0, 1.0};
  const std::size_t n = 1000000;
  clusters::BlockingPlan plan{n, 1000, models::quantile_an(law, n), 0.5};
  std::size_t multi = 0, total = 0;
  for (std::uint64_t rep = 0; rep < 150; ++rep) {
    for (const auto& pr : clusters::empirical_cluster_law(
             models::sample_regvar(law, n, 700 + rep), plan)) {
      ++total;
      // second-largest coordinate above 0.1 marks a non-degenerate shape
      double top = 0.0, second = 0.0;
      for (double v : pr.q.values()) {
        const double a = std::abs(v);
        if (a > top) {
          second = top;
          top = a;
        } else if (a > second) {
          second = a;
        }
      }
      if (second > 0.1) ++multi;
    }
  }
  REQUIRE(total >= 200);
  CHECK(static_cast<double>(multi) / static_cast<double>(total) < 0.05);
}

TEST_CASE("laplace gap: zero for independent blocks, visible for split "
          "clusters") {
  const auto f = [](double, const Cluster& c) {
    return c.sup_norm() > 1.0 ? 2.0 : 0.0;
  };
  const models::RegVarLaw law{1.0, 1.0};
  {
    const std::size_t n = 20000;
    clusters::BlockingPlan plan{n, 200, models::quantile_an(law, n), 1.0};
    const auto gap = clusters::laplace_gap_diagnostic(
        [&](std::uint64_t s) { return models::sample_regvar(law, n, s); },
        plan, f, 150, 31, 2);
    CHECK(std::abs(gap.gap) <= 4.0 * gap.se);
    CHECK_FALSE(gap.low_replications);
  }
  {
    const auto lm = ma1(1.0, 1.0);
    const std::size_t n = 1500;
    clusters::BlockingPlan plan{n, 1, models::quantile_an(lm, n), 1.0};
    const auto gap = clusters::laplace_gap_diagnostic(
        [&](std::uint64_t s) { return models::simulate_linear(lm, n, s); },
        plan, f, 200, 32, 2);
    CHECK(gap.gap > 3.0 * gap.se);
  }
  {
    // time-dependent member of the functional class
    const auto ft = [](double t, const Cluster& c) {
      return c.sup_norm() > 1.0 ? 1.0 + t : 0.0;
    };
    const models::RegVarLaw law{1.0, 1.0};
    const std::size_t n = 20000;
    clusters::BlockingPlan plan{n, 200, models::quantile_an(law, n), 1.0};
    const auto gap = clusters::laplace_gap_diagnostic(
        [&](std::uint64_t s) { return models::sample_regvar(law, n, s); },
        plan, ft, 150, 33, 2);
    CHECK(std::abs(gap.gap) <= 4.0 * gap.se);
    CHECK(gap.dependent_term > 0.0);
    CHECK(gap.dependent_term < 1.0);
  }
}
