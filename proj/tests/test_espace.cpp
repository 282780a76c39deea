#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "extremes/espace.hpp"
#include "extremes/rng.hpp"

using namespace extremes;
using espace::Decoration;
using espace::DecoratedPath;
using espace::GraphSet;
using espace::Segment;
using espace::StepPath;

namespace {

DecoratedPath random_step_path(Rng& rng, int max_jumps) {
  const int jumps = 1 + static_cast<int>(rng.uniform_index(max_jumps));
  std::vector<double> times;
  for (int i = 0; i < jumps; ++i) times.push_back(rng.uniform01());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::vector<double> levels;
  double level = 2.0 * rng.uniform01() - 1.0;
  const double initial = level;
  for (std::size_t i = 0; i < times.size(); ++i) {
    level += 2.0 * rng.uniform01() - 1.0;
    levels.push_back(level);
  }
  return espace::embed_cadlag(StepPath(initial, times, levels));
}

// Completed graph assembled independently of graph(): explicit pieces plus
// jump verticals.
GraphSet completed_graph_oracle(const StepPath& x) {
  GraphSet g;
  double start = 0.0;
  double level = x.initial();
  for (std::size_t i = 0; i < x.times().size(); ++i) {
    g.segments.push_back(Segment{start, level, x.times()[i], level});
    if (x.levels()[i] != level)
      g.segments.push_back(Segment{x.times()[i], std::min(level, x.levels()[i]),
                                   x.times()[i],
                                   std::max(level, x.levels()[i])});
    start = x.times()[i];
    level = x.levels()[i];
  }
  g.segments.push_back(Segment{start, level, 1.0, level});
  return g;
}

}  // namespace

TEST_CASE("step path evaluation") {
  const StepPath x(0.0, {0.25, 0.5}, {1.0, -1.0});
  CHECK(x.value(0.0) == 0.0);
  CHECK(x.value(0.25) == 1.0);
  CHECK(x.left_limit(0.25) == 0.0);
  CHECK(x.value(0.4) == 1.0);
  CHECK(x.value(1.0) == -1.0);
  CHECK(x.left_limit(0.5) == 1.0);
  CHECK_THROWS_AS(StepPath(0.0, {0.5, 0.5}, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepPath(0.0, {1.5}, {1.0}), std::invalid_argument);
}

TEST_CASE("cadlag embedding decorates exactly the jumps") {
  const auto flat = espace::embed_cadlag(StepPath(2.0, {}, {}));
  CHECK(flat.decorations().empty());

  const auto up = espace::embed_cadlag(StepPath(0.0, {0.5}, {1.0}));
  REQUIRE(up.decorations().size() == 1);
  CHECK(up.decorations()[0].t == 0.5);
  CHECK(up.decorations()[0].lo == 0.0);
  CHECK(up.decorations()[0].hi == 1.0);

  const auto down = espace::embed_cadlag(StepPath(1.0, {0.3}, {-1.0}));
  REQUIRE(down.decorations().size() == 1);
  CHECK(down.decorations()[0].lo == -1.0);
  CHECK(down.decorations()[0].hi == 1.0);
}

TEST_CASE("decorated path validation") {
  CHECK_THROWS_AS(
      DecoratedPath(StepPath(0.0, {0.5}, {1.0}),
                    {Decoration{0.5, 0.2, 1.0}}),  // misses x(t-) = 0
      std::invalid_argument);
  CHECK_THROWS_AS(
      DecoratedPath(StepPath(0.0, {}, {}),
                    {Decoration{0.3, -1.0, 1.0}, Decoration{0.3, -2.0, 2.0}}),
      std::invalid_argument);
  // user decoration at a continuity point is preserved, jumps auto-complete
  const DecoratedPath p(StepPath(0.0, {0.5}, {1.0}),
                        {Decoration{0.2, -3.0, 3.0}});
  REQUIRE(p.decorations().size() == 2);
  CHECK(p.decorations()[0].t == 0.2);
  CHECK(p.decorations()[0].lo == -3.0);
  CHECK(p.decorations()[1].t == 0.5);
}

TEST_CASE("graph segment counts") {
  const auto flat = espace::embed_cadlag(StepPath(1.0, {}, {}));
  CHECK(espace::graph(flat).segments.size() == 1);
  const auto one = espace::embed_cadlag(StepPath(0.0, {0.5}, {1.0}));
  CHECK(espace::graph(one).segments.size() == 3);
  const DecoratedPath three(StepPath(0.0, {0.4, 0.6}, {1.0, 2.0}),
                            {Decoration{0.2, 0.0, 0.5}});
  // 3 pieces + 3 decorations (two auto jumps + one user)
  CHECK(espace::graph(three).segments.size() == 6);
}

TEST_CASE("graph of the embedding is the completed graph") {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    const auto p = random_step_path(rng, 6);
    const auto g = espace::graph(p);
    const auto oracle = completed_graph_oracle(p.step());
    CHECK(espace::hausdorff_graphs(g, oracle) == doctest::Approx(0.0));
  }
}

TEST_CASE("hausdorff distance basics") {
  GraphSet a{{Segment{0.0, 0.0, 1.0, 0.0}}};
  GraphSet b{{Segment{0.0, 1.0, 1.0, 1.0}}};
  CHECK(espace::hausdorff_graphs(a, a) == doctest::Approx(0.0));
  CHECK(espace::hausdorff_graphs(a, b) == doctest::Approx(1.0));
  CHECK_THROWS_AS(espace::hausdorff_graphs(a, GraphSet{}), std::domain_error);
}

TEST_CASE("hausdorff matches the dense-grid oracle on random step paths") {
  Rng rng(32);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const auto ga = espace::graph(random_step_path(rng, 10));
    const auto gb = espace::graph(random_step_path(rng, 10));
    const double exact = espace::hausdorff_graphs(ga, gb);
    const double grid = espace::hausdorff_graphs_grid(ga, gb, 1e-3);
    CHECK(exact >= grid - 1e-12);  // grid maximizes over a subset
    worst = std::max(worst, std::abs(exact - grid));
  }
  CHECK(worst <= 2e-3);
}

TEST_CASE("hausdorff against a sharper grid on adversarial families") {
  Rng rng(2024);
  auto check = [&](const GraphSet& ga, const GraphSet& gb, double delta) {
    const double exact = espace::hausdorff_graphs(ga, gb);
    const double grid = espace::hausdorff_graphs_grid(ga, gb, delta);
    CHECK(exact >= grid - 1e-12);
    CHECK(exact - grid <= delta);
  };
  // jittered near-copies: distances at the 1e-6 scale
  for (int i = 0; i < 60; ++i) {
    const auto base = random_step_path(rng, 8);
    std::vector<double> lv(base.step().levels());
    for (auto& v : lv) v += 1e-6 * (2.0 * rng.uniform01() - 1.0);
    const auto jig = espace::embed_cadlag(
        StepPath(base.step().initial() + 1e-7, base.step().times(), lv));
    check(espace::graph(base), espace::graph(jig), 2e-4);
  }
  // user decorations (spikes) at continuity points
  for (int i = 0; i < 60; ++i) {
    auto mk = [&]() {
      auto p = random_step_path(rng, 5);
      const double t0 = 0.011 + 0.2 * rng.uniform01();
      if (p.step().has_jump_at(t0)) return p;
      const double v = p.step().value(t0);
      return DecoratedPath(
          p.step(), {Decoration{t0, v - 3.0 * rng.uniform01(),
                                v + 3.0 * rng.uniform01()}});
    };
    check(espace::graph(mk()), espace::graph(mk()), 2e-4);
  }
  // graphs sharing segments: distance driven by one diverging piece
  for (int i = 0; i < 40; ++i) {
    const auto g1 = espace::graph(espace::embed_cadlag(
        StepPath(0.0, {0.3, 0.6}, {1.0, 1.0 + rng.uniform01()})));
    const auto g2 =
        espace::graph(espace::embed_cadlag(StepPath(0.0, {0.3}, {1.0})));
    check(g1, g2, 2e-4);
  }
}

TEST_CASE("hausdorff metric axioms on random graphs") {
  Rng rng(33);
  for (int i = 0; i < 500; ++i) {
    const auto pa = random_step_path(rng, 4);
    const auto pb = random_step_path(rng, 4);
    const auto pc = random_step_path(rng, 4);
    const auto ga = espace::graph(pa), gb = espace::graph(pb),
               gc = espace::graph(pc);
    const double ab = espace::hausdorff_graphs(ga, gb);
    CHECK(ab == doctest::Approx(espace::hausdorff_graphs(gb, ga)));
    CHECK(ab <= espace::hausdorff_graphs(ga, gc) +
                    espace::hausdorff_graphs(gc, gb) + 1e-9);
    CHECK(ab <= espace::uniform_metric(pa, pb) + 1e-12);
  }
}

TEST_CASE("uniform metric on interval values") {
  const auto zero = espace::embed_cadlag(StepPath(0.0, {}, {}));
  const auto one = espace::embed_cadlag(StepPath(1.0, {}, {}));
  CHECK(espace::uniform_metric(zero, zero) == doctest::Approx(0.0));
  CHECK(espace::uniform_metric(zero, one) == doctest::Approx(1.0));
  // same path, decorations [0,1] vs [0,2] at the same time
  const DecoratedPath p1(StepPath(0.0, {0.5}, {1.0}), {});
  const DecoratedPath p2(StepPath(0.0, {0.5}, {1.0}),
                         {Decoration{0.5, 0.0, 2.0}});
  CHECK(espace::uniform_metric(p1, p2) == doctest::Approx(1.0));
}

TEST_CASE("window maxima") {
  const auto c = espace::embed_cadlag(StepPath(2.5, {}, {}));
  CHECK(espace::local_max(c, 0.0, 1.0) == doctest::Approx(2.5));

  const DecoratedPath p(StepPath(0.0, {0.5}, {1.0}),
                        {Decoration{0.5, -2.0, 3.0}});
  CHECK(espace::local_max(p, 0.0, 1.0) == doctest::Approx(3.0));
  CHECK(espace::local_max(p, 0.6, 1.0) == doctest::Approx(1.0));
  CHECK(espace::local_max(p, 0.0, 0.4) == doctest::Approx(0.0));
  CHECK_THROWS_AS(espace::local_max(p, 0.7, 0.7), std::invalid_argument);

  // window max at the full span equals the supremum over graph heights
  Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const auto path = random_step_path(rng, 6);
    double top = -1e300;
    for (const auto& seg : espace::graph(path).segments)
      top = std::max({top, seg.z1, seg.z2});
    CHECK(espace::local_max(path, 0.0, 1.0) == doctest::Approx(top));
  }
}

TEST_CASE("running supremum") {
  const StepPath mono(0.0, {0.3, 0.6}, {1.0, 2.0});
  const StepPath sup = espace::sup_path(espace::embed_cadlag(mono));
  CHECK(sup.times() == mono.times());
  CHECK(sup.levels() == mono.levels());

  const DecoratedPath dec(StepPath(0.0, {0.5, 0.7}, {1.0, 0.2}),
                          {Decoration{0.5, 0.0, 5.0}});
  const StepPath s2 = espace::sup_path(dec);
  REQUIRE(s2.times().size() == 1);
  CHECK(s2.times()[0] == 0.5);
  CHECK(s2.levels()[0] == 5.0);

  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const auto path = random_step_path(rng, 6);
    const StepPath s = espace::sup_path(path);
    const StepPath inf = espace::inf_path(path);
    double prev = -1e300;
    for (double t : {0.0, 0.1, 0.37, 0.5, 0.82, 1.0}) {
      const double v = s.value(t);
      CHECK(v >= prev - 1e-15);        // nondecreasing
      CHECK(v >= path.step().value(t) - 1e-15);
      CHECK(inf.value(t) ==
            doctest::Approx(-espace::sup_path(path.negated()).value(t)));
      prev = v;
    }
  }
}

TEST_CASE("addition of a continuous function") {
  const DecoratedPath p(StepPath(0.0, {0.5}, {1.0}),
                        {Decoration{0.5, -1.0, 2.0}});
  const auto same = espace::add_continuous(p, espace::PiecewiseLinear::constant(0.0), 64);
  CHECK(espace::uniform_metric(p, same) == doctest::Approx(0.0));

  // decoration [1,2] at t=0.5 with b(t) = 2t moves to [2,3]
  const DecoratedPath q2(StepPath(1.0, {0.5}, {2.0}),
                         {Decoration{0.5, 1.0, 2.0}});
  const auto moved =
      espace::add_continuous(q2, espace::PiecewiseLinear::linear(0.0, 2.0), 2048);
  bool found = false;
  for (const auto& d : moved.decorations())
    if (d.t == 0.5) {
      found = true;
      CHECK(d.lo == doctest::Approx(2.0).epsilon(1e-3));
      CHECK(d.hi == doctest::Approx(3.0).epsilon(1e-3));
    }
  CHECK(found);

  // ramp added to the zero path: staircase within one grid cell of the ramp
  const auto ramp = espace::add_continuous(
      espace::embed_cadlag(StepPath(0.0, {}, {})),
      espace::PiecewiseLinear::linear(0.0, 1.0), 256);
  for (const auto& d : ramp.decorations())
    CHECK(d.hi - d.lo <= 1.0 / 256 + 1e-12);
  CHECK(ramp.step().value(0.5) == doctest::Approx(0.5).epsilon(1e-2));

  // translation continuity: m_E(x'+b_k, x'+b) <= sup|b_k - b|
  Rng rng(36);
  for (int i = 0; i < 40; ++i) {
    const auto base = random_step_path(rng, 5);
    const double slope = 2.0 * rng.uniform01() - 1.0;
    const espace::PiecewiseLinear b = espace::PiecewiseLinear::linear(0.0, slope);
    const double eps = 1.0 / (1.0 + static_cast<double>(i));
    const espace::PiecewiseLinear bk =
        espace::PiecewiseLinear::linear(eps, slope + eps);
    const auto pb = espace::add_continuous(base, b, 128);
    const auto pbk = espace::add_continuous(base, bk, 128);
    const double sup_gap = eps;  // |bk - b| == eps everywhere here
    CHECK(espace::hausdorff_graphs(espace::graph(pb), espace::graph(pbk)) <=
          sup_gap + 1e-9);
  }
}

TEST_CASE("window-gap convergence report") {
  const auto limit = espace::embed_cadlag(StepPath(0.0, {0.5}, {1.0}));
  std::vector<DecoratedPath> paths;
  for (int k = 1; k <= 8; ++k) paths.push_back(limit);
  const std::vector<espace::Window> windows = {{0.0, 1.0}, {0.0, 0.5},
                                               {0.5, 1.0}};
  const auto rep = espace::m2_convergence_check(paths, limit, windows, 1e-9);
  CHECK(rep.all_converged);
  for (const auto& w : rep.windows)
    for (double g : w.gaps) CHECK(g == doctest::Approx(0.0));

  // 1/k vertical shifts converge
  std::vector<DecoratedPath> shifted;
  for (int k = 1; k <= 32; ++k)
    shifted.push_back(espace::embed_cadlag(
        StepPath(1.0 / k, {0.5}, {1.0 + 1.0 / k})));
  const auto rep2 = espace::m2_convergence_check(shifted, limit, windows, 0.1);
  CHECK(rep2.all_converged);
  for (const auto& w : rep2.windows)
    if (!w.negated)
      for (std::size_t k = 0; k < w.gaps.size(); ++k)
        CHECK(w.gaps[k] == doctest::Approx(1.0 / (k + 1.0)));

  // non-convergent sequence is flagged
  std::vector<DecoratedPath> off;
  for (int k = 1; k <= 8; ++k)
    off.push_back(espace::embed_cadlag(StepPath(2.0, {0.5}, {3.0})));
  CHECK_FALSE(espace::m2_convergence_check(off, limit, windows, 0.5)
                  .all_converged);

  CHECK_THROWS_AS(
      espace::m2_convergence_check(paths, limit, {{0.2, 0.8}}, 0.1),
      std::invalid_argument);
}
