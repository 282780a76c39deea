#include "extremes/espace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "extremes/stats.hpp"

namespace extremes::espace {

StepPath::StepPath(double initial, std::vector<double> times,
                   std::vector<double> levels)
    : initial_(initial), times_(std::move(times)), levels_(std::move(levels)) {
  if (times_.size() != levels_.size())
    throw std::invalid_argument("StepPath: times/levels size mismatch");
  double prev = 0.0;
  for (double t : times_) {
    if (!(t > prev) || t > 1.0)
      throw std::invalid_argument(
          "StepPath: jump times must be strictly increasing in (0,1]");
    prev = t;
  }
}

double StepPath::value(double t) const {
  // Index of the last jump time <= t.
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return initial_;
  return levels_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double StepPath::left_limit(double t) const {
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return initial_;
  return levels_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

bool StepPath::has_jump_at(double t) const {
  return std::binary_search(times_.begin(), times_.end(), t);
}

StepPath StepPath::negated() const {
  std::vector<double> lv(levels_);
  for (double& v : lv) v = -v;
  StepPath out;
  out.initial_ = -initial_;
  out.times_ = times_;
  out.levels_ = std::move(lv);
  return out;
}

std::vector<StepPath::Piece> StepPath::pieces() const {
  std::vector<Piece> out;
  out.reserve(times_.size() + 1);
  double start = 0.0;
  double level = initial_;
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (times_[i] > start) out.push_back(Piece{start, times_[i], level});
    start = times_[i];
    level = levels_[i];
  }
  out.push_back(Piece{start, 1.0, level});
  return out;
}

DecoratedPath::DecoratedPath(StepPath step, std::vector<Decoration> decorations)
    : step_(std::move(step)), decorations_(std::move(decorations)) {
  std::sort(decorations_.begin(), decorations_.end(),
            [](const Decoration& a, const Decoration& b) { return a.t < b.t; });
  for (std::size_t i = 0; i + 1 < decorations_.size(); ++i)
    if (decorations_[i].t == decorations_[i + 1].t)
      throw std::invalid_argument("DecoratedPath: duplicate decoration times");
  for (const auto& d : decorations_) {
    if (d.t < 0.0 || d.t > 1.0 || d.lo > d.hi)
      throw std::invalid_argument("DecoratedPath: malformed decoration");
    const double v = step_.value(d.t);
    const double lv = step_.left_limit(d.t);
    const double tol = 1e-12 * (1.0 + std::abs(v) + std::abs(lv));
    if (d.lo > std::min(v, lv) + tol || d.hi < std::max(v, lv) - tol)
      throw std::invalid_argument(
          "DecoratedPath: decoration must contain x(t) and x(t-)");
  }
  // Auto-complete the jump intervals that carry no user decoration.
  std::vector<Decoration> extra;
  const auto deco_at = [this](double t) {
    const auto it = std::lower_bound(
        decorations_.begin(), decorations_.end(), t,
        [](const Decoration& d, double tt) { return d.t < tt; });
    return it != decorations_.end() && it->t == t;
  };
  const auto& lv_all = step_.levels();
  const auto& tm_all = step_.times();
  double prev = step_.initial();
  for (std::size_t i = 0; i < tm_all.size(); ++i) {
    const double t = tm_all[i];
    const double v = lv_all[i];
    if (v != prev && !deco_at(t))
      extra.push_back(Decoration{t, std::min(v, prev), std::max(v, prev)});
    prev = v;
  }
  decorations_.insert(decorations_.end(), extra.begin(), extra.end());
  std::sort(decorations_.begin(), decorations_.end(),
            [](const Decoration& a, const Decoration& b) { return a.t < b.t; });
}

DecoratedPath DecoratedPath::negated() const {
  std::vector<Decoration> d;
  d.reserve(decorations_.size());
  for (const auto& dec : decorations_)
    d.push_back(Decoration{dec.t, -dec.hi, -dec.lo});
  return DecoratedPath(step_.negated(), std::move(d));
}

DecoratedPath embed_cadlag(const StepPath& step) {
  return DecoratedPath(step, {});
}

GraphSet graph(const DecoratedPath& path) {
  GraphSet g;
  for (const auto& piece : path.step().pieces())
    g.segments.push_back(Segment{piece.start, piece.level, piece.end,
                                 piece.level});
  for (const auto& d : path.decorations())
    g.segments.push_back(Segment{d.t, d.lo, d.t, d.hi});
  return g;
}

namespace {

double dist_to_interval(double x, double lo, double hi) {
  return std::max({lo - x, x - hi, 0.0});
}

// Distance along one segment to a fixed segment reduces to
// f(w) = max(m, lo - w, w - hi) in the varying coordinate w.
struct FlatV {
  double m, lo, hi;
  double eval(double w) const { return std::max({m, lo - w, w - hi}); }
};

FlatV flat_v_for(double fixed_coord, const Segment& target) {
  FlatV f{};
  if (target.horizontal()) {
    f.m = std::abs(fixed_coord - target.z1);
    f.lo = std::min(target.x1, target.x2);
    f.hi = std::max(target.x1, target.x2);
  } else {
    f.m = dist_to_interval(fixed_coord, std::min(target.z1, target.z2),
                           std::max(target.z1, target.z2));
    f.lo = f.hi = target.x1;
  }
  return f;
}

FlatV flat_v_for_vertical(double fixed_x, const Segment& target) {
  FlatV f{};
  if (target.horizontal()) {
    f.m = dist_to_interval(fixed_x, std::min(target.x1, target.x2),
                           std::max(target.x1, target.x2));
    f.lo = f.hi = target.z1;
  } else {
    f.m = std::abs(fixed_x - target.x1);
    f.lo = std::min(target.z1, target.z2);
    f.hi = std::max(target.z1, target.z2);
  }
  return f;
}

double envelope(const std::vector<FlatV>& fs, double w) {
  double g = std::numeric_limits<double>::infinity();
  for (const auto& f : fs) g = std::min(g, f.eval(w));
  return g;
}

// max over w in [w1,w2] of min_S f_S(w). Interior local maxima of the lower
// envelope of convex piecewise-linear functions occur at pairwise crossings;
// breakpoints are added as cheap extra candidates for degenerate overlaps.
double max_of_envelope(const std::vector<FlatV>& fs, double w1, double w2) {
  double best = std::max(envelope(fs, w1), envelope(fs, w2));
  for (const auto& f : fs) {
    for (double bp : {f.lo - f.m, f.hi + f.m}) {
      if (bp <= w1 || bp >= w2) continue;
      if (f.m <= best) continue;  // envelope there cannot beat best
      best = std::max(best, envelope(fs, bp));
    }
  }
  const std::size_t n = fs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const FlatV& f1 = fs[i];
      const FlatV& f2 = fs[j];
      double cuts[6] = {w1,           f1.lo - f1.m, f1.hi + f1.m,
                        f2.lo - f2.m, f2.hi + f2.m, w2};
      std::sort(std::begin(cuts), std::end(cuts));
      for (int c = 0; c < 5; ++c) {
        const double a = std::max(cuts[c], w1);
        const double b = std::min(cuts[c + 1], w2);
        if (!(b > a)) continue;
        const double d0 = f1.eval(a) - f2.eval(a);
        const double d1 = f1.eval(b) - f2.eval(b);
        if (d0 == 0.0 && d1 == 0.0) continue;  // identical piece, ends covered
        if ((d0 > 0.0 && d1 > 0.0) || (d0 < 0.0 && d1 < 0.0)) continue;
        const double w = a + (b - a) * (d0 / (d0 - d1));
        const double v = std::min(f1.eval(w), f2.eval(w));
        if (v <= best) continue;
        best = std::max(best, envelope(fs, w));
      }
    }
  }
  return best;
}

double directed_hausdorff(const GraphSet& from, const GraphSet& to) {
  double result = 0.0;
  std::vector<FlatV> fs(to.segments.size());
  for (const auto& seg : from.segments) {
    double w1, w2;
    if (seg.horizontal()) {
      w1 = std::min(seg.x1, seg.x2);
      w2 = std::max(seg.x1, seg.x2);
      for (std::size_t i = 0; i < to.segments.size(); ++i)
        fs[i] = flat_v_for(seg.z1, to.segments[i]);
    } else {
      w1 = std::min(seg.z1, seg.z2);
      w2 = std::max(seg.z1, seg.z2);
      for (std::size_t i = 0; i < to.segments.size(); ++i)
        fs[i] = flat_v_for_vertical(seg.x1, to.segments[i]);
    }
    if (w1 == w2) {
      result = std::max(result, envelope(fs, w1));
      continue;
    }
    result = std::max(result, max_of_envelope(fs, w1, w2));
  }
  return result;
}

}  // namespace

double hausdorff_graphs(const GraphSet& a, const GraphSet& b) {
  if (a.empty() || b.empty())
    throw std::domain_error("hausdorff_graphs: empty graph");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

namespace {

double point_to_set(double x, double z, const GraphSet& g) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& seg : g.segments) {
    double v;
    if (seg.horizontal())
      v = std::max(dist_to_interval(x, std::min(seg.x1, seg.x2),
                                    std::max(seg.x1, seg.x2)),
                   std::abs(z - seg.z1));
    else
      v = std::max(std::abs(x - seg.x1),
                   dist_to_interval(z, std::min(seg.z1, seg.z2),
                                    std::max(seg.z1, seg.z2)));
    d = std::min(d, v);
  }
  return d;
}

double directed_grid(const GraphSet& from, const GraphSet& to, double delta) {
  double result = 0.0;
  for (const auto& seg : from.segments) {
    const double len =
        std::max(std::abs(seg.x2 - seg.x1), std::abs(seg.z2 - seg.z1));
    const int steps = std::max(1, static_cast<int>(std::ceil(len / delta)));
    for (int i = 0; i <= steps; ++i) {
      const double frac = static_cast<double>(i) / steps;
      const double x = seg.x1 + frac * (seg.x2 - seg.x1);
      const double z = seg.z1 + frac * (seg.z2 - seg.z1);
      result = std::max(result, point_to_set(x, z, to));
    }
  }
  return result;
}

}  // namespace

double hausdorff_graphs_grid(const GraphSet& a, const GraphSet& b,
                             double delta) {
  if (a.empty() || b.empty())
    throw std::domain_error("hausdorff_graphs_grid: empty graph");
  return std::max(directed_grid(a, b, delta), directed_grid(b, a, delta));
}

namespace {

struct IntervalValue {
  double lo, hi;
};

IntervalValue set_value(const DecoratedPath& p, double t) {
  for (const auto& d : p.decorations())
    if (d.t == t) return IntervalValue{d.lo, d.hi};
  const double v = p.step().value(t);
  return IntervalValue{v, v};
}

double interval_hausdorff(const IntervalValue& a, const IntervalValue& b) {
  return std::max(std::abs(b.lo - a.lo), std::abs(b.hi - a.hi));
}

}  // namespace

double uniform_metric(const DecoratedPath& a, const DecoratedPath& b) {
  std::set<double> cuts{0.0, 1.0};
  for (const auto* p : {&a, &b}) {
    for (double t : p->step().times()) cuts.insert(t);
    for (const auto& d : p->decorations()) cuts.insert(d.t);
  }
  std::vector<double> ts(cuts.begin(), cuts.end());
  double m = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    m = std::max(m, interval_hausdorff(set_value(a, ts[i]), set_value(b, ts[i])));
    if (i + 1 < ts.size()) {
      const double mid = (ts[i] + ts[i + 1]) / 2.0;
      m = std::max(m,
                   interval_hausdorff(set_value(a, mid), set_value(b, mid)));
    }
  }
  return m;
}

double local_max(const DecoratedPath& path, double t1, double t2) {
  if (!(t1 >= 0.0 && t1 < t2 && t2 <= 1.0))
    throw std::invalid_argument("local_max: require 0 <= t1 < t2 <= 1");
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& piece : path.step().pieces()) {
    const bool is_last = piece.end == 1.0;
    // A piece [start, end) meets [t1, t2] when start <= t2 and end > t1;
    // the final piece is closed at 1.
    if (piece.start <= t2 && (piece.end > t1 || (is_last && piece.end >= t1)))
      m = std::max(m, piece.level);
  }
  for (const auto& d : path.decorations())
    if (d.t >= t1 && d.t <= t2) m = std::max(m, d.hi);
  return m;
}

StepPath sup_path(const DecoratedPath& path) {
  struct Event {
    double t;
    double candidate;
  };
  std::vector<Event> events;
  const auto& times = path.step().times();
  const auto& levels = path.step().levels();
  for (std::size_t i = 0; i < times.size(); ++i)
    events.push_back(Event{times[i], levels[i]});
  for (const auto& d : path.decorations())
    events.push_back(Event{d.t, d.hi});
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });
  double running = path.step().initial();
  // Decorations at t = 0 are visible from the start.
  std::size_t idx = 0;
  while (idx < events.size() && events[idx].t == 0.0) {
    running = std::max(running, events[idx].candidate);
    ++idx;
  }
  const double initial = running;
  std::vector<double> out_times, out_levels;
  for (; idx < events.size(); ++idx) {
    double cand = events[idx].candidate;
    while (idx + 1 < events.size() && events[idx + 1].t == events[idx].t) {
      ++idx;
      cand = std::max(cand, events[idx].candidate);
    }
    if (cand > running) {
      out_times.push_back(events[idx].t);
      out_levels.push_back(cand);
      running = cand;
    }
  }
  return StepPath(initial, std::move(out_times), std::move(out_levels));
}

StepPath inf_path(const DecoratedPath& path) {
  return sup_path(path.negated()).negated();
}

double PiecewiseLinear::operator()(double t) const {
  if (ts.empty()) throw std::invalid_argument("PiecewiseLinear: empty");
  if (t <= ts.front()) return vals.front();
  if (t >= ts.back()) return vals.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - ts.begin());
  const double frac = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return vals[i - 1] + frac * (vals[i] - vals[i - 1]);
}

PiecewiseLinear PiecewiseLinear::constant(double c) {
  return PiecewiseLinear{{0.0, 1.0}, {c, c}};
}

PiecewiseLinear PiecewiseLinear::linear(double at0, double at1) {
  return PiecewiseLinear{{0.0, 1.0}, {at0, at1}};
}

DecoratedPath add_continuous(const DecoratedPath& path,
                             const PiecewiseLinear& b, int grid) {
  if (grid < 1) throw std::invalid_argument("add_continuous: grid < 1");
  std::set<double> cuts;
  for (int i = 1; i <= grid; ++i)
    cuts.insert(static_cast<double>(i) / static_cast<double>(grid));
  for (double t : path.step().times()) cuts.insert(t);
  for (const auto& d : path.decorations()) cuts.insert(d.t);
  for (double t : b.ts)
    if (t > 0.0 && t <= 1.0) cuts.insert(t);

  const StepPath& x = path.step();
  std::vector<double> times, levels;
  double prev_level = x.initial() + b(0.0);
  for (double t : cuts) {
    const double level = x.value(t) + b(t);
    if (level != prev_level) {
      times.push_back(t);
      levels.push_back(level);
      prev_level = level;
    }
  }
  StepPath shifted(x.initial() + b(0.0), std::move(times), std::move(levels));

  std::vector<Decoration> decs;
  decs.reserve(path.decorations().size());
  for (const auto& d : path.decorations()) {
    const double shift = b(d.t);
    double lo = d.lo + shift;
    double hi = d.hi + shift;
    // Widen to contain the discretized step's value and left limit so the
    // element stays valid when b varies inside a grid cell.
    lo = std::min({lo, shifted.value(d.t), shifted.left_limit(d.t)});
    hi = std::max({hi, shifted.value(d.t), shifted.left_limit(d.t)});
    decs.push_back(Decoration{d.t, lo, hi});
  }
  return DecoratedPath(std::move(shifted), std::move(decs));
}

M2Report m2_convergence_check(const std::vector<DecoratedPath>& paths,
                              const DecoratedPath& limit,
                              const std::vector<Window>& windows,
                              double tolerance) {
  bool has_start = false, has_end = false;
  for (const auto& w : windows) {
    has_start = has_start || w.t1 == 0.0;
    has_end = has_end || w.t2 == 1.0;
  }
  if (!has_start || !has_end)
    throw std::invalid_argument(
        "m2_convergence_check: window grid must include a window starting at "
        "0 and one ending at 1");
  M2Report report;
  const DecoratedPath neg_limit = limit.negated();
  for (const auto& w : windows) {
    for (bool negated : {false, true}) {
      M2WindowReport wr;
      wr.window = w;
      wr.negated = negated;
      const DecoratedPath& lim = negated ? neg_limit : limit;
      wr.limit_value = local_max(lim, w.t1, w.t2);
      wr.gaps.reserve(paths.size());
      for (const auto& p : paths) {
        const double v = negated ? local_max(p.negated(), w.t1, w.t2)
                                 : local_max(p, w.t1, w.t2);
        wr.gaps.push_back(std::abs(v - wr.limit_value));
      }
      const std::size_t q = std::max<std::size_t>(1, wr.gaps.size() / 4);
      double acc = 0.0;
      for (std::size_t i = wr.gaps.size() - q; i < wr.gaps.size(); ++i)
        acc += wr.gaps[i];
      wr.last_quartile_mean = acc / static_cast<double>(q);
      wr.converged = wr.last_quartile_mean <= tolerance;
      report.all_converged = report.all_converged && wr.converged;
      report.windows.push_back(std::move(wr));
    }
  }
  return report;
}

}  // namespace extremes::espace
