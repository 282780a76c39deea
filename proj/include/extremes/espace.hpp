#pragma once

#include <cstddef>
#include <vector>

namespace extremes::espace {

/// Right-continuous piecewise-constant function on [0,1]: an initial level
/// and strictly increasing jump times in (0,1] with post-jump levels.
class StepPath {
 public:
  StepPath() = default;
  StepPath(double initial, std::vector<double> times,
           std::vector<double> levels);

  double initial() const { return initial_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& levels() const { return levels_; }
  std::size_t jump_count() const { return times_.size(); }

  double value(double t) const;
  double left_limit(double t) const;
  bool has_jump_at(double t) const;

  StepPath negated() const;

  /// Constant pieces as (start, end, level); consecutive pieces share their
  /// boundary, the path is right-continuous there.
  struct Piece {
    double start, end, level;
  };
  std::vector<Piece> pieces() const;

 private:
  double initial_ = 0.0;
  std::vector<double> times_;
  std::vector<double> levels_;
};

struct Decoration {
  double t;
  double lo;
  double hi;
};

/// A step function with closed-interval decorations at finitely many times.
/// Every jump carries a decoration (auto-completed with the jump interval
/// when not supplied); user decorations must contain the path value and left
/// limit at their time and are never shrunk.
class DecoratedPath {
 public:
  DecoratedPath() = default;
  explicit DecoratedPath(StepPath step) : DecoratedPath(std::move(step), {}) {}
  DecoratedPath(StepPath step, std::vector<Decoration> decorations);

  const StepPath& step() const { return step_; }
  const std::vector<Decoration>& decorations() const { return decorations_; }

  DecoratedPath negated() const;

 private:
  StepPath step_;
  std::vector<Decoration> decorations_;  // sorted by time, distinct
};

/// Identify a cadlag step function with its canonically decorated element:
/// decorations exactly the jump intervals.
DecoratedPath embed_cadlag(const StepPath& step);

/// An axis-aligned segment in [0,1] x R; horizontal when z1 == z2, vertical
/// when x1 == x2.
struct Segment {
  double x1, z1, x2, z2;
  bool horizontal() const { return z1 == z2; }
};

/// The completed graph: one horizontal segment per constant piece and one
/// vertical segment per decoration.
struct GraphSet {
  std::vector<Segment> segments;
  bool empty() const { return segments.empty(); }
};

GraphSet graph(const DecoratedPath& path);

/// Exact Hausdorff distance between two segment unions under the sup norm on
/// R^2. Directed distances maximize, over each segment, the lower envelope
/// of the per-segment distance functions; every local maximum of that
/// envelope lies at an interval end, a breakpoint, or a pairwise crossing,
/// and all of those are enumerated.
double hausdorff_graphs(const GraphSet& a, const GraphSet& b);

/// Dense-grid reference: sample every segment at spacing delta and take the
/// max of exact point-to-set distances. Within delta of the true value.
double hausdorff_graphs_grid(const GraphSet& a, const GraphSet& b,
                             double delta);

/// sup_t over the interval Hausdorff distance of the set values x'(t), y'(t);
/// evaluated at merged breakpoints and midpoints, which is exact for step
/// paths. Dominates hausdorff_graphs(graph(x), graph(y)).
double uniform_metric(const DecoratedPath& a, const DecoratedPath& b);

/// M_{t1,t2}: the supremum of set values over the window [t1, t2].
double local_max(const DecoratedPath& path, double t1, double t2);

/// Running supremum as a cadlag step path, absorbing decoration upper ends.
StepPath sup_path(const DecoratedPath& path);
/// Running infimum, = -sup_path(-x).
StepPath inf_path(const DecoratedPath& path);

/// Continuous piecewise-linear function on [0,1] given by breakpoints.
struct PiecewiseLinear {
  std::vector<double> ts;    // sorted, ts.front() == 0, ts.back() == 1
  std::vector<double> vals;
  double operator()(double t) const;
  static PiecewiseLinear constant(double c);
  static PiecewiseLinear linear(double at0, double at1);
};

/// x' + b with the step part discretized on a uniform grid merged with the
/// existing breakpoints; decorations are translated by b at their exact
/// times (and widened to contain the discretized step endpoints). Exact when
/// b is constant between merged breakpoints.
DecoratedPath add_continuous(const DecoratedPath& path,
                             const PiecewiseLinear& b, int grid = 1024);

struct Window {
  double t1, t2;
};

struct M2WindowReport {
  Window window;
  bool negated = false;
  std::vector<double> gaps;   // |M_w(path_k) - M_w(limit)| per path
  double limit_value = 0.0;
  double last_quartile_mean = 0.0;
  bool converged = true;
};

struct M2Report {
  std::vector<M2WindowReport> windows;
  bool all_converged = true;
};

/// Window local-max gaps of a path sequence against a limit path, both signs
/// per window; a window fails when the mean gap over the last quartile of
/// the sequence exceeds the tolerance.
M2Report m2_convergence_check(const std::vector<DecoratedPath>& paths,
                              const DecoratedPath& limit,
                              const std::vector<Window>& windows,
                              double tolerance);

}  // namespace extremes::espace
