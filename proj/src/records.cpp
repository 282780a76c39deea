#include "extremes/records.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "extremes/stats.hpp"

namespace extremes::records {

int cluster_records(const Cluster& x, double y) {
  if (y < 0.0) throw std::invalid_argument("cluster_records: y must be >= 0");
  double running = y;
  int count = 0;
  for (double v : x.values()) {
    if (v < 0.0)
      throw std::invalid_argument(
          "cluster_records: coordinates must be nonnegative");
    if (v > running) {
      ++count;
      running = v;
    }
  }
  return count;
}

std::vector<std::size_t> series_record_times(const std::vector<double>& x) {
  std::vector<std::size_t> out;
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > running) {
      out.push_back(i + 1);
      running = x[i];
    }
  }
  return out;
}

long RecordMeasure::total_mass() const {
  long m = 0;
  for (const auto& [t, k] : atoms) m += k;
  return m;
}

RecordMeasure record_pp_from_clusters(
    const std::vector<std::pair<double, Cluster>>& points) {
  std::vector<std::pair<double, Cluster>> sorted(points);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].first == sorted[i + 1].first)
      throw std::invalid_argument(
          "record_pp_from_clusters: duplicate cluster times");
  RecordMeasure out;
  double running_max = 0.0;
  for (const auto& [t, c] : sorted) {
    const int k = cluster_records(c, running_max);
    if (k > 0) out.atoms.emplace_back(t, k);
    running_max = std::max(running_max, c.sup_norm());
  }
  return out;
}

RecordMeasure simulate_limit_records(double alpha, const limitpp::QSampler& q,
                                     double s, double t, Rng& rng) {
  if (!(s > 0.0))
    throw std::invalid_argument(
        "simulate_limit_records: s = 0 gives infinite intensity");
  if (!(s < t))
    throw std::invalid_argument("simulate_limit_records: require s < t");
  const double log_ratio = std::log(t / s);
  const long count = rng.poisson(log_ratio);
  std::vector<double> times(static_cast<std::size_t>(count));
  for (auto& tt : times) tt = s * std::pow(t / s, rng.uniform01());
  std::sort(times.begin(), times.end());
  RecordMeasure out;
  for (double tt : times) {
    const Cluster shape = q(rng);
    const double pareto = rng.pareto(alpha);
    const int kappa = cluster_records(shape, 1.0 / pareto);
    if (kappa > 0) out.atoms.emplace_back(tt, kappa);
  }
  return out;
}

RecordMeasure simulate_limit_records(double alpha, const limitpp::QSampler& q,
                                     double s, double t, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_limit_records(alpha, q, s, t, rng);
}

std::map<int, double> ma1_kappa_law(double c, double alpha) {
  if (!(c > 1.0))
    throw std::domain_error("ma1_kappa_law: requires c > 1");
  if (!(alpha > 0.0))
    throw std::invalid_argument("ma1_kappa_law: alpha must be > 0");
  const double p2 = std::pow(c, -alpha);
  return {{1, 1.0 - p2}, {2, p2}};
}

std::map<int, double> exact_kappa_law(const Cluster& q_unit, double alpha) {
  if (q_unit.is_zero())
    throw std::invalid_argument("exact_kappa_law: zero shape");
  if (std::abs(q_unit.sup_norm() - 1.0) > 1e-12)
    throw std::invalid_argument("exact_kappa_law: shape must have sup norm 1");
  // Record levels of the shape itself (records against threshold 0).
  std::vector<double> levels;
  double running = 0.0;
  for (double v : q_unit.values()) {
    if (v < 0.0)
      throw std::invalid_argument("exact_kappa_law: nonnegative shapes only");
    if (v > running) {
      levels.push_back(v);
      running = v;
    }
  }
  // kappa(1/s) = #{levels > 1/s};  P(kappa >= k) = levels[m-k]^alpha.
  const std::size_t m = levels.size();
  std::map<int, double> law;
  double tail_above = 1.0;  // P(kappa >= 1) since levels.back() == 1
  for (std::size_t k = 1; k <= m; ++k) {
    const double tail_next =
        k == m ? 0.0 : std::pow(levels[m - k - 1], alpha);
    law[static_cast<int>(k)] = tail_above - tail_next;
    tail_above = tail_next;
  }
  return law;
}

bool q_has_distinct_nonzero_coords(const Cluster& q) {
  std::vector<double> nz;
  for (double v : q.values())
    if (v != 0.0) nz.push_back(std::abs(v));
  std::sort(nz.begin(), nz.end());
  return std::adjacent_find(nz.begin(), nz.end()) == nz.end();
}

RecordExperimentReport record_convergence_experiment(
    const std::function<std::vector<double>(std::uint64_t)>& series_gen,
    std::size_t n, std::size_t r_n, double window_s, double window_t,
    double alpha, const limitpp::QSampler& q, std::size_t replications,
    std::size_t limit_draws, std::uint64_t seed, int threads) {
  RecordExperimentReport report;
  report.window_s = window_s;
  report.window_t = window_t;
  report.replications = replications;
  if (!(window_s < window_t) || replications == 0) {
    report.empty = true;
    return report;
  }
  if (!(window_s > 0.0))
    throw std::invalid_argument("record_convergence_experiment: s must be > 0");

  // Per replication: raw record times, merged into one atom per r_n block
  // (a record at index i lands at block floor(i/r_n)+1, time block/k_n),
  // restricted to the window.
  std::vector<std::vector<int>> mult_per_rep(replications);
  std::vector<long> atoms_per_rep(replications, 0);
  const std::size_t k_n = n / r_n;
  parallel_for(replications, threads, [&](std::size_t rep) {
    const std::vector<double> x = series_gen(Rng::derive(seed, rep));
    double running = -std::numeric_limits<double>::infinity();
    long current_block = -1;
    int current_mult = 0;
    auto flush = [&]() {
      if (current_block < 0 || current_mult == 0) return;
      const double t_atom = static_cast<double>(current_block + 1) /
                            static_cast<double>(k_n);
      if (t_atom > window_s && t_atom <= window_t) {
        mult_per_rep[rep].push_back(current_mult);
        ++atoms_per_rep[rep];
      }
      current_mult = 0;
    };
    for (std::size_t i = 0; i < x.size() && i < n; ++i) {
      if (x[i] < 0.0)
        throw std::invalid_argument(
            "record_convergence_experiment: requires a nonnegative series");
      if (x[i] > running) {
        running = x[i];
        const long block = static_cast<long>(i / r_n);
        if (block != current_block) {
          flush();
          current_block = block;
        }
        ++current_mult;
      }
    }
    flush();
  });

  for (std::size_t rep = 0; rep < replications; ++rep) {
    report.atom_counts.push_back(atoms_per_rep[rep]);
    for (int m : mult_per_rep[rep]) report.multiplicities.push_back(m);
  }

  const double lam = std::log(window_t / window_s);
  report.atom_chi2_p =
      stats::chi_square_poisson(report.atom_counts, lam, 5).p_value;

  std::size_t k2 = 0;
  for (int m : report.multiplicities)
    if (m >= 2) ++k2;
  const double total = static_cast<double>(report.multiplicities.size());
  if (total > 0.0) {
    report.kappa2_hat = static_cast<double>(k2) / total;
    report.kappa2_se =
        std::sqrt(report.kappa2_hat * (1.0 - report.kappa2_hat) / total);
  }

  // Limit-sampler side on the same window.
  std::vector<long> lim_counts(limit_draws, 0);
  std::vector<int> lim_mult;
  Rng lrng(Rng::derive(seed, 0x4ecce55ULL));
  for (std::size_t d = 0; d < limit_draws; ++d) {
    const RecordMeasure rm =
        simulate_limit_records(alpha, q, window_s, window_t, lrng);
    lim_counts[d] = static_cast<long>(rm.atoms.size());
    for (const auto& [t, m] : rm.atoms) lim_mult.push_back(m);
  }
  report.limit_atom_chi2_p =
      stats::chi_square_poisson(lim_counts, lam, 5).p_value;
  std::size_t lk2 = 0;
  for (int m : lim_mult)
    if (m >= 2) ++lk2;
  if (!lim_mult.empty())
    report.limit_kappa2 =
        static_cast<double>(lk2) / static_cast<double>(lim_mult.size());
  return report;
}

}  // namespace extremes::records
