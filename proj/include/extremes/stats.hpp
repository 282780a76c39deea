#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace extremes::stats {

double mean(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);
/// Standard error of the mean.
double se_of_mean(const std::vector<double>& v);

/// Empirical quantile with linear interpolation, q in [0,1].
double quantile(std::vector<double> v, double q);
/// Quantiles at several levels from one sort.
std::vector<double> quantiles(std::vector<double> v, const std::vector<double>& qs);

/// Two-sample Kolmogorov-Smirnov statistic sup|F1 - F2|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic p-value for the two-sample statistic d with sample sizes n, m.
double ks_asymptotic_pvalue(double d, std::size_t n, std::size_t m);

/// Permutation p-value of the KS statistic (shuffle pooled labels). Exact up
/// to Monte Carlo error; calibrated at small sample sizes where the
/// asymptotic law is conservative.
double ks_permutation_pvalue(const std::vector<double>& a,
                             const std::vector<double>& b,
                             int permutations, std::uint64_t seed);

/// Survival function of the chi-square distribution with k dof.
double chi_square_survival(double x, double dof);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

/// Goodness-of-fit of observed counts against expected counts (same length,
/// expected from a fully specified law; cells with tiny expectation should be
/// merged by the caller).
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected);

/// Counts binned as {0, 1, ..., max_bin-1, >= max_bin} against Poisson(mean).
ChiSquareResult chi_square_poisson(const std::vector<long>& counts, double mean,
                                   int max_bin);

/// Adaptive Simpson quadrature on [a,b] with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

/// c0 = int_0^infty (sin y - y 1{y<=1}) y^{-2} dy via integration by parts
/// plus adaptive quadrature.
double c0_integration_by_parts();
/// Same constant by direct half-period panel summation of the oscillatory
/// tail. Agreement of the two routes bounds the quadrature error.
double c0_panel_sum();

/// The constant computed once at first use (integration-by-parts route).
double c0_constant();

}  // namespace extremes::stats
