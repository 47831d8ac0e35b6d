#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qslab::stats {

// Kolmogorov limiting tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

struct KsResult {
  double d = 0.0;        // sup-distance of the two empirical CDFs
  double p_value = 1.0;  // asymptotic, with the usual small-sample correction
  std::size_t n_a = 0;
  std::size_t n_b = 0;

  bool reject(double level) const { return p_value < level; }
};

// Two-sample Kolmogorov-Smirnov test. Inputs are copied and sorted.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Regularized upper incomplete gamma Q(a, x) by series / continued fraction.
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with `dof` degrees of
// freedom.
double chi_square_sf(double x, double dof);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;

  bool reject(double level) const { return p_value < level; }
};

// Goodness-of-fit against given cell probabilities. Cells with zero
// probability must have zero observations; dof = (#positive cells) - 1.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities);

}  // namespace qslab::stats
