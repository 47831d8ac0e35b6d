#include "qslab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qslab::stats {

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 128; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18 * std::abs(sum) || term < 1e-300) break;
    sign = -sign;
  }
  const double q = 2.0 * sum;
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::domain_error("ks_two_sample: samples must be non-empty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < na && j < nb) {
    const double xa = a[i];
    const double xb = b[j];
    if (xa <= xb) ++i;
    if (xb <= xa) ++j;
    const double diff = std::abs(static_cast<double>(i) / static_cast<double>(na) -
                                 static_cast<double>(j) / static_cast<double>(nb));
    if (diff > d) d = diff;
  }
  const double ne = static_cast<double>(na) * static_cast<double>(nb) /
                    (static_cast<double>(na) + static_cast<double>(nb));
  const double sqrt_ne = std::sqrt(ne);
  const double lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
  return {d, kolmogorov_q(lambda), na, nb};
}

namespace {

// Lower regularized incomplete gamma by power series; x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction; x >= a + 1.
double gamma_q_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double x, double dof) {
  if (dof <= 0.0) throw std::domain_error("chi_square_sf: dof must be positive");
  if (x <= 0.0) return 1.0;
  return gamma_q(dof / 2.0, x / 2.0);
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.empty())
    throw std::domain_error("chi_square_gof: size mismatch or empty input");
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  if (total == 0) throw std::domain_error("chi_square_gof: no observations");

  double stat = 0.0;
  std::size_t positive_cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double p = probabilities[i];
    if (p <= 0.0) {
      if (observed[i] != 0)
        throw std::domain_error("chi_square_gof: observation in a zero-probability cell");
      continue;
    }
    ++positive_cells;
    const double expected = p * static_cast<double>(total);
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  if (positive_cells < 2)
    throw std::domain_error("chi_square_gof: need at least two cells");
  const double dof = static_cast<double>(positive_cells - 1);
  return {stat, dof, chi_square_sf(stat, dof)};
}

}  // namespace qslab::stats
