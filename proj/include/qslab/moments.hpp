#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace qslab {

// Streaming central-moment accumulator (Chan/Pebay update rules) with an
// order-insensitive-in-expectation merge. m2..m4 are sums of centered powers;
// the third and fourth sums exist so that standard errors of variance and
// standard-deviation estimates can be reported alongside the estimates.
struct MomentSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double x) {
    const double n1 = static_cast<double>(count);
    ++count;
    const double n = static_cast<double>(count);
    const double delta = x - mean;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean += delta_n;
    m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 -
          4.0 * delta_n * m3;
    m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
    m2 += term1;
    if (x < min) min = x;
    if (x > max) max = x;
  }

  MomentSummary& merge(const MomentSummary& o) {
    if (o.count == 0) return *this;
    if (count == 0) {
      *this = o;
      return *this;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double n = na + nb;
    const double delta = o.mean - mean;
    const double d2 = delta * delta;

    const double m4n = m4 + o.m4 +
                       d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                       6.0 * d2 * (na * na * o.m2 + nb * nb * m2) / (n * n) +
                       4.0 * delta * (na * o.m3 - nb * m3) / n;
    const double m3n = m3 + o.m3 +
                       delta * d2 * na * nb * (na - nb) / (n * n) +
                       3.0 * delta * (na * o.m2 - nb * m2) / n;
    const double m2n = m2 + o.m2 + d2 * na * nb / n;

    mean += delta * nb / n;
    m2 = m2n;
    m3 = m3n;
    m4 = m4n;
    count += o.count;
    if (o.min < min) min = o.min;
    if (o.max > max) max = o.max;
    return *this;
  }

  // Sample variance (divide by count-1); zero for a single observation.
  double variance() const {
    return count >= 2 ? m2 / static_cast<double>(count - 1) : 0.0;
  }

  double stddev() const { return std::sqrt(variance()); }

  double mean_stderr() const {
    return count >= 2 ? stddev() / std::sqrt(static_cast<double>(count)) : 0.0;
  }

  // Asymptotic standard error of the sample variance: sqrt((mu4 - var^2)/n).
  double variance_stderr() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double var = m2 / n;
    const double mu4 = m4 / n;
    const double v = mu4 - var * var;
    return v > 0.0 ? std::sqrt(v / n) : 0.0;
  }

  // Delta method: se(sd) = se(var) / (2 sd).
  double stddev_stderr() const {
    const double sd = stddev();
    return sd > 0.0 ? variance_stderr() / (2.0 * sd) : 0.0;
  }
};

inline MomentSummary moments(std::span<const double> xs) {
  if (xs.empty()) throw std::domain_error("moments: empty stream");
  MomentSummary s;
  for (double x : xs) s.add(x);
  return s;
}

}  // namespace qslab
