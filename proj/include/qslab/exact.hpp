#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qslab/rational.hpp"

// Exact rational evaluation of the expected-comparison recurrences and closed
// forms for dual-pivot quickselect, plus exhaustive small-n enumeration
// oracles (averages, toll law, randomness preservation). Everything here is
// deterministic and exact; no floating point is involved.

namespace qslab::exact {

enum class SeriesMode { grand, extremal_min, toll };
enum class SeriesSource { recurrence, closed_form, enumeration };

// Expected values indexed by n over a contiguous range starting at first_n.
struct ExactSeries {
  SeriesMode mode = SeriesMode::grand;
  SeriesSource source = SeriesSource::recurrence;
  std::uint32_t first_n = 0;
  std::vector<Rational> values;

  const Rational& at(std::uint32_t n) const;
  std::uint32_t last_n() const {
    return first_n + static_cast<std::uint32_t>(values.size()) - 1;
  }
};

// H_n = sum_{k=1..n} 1/k. Domain error for n = 0.
Rational harmonic(std::uint32_t n);

// Expected comparisons of one dual-pivot partitioning pass:
// 19/12 (n+1) - 3. Valid for n >= 3 only; enumeration shows the formula
// overshoots at n = 2 (actual mean is 1, the formula gives 7/4), so smaller
// n is a domain error.
Rational expected_toll(std::uint32_t n);

// Grand average (expectation over both a random permutation and a uniformly
// random rank). Boundary values C_0 = C_1 = 0, C_2 = 1; for n >= 3
//   E[C_n] = 19/12 (n+1) - 3 + 6/(n^2 (n-1)) * sum_p (p-1)(n-p) E[C_{p-1}].
ExactSeries grand_average_recurrence(std::uint32_t n_max);

// Closed form of the grand average, valid for n >= 4:
//   19/6 n - 37/5 H_n + 1183/100 - 37/5 H_n / n - 71/(300 n).
Rational grand_average_closed(std::uint32_t n);
Rational grand_average_closed(std::uint32_t n, const Rational& harmonic_n);

// Expected comparisons to select the minimum. Boundary values as above;
// for n >= 3
//   E[C^_n] = 19/12 (n+1) - 3 + (1/binom(n,2)) * sum_p (n-p) E[C^_{p-1}].
ExactSeries extremal_average_recurrence(std::uint32_t n_max);

// Closed form of the extremal (rank-1) average, valid for n >= 4:
//   (57n^4 - 48n^3 H_n - 178n^3 + 144n^2 H_n + 135n^2 - 96n H_n - 14n + 24)
//   / (24 n (n-1)(n-2)).
Rational extremal_average_closed(std::uint32_t n);
Rational extremal_average_closed(std::uint32_t n, const Rational& harmonic_n);

// Toll expectation as a series (closed form from n = 3).
ExactSeries toll_series(std::uint32_t n_max);

enum class BruteForceRank { grand, min, max, fixed };

// Exact average comparison count of dual-pivot quickselect over all n!
// permutations of {1..n} and, for grand mode, all n ranks. Capped at n <= 9
// (ResourceError beyond): 9! * 9 runs is the largest desk-scale sweep.
Rational brute_force_average(std::uint32_t n, BruteForceRank mode,
                             std::uint32_t fixed_rank = 0);

// Exact average comparisons of a single partitioning pass over all n!
// permutations; n <= 9.
Rational enumerate_toll_average(std::uint32_t n);

// Conditional toll law, estimated exhaustively. For pivot ranks (p, q) the
// mean comparisons decompose as
//   n - 1 + (n-p-1)(q-2)/(n-2) + (q-2)(n-q)/(n-2) + 3 theta(p,q)
// with theta a Bernoulli probability. theta is measured, not derived: it is
// backed out of the enumerated conditional mean, and only aggregate
// identities are asserted against the toll expectation.
struct TollLawEstimate {
  std::uint32_t n = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> conditional_means;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> bernoulli_theta;
};

TollLawEstimate toll_law_estimate(std::uint32_t n);  // 3 <= n <= 9
Rational toll_conditional_mean(std::uint32_t n, std::uint32_t p, std::uint32_t q);

// Randomness preservation: partition all n! permutations, group by the final
// pivot positions (ip, iq), and count the relative-order pattern of each of
// the three subarrays. The partition is randomness preserving iff every
// pattern class of a subarray is exactly equally frequent within its
// (ip, iq) group.
struct PatternCell {
  std::size_t ip = 0;
  std::size_t iq = 0;  // 0-based final pivot positions
  std::uint64_t group_size = 0;
  // one map per subarray (left / middle / right): pattern id -> count
  std::array<std::map<std::uint32_t, std::uint64_t>, 3> patterns;
};

struct UniformityReport {
  std::uint32_t n = 0;
  bool uniform = false;
  std::vector<PatternCell> cells;
};

UniformityReport randomness_preservation_check(std::uint32_t n);  // 2 <= n <= 7

}  // namespace qslab::exact
