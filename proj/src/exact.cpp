#include "qslab/exact.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>

#include "qslab/errors.hpp"
#include "qslab/select.hpp"

namespace qslab::exact {

namespace {

constexpr std::uint32_t kEnumerationCap = 9;  // 9! * 9 ~ 3.3M runs

std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t f = 1;
  for (std::uint32_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// Lehmer code of the relative-order pattern of a subarray with distinct
// entries; a bijection from k! patterns to [0, k!).
std::uint32_t pattern_id(std::span<const int> sub) {
  const std::size_t k = sub.size();
  std::uint32_t id = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t smaller_after = 0;
    for (std::size_t j = i + 1; j < k; ++j)
      if (sub[j] < sub[i]) ++smaller_after;
    id = id * static_cast<std::uint32_t>(k - i) + smaller_after;
  }
  return id;
}

}  // namespace

const Rational& ExactSeries::at(std::uint32_t n) const {
  if (n < first_n || n > last_n())
    throw std::out_of_range("ExactSeries::at: n outside the computed range");
  return values[n - first_n];
}

Rational harmonic(std::uint32_t n) {
  if (n == 0) throw std::domain_error("harmonic: n must be >= 1");
  Rational h = 0;
  for (std::uint32_t k = 1; k <= n; ++k) h += rational(1, static_cast<long>(k));
  return h;
}

Rational expected_toll(std::uint32_t n) {
  if (n < 3) throw std::domain_error("expected_toll: formula valid for n >= 3 only");
  return rational(19, 12) * static_cast<long>(n + 1) - 3;
}

ExactSeries grand_average_recurrence(std::uint32_t n_max) {
  if (n_max < 2) throw std::domain_error("grand_average_recurrence: n_max must be >= 2");
  ExactSeries s;
  s.mode = SeriesMode::grand;
  s.source = SeriesSource::recurrence;
  s.first_n = 0;
  s.values.assign(n_max + 1, Rational(0));
  s.values[2] = 1;

  // sum_{p=1..n} (p-1)(n-p) E[C_{p-1}] = n * A_n - B_n with the prefix sums
  // A_n = sum (p-1) E[C_{p-1}] and B_n = sum (p-1) p E[C_{p-1}].
  Rational a = 0, b = 0;
  for (std::uint32_t p = 1; p <= std::min<std::uint32_t>(n_max, 3); ++p) {
    const Rational& e = s.values[p - 1];
    a += static_cast<long>(p - 1) * e;
    b += static_cast<long>(p - 1) * static_cast<long>(p) * e;
  }
  for (std::uint32_t n = 3; n <= n_max; ++n) {
    const mpz_class nz(static_cast<unsigned long>(n));
    Rational weight(mpz_class(6), nz * nz * (nz - 1));
    weight.canonicalize();
    s.values[n] = expected_toll(n) + weight * (static_cast<long>(n) * a - b);
    if (n < n_max) {  // extend prefix sums with the p = n+1 term
      const Rational& e = s.values[n];
      a += static_cast<long>(n) * e;
      b += static_cast<long>(n) * static_cast<long>(n + 1) * e;
    }
  }
  return s;
}

Rational grand_average_closed(std::uint32_t n, const Rational& harmonic_n) {
  if (n < 4) throw std::domain_error("grand_average_closed: valid for n >= 4 only");
  const long nl = static_cast<long>(n);
  return rational(19, 6) * nl - rational(37, 5) * harmonic_n + rational(1183, 100) -
         rational(37, 5) * harmonic_n / nl - rational(71, 300) / nl;
}

Rational grand_average_closed(std::uint32_t n) {
  if (n < 4) throw std::domain_error("grand_average_closed: valid for n >= 4 only");
  return grand_average_closed(n, harmonic(n));
}

ExactSeries extremal_average_recurrence(std::uint32_t n_max) {
  if (n_max < 2)
    throw std::domain_error("extremal_average_recurrence: n_max must be >= 2");
  ExactSeries s;
  s.mode = SeriesMode::extremal_min;
  s.source = SeriesSource::recurrence;
  s.first_n = 0;
  s.values.assign(n_max + 1, Rational(0));
  s.values[2] = 1;

  // sum_{p=1..n} (n-p) E[C_{p-1}] = n * S1_n - S2_n with S1 = sum E[C_{p-1}],
  // S2 = sum p E[C_{p-1}].
  Rational s1 = 0, s2 = 0;
  for (std::uint32_t p = 1; p <= std::min<std::uint32_t>(n_max, 3); ++p) {
    const Rational& e = s.values[p - 1];
    s1 += e;
    s2 += static_cast<long>(p) * e;
  }
  for (std::uint32_t n = 3; n <= n_max; ++n) {
    const mpz_class nz(static_cast<unsigned long>(n));
    Rational inv_binom(mpz_class(2), nz * (nz - 1));
    inv_binom.canonicalize();
    s.values[n] = expected_toll(n) + inv_binom * (static_cast<long>(n) * s1 - s2);
    if (n < n_max) {
      const Rational& e = s.values[n];
      s1 += e;
      s2 += static_cast<long>(n + 1) * e;
    }
  }
  return s;
}

Rational extremal_average_closed(std::uint32_t n, const Rational& harmonic_n) {
  if (n < 4) throw std::domain_error("extremal_average_closed: valid for n >= 4 only");
  const mpz_class nz(static_cast<unsigned long>(n));
  const mpz_class n2 = nz * nz;
  const mpz_class n3 = n2 * nz;
  const mpz_class n4 = n3 * nz;
  const Rational num = Rational(57 * n4 - 178 * n3 + 135 * n2 - 14 * nz + 24) +
                       Rational(-48 * n3 + 144 * n2 - 96 * nz) * harmonic_n;
  const Rational den(mpz_class(24) * nz * (nz - 1) * (nz - 2));
  return num / den;
}

Rational extremal_average_closed(std::uint32_t n) {
  if (n < 4) throw std::domain_error("extremal_average_closed: valid for n >= 4 only");
  return extremal_average_closed(n, harmonic(n));
}

ExactSeries toll_series(std::uint32_t n_max) {
  if (n_max < 3) throw std::domain_error("toll_series: n_max must be >= 3");
  ExactSeries s;
  s.mode = SeriesMode::toll;
  s.source = SeriesSource::closed_form;
  s.first_n = 3;
  s.values.reserve(n_max - 2);
  for (std::uint32_t n = 3; n <= n_max; ++n) s.values.push_back(expected_toll(n));
  return s;
}

Rational brute_force_average(std::uint32_t n, BruteForceRank mode,
                             std::uint32_t fixed_rank) {
  if (n < 1) throw std::domain_error("brute_force_average: n must be >= 1");
  if (n > kEnumerationCap)
    throw ResourceError("brute_force_average: enumeration capped at n <= 9");
  if (mode == BruteForceRank::fixed && (fixed_rank < 1 || fixed_rank > n))
    throw std::domain_error("brute_force_average: fixed rank out of bounds");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> work(n);
  std::uint64_t total_comparisons = 0;
  std::uint64_t runs = 0;
  do {
    std::uint32_t r_lo = 1, r_hi = n;
    switch (mode) {
      case BruteForceRank::grand: break;
      case BruteForceRank::min: r_hi = 1; break;
      case BruteForceRank::max: r_lo = n; break;
      case BruteForceRank::fixed: r_lo = r_hi = fixed_rank; break;
    }
    for (std::uint32_t r = r_lo; r <= r_hi; ++r) {
      work = perm;
      CostTally t;
      quickselect_dual(std::span<int>(work), r, t);
      total_comparisons += t.comparisons;
      ++runs;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return rational_u64(total_comparisons, runs);
}

Rational enumerate_toll_average(std::uint32_t n) {
  if (n < 2) throw std::domain_error("enumerate_toll_average: n must be >= 2");
  if (n > kEnumerationCap)
    throw ResourceError("enumerate_toll_average: enumeration capped at n <= 9");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> work(n);
  std::uint64_t total = 0;
  std::uint64_t runs = 0;
  do {
    work = perm;
    CostTally t;
    partition_yaroslavskiy(std::span<int>(work), t);
    total += t.comparisons;
    ++runs;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return rational_u64(total, runs);
}

TollLawEstimate toll_law_estimate(std::uint32_t n) {
  if (n < 3) throw std::domain_error("toll_law_estimate: n must be >= 3");
  if (n > kEnumerationCap)
    throw ResourceError("toll_law_estimate: enumeration capped at n <= 9");

  // Pivot ranks coincide with the final pivot positions (1-based) because the
  // keys are the distinct values 1..n.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint64_t, std::uint64_t>>
      sums;  // (p,q) -> (total comparisons, permutation count)
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> work(n);
  do {
    work = perm;
    CostTally t;
    const PartitionOutcome out = partition_yaroslavskiy(std::span<int>(work), t);
    const auto key = std::make_pair(static_cast<std::uint32_t>(out.ip + 1),
                                    static_cast<std::uint32_t>(out.iq + 1));
    auto& cell = sums[key];
    cell.first += t.comparisons;
    cell.second += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));

  TollLawEstimate est;
  est.n = n;
  const long nl = static_cast<long>(n);
  for (const auto& [pq, cell] : sums) {
    const auto [p, q] = pq;
    const Rational mean = rational_u64(cell.first, cell.second);
    est.conditional_means.emplace(pq, mean);
    // mean = n-1 + (n-p-1)(q-2)/(n-2) + (q-2)(n-q)/(n-2) + 3 theta
    const Rational hyper =
        rational(static_cast<long>(n - p - 1) * static_cast<long>(q - 2), nl - 2) +
        rational(static_cast<long>(q - 2) * static_cast<long>(n - q), nl - 2);
    est.bernoulli_theta.emplace(pq, (mean - (nl - 1) - hyper) / 3);
  }
  return est;
}

Rational toll_conditional_mean(std::uint32_t n, std::uint32_t p, std::uint32_t q) {
  if (!(p >= 1 && p < q && q <= n))
    throw std::domain_error("toll_conditional_mean: need 1 <= p < q <= n");
  const TollLawEstimate est = toll_law_estimate(n);
  return est.conditional_means.at({p, q});
}

UniformityReport randomness_preservation_check(std::uint32_t n) {
  if (n < 2 || n > 7)
    throw std::domain_error("randomness_preservation_check: n must be in [2, 7]");

  std::map<std::pair<std::size_t, std::size_t>, PatternCell> cells;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> work(n);
  do {
    work = perm;
    CostTally t;
    const PartitionOutcome out = partition_yaroslavskiy(std::span<int>(work), t);
    auto& cell = cells[{out.ip, out.iq}];
    cell.ip = out.ip;
    cell.iq = out.iq;
    ++cell.group_size;
    const std::span<const int> all(work);
    const std::span<const int> subs[3] = {
        all.subspan(0, out.ip),
        all.subspan(out.ip + 1, out.iq - out.ip - 1),
        all.subspan(out.iq + 1, n - 1 - out.iq)};
    for (int s = 0; s < 3; ++s) ++cell.patterns[s][pattern_id(subs[s])];
  } while (std::next_permutation(perm.begin(), perm.end()));

  UniformityReport report;
  report.n = n;
  report.uniform = true;
  for (auto& [key, cell] : cells) {
    const std::size_t sizes[3] = {cell.ip, cell.iq - cell.ip - 1, n - 1 - cell.iq};
    for (int s = 0; s < 3; ++s) {
      const auto& counts = cell.patterns[s];
      // every pattern class must appear, all exactly equally often
      if (counts.size() != factorial(static_cast<std::uint32_t>(sizes[s]))) {
        report.uniform = false;
        continue;
      }
      const std::uint64_t c0 = counts.begin()->second;
      for (const auto& [id, c] : counts)
        if (c != c0) report.uniform = false;
    }
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace qslab::exact
