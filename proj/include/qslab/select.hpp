#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qslab/tally.hpp"

// Instrumented selection algorithms: dual-pivot quickselect on top of
// Yaroslavskiy's partitioning, and a classic single-pivot quickselect on
// top of Hoare's crossing-pointer partitioning. Pivot choice is positional
// (first/last element); randomness comes from shuffling the input.
//
// Counting conventions:
//   * every key comparison bumps the tally exactly once (see tally.hpp);
//   * every executed exchange statement counts one swap, so the dual-pivot
//     back-to-back double exchange counts two;
//   * the two dual-pivot placement writes at the end of a pass count one
//     swap each.
// Leading-order swap coefficients are insensitive to this convention;
// constant terms are not.

namespace qslab {

// Final pivot positions of one dual-pivot pass (0-based, ip < iq), plus the
// costs charged by that pass alone. Elements at [left, ip) compare <= a[ip],
// those at (ip, iq) lie between the pivots, those at (iq, right] compare
// >= a[iq].
struct PartitionOutcome {
  std::size_t ip = 0;
  std::size_t iq = 0;
  std::uint64_t toll_comparisons = 0;
  std::uint64_t toll_swaps = 0;
};

// One selection problem: find the key of ordinal rank `rank` (1-based, i.e.
// the value at index rank-1 after sorting). Well-defined with duplicates.
struct SelectionTask {
  std::vector<std::int64_t> keys;
  std::size_t rank = 1;
};

namespace detail {

template <class T>
PartitionOutcome partition_yaroslavskiy_range(std::span<T> a, std::size_t left,
                                              std::size_t right, CostTally& t) {
  const std::uint64_t c0 = t.comparisons;
  const std::uint64_t s0 = t.swaps;
  ++t.partition_calls;

  T p, q;
  if (less(t, a[right], a[left])) {  // a[left] > a[right]
    p = a[right];
    q = a[left];
  } else {
    p = a[left];
    q = a[right];
  }

  std::size_t l = left + 1;
  std::size_t g = right - 1;
  std::size_t k = l;
  while (k <= g) {
    if (less(t, a[k], p)) {
      exchange(t, a[k], a[l]);
      ++l;
    } else {
      if (!less(t, a[k], q)) {  // a[k] >= q
        // The guard is evaluated left to right: the key test a[g] > q is
        // charged on every evaluation, the index test k < g is free.
        while (less(t, q, a[g]) && k < g) --g;
        if (!less(t, a[g], p)) {  // a[g] >= p
          exchange(t, a[k], a[g]);
        } else {
          exchange(t, a[k], a[g]);
          exchange(t, a[k], a[l]);
          ++l;
        }
        --g;
      }
    }
    ++k;
  }
  --l;
  ++g;
  a[left] = a[l];
  a[l] = p;
  ++t.swaps;  // pivot placement
  a[right] = a[g];
  a[g] = q;
  ++t.swaps;  // pivot placement

  return {l, g, t.comparisons - c0, t.swaps - s0};
}

// Hoare crossing-pointer partition with the pivot taken at a[left].
// Post: a[left..j-1] <= a[j] <= a[j+1..right], j returned.
template <class T>
std::size_t partition_hoare_range(std::span<T> a, std::size_t left,
                                  std::size_t right, CostTally& t) {
  const T v = a[left];
  std::size_t i = left + 1;
  std::size_t j = right;
  ++t.partition_calls;
  for (;;) {
    while (i <= j && less(t, a[i], v)) ++i;
    while (j >= i && less(t, v, a[j])) --j;
    if (i >= j) break;
    exchange(t, a[i], a[j]);
    ++i;
    --j;
  }
  if (j != left) exchange(t, a[left], a[j]);
  return j;
}

inline int sgn_of_diff(std::size_t a, std::size_t b) {
  return (a > b) - (a < b);
}

}  // namespace detail

// Dual-pivot (Yaroslavskiy) partitioning of a whole segment. Requires
// a.size() >= 2.
template <class T>
PartitionOutcome partition_yaroslavskiy(std::span<T> a, CostTally& t) {
  if (a.size() < 2)
    throw std::invalid_argument("partition_yaroslavskiy: segment too short");
  return detail::partition_yaroslavskiy_range(a, 0, a.size() - 1, t);
}

// Single-pivot Hoare partitioning of a whole segment. Requires size >= 1.
template <class T>
std::size_t partition_classic(std::span<T> a, CostTally& t) {
  if (a.empty())
    throw std::invalid_argument("partition_classic: empty segment");
  return detail::partition_hoare_range(a, 0, a.size() - 1, t);
}

// Returns the key of ordinal rank `rank` (1-based); the array is permuted in
// place. Recursion is replaced by iteration on the surviving segment, so
// inputs of 1e7 elements and beyond are fine.
template <class T>
T quickselect_dual(std::span<T> a, std::size_t rank, CostTally& t) {
  if (a.empty()) throw std::invalid_argument("quickselect_dual: empty array");
  if (rank < 1 || rank > a.size())
    throw std::invalid_argument("quickselect_dual: rank out of bounds");
  const std::size_t target = rank - 1;
  std::size_t left = 0;
  std::size_t right = a.size() - 1;
  while (right > left) {
    const PartitionOutcome out =
        detail::partition_yaroslavskiy_range(a, left, right, t);
    const int c = detail::sgn_of_diff(target, out.ip) +
                  detail::sgn_of_diff(target, out.iq);
    switch (c) {
      case -2: right = out.ip - 1; break;
      case -1: return a[out.ip];
      case 0:
        left = out.ip + 1;
        right = out.iq - 1;
        break;
      case +1: return a[out.iq];
      default: left = out.iq + 1; break;
    }
  }
  return a[left];
}

// Classic single-pivot quickselect over Hoare partitioning; same contract as
// quickselect_dual.
template <class T>
T quickselect_classic(std::span<T> a, std::size_t rank, CostTally& t) {
  if (a.empty()) throw std::invalid_argument("quickselect_classic: empty array");
  if (rank < 1 || rank > a.size())
    throw std::invalid_argument("quickselect_classic: rank out of bounds");
  const std::size_t target = rank - 1;
  std::size_t left = 0;
  std::size_t right = a.size() - 1;
  while (right > left) {
    const std::size_t j = detail::partition_hoare_range(a, left, right, t);
    if (target == j) return a[j];
    if (target < j)
      right = j - 1;
    else
      left = j + 1;
  }
  return a[left];
}

}  // namespace qslab
