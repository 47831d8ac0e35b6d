#pragma once

#include <cstdint>
#include <utility>

namespace qslab {

// Cost counters accumulated by one selection or partitioning run.
// `comparisons` counts key-key comparisons only; index comparisons are
// never charged. Counters are zero-initialized and only ever grow.
struct CostTally {
  std::uint64_t comparisons = 0;
  std::uint64_t swaps = 0;
  std::uint64_t partition_calls = 0;
};

namespace detail {

// Every key comparison is routed through this hook and bumps the counter
// exactly once. `a < b` is the only primitive: `x > y` is `less(y, x)` and
// `x >= y` is `!less(x, y)`.
template <class T>
inline bool less(CostTally& t, const T& a, const T& b) {
  ++t.comparisons;
  return a < b;
}

// One element exchange statement, charged as one swap.
template <class T>
inline void exchange(CostTally& t, T& a, T& b) {
  ++t.swaps;
  std::swap(a, b);
}

}  // namespace detail
}  // namespace qslab
