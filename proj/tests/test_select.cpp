#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "doctest.h"
#include "qslab/prng.hpp"
#include "qslab/select.hpp"
#include "support.hpp"

using namespace qslab;

namespace {

template <class T>
bool partition_postcondition(const std::vector<T>& a, std::size_t ip, std::size_t iq) {
  for (std::size_t i = 0; i < ip; ++i)
    if (a[i] > a[ip]) return false;
  for (std::size_t i = ip + 1; i < iq; ++i)
    if (a[i] < a[ip] || a[i] > a[iq]) return false;
  for (std::size_t i = iq + 1; i < a.size(); ++i)
    if (a[i] < a[iq]) return false;
  return ip < iq;
}

template <class T>
T sorted_rank(std::vector<T> a, std::size_t rank) {
  std::sort(a.begin(), a.end());
  return a[rank - 1];
}

}  // namespace

TEST_CASE("dual-pivot partition: two- and three-element traces") {
  CostTally t;
  std::vector<int> a{2, 1};
  auto out = partition_yaroslavskiy(std::span<int>(a), t);
  CHECK_EQ(out.ip, 0);
  CHECK_EQ(out.iq, 1);
  CHECK_EQ(a, std::vector<int>{1, 2});
  CHECK_EQ(out.toll_comparisons, 1);  // only the pivot-ordering comparison

  t = {};
  a = {1, 2};
  out = partition_yaroslavskiy(std::span<int>(a), t);
  CHECK_EQ(out.ip, 0);
  CHECK_EQ(out.iq, 1);
  CHECK_EQ(a, std::vector<int>{1, 2});
  CHECK_EQ(out.toll_comparisons, 1);  // the scan loop is never entered

  t = {};
  a = {3, 1, 2};
  out = partition_yaroslavskiy(std::span<int>(a), t);
  CHECK_EQ(out.ip, 1);
  CHECK_EQ(out.iq, 2);
  CHECK_EQ(a, std::vector<int>{1, 2, 3});
  CHECK_EQ(out.toll_comparisons, 2);  // pivot ordering plus one a[k] < p test
  CHECK_EQ(t.partition_calls, 1);
}

TEST_CASE("dual-pivot partition: mean toll over all 6 permutations of {1,2,3} is 10/3") {
  std::vector<int> perm{1, 2, 3};
  std::uint64_t total = 0;
  std::uint64_t perms = 0;
  do {
    std::vector<int> work = perm;
    CostTally t;
    partition_yaroslavskiy(std::span<int>(work), t);
    total += t.comparisons;
    ++perms;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK_EQ(perms, 6);
  CHECK_EQ(total, 20);  // 20/6 == 10/3 == 19/12*(3+1) - 3
}

TEST_CASE("dual-pivot partition: rejects segments shorter than two") {
  CostTally t;
  std::vector<int> a{7};
  CHECK_THROWS_AS(partition_yaroslavskiy(std::span<int>(a), t), std::invalid_argument);
}

TEST_CASE("quickselect_dual: small traces from the contract") {
  CostTally t;
  std::vector<std::int64_t> a{5};
  CHECK_EQ(quickselect_dual(std::span<std::int64_t>(a), 1, t), 5);
  CHECK_EQ(t.comparisons, 0);

  t = {};
  a = {2, 1};
  CHECK_EQ(quickselect_dual(std::span<std::int64_t>(a), 1, t), 1);
  CHECK_EQ(t.comparisons, 1);

  t = {};
  a = {3, 1, 2};
  CHECK_EQ(quickselect_dual(std::span<std::int64_t>(a), 2, t), 2);

  t = {};
  a = {7, 7, 3};  // ordinal rank with duplicates
  CHECK_EQ(quickselect_dual(std::span<std::int64_t>(a), 2, t), 7);
}

TEST_CASE("quickselect: bad ranks and empty arrays are rejected") {
  CostTally t;
  std::vector<std::int64_t> a{1, 2, 3};
  CHECK_THROWS_AS(quickselect_dual(std::span<std::int64_t>(a), 0, t), std::invalid_argument);
  CHECK_THROWS_AS(quickselect_dual(std::span<std::int64_t>(a), 4, t), std::invalid_argument);
  std::vector<std::int64_t> empty;
  CHECK_THROWS_AS(quickselect_dual(std::span<std::int64_t>(empty), 1, t), std::invalid_argument);
  CHECK_THROWS_AS(quickselect_classic(std::span<std::int64_t>(empty), 1, t), std::invalid_argument);
}

TEST_CASE("classic partition: singleton and pair") {
  CostTally t;
  std::vector<int> a{1};
  CHECK_EQ(partition_classic(std::span<int>(a), t), 0);
  CHECK_EQ(t.swaps, 0);
  CHECK_EQ(t.comparisons, 0);

  t = {};
  a = {2, 1};
  const std::size_t j = partition_classic(std::span<int>(a), t);
  CHECK_EQ(a, std::vector<int>{1, 2});
  CHECK_EQ(j, 1);  // pivot 2 placed at its final position
}

TEST_CASE("selection agrees with the sort oracle on every short duplicate-rich array") {
  // all arrays of length 1..9 over the alphabet {1,2,3}, all ranks
  for (std::size_t len = 1; len <= 9; ++len) {
    std::vector<std::size_t> digits(len, 0);
    for (;;) {
      std::vector<std::int64_t> base(len);
      for (std::size_t i = 0; i < len; ++i) base[i] = static_cast<std::int64_t>(digits[i]) + 1;
      for (std::size_t r = 1; r <= len; ++r) {
        const std::int64_t want = sorted_rank(base, r);
        std::vector<std::int64_t> w1 = base, w2 = base;
        CostTally t1, t2;
        REQUIRE_EQ(quickselect_dual(std::span<std::int64_t>(w1), r, t1), want);
        REQUIRE_EQ(quickselect_classic(std::span<std::int64_t>(w2), r, t2), want);
      }
      std::size_t i = 0;
      while (i < len && ++digits[i] == 3) digits[i++] = 0;
      if (i == len) break;
    }
  }
}

TEST_CASE("partition postconditions hold exhaustively for sizes 2..9") {
  for (std::size_t n = 2; n <= 9; ++n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<int> a = perm;
      CostTally t;
      const auto out = partition_yaroslavskiy(std::span<int>(a), t);
      REQUIRE(partition_postcondition(a, out.ip, out.iq));

      std::vector<int> b = perm;
      CostTally tb;
      const std::size_t j = partition_classic(std::span<int>(b), tb);
      for (std::size_t i = 0; i < j; ++i) REQUIRE_LE(b[i], b[j]);
      for (std::size_t i = j + 1; i < n; ++i) REQUIRE_GE(b[i], b[j]);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("partition postconditions hold on random arrays up to size 10^4") {
  Xoshiro256ss rng(20240917);
  for (int trial = 0; trial < 10'000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(uniform_below(rng, 9'999));
    // mix of distinct and duplicate-heavy inputs
    const std::uint64_t range = (trial % 2 == 0) ? n : 1 + n / 16;
    std::vector<std::int64_t> a(n);
    for (auto& x : a) x = static_cast<std::int64_t>(uniform_below(rng, range));
    std::vector<std::int64_t> b = a;

    CostTally t;
    const auto out = partition_yaroslavskiy(std::span<std::int64_t>(a), t);
    REQUIRE(partition_postcondition(a, out.ip, out.iq));

    CostTally tb;
    const std::size_t j = partition_classic(std::span<std::int64_t>(b), tb);
    for (std::size_t i = 0; i < j; ++i) REQUIRE_LE(b[i], b[j]);
    for (std::size_t i = j + 1; i < n; ++i) REQUIRE_GE(b[i], b[j]);
  }
}

TEST_CASE("tally comparisons equal the counts seen by an independent key wrapper") {
  using qslab::testing::CountedKey;
  Xoshiro256ss rng(424242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform_below(rng, 400));
    std::vector<std::int64_t> raw(n);
    for (auto& x : raw) x = static_cast<std::int64_t>(uniform_below(rng, n));
    const std::size_t r = 1 + static_cast<std::size_t>(uniform_below(rng, n));

    auto keys = qslab::testing::wrap_keys(raw);
    CountedKey::counter = 0;
    CostTally t;
    quickselect_dual(std::span<CountedKey>(keys), r, t);
    CHECK_EQ(CountedKey::counter, t.comparisons);

    keys = qslab::testing::wrap_keys(raw);
    CountedKey::counter = 0;
    CostTally tc;
    quickselect_classic(std::span<CountedKey>(keys), r, tc);
    CHECK_EQ(CountedKey::counter, tc.comparisons);
  }
}

TEST_CASE("counts are deterministic for a fixed input and rank") {
  Xoshiro256ss rng(7);
  std::vector<std::int64_t> base(1000);
  for (auto& x : base) x = static_cast<std::int64_t>(uniform_below(rng, 500));
  for (const std::size_t r : {std::size_t{1}, std::size_t{500}, std::size_t{1000}}) {
    std::vector<std::int64_t> a = base, b = base;
    CostTally ta, tb;
    const auto va = quickselect_dual(std::span<std::int64_t>(a), r, ta);
    const auto vb = quickselect_dual(std::span<std::int64_t>(b), r, tb);
    CHECK_EQ(va, vb);
    CHECK_EQ(ta.comparisons, tb.comparisons);
    CHECK_EQ(ta.swaps, tb.swaps);
    CHECK_EQ(ta.partition_calls, tb.partition_calls);
  }
}

TEST_CASE("deep selections run without recursion limits") {
  // tail-iteration keeps the stack flat; exercise a 10^6 worst-ish case
  const std::size_t n = 1'000'000;
  std::vector<std::int64_t> a(n);
  std::iota(a.begin(), a.end(), 0);  // already sorted input, rank at the far end
  CostTally t;
  CHECK_EQ(quickselect_dual(std::span<std::int64_t>(a), n, t),
           static_cast<std::int64_t>(n - 1));
}
