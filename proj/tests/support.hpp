#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "qslab/rational.hpp"

namespace doctest {
template <>
struct StringMaker<mpq_class> {
  static String convert(const mpq_class& v) {
    const std::string s = v.get_str();
    return String(s.c_str());
  }
};
}  // namespace doctest

namespace qslab::testing {

// Key wrapper whose operator< bumps an external counter. Used to verify that
// CostTally counts every key comparison exactly once, via a channel that is
// independent of the tally hook.
struct CountedKey {
  std::int64_t value = 0;
  static inline std::uint64_t counter = 0;

  friend bool operator<(const CountedKey& a, const CountedKey& b) {
    ++counter;
    return a.value < b.value;
  }
};

inline std::vector<CountedKey> wrap_keys(const std::vector<std::int64_t>& xs) {
  std::vector<CountedKey> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i].value = xs[i];
  return out;
}

}  // namespace qslab::testing
