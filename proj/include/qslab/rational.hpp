#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qslab {

// Exact rational arithmetic. mpq_class keeps values in canonical form
// (reduced, positive denominator) through arithmetic; only direct num/den
// construction needs an explicit canonicalize, which rational() does.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rational_u64(std::uint64_t num, std::uint64_t den) {
  Rational r(mpz_class(static_cast<unsigned long>(num)),
             mpz_class(static_cast<unsigned long>(den)));
  r.canonicalize();
  return r;
}

std::string to_decimal15(const Rational& r);

inline std::string num_str(const Rational& r) { return r.get_num().get_str(); }
inline std::string den_str(const Rational& r) { return r.get_den().get_str(); }

}  // namespace qslab
