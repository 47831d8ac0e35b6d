#include "qslab/rational.hpp"

#include <cstdio>

namespace qslab {

// 15 significant digits, %g style. mpq_get_d rounds toward zero; the error is
// below one ulp of the double, outside the printed digits.
std::string to_decimal15(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", mpq_get_d(r.get_mpq_t()));
  return buf;
}

}  // namespace qslab
