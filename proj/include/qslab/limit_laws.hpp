#pragma once

#include <cstdint>
#include <vector>

#include "qslab/moments.hpp"
#include "qslab/prng.hpp"

// Samplers for the scaled limit laws of dual-pivot quickselect costs.
//
// Notation: (lo, hi) are the order statistics of two independent
// Uniform(0,1) draws. The per-pass toll limit is
//     T* = 1 + hi (2 - lo - hi),                   supported on [1, 2].
// The random-rank (grand) limit C* satisfies both
//     C* =d  lo 1{V<lo} C* + (hi-lo) 1{lo<V<hi} C*' + (1-hi) 1{V>hi} C*'' + T*
// (one indicator fires per level, toll and coefficients sharing the same
// uniform pair, V independent) and the perpetuity form
//     C* =d  X* C* + g(X*, W*),
// where (X*, W*) has density 6x on {0 < x < w < 1} and g is a fair mixture of
// three polynomial branches. The rank-1 (extremal) limit satisfies
//     C^* =d  lo C^* + T*  with coefficient and toll from the same pair.
//
// Reference moments: E[T*] = 19/12, E[C*] = 19/6, E[(C*)^2] = 193/18,
// Var[C*] = 25/36, E[C^*] = 19/8, Var[C^*] = 1261/4800; the max-rank analogue
// has variance 1717/4800 (exercised by direct simulation, not a sampler here).

namespace qslab::limit_laws {

struct UniformPair {
  double lo = 0.0;
  double hi = 0.0;
};

UniformPair sample_uniform_pair(Xoshiro256ss& rng);

struct XWDraw {
  double x = 0.0;
  double w = 0.0;
};

// Inverse-transform sampling of the density 6x on {0 < x < w < 1}:
// w = u^(1/3) (marginal 3w^2), then x = w sqrt(u') (conditional 2x/w^2).
XWDraw sample_xw(Xoshiro256ss& rng);

// The three mixture branches of the perpetuity toll:
//   1: 1 + w (2 - x - w)
//   2: 1 + (1 + x - w)(2w - x)
//   3: 1 + (1 - x)(x + w)
// branch outside {1,2,3} is a domain error.
double g_mixture(double x, double w, int branch);

enum class LimitLaw { toll, grand_fixedpoint, grand_perpetuity, extremal };

struct LimitDraw {
  double value = 0.0;
  LimitLaw law = LimitLaw::toll;
  int depth_or_iters = 0;
};

LimitDraw sample_toll_limit(Xoshiro256ss& rng);

// Truncated perpetuity sum_{j=1..M} g(X_j, W_j) prod_{k<j} X_k; the expected
// truncation error is at most (19/6) 2^-M.
LimitDraw sample_grand_perpetuity(Xoshiro256ss& rng, int depth);

// K-fold iteration of the three-branch fixed-point map from the constant
// start value 19/6; exactly one branch fires per level.
LimitDraw sample_grand_fixedpoint(Xoshiro256ss& rng, int iters);

// Truncated extremal perpetuity sum_{j=1..M} T*_j prod_{k<j} lo_k with toll
// and coefficient sharing each level's pair; expected truncation error is at
// most (19/8) 3^-M.
LimitDraw sample_extremal(Xoshiro256ss& rng, int depth);

inline constexpr int kDefaultGrandDepth = 60;
inline constexpr int kDefaultFixedpointIters = 50;
inline constexpr int kDefaultExtremalDepth = 40;

inline constexpr double kTollMean = 19.0 / 12.0;
inline constexpr double kGrandMean = 19.0 / 6.0;
inline constexpr double kGrandSecondMoment = 193.0 / 18.0;
inline constexpr double kGrandVariance = 25.0 / 36.0;
inline constexpr double kExtremalMean = 19.0 / 8.0;
inline constexpr double kExtremalMinVariance = 1261.0 / 4800.0;
inline constexpr double kExtremalMaxVariance = 1717.0 / 4800.0;

// Bulk sampling. Draw i is produced by the generator of chunk i/kDrawChunk,
// derived from (seed, chunk); results are reproducible and independent of
// worker count. depth_or_iters <= 0 selects the law's default.
inline constexpr std::size_t kDrawChunk = 4096;

std::vector<double> draw_values(LimitLaw law, std::size_t count, std::uint64_t seed,
                                int depth_or_iters = 0, unsigned workers = 1);

MomentSummary sample_moments(LimitLaw law, std::size_t count, std::uint64_t seed,
                             int depth_or_iters = 0, unsigned workers = 1);

}  // namespace qslab::limit_laws
