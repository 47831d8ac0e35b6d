#include "qslab/limit_laws.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qslab::limit_laws {

UniformPair sample_uniform_pair(Xoshiro256ss& rng) {
  const double u1 = uniform_open01(rng);
  const double u2 = uniform_open01(rng);
  return u1 <= u2 ? UniformPair{u1, u2} : UniformPair{u2, u1};
}

XWDraw sample_xw(Xoshiro256ss& rng) {
  const double w = std::cbrt(uniform_open01(rng));
  const double x = w * std::sqrt(uniform_open01(rng));
  return {x, w};
}

double g_mixture(double x, double w, int branch) {
  switch (branch) {
    case 1: return 1.0 + w * (2.0 - x - w);
    case 2: return 1.0 + (1.0 + x - w) * (2.0 * w - x);
    case 3: return 1.0 + (1.0 - x) * (x + w);
    default: throw std::domain_error("g_mixture: branch must be 1, 2 or 3");
  }
}

LimitDraw sample_toll_limit(Xoshiro256ss& rng) {
  const UniformPair u = sample_uniform_pair(rng);
  return {1.0 + u.hi * (2.0 - u.lo - u.hi), LimitLaw::toll, 0};
}

LimitDraw sample_grand_perpetuity(Xoshiro256ss& rng, int depth) {
  if (depth < 0) throw std::domain_error("sample_grand_perpetuity: depth must be >= 0");
  double sum = 0.0;
  double prod = 1.0;
  for (int j = 0; j < depth; ++j) {
    const XWDraw xw = sample_xw(rng);
    const int branch = 1 + static_cast<int>(uniform_below(rng, 3));
    sum += prod * g_mixture(xw.x, xw.w, branch);
    prod *= xw.x;
  }
  return {sum, LimitLaw::grand_perpetuity, depth};
}

LimitDraw sample_grand_fixedpoint(Xoshiro256ss& rng, int iters) {
  if (iters < 1) throw std::domain_error("sample_grand_fixedpoint: iters must be >= 1");
  double z = kGrandMean;  // any bounded start works; the mean speeds burn-in
  for (int j = 0; j < iters; ++j) {
    const UniformPair u = sample_uniform_pair(rng);
    const double v = uniform_open01(rng);
    const double toll = 1.0 + u.hi * (2.0 - u.lo - u.hi);
    double coeff;
    if (v < u.lo)
      coeff = u.lo;
    else if (v < u.hi)
      coeff = u.hi - u.lo;
    else
      coeff = 1.0 - u.hi;
    z = coeff * z + toll;
  }
  return {z, LimitLaw::grand_fixedpoint, iters};
}

LimitDraw sample_extremal(Xoshiro256ss& rng, int depth) {
  if (depth < 0) throw std::domain_error("sample_extremal: depth must be >= 0");
  double sum = 0.0;
  double prod = 1.0;
  for (int j = 0; j < depth; ++j) {
    const UniformPair u = sample_uniform_pair(rng);
    sum += prod * (1.0 + u.hi * (2.0 - u.lo - u.hi));
    prod *= u.lo;
  }
  return {sum, LimitLaw::extremal, depth};
}

namespace {

int effective_depth(LimitLaw law, int depth_or_iters) {
  if (depth_or_iters > 0) return depth_or_iters;
  switch (law) {
    case LimitLaw::toll: return 0;
    case LimitLaw::grand_fixedpoint: return kDefaultFixedpointIters;
    case LimitLaw::grand_perpetuity: return kDefaultGrandDepth;
    case LimitLaw::extremal: return kDefaultExtremalDepth;
  }
  return 0;
}

double one_draw(LimitLaw law, Xoshiro256ss& rng, int depth) {
  switch (law) {
    case LimitLaw::toll: return sample_toll_limit(rng).value;
    case LimitLaw::grand_fixedpoint: return sample_grand_fixedpoint(rng, depth).value;
    case LimitLaw::grand_perpetuity: return sample_grand_perpetuity(rng, depth).value;
    case LimitLaw::extremal: return sample_extremal(rng, depth).value;
  }
  return 0.0;
}

template <class PerChunk>
void run_chunked(std::size_t count, unsigned workers, PerChunk&& per_chunk) {
  const std::size_t chunks = (count + kDrawChunk - 1) / kDrawChunk;
  if (workers <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) per_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      per_chunk(c);
    }
  };
  std::vector<std::thread> pool;
  const unsigned nthreads = std::min<std::size_t>(workers, chunks);
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> draw_values(LimitLaw law, std::size_t count, std::uint64_t seed,
                                int depth_or_iters, unsigned workers) {
  if (count == 0) throw std::domain_error("draw_values: count must be >= 1");
  const int depth = effective_depth(law, depth_or_iters);
  std::vector<double> out(count);
  run_chunked(count, workers, [&](std::size_t c) {
    Xoshiro256ss rng(derive_seed(seed, c));
    const std::size_t begin = c * kDrawChunk;
    const std::size_t end = std::min(begin + kDrawChunk, count);
    for (std::size_t i = begin; i < end; ++i) out[i] = one_draw(law, rng, depth);
  });
  return out;
}

MomentSummary sample_moments(LimitLaw law, std::size_t count, std::uint64_t seed,
                             int depth_or_iters, unsigned workers) {
  if (count == 0) throw std::domain_error("sample_moments: count must be >= 1");
  const int depth = effective_depth(law, depth_or_iters);
  const std::size_t chunks = (count + kDrawChunk - 1) / kDrawChunk;
  std::vector<MomentSummary> partial(chunks);
  run_chunked(count, workers, [&](std::size_t c) {
    Xoshiro256ss rng(derive_seed(seed, c));
    const std::size_t begin = c * kDrawChunk;
    const std::size_t end = std::min(begin + kDrawChunk, count);
    MomentSummary s;
    for (std::size_t i = begin; i < end; ++i) s.add(one_draw(law, rng, depth));
    partial[c] = s;
  });
  MomentSummary total;
  for (const auto& s : partial) total.merge(s);  // fixed chunk order
  return total;
}

}  // namespace qslab::limit_laws
