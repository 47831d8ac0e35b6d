#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qslab/moments.hpp"

// Seeded Monte Carlo driver: instrumented selections over random
// permutations of {1..n}, with mergeable per-metric summaries and the
// coefficient table reproduction at desk scale.
//
// Determinism contract: trial i uses a generator derived from
// (seed, trial index), and chunk summaries are merged in chunk order, so a
// report depends only on (config, seed) - never on the worker count.

namespace qslab::sim {

enum class Algo { dual, classic };
enum class RankMode { uniform, min, max, fixed };

inline constexpr std::uint64_t kDefaultSeed = 1729;
inline constexpr std::uint64_t kDefaultOpBudget = 20'000'000'000ULL;  // n * trials
inline constexpr std::uint64_t kTrialChunk = 1024;

struct SimConfig {
  std::size_t n = 1;
  std::uint64_t trials = 1;
  Algo algo = Algo::dual;
  RankMode rank_mode = RankMode::uniform;
  std::size_t fixed_rank = 0;  // 1-based; required iff rank_mode == fixed
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  std::uint64_t op_budget = kDefaultOpBudget;
};

struct SimReport {
  SimConfig config;
  MomentSummary comparisons;
  MomentSummary swaps;
  double wall_seconds = 0.0;  // diagnostic only; never serialized
};

// Runs trials [0, config.trials). Throws ResourceError when n * trials
// exceeds the configured budget.
SimReport run_trials(const SimConfig& config);

// Runs the trial index range [first, first + count); partitioned runs merge
// into the same totals as one full run (up to floating-point rounding).
SimReport run_trial_range(const SimConfig& config, std::uint64_t first,
                          std::uint64_t count);

// Requires equal configs up to the trial partition; empty reports are
// rejected.
SimReport merge_reports(const SimReport& a, const SimReport& b);

std::string to_string(Algo a);
std::string to_string(RankMode m);

// ---- Coefficient table ----------------------------------------------------

// One estimated leading coefficient next to its reference value.
// z is (estimate - reference) / stderr(estimate); rel_err is
// estimate/reference - 1. Swap rows are convention-sensitive in their
// constant terms, so they are gated on rel_err rather than z.
struct Table1Row {
  std::string metric;       // "comparisons-mean" | "comparisons-stddev" | "swaps-mean"
  std::string algo;         // "dual" | "classic"
  std::string rank_regime;  // "uniform" | "min" | "max"
  std::size_t n = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double reference = 0.0;
  double stderr_est = 0.0;
  double z = 0.0;
  double rel_err = 0.0;
  bool gated = false;  // acceptance cell (large n)
  bool pass = true;    // |z| < 4 (comparisons) or |rel_err| <= 5% (swaps)
  bool convention_sensitive = false;
  std::string paper_ref;  // reference coefficient as text, or "plumbing"
};

struct Table1Config {
  std::vector<std::size_t> sizes = {1000, 10000};
  std::uint64_t trials_small = 20'000;  // for n < gate size
  std::uint64_t trials_large = 30'000;  // for the gated size
  std::size_t gate_n = 10'000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  bool fast = false;  // gated size only, reduced trials
};

struct Table1Report {
  Table1Config config;
  std::vector<Table1Row> rows;
  bool all_gated_ok = true;
  double wall_seconds = 0.0;
};

Table1Report table1(const Table1Config& config);

}  // namespace qslab::sim
