#include "qslab/simulate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qslab/errors.hpp"
#include "qslab/prng.hpp"
#include "qslab/select.hpp"

namespace qslab::sim {

namespace {

void validate(const SimConfig& c, std::uint64_t count) {
  if (c.n < 1) throw std::invalid_argument("run_trials: n must be >= 1");
  if (count < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
  if (c.rank_mode == RankMode::fixed && (c.fixed_rank < 1 || c.fixed_rank > c.n))
    throw std::invalid_argument("run_trials: fixed rank out of bounds");
  if (static_cast<std::uint64_t>(c.n) * count > c.op_budget)
    throw ResourceError("run_trials: n * trials exceeds the configured budget");
}

struct ChunkResult {
  MomentSummary comparisons;
  MomentSummary swaps;
};

}  // namespace

SimReport run_trial_range(const SimConfig& config, std::uint64_t first,
                          std::uint64_t count) {
  validate(config, count);
  const auto t0 = std::chrono::steady_clock::now();

  const std::uint64_t chunks = (count + kTrialChunk - 1) / kTrialChunk;
  std::vector<ChunkResult> partial(chunks);

  auto run_chunk = [&](std::uint64_t c, std::vector<std::int64_t>& keys) {
    ChunkResult res;
    const std::uint64_t begin = first + c * kTrialChunk;
    const std::uint64_t end = std::min(begin + kTrialChunk, first + count);
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      Xoshiro256ss rng(derive_seed(config.seed, trial));
      std::iota(keys.begin(), keys.end(), std::int64_t{1});
      shuffle(std::span<std::int64_t>(keys), rng);
      std::size_t rank = 1;
      switch (config.rank_mode) {
        case RankMode::uniform:
          rank = 1 + static_cast<std::size_t>(uniform_below(rng, config.n));
          break;
        case RankMode::min: rank = 1; break;
        case RankMode::max: rank = config.n; break;
        case RankMode::fixed: rank = config.fixed_rank; break;
      }
      CostTally tally;
      if (config.algo == Algo::dual)
        quickselect_dual(std::span<std::int64_t>(keys), rank, tally);
      else
        quickselect_classic(std::span<std::int64_t>(keys), rank, tally);
      res.comparisons.add(static_cast<double>(tally.comparisons));
      res.swaps.add(static_cast<double>(tally.swaps));
    }
    partial[c] = res;
  };

  if (config.workers <= 1 || chunks <= 1) {
    std::vector<std::int64_t> keys(config.n);
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c, keys);
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      std::vector<std::int64_t> keys(config.n);
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        run_chunk(c, keys);
      }
    };
    std::vector<std::thread> pool;
    const unsigned nthreads =
        static_cast<unsigned>(std::min<std::uint64_t>(config.workers, chunks));
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SimReport report;
  report.config = config;
  report.config.trials = count;
  for (const auto& p : partial) {  // fixed chunk order keeps merges bit-stable
    report.comparisons.merge(p.comparisons);
    report.swaps.merge(p.swaps);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

SimReport run_trials(const SimConfig& config) {
  return run_trial_range(config, 0, config.trials);
}

SimReport merge_reports(const SimReport& a, const SimReport& b) {
  if (a.comparisons.count == 0 || b.comparisons.count == 0)
    throw std::invalid_argument("merge_reports: empty reports are rejected");
  const SimConfig& ca = a.config;
  const SimConfig& cb = b.config;
  const bool same = ca.n == cb.n && ca.algo == cb.algo &&
                    ca.rank_mode == cb.rank_mode && ca.fixed_rank == cb.fixed_rank &&
                    ca.seed == cb.seed;
  if (!same) throw std::invalid_argument("merge_reports: config mismatch");
  SimReport out = a;
  out.comparisons.merge(b.comparisons);
  out.swaps.merge(b.swaps);
  out.config.trials = ca.trials + cb.trials;
  out.wall_seconds = a.wall_seconds + b.wall_seconds;
  return out;
}

std::string to_string(Algo a) { return a == Algo::dual ? "dual" : "classic"; }

std::string to_string(RankMode m) {
  switch (m) {
    case RankMode::uniform: return "uniform";
    case RankMode::min: return "min";
    case RankMode::max: return "max";
    case RankMode::fixed: return "fixed";
  }
  return "?";
}

namespace {

struct CellRef {
  double mean_coeff;
  const char* mean_text;
  double sd_coeff;
  const char* sd_text;
  double swap_coeff;  // < 0 when the table has no swap reference for the cell
  const char* swap_text;
};

CellRef cell_reference(Algo algo, RankMode mode) {
  if (algo == Algo::dual) {
    switch (mode) {
      case RankMode::uniform:
        return {19.0 / 6.0, "19/6", 5.0 / 6.0, "5/6", 1.0, "1"};
      case RankMode::min:
        return {19.0 / 8.0, "19/8", std::sqrt(1261.0 / 4800.0), "sqrt(1261/4800)",
                0.75, "3/4"};
      case RankMode::max:
        return {19.0 / 8.0, "19/8", std::sqrt(1717.0 / 4800.0), "sqrt(1717/4800)",
                -1.0, ""};
      default: break;
    }
  } else {
    switch (mode) {
      case RankMode::uniform: return {3.0, "3", 1.0, "1", 0.5, "1/2"};
      case RankMode::min:
        return {2.0, "2", std::sqrt(0.5), "sqrt(1/2)", 1.0 / 3.0, "1/3"};
      case RankMode::max:
        return {2.0, "2", std::sqrt(0.5), "sqrt(1/2)", -1.0, ""};
      default: break;
    }
  }
  return {0, "", 0, "", -1.0, ""};
}

}  // namespace

Table1Report table1(const Table1Config& config) {
  const auto t0 = std::chrono::steady_clock::now();
  Table1Report report;
  report.config = config;

  std::vector<std::size_t> sizes = config.sizes;
  if (config.fast) sizes = {config.gate_n};

  std::uint64_t run_index = 0;
  for (std::size_t n : sizes) {
    const bool gate = n == config.gate_n;
    std::uint64_t trials = gate ? config.trials_large : config.trials_small;
    if (config.fast) trials = std::min<std::uint64_t>(trials, 4000);
    for (Algo algo : {Algo::dual, Algo::classic}) {
      for (RankMode mode : {RankMode::uniform, RankMode::min, RankMode::max}) {
        SimConfig sc;
        sc.n = n;
        sc.trials = trials;
        sc.algo = algo;
        sc.rank_mode = mode;
        // per-run seed stream, so adding cells never shifts existing ones
        sc.seed = derive_seed(config.seed, 1000 + run_index);
        sc.workers = config.workers;
        const SimReport r = run_trials(sc);
        ++run_index;

        const CellRef ref = cell_reference(algo, mode);
        const double dn = static_cast<double>(n);

        Table1Row mean_row;
        mean_row.metric = "comparisons-mean";
        mean_row.algo = to_string(algo);
        mean_row.rank_regime = to_string(mode);
        mean_row.n = n;
        mean_row.trials = trials;
        mean_row.estimate = r.comparisons.mean / dn;
        mean_row.reference = ref.mean_coeff;
        mean_row.stderr_est = r.comparisons.mean_stderr() / dn;
        mean_row.z = (mean_row.estimate - mean_row.reference) / mean_row.stderr_est;
        mean_row.rel_err = mean_row.estimate / mean_row.reference - 1.0;
        mean_row.gated = gate;
        mean_row.pass = std::abs(mean_row.z) < 4.0;
        mean_row.paper_ref = ref.mean_text;
        report.rows.push_back(mean_row);

        Table1Row sd_row = mean_row;
        sd_row.metric = "comparisons-stddev";
        sd_row.estimate = r.comparisons.stddev() / dn;
        sd_row.reference = ref.sd_coeff;
        sd_row.stderr_est = r.comparisons.stddev_stderr() / dn;
        sd_row.z = (sd_row.estimate - sd_row.reference) / sd_row.stderr_est;
        sd_row.rel_err = sd_row.estimate / sd_row.reference - 1.0;
        sd_row.pass = std::abs(sd_row.z) < 4.0;
        sd_row.paper_ref = ref.sd_text;
        report.rows.push_back(sd_row);

        if (ref.swap_coeff > 0.0) {
          Table1Row swap_row = mean_row;
          swap_row.metric = "swaps-mean";
          swap_row.estimate = r.swaps.mean / dn;
          swap_row.reference = ref.swap_coeff;
          swap_row.stderr_est = r.swaps.mean_stderr() / dn;
          swap_row.z = (swap_row.estimate - swap_row.reference) / swap_row.stderr_est;
          swap_row.rel_err = swap_row.estimate / swap_row.reference - 1.0;
          swap_row.convention_sensitive = true;
          swap_row.pass = std::abs(swap_row.rel_err) <= 0.05;
          swap_row.paper_ref = ref.swap_text;
          report.rows.push_back(swap_row);
        }
      }
    }
  }

  for (const auto& row : report.rows)
    if (row.gated && !row.pass) report.all_gated_ok = false;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace qslab::sim
