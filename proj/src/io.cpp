#include "qslab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qslab::io {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

namespace {

const char* source_name(exact::SeriesSource s) {
  switch (s) {
    case exact::SeriesSource::recurrence: return "recurrence";
    case exact::SeriesSource::closed_form: return "closed_form";
    case exact::SeriesSource::enumeration: return "enumeration";
  }
  return "?";
}

std::string rational_text(const Rational& r) {
  return r.get_den() == 1 ? num_str(r) : num_str(r) + "/" + den_str(r);
}

}  // namespace

std::string exact_series_csv(const exact::ExactSeries& s) {
  std::string out = "n,exact_num,exact_den,decimal,source\n";
  for (std::uint32_t n = s.first_n; n <= s.last_n(); ++n) {
    const Rational& v = s.at(n);
    out += std::to_string(n) + "," + num_str(v) + "," + den_str(v) + "," +
           to_decimal15(v) + "," + source_name(s.source) + "\n";
  }
  return out;
}

std::string exact_with_residual_csv(const exact::ExactSeries& rec,
                                    const std::vector<std::optional<Rational>>& closed) {
  std::string out = "n,exact_num,exact_den,decimal,source,closed_minus_recurrence\n";
  for (std::uint32_t n = rec.first_n; n <= rec.last_n(); ++n) {
    const Rational& v = rec.at(n);
    out += std::to_string(n) + "," + num_str(v) + "," + den_str(v) + "," +
           to_decimal15(v) + "," + source_name(rec.source) + ",";
    const std::size_t idx = n - rec.first_n;
    if (idx < closed.size() && closed[idx].has_value())
      out += rational_text(*closed[idx] - v);
    out += "\n";
  }
  return out;
}

std::string sim_metric_ref(sim::Algo algo, sim::RankMode mode, const std::string& metric) {
  using sim::Algo;
  using sim::RankMode;
  const bool comps = metric == "comparisons";
  if (algo == Algo::dual) {
    if (mode == RankMode::uniform) return comps ? "19/6 n" : "1 n";
    if (mode == RankMode::min) return comps ? "19/8 n" : "3/4 n";
    if (mode == RankMode::max) return comps ? "19/8 n" : "plumbing";
  } else {
    if (mode == RankMode::uniform) return comps ? "3 n" : "1/2 n";
    if (mode == RankMode::min) return comps ? "2 n" : "1/3 n";
    if (mode == RankMode::max) return comps ? "2 n" : "plumbing";
  }
  return "plumbing";
}

namespace {

nlohmann::ordered_json config_json(const sim::SimConfig& c) {
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["trials"] = c.trials;
  j["algo"] = sim::to_string(c.algo);
  j["rank"] = c.rank_mode == sim::RankMode::fixed
                  ? std::to_string(c.fixed_rank)
                  : sim::to_string(c.rank_mode);
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  return j;
}

nlohmann::ordered_json metric_json(const sim::SimConfig& c, const std::string& name,
                                   const MomentSummary& m) {
  nlohmann::ordered_json j;
  j["metric"] = name;
  j["n"] = c.n;
  j["trials"] = m.count;
  j["mean"] = m.mean;
  j["variance"] = m.variance();
  j["stderr"] = m.mean_stderr();
  j["min"] = m.min;
  j["max"] = m.max;
  j["paper_ref"] = sim_metric_ref(c.algo, c.rank_mode, name);
  return j;
}

}  // namespace

nlohmann::ordered_json sim_report_json(const sim::SimReport& r) {
  nlohmann::ordered_json j;
  j["config"] = config_json(r.config);
  j["metrics"] = nlohmann::ordered_json::array(
      {metric_json(r.config, "comparisons", r.comparisons),
       metric_json(r.config, "swaps", r.swaps)});
  return j;
}

std::string sim_report_csv(const sim::SimReport& r) {
  std::string out = "metric,n,trials,mean,variance,stderr,min,max,paper_ref\n";
  const auto row = [&](const std::string& name, const MomentSummary& m) {
    out += name + "," + std::to_string(r.config.n) + "," + std::to_string(m.count) +
           "," + fmt_double(m.mean) + "," + fmt_double(m.variance()) + "," +
           fmt_double(m.mean_stderr()) + "," + fmt_double(m.min) + "," +
           fmt_double(m.max) + "," +
           sim_metric_ref(r.config.algo, r.config.rank_mode, name) + "\n";
  };
  row("comparisons", r.comparisons);
  row("swaps", r.swaps);
  return out;
}

nlohmann::ordered_json table1_json(const sim::Table1Report& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.config.seed;
  j["fast"] = r.config.fast;
  j["all_gated_ok"] = r.all_gated_ok;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json rj;
    rj["metric"] = row.metric;
    rj["algo"] = row.algo;
    rj["rank_regime"] = row.rank_regime;
    rj["n"] = row.n;
    rj["trials"] = row.trials;
    rj["estimate"] = row.estimate;
    rj["reference"] = row.reference;
    rj["stderr"] = row.stderr_est;
    rj["z"] = row.z;
    rj["rel_err"] = row.rel_err;
    rj["gated"] = row.gated;
    rj["pass"] = row.pass;
    rj["convention_sensitive"] = row.convention_sensitive;
    rj["paper_ref"] = row.paper_ref;
    rows.push_back(rj);
  }
  j["rows"] = rows;
  return j;
}

std::string table1_csv(const sim::Table1Report& r) {
  std::string out =
      "metric,algo,rank_regime,n,trials,estimate,reference,stderr,z,rel_err,"
      "gated,pass,convention_sensitive,paper_ref\n";
  for (const auto& row : r.rows) {
    out += row.metric + "," + row.algo + "," + row.rank_regime + "," +
           std::to_string(row.n) + "," + std::to_string(row.trials) + "," +
           fmt_double(row.estimate) + "," + fmt_double(row.reference) + "," +
           fmt_double(row.stderr_est) + "," + fmt_double(row.z) + "," +
           fmt_double(row.rel_err) + "," + (row.gated ? "true" : "false") + "," +
           (row.pass ? "true" : "false") + "," +
           (row.convention_sensitive ? "true" : "false") + "," + row.paper_ref + "\n";
  }
  return out;
}

std::string histogram_csv(std::span<const double> values, unsigned bins,
                          const std::string& provenance) {
  if (values.empty() || bins == 0)
    throw std::domain_error("histogram_csv: need values and at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = hi > lo ? (hi - lo) / bins : 1.0;
  std::vector<std::uint64_t> counts(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;  // the maximum lands in the last bin
    ++counts[b];
  }
  const double total = static_cast<double>(values.size());
  std::string out = "bin_lo,bin_hi,count,density,provenance\n";
  for (unsigned b = 0; b < bins; ++b) {
    const double blo = lo + b * width;
    out += fmt_double(blo) + "," + fmt_double(blo + width) + "," +
           std::to_string(counts[b]) + "," +
           fmt_double(static_cast<double>(counts[b]) / (total * width)) + "," +
           provenance + "\n";
  }
  return out;
}

std::string uniformity_csv(const exact::UniformityReport& r) {
  std::string out =
      "n,ip,iq,subarray,size,pattern_classes,count_min,count_max,uniform,provenance\n";
  for (const auto& cell : r.cells) {
    const std::size_t sizes[3] = {cell.ip, cell.iq - cell.ip - 1,
                                  r.n - 1 - cell.iq};
    const char* names[3] = {"left", "middle", "right"};
    for (int s = 0; s < 3; ++s) {
      std::uint64_t cmin = 0, cmax = 0;
      if (!cell.patterns[s].empty()) {
        cmin = cell.patterns[s].begin()->second;
        cmax = cmin;
        for (const auto& [id, c] : cell.patterns[s]) {
          cmin = std::min(cmin, c);
          cmax = std::max(cmax, c);
        }
      }
      out += std::to_string(r.n) + "," + std::to_string(cell.ip + 1) + "," +
             std::to_string(cell.iq + 1) + "," + names[s] + "," +
             std::to_string(sizes[s]) + "," +
             std::to_string(cell.patterns[s].size()) + "," + std::to_string(cmin) +
             "," + std::to_string(cmax) + "," +
             (cmin == cmax ? "true" : "false") + ",exhaustive\n";
    }
  }
  return out;
}

}  // namespace qslab::io
