#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qslab/exact.hpp"
#include "qslab/simulate.hpp"
#include "qslab/stats.hpp"

// Report serialization. All emitters are deterministic: CSV is
// comma-separated with a header row, UTF-8, LF line endings, doubles printed
// with 15 significant digits; exact values additionally carry num/den
// columns. Every numeric row carries a provenance column (the reference the
// number is checked against, or "plumbing" when there is none).

namespace qslab::io {

std::string fmt_double(double x);
void write_text_file(const std::string& path, const std::string& content);

// n, exact_num, exact_den, decimal, source
std::string exact_series_csv(const exact::ExactSeries& s);

// Same, plus the closed-form minus recurrence residual where the closed form
// is defined (exact rational text; empty below its validity range).
std::string exact_with_residual_csv(const exact::ExactSeries& rec,
                                    const std::vector<std::optional<Rational>>& closed);

std::string sim_metric_ref(sim::Algo algo, sim::RankMode mode, const std::string& metric);
nlohmann::ordered_json sim_report_json(const sim::SimReport& r);
std::string sim_report_csv(const sim::SimReport& r);

nlohmann::ordered_json table1_json(const sim::Table1Report& r);
std::string table1_csv(const sim::Table1Report& r);

// bin_lo, bin_hi, count, density, provenance
std::string histogram_csv(std::span<const double> values, unsigned bins,
                          const std::string& provenance);

std::string uniformity_csv(const exact::UniformityReport& r);

}  // namespace qslab::io
