#ifndef ONENA_HARNESS_HPP
#define ONENA_HARNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "onena/evolution.hpp"
#include "onena/rng.hpp"

namespace onena {

// One sweep: the base config replayed over a list of resolutions with
// `trials` independent seeded runs per cell.
struct SweepSpec {
  RunConfig base;
  std::vector<int> r_values = {120, 240, 360, 480, 600, 720, 840, 960, 1080, 1200};
  int trials = 100;
  std::uint64_t master_seed = 1;
  // Count stagnated/aborted runs at their evaluation count instead of
  // restricting the statistics to successful runs.
  bool include_timeouts = false;
};

// Appendix-style row: %opt plus mean/sdev/median of the evaluation counts
// (first-hitting times of the successful runs by default).
struct StatsRow {
  int r;
  double percent_opt;
  double mean;
  double sdev;
  double median;
  int trials;
};

inline std::uint64_t trial_seed(std::uint64_t master, int trial_index) {
  return CounterRng::split(master, static_cast<std::uint64_t>(trial_index));
}

inline StatsRow aggregate(int r, const std::vector<RunRecord>& records, bool include_timeouts) {
  std::vector<double> samples;
  int successes = 0;
  for (const RunRecord& rec : records) {
    if (rec.success) {
      ++successes;
      samples.push_back(static_cast<double>(rec.first_hitting));
    } else if (include_timeouts) {
      samples.push_back(static_cast<double>(rec.evaluations_used));
    }
  }
  StatsRow row{r, 100.0 * successes / static_cast<double>(records.size()), 0.0, 0.0, 0.0,
               static_cast<int>(records.size())};
  if (samples.empty()) return row;
  double sum = 0.0;
  for (double v : samples) sum += v;
  row.mean = sum / samples.size();
  if (samples.size() > 1) {
    double sq = 0.0;
    for (double v : samples) sq += (v - row.mean) * (v - row.mean);
    row.sdev = std::sqrt(sq / (samples.size() - 1));
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  row.median = n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  return row;
}

inline std::vector<RunRecord> run_cell(const RunConfig& base, int r, int trials,
                                       std::uint64_t master_seed) {
  std::vector<RunRecord> records;
  records.reserve(trials);
  RunConfig cfg = base;
  cfg.r = r;
  cfg.op.prepare(r);
  for (int i = 0; i < trials; ++i) {
    cfg.seed = trial_seed(master_seed, i);
    records.push_back(run(cfg));
  }
  return records;
}

inline std::vector<StatsRow> sweep(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials >= 1 required");
  std::vector<StatsRow> rows;
  rows.reserve(spec.r_values.size());
  for (int r : spec.r_values) {
    if (r < 8) throw std::invalid_argument("sweep: every r must be >= 8");
    rows.push_back(aggregate(r, run_cell(spec.base, r, spec.trials, spec.master_seed),
                             spec.include_timeouts));
  }
  return rows;
}

namespace detail {

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.0f", v);
  return buf;
}

inline std::string format_percent(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace detail

// CSV: header `r,percent_opt,mean,sdev,median,trials`, decimal points,
// newline-terminated.
inline std::string emit_csv(const std::vector<StatsRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::string out = "r,percent_opt,mean,sdev,median,trials\n";
  for (const StatsRow& row : rows) {
    out += std::to_string(row.r) + ',' + detail::format_percent(row.percent_opt) + ',' +
           detail::format_number(row.mean) + ',' + detail::format_number(row.sdev) + ',' +
           detail::format_number(row.median) + ',' + std::to_string(row.trials) + '\n';
  }
  return out;
}

inline std::string emit_markdown(const std::vector<StatsRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_markdown: no rows");
  std::string out = "| r | %opt | mean | sdev | median | trials |\n";
  out += "|---:|---:|---:|---:|---:|---:|\n";
  for (const StatsRow& row : rows) {
    out += "| " + std::to_string(row.r) + " | " + detail::format_percent(row.percent_opt) +
           " | " + detail::format_number(row.mean) + " | " + detail::format_number(row.sdev) +
           " | " + detail::format_number(row.median) + " | " + std::to_string(row.trials) +
           " |\n";
  }
  return out;
}

// Empirical multiplicative drift of the fitness distance g = 1 - f: for each
// bucket of g-values, the mean of (g_t - g_{t+1}) / g_t over all recorded
// one-step transitions that start in the bucket.
struct DriftRow {
  double g_lo;
  double g_hi;
  double normalized_drift;
  long count;
  double std_error;
};

inline std::vector<DriftRow> estimate_drift(const std::vector<std::vector<double>>& fitness_traces,
                                            int buckets) {
  if (buckets < 1) throw std::invalid_argument("estimate_drift: buckets >= 1 required");
  double g_max = 0.0;
  bool any = false;
  for (const auto& trace : fitness_traces)
    for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
      const double g = 1.0 - trace[t];
      if (g > 0.0) {
        g_max = std::max(g_max, g);
        any = true;
      }
    }
  if (!any) throw std::invalid_argument("estimate_drift: no transitions with positive distance");

  // Log-spaced buckets down from g_max; ratio 2 per bucket.
  std::vector<DriftRow> rows(buckets);
  std::vector<double> sum(buckets, 0.0), sumsq(buckets, 0.0);
  for (int k = 0; k < buckets; ++k) {
    rows[k].g_hi = g_max * std::pow(0.5, k);
    rows[k].g_lo = k + 1 == buckets ? 0.0 : g_max * std::pow(0.5, k + 1);
    rows[k].count = 0;
  }
  for (const auto& trace : fitness_traces)
    for (std::size_t t = 0; t + 1 < trace.size(); ++t) {
      const double g = 1.0 - trace[t];
      if (g <= 0.0) continue;
      int k = std::min(buckets - 1,
                       std::max(0, static_cast<int>(std::floor(std::log2(g_max / g)))));
      const double decrease = (g - (1.0 - trace[t + 1])) / g;
      sum[k] += decrease;
      sumsq[k] += decrease * decrease;
      ++rows[k].count;
    }
  for (int k = 0; k < buckets; ++k) {
    if (rows[k].count > 0) {
      rows[k].normalized_drift = sum[k] / rows[k].count;
      if (rows[k].count > 1) {
        const double var =
            (sumsq[k] - sum[k] * sum[k] / rows[k].count) / (rows[k].count - 1);
        rows[k].std_error = std::sqrt(std::max(0.0, var) / rows[k].count);
      }
    }
  }
  return rows;
}

}  // namespace onena

#endif
