#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fsw/analyzer/logs.hpp"

namespace fsw::analyzer {

struct TooFewSamples : std::runtime_error {
  explicit TooFewSamples(const char* what) : std::runtime_error(what) {}
};

struct EmptyWindow : std::runtime_error {
  explicit EmptyWindow(const char* what) : std::runtime_error(what) {}
};

// Consecutive inter-sample intervals in milliseconds plus their summary.
// end_times_s[i] is the timestamp of the sample closing interval i.
struct IntervalSeries {
  std::vector<double> dts_ms;
  std::vector<double> end_times_s;
  double mu_ms = 0.0;     // mean
  double sigma_ms = 0.0;  // population std
  double dt_min_ms = 0.0;
  double dt_max_ms = 0.0;
};

struct TimingMetrics {
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double std_ms = 0.0;  // population
  double min_ms = 0.0;
  double max_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
};

struct GapRecord {
  double t_s = 0.0;     // mission-relative time of the gap's end sample
  double gap_ms = 0.0;
  double effective_hz = 0.0;  // 1000 / gap_ms
  std::optional<FlightMode> phase;  // nullopt = Unknown
};

IntervalSeries interval_series(const VisionLog& log);

// Nearest-rank percentiles on the sorted interval series; median is the
// midpoint average for even counts. Throws TooFewSamples below 2 samples.
TimingMetrics timing_metrics(const IntervalSeries& series);

// Nearest-rank percentile of values (p in (0, 100]).
double percentile_nearest_rank(std::span<const double> values, double p);

// Dropout criterion: dt > 2 * mean(dt). Result sorted descending by gap.
std::vector<GapRecord> detect_dropouts(const IntervalSeries& series);

struct ContinuityResult {
  double continuity_pct = 0.0;     // 100 * (1 - gaps / samples)
  double effective_rate_hz = 0.0;  // samples in window / window duration
  size_t samples_in_window = 0;
};

ContinuityResult continuity_and_rate(const VisionLog& log, size_t gap_count,
                                     double window_start_s,
                                     double window_end_s);

// Latest mission entry at or before the gap's end time, on the aligned
// timeline; nullopt when no entry precedes the gap.
std::optional<FlightMode> attribute_gap_phase(const GapRecord& gap,
                                              const MissionLog& mission,
                                              double mission_shift_s = 0.0);

}  // namespace fsw::analyzer
