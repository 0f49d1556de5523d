#pragma once

#include <map>
#include <string>

#include "fsw/analyzer/kinematics.hpp"
#include "fsw/analyzer/timing.hpp"

namespace fsw::analyzer {

struct AxisStats {
  double mean = 0.0;
  double std = 0.0;  // population
};

struct PoseStatistics {
  AxisStats x, y, z;            // meters
  AxisStats roll, pitch, yaw;   // degrees, plain (non-circular) arithmetic
  double horizontal_range_x_m = 0.0;  // max - min per horizontal axis
  double horizontal_range_y_m = 0.0;
  double vertical_range_m = 0.0;
};

PoseStatistics pose_statistics(const VisionLog& log);

struct ModeSlice {
  size_t count = 0;
  double pct = 0.0;  // rounded to one decimal place
};

// Occurrence count and percentage per mode; percentages are reported at
// one decimal and sum to 100 +/- 0.1.
std::map<FlightMode, ModeSlice> mode_distribution(const MissionLog& mission);

struct CommandSummary {
  size_t sent = 0;       // distinct acked command ids in the mission log
  size_t succeeded = 0;
  size_t rejected = 0;
  size_t timed_out = 0;
  double success_rate_pct = 0.0;
};

CommandSummary command_summary(const MissionLog& mission);

struct ResourceSummary {
  AxisStats cpu_pct;   // mean/std; peaks alongside
  AxisStats mem_mb;
  AxisStats bandwidth_kbps;
  double cpu_peak_pct = 0.0;
  double mem_peak_mb = 0.0;
  double bandwidth_peak_kbps = 0.0;
};

ResourceSummary resource_summary(const ResourceLog& log);

// Fixed 1 ms bins over [0, 50) ms plus one overflow bin; counts sum to
// the interval count.
struct LatencyHistogram {
  static constexpr double kBinWidthMs = 1.0;
  static constexpr size_t kBinCount = 50;  // plus overflow

  std::vector<double> bin_start_ms;  // kBinCount + 1 entries
  std::vector<size_t> counts;
};

LatencyHistogram latency_histogram(const IntervalSeries& series);

struct AnalysisOptions {
  // Active window for the effective rate; defaults to [first, last]
  // vision timestamp.
  std::optional<std::pair<double, double>> active_window_s;
  std::optional<double> freshness_pct;  // from bridge stats, if available
};

struct AnalysisReport {
  double duration_s = 0.0;
  size_t vision_samples = 0;
  std::optional<size_t> mission_entries;
  std::optional<CommandSummary> commands;
  TimingMetrics timing;
  double continuity_pct = 0.0;
  double effective_rate_hz = 0.0;
  std::pair<double, double> active_window_s{0.0, 0.0};
  std::vector<GapRecord> gaps;
  PoseStatistics pose;
  std::optional<std::map<FlightMode, ModeSlice>> modes;
  std::optional<double> freshness_pct;
  std::optional<ResourceSummary> resources;
  LatencyHistogram histogram;
};

// Aggregates every metric; mission/resource sections are absent when the
// corresponding log is not supplied. Gap phases are attributed when a
// mission log is present.
AnalysisReport build_report(const VisionLog& vision,
                            const MissionLog* mission,
                            const ResourceLog* resources,
                            const AnalysisOptions& options = {});

// Deterministic serialization: fixed key order, byte-identical for
// identical inputs.
std::string report_to_json(const AnalysisReport& report);

// `bin_start_ms,bin_end_ms,count` rows; the overflow bin's end is "inf".
std::string histogram_to_csv(const LatencyHistogram& hist);

}  // namespace fsw::analyzer
