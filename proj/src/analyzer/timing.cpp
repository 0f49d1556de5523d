#include "fsw/analyzer/timing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fsw::analyzer {

IntervalSeries interval_series(const VisionLog& log) {
  if (log.samples.size() < 2) {
    throw TooFewSamples("need at least 2 samples for intervals");
  }
  IntervalSeries s;
  s.dts_ms.reserve(log.samples.size() - 1);
  s.end_times_s.reserve(log.samples.size() - 1);
  for (size_t i = 1; i < log.samples.size(); ++i) {
    s.dts_ms.push_back((log.samples[i].t - log.samples[i - 1].t) * 1000.0);
    s.end_times_s.push_back(log.samples[i].t);
  }
  const double n = static_cast<double>(s.dts_ms.size());
  s.mu_ms = std::accumulate(s.dts_ms.begin(), s.dts_ms.end(), 0.0) / n;
  double var = 0.0;
  for (double dt : s.dts_ms) var += (dt - s.mu_ms) * (dt - s.mu_ms);
  s.sigma_ms = std::sqrt(var / n);
  const auto [lo, hi] = std::minmax_element(s.dts_ms.begin(), s.dts_ms.end());
  s.dt_min_ms = *lo;
  s.dt_max_ms = *hi;
  return s;
}

double percentile_nearest_rank(std::span<const double> values, double p) {
  if (values.empty()) throw TooFewSamples("percentile of empty series");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  size_t rank = static_cast<size_t>(
      std::ceil(p / 100.0 * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

TimingMetrics timing_metrics(const IntervalSeries& series) {
  if (series.dts_ms.empty()) throw TooFewSamples("empty interval series");
  std::vector<double> sorted = series.dts_ms;
  std::sort(sorted.begin(), sorted.end());

  TimingMetrics m;
  m.mean_ms = series.mu_ms;
  m.std_ms = series.sigma_ms;
  m.min_ms = series.dt_min_ms;
  m.max_ms = series.dt_max_ms;
  const size_t n = sorted.size();
  m.median_ms = (n % 2 == 1) ? sorted[n / 2]
                             : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  m.p95_ms = percentile_nearest_rank(sorted, 95.0);
  m.p99_ms = percentile_nearest_rank(sorted, 99.0);
  return m;
}

std::vector<GapRecord> detect_dropouts(const IntervalSeries& series) {
  std::vector<GapRecord> gaps;
  const double threshold = 2.0 * series.mu_ms;
  for (size_t i = 0; i < series.dts_ms.size(); ++i) {
    if (series.dts_ms[i] > threshold) {
      gaps.push_back(GapRecord{series.end_times_s[i], series.dts_ms[i],
                               1000.0 / series.dts_ms[i], std::nullopt});
    }
  }
  std::stable_sort(gaps.begin(), gaps.end(),
                   [](const GapRecord& x, const GapRecord& y) {
                     return x.gap_ms > y.gap_ms;
                   });
  return gaps;
}

ContinuityResult continuity_and_rate(const VisionLog& log, size_t gap_count,
                                     double window_start_s,
                                     double window_end_s) {
  if (log.samples.empty()) throw TooFewSamples("empty vision log");
  if (window_end_s <= window_start_s) {
    throw EmptyWindow("active window duration must be > 0");
  }
  ContinuityResult r;
  const double samples = static_cast<double>(log.samples.size());
  r.continuity_pct =
      100.0 * (1.0 - static_cast<double>(gap_count) / samples);
  for (const auto& s : log.samples) {
    if (s.t >= window_start_s && s.t <= window_end_s) ++r.samples_in_window;
  }
  r.effective_rate_hz = static_cast<double>(r.samples_in_window) /
                        (window_end_s - window_start_s);
  return r;
}

std::optional<FlightMode> attribute_gap_phase(const GapRecord& gap,
                                              const MissionLog& mission,
                                              double mission_shift_s) {
  std::optional<FlightMode> phase;
  for (const auto& e : mission.entries) {
    const double aligned_t = e.t + mission_shift_s;
    if (aligned_t > gap.t_s) break;
    phase = e.mode;
  }
  return phase;
}

}  // namespace fsw::analyzer
