#include "fsw/analyzer/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace fsw::analyzer {

namespace {

AxisStats stats_of(const std::vector<double>& values) {
  AxisStats s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / n);
  return s;
}

double round1(double v) { return std::round(v * 10.0) / 10.0; }

}  // namespace

PoseStatistics pose_statistics(const VisionLog& log) {
  if (log.samples.empty()) {
    throw LogError(LogError::Kind::EmptyLog, 0, "pose statistics");
  }
  std::vector<double> x, y, z, roll, pitch, yaw;
  for (const auto& s : log.samples) {
    x.push_back(s.position[0]);
    y.push_back(s.position[1]);
    z.push_back(s.position[2]);
    const auto e = quat_to_euler(s.orientation);
    if (e.ok()) {
      roll.push_back(e.value().roll_deg);
      pitch.push_back(e.value().pitch_deg);
      yaw.push_back(e.value().yaw_deg);
    }
  }
  PoseStatistics p;
  p.x = stats_of(x);
  p.y = stats_of(y);
  p.z = stats_of(z);
  p.roll = stats_of(roll);
  p.pitch = stats_of(pitch);
  p.yaw = stats_of(yaw);
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  const auto [zmin, zmax] = std::minmax_element(z.begin(), z.end());
  p.horizontal_range_x_m = *xmax - *xmin;
  p.horizontal_range_y_m = *ymax - *ymin;
  p.vertical_range_m = *zmax - *zmin;
  return p;
}

std::map<FlightMode, ModeSlice> mode_distribution(const MissionLog& mission) {
  if (mission.entries.empty()) {
    throw LogError(LogError::Kind::EmptyLog, 0, "mode distribution");
  }
  std::map<FlightMode, ModeSlice> dist;
  for (const auto& e : mission.entries) ++dist[e.mode].count;
  const double total = static_cast<double>(mission.entries.size());
  for (auto& [mode, slice] : dist) {
    slice.pct = round1(100.0 * static_cast<double>(slice.count) / total);
  }
  return dist;
}

CommandSummary command_summary(const MissionLog& mission) {
  std::map<uint32_t, AckStatus> final_status;
  for (const auto& e : mission.entries) {
    if (e.last_ack) final_status[e.last_ack->first] = e.last_ack->second;
  }
  CommandSummary cs;
  cs.sent = final_status.size();
  for (const auto& [id, status] : final_status) {
    switch (status) {
      case AckStatus::Success: ++cs.succeeded; break;
      case AckStatus::Rejected: ++cs.rejected; break;
      case AckStatus::Timeout: ++cs.timed_out; break;
    }
  }
  cs.success_rate_pct =
      cs.sent == 0 ? 0.0
                   : 100.0 * static_cast<double>(cs.succeeded) /
                         static_cast<double>(cs.sent);
  return cs;
}

ResourceSummary resource_summary(const ResourceLog& log) {
  std::vector<double> cpu, mem, bw;
  for (const auto& s : log.samples) {
    cpu.push_back(s.cpu_pct);
    mem.push_back(s.mem_mb);
    bw.push_back(s.bandwidth_kbps);
  }
  ResourceSummary r;
  r.cpu_pct = stats_of(cpu);
  r.mem_mb = stats_of(mem);
  r.bandwidth_kbps = stats_of(bw);
  if (!log.samples.empty()) {
    r.cpu_peak_pct = *std::max_element(cpu.begin(), cpu.end());
    r.mem_peak_mb = *std::max_element(mem.begin(), mem.end());
    r.bandwidth_peak_kbps = *std::max_element(bw.begin(), bw.end());
  }
  return r;
}

LatencyHistogram latency_histogram(const IntervalSeries& series) {
  LatencyHistogram h;
  h.counts.assign(LatencyHistogram::kBinCount + 1, 0);
  for (size_t i = 0; i <= LatencyHistogram::kBinCount; ++i) {
    h.bin_start_ms.push_back(static_cast<double>(i) *
                             LatencyHistogram::kBinWidthMs);
  }
  for (double dt : series.dts_ms) {
    if (dt < 0.0) dt = 0.0;
    const auto bin = static_cast<size_t>(dt / LatencyHistogram::kBinWidthMs);
    h.counts[std::min(bin, LatencyHistogram::kBinCount)] += 1;
  }
  return h;
}

AnalysisReport build_report(const VisionLog& vision, const MissionLog* mission,
                            const ResourceLog* resources,
                            const AnalysisOptions& options) {
  AnalysisReport r;
  r.vision_samples = vision.samples.size();

  const auto series = interval_series(vision);
  r.timing = timing_metrics(series);
  r.gaps = detect_dropouts(series);
  r.histogram = latency_histogram(series);

  r.active_window_s = options.active_window_s.value_or(
      std::make_pair(vision.samples.front().t, vision.samples.back().t));
  const auto cont = continuity_and_rate(vision, r.gaps.size(),
                                        r.active_window_s.first,
                                        r.active_window_s.second);
  r.continuity_pct = cont.continuity_pct;
  r.effective_rate_hz = cont.effective_rate_hz;

  r.pose = pose_statistics(vision);
  r.duration_s = vision.duration_s();

  if (mission != nullptr) {
    r.mission_entries = mission->entries.size();
    r.modes = mode_distribution(*mission);
    r.commands = command_summary(*mission);
    r.duration_s = std::max(r.duration_s,
                            mission->entries.back().t);
    for (auto& gap : r.gaps) {
      gap.phase = attribute_gap_phase(gap, *mission);
    }
  }
  if (resources != nullptr) {
    r.resources = resource_summary(*resources);
  }
  r.freshness_pct = options.freshness_pct;
  return r;
}

std::string report_to_json(const AnalysisReport& r) {
  using json = nlohmann::ordered_json;
  json j;

  json summary;
  summary["duration_s"] = r.duration_s;
  summary["vision_samples"] = r.vision_samples;
  summary["mission_entries"] =
      r.mission_entries ? json(*r.mission_entries) : json(nullptr);
  if (r.commands) {
    json c;
    c["sent"] = r.commands->sent;
    c["succeeded"] = r.commands->succeeded;
    c["rejected"] = r.commands->rejected;
    c["timed_out"] = r.commands->timed_out;
    c["success_rate_pct"] = r.commands->success_rate_pct;
    summary["commands"] = c;
  } else {
    summary["commands"] = nullptr;
  }
  j["mission_summary"] = summary;

  json timing;
  timing["mean_ms"] = r.timing.mean_ms;
  timing["median_ms"] = r.timing.median_ms;
  timing["std_ms"] = r.timing.std_ms;
  timing["min_ms"] = r.timing.min_ms;
  timing["max_ms"] = r.timing.max_ms;
  timing["p95_ms"] = r.timing.p95_ms;
  timing["p99_ms"] = r.timing.p99_ms;
  j["timing_ms"] = timing;

  j["continuity_pct"] = r.continuity_pct;
  j["effective_rate_hz"] = r.effective_rate_hz;
  j["active_window_s"] = {r.active_window_s.first, r.active_window_s.second};

  json gaps = json::array();
  for (const auto& g : r.gaps) {
    json jg;
    jg["t_s"] = g.t_s;
    jg["gap_ms"] = g.gap_ms;
    jg["effective_hz"] = g.effective_hz;
    jg["phase"] = g.phase ? json(std::string(format_mode(*g.phase)))
                          : json("UNKNOWN");
    gaps.push_back(jg);
  }
  j["gaps"] = gaps;

  auto axis = [](const AxisStats& a) {
    json ja;
    ja["mean"] = a.mean;
    ja["std"] = a.std;
    return ja;
  };
  json pos;
  pos["x"] = axis(r.pose.x);
  pos["y"] = axis(r.pose.y);
  pos["z"] = axis(r.pose.z);
  pos["range_x_m"] = r.pose.horizontal_range_x_m;
  pos["range_y_m"] = r.pose.horizontal_range_y_m;
  pos["range_z_m"] = r.pose.vertical_range_m;
  j["position_stats"] = pos;

  json ori;
  ori["roll_deg"] = axis(r.pose.roll);
  ori["pitch_deg"] = axis(r.pose.pitch);
  ori["yaw_deg"] = axis(r.pose.yaw);
  j["orientation_stats"] = ori;

  if (r.modes) {
    json modes;
    // Fixed emission order, independent of counts.
    for (FlightMode m : {FlightMode::Stabilize, FlightMode::Guided,
                         FlightMode::PosHold, FlightMode::Land}) {
      auto it = r.modes->find(m);
      if (it == r.modes->end()) continue;
      json slice;
      slice["count"] = it->second.count;
      slice["pct"] = it->second.pct;
      modes[std::string(format_mode(m))] = slice;
    }
    j["mode_distribution"] = modes;
  } else {
    j["mode_distribution"] = nullptr;
  }

  j["freshness_pct"] = r.freshness_pct ? json(*r.freshness_pct) : json(nullptr);

  if (r.resources) {
    json res;
    res["cpu_pct"] = {{"mean", r.resources->cpu_pct.mean},
                      {"peak", r.resources->cpu_peak_pct}};
    res["mem_mb"] = {{"mean", r.resources->mem_mb.mean},
                     {"peak", r.resources->mem_peak_mb}};
    res["bandwidth_kbps"] = {{"mean", r.resources->bandwidth_kbps.mean},
                             {"peak", r.resources->bandwidth_peak_kbps}};
    j["resource_summary"] = res;
  } else {
    j["resource_summary"] = nullptr;
  }

  json hist;
  hist["bin_start_ms"] = r.histogram.bin_start_ms;
  hist["counts"] = r.histogram.counts;
  j["latency_histogram"] = hist;

  return j.dump(2) + "\n";
}

std::string histogram_to_csv(const LatencyHistogram& hist) {
  std::ostringstream os;
  os << "bin_start_ms,bin_end_ms,count\n";
  for (size_t i = 0; i < hist.counts.size(); ++i) {
    const double start = hist.bin_start_ms[i];
    os << start << ",";
    if (i + 1 < hist.bin_start_ms.size()) {
      os << hist.bin_start_ms[i] + LatencyHistogram::kBinWidthMs;
    } else {
      os << "inf";
    }
    os << "," << hist.counts[i] << "\n";
  }
  return os.str();
}

}  // namespace fsw::analyzer
