// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fsw/analyzer/kinematics.hpp"
#include "fsw/analyzer/logs.hpp"
#include "fsw/analyzer/report.hpp"
#include "fsw/analyzer/timing.hpp"
#include "fsw/bridge/frame.hpp"
#include "fsw/bridge/payloads.hpp"
#include "fsw/sim/mission.hpp"

using namespace fsw;
using namespace fsw::analyzer;

namespace {

int g_failures = 0;

void criterion(int number, const char* description, bool passed) {
  std::printf("criterion %2d: %s - %s\n", number, passed ? "PASS" : "FAIL",
              description);
  if (!passed) ++g_failures;
}

template <typename Fn>
void guarded(int number, const char* description, Fn fn) {
  bool passed = false;
  try {
    passed = fn();
  } catch (const std::exception& e) {
    std::printf("              (exception: %s)\n", e.what());
  }
  criterion(number, description, passed);
}

VisionLog log_from_times(const std::vector<double>& times) {
  VisionLog log;
  log.samples.reserve(times.size());
  for (double t : times) {
    log.samples.push_back(PoseSample{t, {0, 0, 1}, {0, 0, 0, 1}});
  }
  return log;
}

struct TableGap {
  double end_s;
  double gap_ms;
  double effective_hz;
  FlightMode phase;
};

// The five largest gaps in the reference flight, descending.
const std::vector<TableGap> kTableGaps = {
    {179.62, 8124.80, 0.12, FlightMode::Land},
    {167.08, 210.96, 4.74, FlightMode::Land},
    {72.37, 81.05, 12.34, FlightMode::Guided},
    {16.68, 76.30, 13.11, FlightMode::Guided},
    {36.84, 76.22, 13.12, FlightMode::Guided},
};

VisionLog gap_table_log() {
  constexpr double kEps = 1e-9;
  std::vector<double> times;
  for (int k = 0; k <= 18500; ++k) {  // 10 ms grid over 185 s
    const double t = 0.01 * k;
    bool blocked = false;
    for (const auto& g : kTableGaps) {
      const double start = g.end_s - g.gap_ms * 1e-3;
      if (t > start + kEps && t < g.end_s - kEps) {
        blocked = true;
        break;
      }
    }
    if (!blocked) times.push_back(t);
  }
  for (const auto& g : kTableGaps) {
    times.push_back(g.end_s - g.gap_ms * 1e-3);
    times.push_back(g.end_s);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double x, double y) { return y - x < 1e-9; }),
              times.end());
  return log_from_times(times);
}

MissionLog gap_table_mission() {
  MissionLog mission;
  mission.entries = {
      {0.0, FlightMode::Stabilize, HealthLevel::Healthy, std::nullopt},
      {10.0, FlightMode::Guided, HealthLevel::Healthy, std::nullopt},
      {160.0, FlightMode::Land, HealthLevel::Healthy, std::nullopt},
  };
  return mission;
}

// 15,744 samples on a 10 ms grid with sixteen 60 ms dropouts.
VisionLog continuity_log() {
  std::vector<double> times{0.0};
  int long_intervals = 0;
  double t = 0.0;
  for (int i = 1; i <= 15743; ++i) {
    if (i % 900 == 450 && long_intervals < 16) {
      ++long_intervals;
      t += 0.060;
    } else {
      t += 0.010;
    }
    times.push_back(t);
  }
  return log_from_times(times);
}

const char* kMissionCommands = R"([
  {"t_s": 1.0,  "id": 1,  "opcode": "ARM",      "args": []},
  {"t_s": 2.0,  "id": 2,  "opcode": "SET_MODE", "args": [4]},
  {"t_s": 3.0,  "id": 3,  "opcode": "TAKEOFF",  "args": [1.0]},
  {"t_s": 8.0,  "id": 4,  "opcode": "GOTO",     "args": [1, 0, 1]},
  {"t_s": 12.0, "id": 5,  "opcode": "GOTO",     "args": [1, 1, 1]},
  {"t_s": 16.0, "id": 6,  "opcode": "GOTO",     "args": [0, 1, 1]},
  {"t_s": 20.0, "id": 7,  "opcode": "GOTO",     "args": [0, 0, 1]},
  {"t_s": 24.0, "id": 8,  "opcode": "GOTO",     "args": [0.5, 0.5, 1.5]},
  {"t_s": 28.0, "id": 9,  "opcode": "GOTO",     "args": [1.5, 0.5, 1.5]},
  {"t_s": 32.0, "id": 10, "opcode": "GOTO",     "args": [1.5, 1.5, 1.0]},
  {"t_s": 36.0, "id": 11, "opcode": "GOTO",     "args": [0, 0, 1]},
  {"t_s": 42.0, "id": 12, "opcode": "SET_MODE", "args": [16]},
  {"t_s": 45.0, "id": 13, "opcode": "SET_MODE", "args": [4]},
  {"t_s": 48.0, "id": 14, "opcode": "LAND",     "args": []},
  {"t_s": 57.0, "id": 15, "opcode": "SET_MODE", "args": [0]}
])";

std::string scripted_mission_config(double duration_s,
                                    const std::string& vision) {
  std::ostringstream os;
  os << "{\n"
     << "  \"seed\": 2024,\n"
     << "  \"duration_s\": " << duration_s << ",\n"
     << "  \"vision\": " << vision << ",\n"
     << "  \"trajectory\": [\n"
     << "    {\"kind\": \"hover\", \"start_s\": 0, \"end_s\": 5,"
     << " \"target\": [0, 0, 1]},\n"
     << "    {\"kind\": \"linear_to\", \"start_s\": 5, \"end_s\": 20,"
     << " \"target\": [1.5, 1.0, 1.2]},\n"
     << "    {\"kind\": \"orbit_about\", \"start_s\": 20, \"end_s\": "
     << duration_s << ", \"target\": [0, 0, 0],"
     << " \"angular_rate_deg_s\": 9.0}\n"
     << "  ],\n"
     << "  \"command_script\": " << kMissionCommands << ",\n"
     << "  \"rate_groups\": [10, 100],\n"
     << "  \"output_dir\": \"out\"\n"
     << "}\n";
  return os.str();
}

double brute_force_percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  size_t rank = static_cast<size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<size_t>(rank, 1, values.size());
  return values[rank - 1];
}

std::string render_report(const sim::MissionResult& result) {
  std::istringstream vin(result.vision_csv);
  std::istringstream min(result.mission_csv);
  std::istringstream rin(result.resource_csv);
  auto vision = load_vision_log(vin);
  auto mission = load_mission_log(min);
  auto resources = load_resource_log(rin);
  AnalysisOptions options;
  options.freshness_pct = result.freshness.freshness_pct();
  return report_to_json(build_report(vision, &mission, &resources, options));
}

}  // namespace

int main() {
  guarded(1, "gap table: five largest dropouts with per-phase attribution", [] {
    const auto log = gap_table_log();
    const auto mission = gap_table_mission();
    const auto gaps = detect_dropouts(interval_series(log));
    if (gaps.size() != kTableGaps.size()) return false;
    for (size_t i = 0; i < gaps.size(); ++i) {
      if (std::abs(gaps[i].gap_ms - kTableGaps[i].gap_ms) > 0.01) return false;
      if (std::abs(gaps[i].effective_hz - kTableGaps[i].effective_hz) > 0.005) {
        return false;
      }
      const auto phase = attribute_gap_phase(gaps[i], mission);
      if (phase != kTableGaps[i].phase) return false;
    }
    return true;
  });

  const auto big_log = continuity_log();

  guarded(2, "continuity: 16 gaps in 15,744 samples -> 99.90%", [&] {
    const auto gaps = detect_dropouts(interval_series(big_log));
    if (gaps.size() != 16) return false;
    const auto r = continuity_and_rate(big_log, gaps.size(), 0.0, 180.6);
    return std::round(r.continuity_pct * 100.0) / 100.0 == 99.90;
  });

  guarded(3, "effective rate: 15,744 samples over 180.6 s -> 87.18 Hz", [&] {
    const auto r = continuity_and_rate(big_log, 0, 0.0, 180.6);
    if (r.samples_in_window != 15744) return false;
    return std::abs(r.effective_rate_hz - 87.18) <= 0.02;
  });

  guarded(4, "mode distribution: 122/42/21/10 of 195 entries", [] {
    MissionLog mission;
    auto add = [&](FlightMode m, size_t n) {
      for (size_t i = 0; i < n; ++i) {
        mission.entries.push_back({0.1 * static_cast<double>(mission.entries.size()),
                                   m, HealthLevel::Healthy, std::nullopt});
      }
    };
    add(FlightMode::Guided, 122);
    add(FlightMode::Land, 42);
    add(FlightMode::PosHold, 21);
    add(FlightMode::Stabilize, 10);
    const auto dist = mode_distribution(mission);
    return std::abs(dist.at(FlightMode::Guided).pct - 62.6) < 1e-9 &&
           std::abs(dist.at(FlightMode::Land).pct - 21.5) < 1e-9 &&
           std::abs(dist.at(FlightMode::PosHold).pct - 10.8) < 1e-9 &&
           std::abs(dist.at(FlightMode::Stabilize).pct - 5.1) < 1e-9;
  });

  const auto scripted_cfg = sim::parse_mission_config(
      scripted_mission_config(60.0, "{\"nominal_rate_hz\": 100.0}"));
  sim::MissionResult clean_run;
  bool clean_ok = true;
  try {
    clean_run = sim::run_mission(scripted_cfg);
  } catch (const std::exception&) {
    clean_ok = false;
  }

  criterion(5, "command success: 15 scripted commands, 15 acked successful",
            clean_ok && clean_run.dispatcher.sent == 15 &&
                clean_run.dispatcher.succeeded == 15 &&
                clean_run.dispatcher.success_rate_pct() == 100.0);

  guarded(6, "freshness: 100% lossless; reorder faults supersede frames", [&] {
    if (!clean_ok) return false;
    const auto& agg = clean_run.freshness;
    if (agg.freshness_pct() != 100.0 || agg.stale_superseded != 0 ||
        agg.stale_aged != 0) {
      return false;
    }
    sim::LinkFaults faults;
    faults.pose_uplink.reorder_prob = 0.1;
    const auto faulty = sim::run_mission(scripted_cfg, faults);
    const auto& s = faulty.pose_channel;
    return s.stale_superseded > 0 &&
           s.received == s.fresh + s.stale_superseded + s.stale_aged;
  });

  guarded(7, "finite differences: exact on quadratics, 2nd order on sin", [] {
    VisionLog quad;
    for (int i = 0; i <= 200; ++i) {
      const double t = 0.01 * i;
      quad.samples.push_back(PoseSample{t, {t * t, 0, 0}, {0, 0, 0, 1}});
    }
    const auto v = finite_diff_velocity(quad);
    for (size_t i = 0; i < v.t_s.size(); ++i) {
      if (std::abs(v.values[i][0] - 2.0 * v.t_s[i]) > 1e-9) return false;
    }
    const auto a = finite_diff_derivative(v);
    for (const auto& value : a.values) {
      if (std::abs(value[0] - 2.0) > 1e-9) return false;
    }

    auto sine_error = [](double h) {
      VisionLog log;
      const int n = static_cast<int>(std::round(2.0 / h));
      for (int i = 0; i <= n; ++i) {
        const double t = h * i;
        log.samples.push_back(PoseSample{t, {std::sin(t), 0, 0}, {0, 0, 0, 1}});
      }
      const auto vel = finite_diff_velocity(log);
      double worst = 0.0;
      for (size_t i = 0; i < vel.t_s.size(); ++i) {
        worst = std::max(worst,
                         std::abs(vel.values[i][0] - std::cos(vel.t_s[i])));
      }
      return worst;
    };
    const double e10 = sine_error(0.010);
    const double e5 = sine_error(0.005);
    return e10 <= 2e-5 && e10 / e5 >= 3.9;
  });

  guarded(8, "percentiles: nearest-rank matches the brute-force oracle", [] {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> value(0.1, 400.0);
    std::uniform_int_distribution<size_t> size(1, 500);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> xs(size(rng));
      for (auto& x : xs) x = value(rng);
      for (double p : {95.0, 99.0}) {
        if (percentile_nearest_rank(xs, p) != brute_force_percentile(xs, p)) {
          return false;
        }
      }
    }
    return true;
  });

  guarded(9, "codec: 10,000-frame roundtrip; all byte flips detected", [] {
    std::mt19937_64 rng(7777);
    std::uniform_int_distribution<int> type(1, 6);
    std::uniform_int_distribution<size_t> len(0, 300);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 10'000; ++i) {
      const auto msg_type = static_cast<bridge::MsgType>(type(rng));
      const uint32_t seq = static_cast<uint32_t>(rng());
      const uint64_t stamp = rng();
      std::vector<uint8_t> payload(len(rng));
      for (auto& b : payload) b = static_cast<uint8_t>(byte(rng));
      auto encoded = bridge::encode_frame(msg_type, seq, stamp, payload);
      if (!encoded.ok()) return false;
      auto decoded = bridge::decode_frame(encoded.value());
      if (!decoded.ok()) return false;
      const auto& f = decoded.value();
      if (f.header.msg_type != msg_type || f.header.seq != seq ||
          f.header.send_time_ns != stamp || f.payload != payload) {
        return false;
      }
    }

    PoseSample pose{1.25, {1, -2, 3}, {0, 0, 0, 1}};
    auto fixture = bridge::encode_frame(bridge::MsgType::PoseTelemetry, 42,
                                        1'250'000'000,
                                        bridge::encode_pose_payload(pose));
    if (!fixture.ok()) return false;
    auto bytes = fixture.value();
    for (size_t i = 0; i < bytes.size(); ++i) {
      for (int v = 0; v < 256; ++v) {
        if (static_cast<uint8_t>(v) == bytes[i]) continue;
        auto corrupted = bytes;
        corrupted[i] = static_cast<uint8_t>(v);
        if (bridge::decode_frame(corrupted).ok()) return false;
      }
    }
    return true;
  });

  guarded(10, "determinism: identical mission runs, identical reports", [] {
    const auto cfg = sim::parse_mission_config(scripted_mission_config(
        200.0,
        "{\"nominal_rate_hz\": 100.0, \"jitter_std_ms\": 0.5,"
        " \"drop_prob\": 0.001,"
        " \"gap_schedule\": [[16.6, 0.0763], [36.76, 0.0762],"
        " [72.28, 0.081], [166.86, 0.211], [171.49, 8.1248]]}"));
    const auto r1 = sim::run_mission(cfg);
    const auto r2 = sim::run_mission(cfg);
    if (r1.vision_csv != r2.vision_csv || r1.mission_csv != r2.mission_csv ||
        r1.resource_csv != r2.resource_csv) {
      return false;
    }
    return render_report(r1) == render_report(r2);
  });

  guarded(11, "histogram: 66.65% of interval mass inside [8, 15) ms", [] {
    IntervalSeries series;
    series.dts_ms.reserve(10'000);
    for (int i = 0; i < 6'665; ++i) {
      series.dts_ms.push_back(8.5 + static_cast<double>(i % 13) * 0.5);  // [8.5, 14.5]
    }
    for (int i = 0; i < 3'335; ++i) {
      series.dts_ms.push_back(20.0 + static_cast<double>(i % 5));
    }
    const auto hist = latency_histogram(series);
    size_t in_band = 0;
    size_t total = 0;
    for (size_t bin = 0; bin < hist.counts.size(); ++bin) {
      total += hist.counts[bin];
      if (hist.bin_start_ms[bin] >= 8.0 && hist.bin_start_ms[bin] < 15.0) {
        in_band += hist.counts[bin];
      }
    }
    if (total != series.dts_ms.size()) return false;
    const double pct = 100.0 * static_cast<double>(in_band) /
                       static_cast<double>(total);
    return std::abs(pct - 66.65) <= 0.01;
  });

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
