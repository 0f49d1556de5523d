#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsw/analyzer/report.hpp"
#include "fsw/bridge/payloads.hpp"
#include "fsw/bridge/transport.hpp"
#include "fsw/sim/mission.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

int run_simulate(const std::string& config_path) {
  const auto config = fsw::sim::load_mission_config_file(config_path);
  const auto result = fsw::sim::run_mission(config);
  fsw::sim::write_mission_outputs(result, config.output_dir);
  std::cout << "simulate: " << config.duration_s << " s, "
            << result.vision_emitted << " vision samples, commands "
            << result.dispatcher.succeeded << "/" << result.dispatcher.sent
            << " ok, freshness " << result.freshness.freshness_pct()
            << "%, wrote " << config.output_dir << "\n";
  return kExitOk;
}

int run_analyze(const std::string& vision_path, const std::string& mission_path,
                const std::string& resource_path,
                const std::string& bridge_path, const std::string& report_path) {
  const auto vision = fsw::analyzer::load_vision_log_file(vision_path);

  std::optional<fsw::analyzer::MissionLog> mission;
  if (!mission_path.empty()) {
    mission = fsw::analyzer::load_mission_log_file(mission_path);
  }
  std::optional<fsw::analyzer::ResourceLog> resources;
  if (!resource_path.empty()) {
    resources = fsw::analyzer::load_resource_log_file(resource_path);
  }

  fsw::analyzer::AnalysisOptions options;
  if (!bridge_path.empty()) {
    std::ifstream in(bridge_path);
    if (!in) throw fsw::sim::ConfigError("cannot open " + bridge_path);
    const auto stats = nlohmann::json::parse(in, nullptr, true, true);
    options.freshness_pct = stats.value("freshness_pct", 100.0);
  }

  const auto report = fsw::analyzer::build_report(
      vision, mission ? &*mission : nullptr,
      resources ? &*resources : nullptr, options);

  namespace fs = std::filesystem;
  const fs::path out(report_path);
  {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + report_path);
    f << fsw::analyzer::report_to_json(report);
  }
  const fs::path hist_path = out.parent_path() / "latency_hist.csv";
  {
    std::ofstream f(hist_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + hist_path.string());
    f << fsw::analyzer::histogram_to_csv(report.histogram);
  }

  std::cout << "analyze: duration " << report.duration_s << " s, "
            << report.vision_samples << " samples, continuity "
            << report.continuity_pct << "%, success rate "
            << (report.commands ? report.commands->success_rate_pct : 0.0)
            << "%\n";
  return kExitOk;
}

std::vector<uint8_t> make_bench_frame(uint32_t seq, uint64_t send_time_ns) {
  fsw::PoseSample pose;
  pose.position = {1.0, 2.0, 3.0};
  auto frame = fsw::bridge::encode_frame(
      fsw::bridge::MsgType::PoseTelemetry, seq, send_time_ns,
      fsw::bridge::encode_pose_payload(pose));
  return std::move(frame.value());
}

void print_bench_stats(const std::vector<double>& rtts_ms, double offered_kbps,
                       double achieved_kbps) {
  std::vector<double> sorted = rtts_ms;
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double r : sorted) mean += r;
  mean /= static_cast<double>(sorted.size());
  using fsw::analyzer::percentile_nearest_rank;
  std::cout << "round trips: " << sorted.size() << "\n"
            << "  mean " << mean << " ms, min " << sorted.front() << " ms, max "
            << sorted.back() << " ms\n"
            << "  p95 " << percentile_nearest_rank(sorted, 95.0) << " ms, p99 "
            << percentile_nearest_rank(sorted, 99.0) << " ms\n"
            << "offered load: " << offered_kbps << " kbps\n"
            << "achieved: " << achieved_kbps << " kbps\n";
}

int run_bench(int frames, double rate_hz, const std::string& transport) {
  const size_t frame_bytes = make_bench_frame(0, 0).size();
  const double offered_kbps =
      static_cast<double>(frame_bytes) * 8.0 * rate_hz / 1000.0;
  std::vector<double> rtts_ms;
  rtts_ms.reserve(static_cast<size_t>(frames));

  if (transport == "sim") {
    // Virtual-time loopback: zero injected delay, 1 ms tick quantum.
    fsw::bridge::SimLink link({}, {}, 1);
    const uint64_t quantum_ns = 1'000'000;
    for (int i = 0; i < frames; ++i) {
      const uint64_t now = static_cast<uint64_t>(i + 1) * quantum_ns;
      link.a().send(make_bench_frame(static_cast<uint32_t>(i), now), now);
      for (const auto& datagram : link.b().poll(now)) {
        link.b().send(datagram, now);
      }
      for (const auto& datagram : link.a().poll(now)) {
        auto frame = fsw::bridge::decode_frame(datagram);
        if (!frame.ok()) continue;
        rtts_ms.push_back(
            static_cast<double>(now - frame.value().header.send_time_ns) * 1e-6);
      }
    }
    const double duration_s = static_cast<double>(frames) / rate_hz;
    const double achieved_kbps = static_cast<double>(frames * frame_bytes) *
                                 8.0 / duration_s / 1000.0;
    print_bench_stats(rtts_ms, offered_kbps, achieved_kbps);
    return kExitOk;
  }

  // UDP loopback ping-pong on 127.0.0.1.
  fsw::bridge::UdpEndpoint a(45701, 45702);
  fsw::bridge::UdpEndpoint b(45702, 45701);
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  int lost = 0;
  for (int i = 0; i < frames; ++i) {
    const auto sent_at = clock::now();
    a.send(make_bench_frame(static_cast<uint32_t>(i), 0), 0);
    bool echoed = false;
    while (clock::now() - sent_at < std::chrono::milliseconds(100)) {
      for (const auto& datagram : b.poll(0)) b.send(datagram, 0);
      const auto back = a.poll(0);
      if (!back.empty()) {
        rtts_ms.push_back(std::chrono::duration<double, std::milli>(
                              clock::now() - sent_at)
                              .count());
        echoed = true;
        break;
      }
    }
    if (!echoed) ++lost;
    if (rate_hz > 0.0) {
      std::this_thread::sleep_until(
          sent_at + std::chrono::duration<double>(1.0 / rate_hz));
    }
  }
  if (rtts_ms.empty()) {
    std::cerr << "bench: no echoes received\n";
    return kExitInternal;
  }
  const double duration_s =
      std::chrono::duration<double>(clock::now() - start).count();
  const double achieved_kbps =
      static_cast<double>(rtts_ms.size() * frame_bytes) * 8.0 / duration_s /
      1000.0;
  if (lost > 0) std::cout << "lost: " << lost << "\n";
  print_bench_stats(rtts_ms, offered_kbps, achieved_kbps);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid flight-software simulation and flight-log analysis"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand(
      "simulate", "Run a seeded mission and write its CSV logs");
  simulate->add_option("config", config_path, "Mission config JSON")
      ->required();

  std::string vision_path, mission_path, resource_path, bridge_path;
  std::string report_path = "report.json";
  auto* analyze =
      app.add_subcommand("analyze", "Analyze flight logs into a report");
  analyze->add_option("vision", vision_path, "vision_pose_log.csv")->required();
  analyze->add_option("--mission", mission_path, "mission_log.csv");
  analyze->add_option("--resource", resource_path, "resource_log.csv");
  analyze->add_option("--bridge", bridge_path, "bridge_stats.json");
  analyze->add_option("--report", report_path, "Report JSON output path");

  int frames = 1000;
  double rate_hz = 100.0;
  std::string transport = "sim";
  auto* bench =
      app.add_subcommand("bench", "Benchmark frame round trips over loopback");
  bench->add_option("--frames", frames, "Number of frames")
      ->check(CLI::PositiveNumber);
  bench->add_option("--rate", rate_hz, "Frame rate, Hz")
      ->check(CLI::PositiveNumber);
  bench->add_option("--transport", transport, "udp or sim")
      ->check(CLI::IsMember({"udp", "sim"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(config_path);
    if (analyze->parsed()) {
      return run_analyze(vision_path, mission_path, resource_path, bridge_path,
                         report_path);
    }
    return run_bench(frames, rate_hz, transport);
  } catch (const fsw::sim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const fsw::analyzer::LogError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
