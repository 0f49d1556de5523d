#include "fsw/sim/mission.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "fsw/bridge/payloads.hpp"
#include "fsw/fc/health.hpp"
#include "fsw/fc/scheduler.hpp"
#include "fsw/fc/telemetry_db.hpp"
#include "fsw/perception/bus.hpp"

namespace fsw::sim {

namespace {

using nlohmann::json;

constexpr uint64_t kQuantumNs = 1'000'000;  // 1 ms virtual tick

void require_keys(const json& obj, const std::set<std::string>& keys,
                  const std::string& where) {
  for (const auto& k : keys) {
    if (!obj.contains(k)) {
      throw ConfigError(where + ": missing key \"" + k + "\"");
    }
  }
  for (const auto& [k, v] : obj.items()) {
    if (!keys.contains(k)) {
      throw ConfigError(where + ": unexpected key \"" + k + "\"");
    }
  }
}

perception::TrajectorySegment parse_segment(const json& j, size_t index) {
  const std::string where = "trajectory[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(where + ": expected object");

  perception::TrajectorySegment seg;
  const std::string kind = j.value("kind", "");
  if (kind == "hover") {
    seg.kind = perception::SegmentKind::Hover;
  } else if (kind == "linear_to") {
    seg.kind = perception::SegmentKind::LinearTo;
  } else if (kind == "orbit_about") {
    seg.kind = perception::SegmentKind::OrbitAbout;
  } else {
    throw ConfigError(where + ": unknown kind \"" + kind + "\"");
  }
  try {
    seg.start_s = j.at("start_s").get<double>();
    seg.end_s = j.at("end_s").get<double>();
    const auto target = j.at("target").get<std::vector<double>>();
    if (target.size() != 3) throw ConfigError(where + ": target needs 3 values");
    seg.target = {target[0], target[1], target[2]};
    seg.yaw_deg = j.value("yaw_deg", 0.0);
    seg.angular_rate_deg_s = j.value("angular_rate_deg_s", 0.0);
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return seg;
}

Command parse_scripted_command(const json& j, size_t index) {
  const std::string where = "command_script[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(where + ": expected object");
  Command cmd;
  try {
    cmd.issued_at = j.at("t_s").get<double>();
    cmd.id = j.at("id").get<uint32_t>();
    const auto op = parse_opcode(j.at("opcode").get<std::string>());
    if (!op) throw ConfigError(where + ": unknown opcode");
    cmd.opcode = *op;
    cmd.args = j.value("args", std::vector<double>{});
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (cmd.args.size() != opcode_arity(cmd.opcode)) {
    throw ConfigError(where + ": wrong argument count for opcode");
  }
  return cmd;
}

// CSV row formatting: timestamps at 9 significant digits, plain decimal
// floats. Fixed formats keep two identical runs byte-identical.
void append_vision_row(std::string& out, const PoseSample& s) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%.9g,%.6f,%.6f,%.6f,%.9f,%.9f,%.9f,%.9f\n", s.t,
                s.position[0], s.position[1], s.position[2], s.orientation.x,
                s.orientation.y, s.orientation.z, s.orientation.w);
  out += buf;
}

void append_mission_row(std::string& out, const autopilot::MissionEntry& e) {
  char buf[128];
  if (e.last_ack) {
    std::snprintf(buf, sizeof(buf), "%.9g,%s,%s,%u,%s\n", e.t,
                  std::string(format_mode(e.mode)).c_str(),
                  std::string(bridge::format_health(e.health)).c_str(),
                  e.last_ack->first,
                  std::string(format_ack_status(e.last_ack->second)).c_str());
  } else {
    std::snprintf(buf, sizeof(buf), "%.9g,%s,%s,,\n", e.t,
                  std::string(format_mode(e.mode)).c_str(),
                  std::string(bridge::format_health(e.health)).c_str());
  }
  out += buf;
}

void append_resource_row(std::string& out, const ResourceSample& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.9g,%.4f,%.2f,%.4f\n", r.t, r.cpu_pct,
                r.mem_mb, r.bandwidth_kbps);
  out += buf;
}

std::vector<uint8_t> frame_or_throw(bridge::MsgType type, uint32_t seq,
                                    uint64_t send_time_ns,
                                    std::span<const uint8_t> payload) {
  auto encoded = bridge::encode_frame(type, seq, send_time_ns, payload);
  if (!encoded.ok()) throw std::logic_error("frame payload too large");
  return std::move(encoded.value());
}

}  // namespace

MissionConfig parse_mission_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  require_keys(doc,
               {"seed", "duration_s", "vision", "trajectory", "command_script",
                "rate_groups", "output_dir"},
               "config");

  MissionConfig cfg;
  try {
    cfg.seed = doc.at("seed").get<uint64_t>();
    cfg.duration_s = doc.at("duration_s").get<double>();
    cfg.output_dir = doc.at("output_dir").get<std::string>();
    cfg.rate_group_periods_ms =
        doc.at("rate_groups").get<std::vector<uint64_t>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.duration_s <= 0.0) throw ConfigError("duration_s must be > 0");
  if (cfg.rate_group_periods_ms.empty()) {
    throw ConfigError("rate_groups must list at least one period");
  }
  for (uint64_t p : cfg.rate_group_periods_ms) {
    if (p == 0) throw ConfigError("rate group period must be > 0 ms");
  }

  const json& vision = doc.at("vision");
  if (!vision.is_object()) throw ConfigError("vision must be an object");
  for (const auto& [k, v] : vision.items()) {
    if (k != "nominal_rate_hz" && k != "jitter_std_ms" && k != "drop_prob" &&
        k != "gap_schedule" && k != "seed") {
      throw ConfigError("vision: unexpected key \"" + k + "\"");
    }
  }
  cfg.vision.nominal_rate_hz = vision.value("nominal_rate_hz", 100.0);
  cfg.vision.jitter_std_ms = vision.value("jitter_std_ms", 0.0);
  cfg.vision.drop_prob = vision.value("drop_prob", 0.0);
  cfg.vision.seed = vision.value("seed", cfg.seed ^ 0xA5A5A5A5ull);
  if (cfg.vision.nominal_rate_hz <= 0.0) {
    throw ConfigError("vision.nominal_rate_hz must be > 0");
  }
  if (cfg.vision.drop_prob < 0.0 || cfg.vision.drop_prob >= 1.0) {
    throw ConfigError("vision.drop_prob must be in [0, 1)");
  }
  if (vision.contains("gap_schedule")) {
    for (const auto& g : vision.at("gap_schedule")) {
      if (!g.is_array() || g.size() != 2) {
        throw ConfigError("vision.gap_schedule entries must be [start_s, duration_s]");
      }
      cfg.vision.gap_schedule.push_back(
          {g[0].get<double>(), g[1].get<double>()});
    }
    for (size_t i = 0; i < cfg.vision.gap_schedule.size(); ++i) {
      const auto& g = cfg.vision.gap_schedule[i];
      if (g.duration_s <= 0.0) {
        throw ConfigError("vision.gap_schedule durations must be > 0");
      }
      if (i > 0 && g.start_s < cfg.vision.gap_schedule[i - 1].end_s()) {
        throw ConfigError("vision.gap_schedule must be sorted and non-overlapping");
      }
    }
  }

  const json& traj = doc.at("trajectory");
  if (!traj.is_array() || traj.empty()) {
    throw ConfigError("trajectory must be a non-empty array of segments");
  }
  for (size_t i = 0; i < traj.size(); ++i) {
    cfg.trajectory.push_back(parse_segment(traj[i], i));
  }

  const json& script = doc.at("command_script");
  if (!script.is_array()) throw ConfigError("command_script must be an array");
  std::set<uint32_t> ids;
  for (size_t i = 0; i < script.size(); ++i) {
    Command cmd = parse_scripted_command(script[i], i);
    if (cmd.issued_at < 0.0 || cmd.issued_at > cfg.duration_s) {
      throw ConfigError("command_script times must lie within duration_s");
    }
    if (!ids.insert(cmd.id).second) {
      throw ConfigError("command_script ids must be unique");
    }
    cfg.command_script.push_back(std::move(cmd));
  }
  return cfg;
}

MissionConfig load_mission_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_mission_config(text);
}

MissionResult run_mission(const MissionConfig& config,
                          const LinkFaults& faults) {
  auto trajectory = perception::Trajectory::make(config.trajectory);
  if (!trajectory.ok()) throw ConfigError("trajectory segments are not contiguous");

  MissionResult result;
  result.vision_csv = "t,x,y,z,qx,qy,qz,qw\n";
  result.mission_csv = "t,mode,health,ack_cmd_id,ack_status\n";
  result.resource_csv = "t,cpu_pct,mem_mb,bandwidth_kbps\n";

  perception::VisionSource source(config.vision, trajectory.value());
  perception::MessageBus bus;

  // Perception -> flight core pose uplink; flight core <-> autopilot link.
  bridge::SimLink pose_link(faults.pose_uplink, {}, config.seed ^ 0x1111);
  bridge::SimLink ap_link(faults.command_link, faults.command_link,
                          config.seed ^ 0x2222);
  bridge::Endpoint& perception_tx = pose_link.a();
  bridge::Endpoint& fc_pose_rx = pose_link.b();
  bridge::Endpoint& fc_ap = ap_link.a();
  bridge::Endpoint& ap_fc = ap_link.b();

  uint64_t now_ns = 0;
  std::map<bridge::MsgType, uint32_t> tx_seq;  // per-channel, from 0
  auto send = [&](bridge::Endpoint& ep, bridge::MsgType type,
                  uint64_t send_time_ns, std::span<const uint8_t> payload) {
    ep.send(frame_or_throw(type, tx_seq[type]++, send_time_ns, payload),
            now_ns);
  };

  // Pose uplink: bus subscriber encodes and transmits each routed sample.
  auto uplink = bus.subscribe(
      "vision/pose", {perception::Reliability::BestEffort, 16},
      [&](const std::any& msg) {
        const auto& pose = std::any_cast<const PoseSample&>(msg);
        send(perception_tx, bridge::MsgType::PoseTelemetry,
             static_cast<uint64_t>(pose.t * 1e9),
             bridge::encode_pose_payload(pose));
      });
  (void)uplink;

  autopilot::AutopilotSim autopilot;
  bridge::ChannelTracker fc_channels;
  bridge::ChannelTracker ap_channels;
  fc::TelemetryDb telemetry(
      {"vision.pose", "ap.state", "res.cpu_pct", "res.mem_mb", "res.bw_kbps"});
  fc::CommandDispatcher dispatcher([&](const Command& cmd) {
    send(fc_ap, bridge::MsgType::Command,
         static_cast<uint64_t>(cmd.issued_at * 1e9),
         bridge::encode_command_payload(cmd));
  });

  const uint64_t fast_period_ms = config.rate_group_periods_ms.front();
  const double health_timeout_s =
      3.0 * static_cast<double>(fast_period_ms) * 1e-3;
  fc::HealthMonitor health({"vision", "autopilot"}, health_timeout_s);

  size_t next_command = 0;
  std::mt19937_64 resource_rng(config.seed ^ 0x3333);
  double last_resource_s = -1.0;

  auto fc_comm = [&](uint64_t instant_ns) {
    const double instant_s = static_cast<double>(instant_ns) * 1e-9;
    for (const auto& datagram : fc_pose_rx.poll(instant_ns)) {
      auto decoded = bridge::decode_frame(datagram);
      if (!decoded.ok()) continue;
      const auto& frame = decoded.value();
      fc_channels.on_frame(frame, instant_ns);
      if (frame.header.msg_type == bridge::MsgType::PoseTelemetry) {
        if (auto pose = bridge::decode_pose_payload(frame.payload,
                                                    frame.header.send_time_ns)) {
          telemetry.record("vision.pose", *pose, instant_s);
          health.ping("vision", instant_s);
        }
      }
    }
    for (const auto& datagram : fc_ap.poll(instant_ns)) {
      auto decoded = bridge::decode_frame(datagram);
      if (!decoded.ok()) continue;
      const auto& frame = decoded.value();
      fc_channels.on_frame(frame, instant_ns);
      switch (frame.header.msg_type) {
        case bridge::MsgType::CommandAck:
          if (auto ack = bridge::decode_ack_payload(frame.payload)) {
            dispatcher.settle(*ack);
            health.ping("autopilot", instant_s);
            bus.publish("fc/ack", *ack);
          }
          break;
        case bridge::MsgType::FlightState:
          if (auto fs = bridge::decode_flight_state_payload(frame.payload)) {
            telemetry.record("ap.state", autopilot::mode_to_code(fs->mode),
                             instant_s);
            health.ping("autopilot", instant_s);
            bus.publish("fc/state", *fs);
          }
          break;
        default:
          break;
      }
    }
  };

  auto fc_dispatch = [&](uint64_t instant_ns) {
    const double instant_s = static_cast<double>(instant_ns) * 1e-9;
    while (next_command < config.command_script.size() &&
           config.command_script[next_command].issued_at <= instant_s) {
      Command cmd = config.command_script[next_command++];
      cmd.issued_at = instant_s;
      dispatcher.dispatch(cmd);
    }
    dispatcher.expire_deadlines(instant_s);
  };

  auto fc_health = [&](uint64_t instant_ns) {
    const double instant_s = static_cast<double>(instant_ns) * 1e-9;
    health.check(instant_s);
    send(fc_ap, bridge::MsgType::Health, instant_ns,
         bridge::encode_health_payload(health.aggregate()));

    if (instant_s - last_resource_s >= 1.0) {
      last_resource_s = instant_s;
      std::normal_distribution<double> cpu_noise(0.0, 0.8);
      std::normal_distribution<double> mem_noise(0.0, 20.0);
      std::normal_distribution<double> bw_noise(0.0, 4.0);
      ResourceSample r;
      r.t = instant_s;
      r.cpu_pct = std::clamp(15.19 + cpu_noise(resource_rng), 0.0, 100.0);
      r.mem_mb = std::max(0.0, 1244.0 + mem_noise(resource_rng));
      r.bandwidth_kbps = std::max(0.0, 33.82 + bw_noise(resource_rng));
      telemetry.record("res.cpu_pct", r.cpu_pct, instant_s);
      telemetry.record("res.mem_mb", r.mem_mb, instant_s);
      telemetry.record("res.bw_kbps", r.bandwidth_kbps, instant_s);
      append_resource_row(result.resource_csv, r);
    }
  };

  fc::Scheduler scheduler;
  {
    std::vector<fc::RateGroupMember> fast{{"comm", fc_comm},
                                          {"dispatch", fc_dispatch}};
    std::vector<fc::RateGroupMember> slow{{"health", fc_health}};
    if (config.rate_group_periods_ms.size() == 1) {
      fast.push_back(slow.front());
      scheduler.add_group(fast_period_ms * 1'000'000, std::move(fast));
    } else {
      scheduler.add_group(fast_period_ms * 1'000'000, std::move(fast));
      scheduler.add_group(config.rate_group_periods_ms.back() * 1'000'000,
                          std::move(slow));
      // Intermediate periods run empty groups: period fidelity without
      // extra members.
      for (size_t i = 1; i + 1 < config.rate_group_periods_ms.size(); ++i) {
        scheduler.add_group(config.rate_group_periods_ms[i] * 1'000'000, {});
      }
    }
  }

  const uint64_t total_ticks =
      static_cast<uint64_t>(config.duration_s * 1000.0);
  uint64_t next_state_tx_ms = 0;

  for (uint64_t tick = 1; tick <= total_ticks; ++tick) {
    now_ns = tick * kQuantumNs;
    const double now_s = static_cast<double>(now_ns) * 1e-9;

    for (const auto& sample : source.step(now_s)) {
      append_vision_row(result.vision_csv, sample);
      bus.publish("vision/pose", sample);
    }
    bus.route();

    // Autopilot endpoint: commands in, acks/state out.
    for (const auto& datagram : ap_fc.poll(now_ns)) {
      auto decoded = bridge::decode_frame(datagram);
      if (!decoded.ok()) continue;
      const auto& frame = decoded.value();
      ap_channels.on_frame(frame, now_ns);
      if (frame.header.msg_type == bridge::MsgType::Command) {
        if (auto cmd = bridge::decode_command_payload(frame.payload)) {
          const CommandAck ack = autopilot.on_command(*cmd, now_s);
          send(ap_fc, bridge::MsgType::CommandAck, now_ns,
               bridge::encode_ack_payload(ack));
        }
      } else if (frame.header.msg_type == bridge::MsgType::Health) {
        if (auto level = bridge::decode_health_payload(frame.payload)) {
          autopilot.set_health(*level);
        }
      }
    }
    autopilot.step(now_s);
    if (tick >= next_state_tx_ms) {
      bridge::FlightStatePayload fs{autopilot.state().mode,
                                    autopilot.state().armed,
                                    autopilot.state().position,
                                    autopilot.state().yaw_deg};
      send(ap_fc, bridge::MsgType::FlightState, now_ns,
           bridge::encode_flight_state_payload(fs));
      next_state_tx_ms = tick + 100;  // 10 Hz
    }

    scheduler.tick(now_ns);
  }

  for (const auto& entry : autopilot.log()) {
    append_mission_row(result.mission_csv, entry);
  }

  result.dispatcher = dispatcher.state();
  result.pose_channel = fc_channels.channel(bridge::MsgType::PoseTelemetry);
  result.ack_channel = fc_channels.channel(bridge::MsgType::CommandAck);
  result.freshness = fc_channels.aggregate();
  result.vision_emitted = source.emitted();
  return result;
}

std::string bridge_stats_to_json(const MissionResult& result) {
  nlohmann::ordered_json j;
  auto channel = [](const bridge::ChannelStats& s) {
    nlohmann::ordered_json c;
    c["received"] = s.received;
    c["fresh"] = s.fresh;
    c["stale_superseded"] = s.stale_superseded;
    c["stale_aged"] = s.stale_aged;
    c["freshness_pct"] = s.freshness_pct();
    return c;
  };
  j["freshness_pct"] = result.freshness.freshness_pct();
  j["aggregate"] = channel(result.freshness);
  j["pose_telemetry"] = channel(result.pose_channel);
  j["command_ack"] = channel(result.ack_channel);
  nlohmann::ordered_json cmd;
  cmd["sent"] = result.dispatcher.sent;
  cmd["succeeded"] = result.dispatcher.succeeded;
  cmd["rejected"] = result.dispatcher.rejected;
  cmd["timed_out"] = result.dispatcher.timed_out;
  cmd["pending"] = result.dispatcher.pending;
  cmd["success_rate_pct"] = result.dispatcher.success_rate_pct();
  j["commands"] = cmd;
  return j.dump(2) + "\n";
}

void write_mission_outputs(const MissionResult& result,
                           const std::string& output_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(output_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(fs::path(output_dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + name);
    out << content;
  };
  write("vision_pose_log.csv", result.vision_csv);
  write("mission_log.csv", result.mission_csv);
  write("resource_log.csv", result.resource_csv);
  write("bridge_stats.json", bridge_stats_to_json(result));
}

}  // namespace fsw::sim
