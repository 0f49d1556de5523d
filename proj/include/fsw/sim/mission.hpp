#pragma once

#include <map>
#include <string>

#include "fsw/autopilot/autopilot.hpp"
#include "fsw/bridge/channel_stats.hpp"
#include "fsw/bridge/transport.hpp"
#include "fsw/fc/dispatcher.hpp"
#include "fsw/perception/trajectory.hpp"
#include "fsw/perception/vision_source.hpp"

namespace fsw::sim {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct MissionConfig {
  uint64_t seed = 0;
  double duration_s = 0.0;
  perception::VisionSourceConfig vision;
  std::vector<perception::TrajectorySegment> trajectory;
  std::vector<Command> command_script;  // issued_at = scheduled time
  std::vector<uint64_t> rate_group_periods_ms{10, 100};
  std::string output_dir;
};

// Parses the mission config JSON. The document must carry exactly the
// keys seed, duration_s, vision, trajectory, command_script, rate_groups,
// output_dir. Throws ConfigError on any violation.
MissionConfig parse_mission_config(const std::string& json_text);
MissionConfig load_mission_config_file(const std::string& path);

// Transport fault injection for the pose uplink, on top of the config.
struct LinkFaults {
  bridge::FaultProfile pose_uplink;
  bridge::FaultProfile command_link;
};

struct MissionResult {
  std::string vision_csv;
  std::string mission_csv;
  std::string resource_csv;
  fc::DispatcherState dispatcher;
  bridge::ChannelStats pose_channel;
  bridge::ChannelStats ack_channel;
  bridge::ChannelStats freshness;  // aggregate over all flight-core channels
  uint64_t vision_emitted = 0;
};

// Runs the whole mission under virtual time (1 ms quantum). Deterministic
// per (config, faults): identical inputs give byte-identical CSV text.
MissionResult run_mission(const MissionConfig& config,
                          const LinkFaults& faults = {});

// Writes vision_pose_log.csv, mission_log.csv, resource_log.csv and
// bridge_stats.json into output_dir (created if missing).
void write_mission_outputs(const MissionResult& result,
                           const std::string& output_dir);

std::string bridge_stats_to_json(const MissionResult& result);

}  // namespace fsw::sim
