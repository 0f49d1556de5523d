#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsw/autopilot/autopilot.hpp"
#include "fsw/core/types.hpp"

namespace fsw::analyzer {

using autopilot::MissionEntry;
using bridge::HealthLevel;

struct LogError : std::runtime_error {
  enum class Kind { MalformedRow, DuplicateTimestamp, EmptyLog };

  LogError(Kind k, size_t line_number, const std::string& detail);

  Kind kind;
  size_t line;  // 1-based CSV line, 0 when not row-specific
};

// Time-sorted pose stream, timestamps normalized to seconds since the
// stream's first sample. Ties are rejected at load.
struct VisionLog {
  std::vector<PoseSample> samples;
  double raw_start_s = 0.0;

  double duration_s() const {
    return samples.empty() ? 0.0 : samples.back().t;
  }
};

struct MissionLog {
  std::vector<MissionEntry> entries;  // non-decreasing normalized t
  double raw_start_s = 0.0;
};

struct ResourceLog {
  std::vector<ResourceSample> samples;
  double raw_start_s = 0.0;
};

// CSV schema: header `t,x,y,z,qx,qy,qz,qw`. Rows are sorted, normalized
// to mission-relative seconds, and each sample must pass validate_pose.
VisionLog load_vision_log(std::istream& in);
VisionLog load_vision_log_file(const std::string& path);

// CSV schema: header `t,mode,health,ack_cmd_id,ack_status`; the two ack
// fields are empty when the entry carries no acknowledgment.
MissionLog load_mission_log(std::istream& in);
MissionLog load_mission_log_file(const std::string& path);

// CSV schema: header `t,cpu_pct,mem_mb,bandwidth_kbps`.
ResourceLog load_resource_log(std::istream& in);
ResourceLog load_resource_log_file(const std::string& path);

// Initial timestamp offset between the streams (mission start minus
// vision start, raw clocks). Shifting mission timestamps by -offset puts
// both streams on the vision-relative timeline used for all joins.
double align_streams(const VisionLog& vision, const MissionLog& mission);

}  // namespace fsw::analyzer
