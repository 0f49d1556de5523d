#include "fsw/analyzer/logs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fsw::analyzer {

namespace {

const char* kind_name(LogError::Kind k) {
  switch (k) {
    case LogError::Kind::MalformedRow: return "malformed row";
    case LogError::Kind::DuplicateTimestamp: return "duplicate timestamp";
    case LogError::Kind::EmptyLog: return "empty log";
  }
  return "log error";
}

std::string describe(LogError::Kind k, size_t line, const std::string& detail) {
  std::ostringstream os;
  os << kind_name(k);
  if (line > 0) os << " at line " << line;
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

// Reads data rows, skipping a leading header (any first line whose first
// field is not numeric). Returns (line_number, fields) pairs.
std::vector<std::pair<size_t, std::vector<std::string>>> read_rows(
    std::istream& in) {
  std::vector<std::pair<size_t, std::vector<std::string>>> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    double ignored;
    if (line_no == 1 && !parse_double(fields[0], ignored)) continue;  // header
    rows.emplace_back(line_no, std::move(fields));
  }
  return rows;
}

template <typename Loader>
auto load_file(const std::string& path, Loader loader) {
  std::ifstream in(path);
  if (!in) {
    throw LogError(LogError::Kind::EmptyLog, 0, "cannot open " + path);
  }
  return loader(in);
}

}  // namespace

LogError::LogError(Kind k, size_t line_number, const std::string& detail)
    : std::runtime_error(describe(k, line_number, detail)),
      kind(k),
      line(line_number) {}

VisionLog load_vision_log(std::istream& in) {
  auto rows = read_rows(in);
  if (rows.empty()) throw LogError(LogError::Kind::EmptyLog, 0, "no data rows");

  struct Row {
    size_t line;
    PoseSample sample;
  };
  std::vector<Row> parsed;
  parsed.reserve(rows.size());
  for (const auto& [line_no, fields] : rows) {
    if (fields.size() != 8) {
      throw LogError(LogError::Kind::MalformedRow, line_no,
                     "expected 8 fields, got " + std::to_string(fields.size()));
    }
    double v[8];
    for (int i = 0; i < 8; ++i) {
      if (!parse_double(fields[i], v[i])) {
        throw LogError(LogError::Kind::MalformedRow, line_no,
                       "field '" + fields[i] + "' is not a number");
      }
    }
    PoseSample s{v[0], {v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
    if (auto err = validate_pose(s)) {
      throw LogError(LogError::Kind::MalformedRow, line_no,
                     *err == PoseError::NonFinite ? "non-finite field"
                                                  : "non-unit quaternion");
    }
    parsed.push_back({line_no, s});
  }

  std::stable_sort(parsed.begin(), parsed.end(), [](const Row& x, const Row& y) {
    return x.sample.t < y.sample.t;
  });
  for (size_t i = 1; i < parsed.size(); ++i) {
    if (parsed[i].sample.t == parsed[i - 1].sample.t) {
      throw LogError(LogError::Kind::DuplicateTimestamp, parsed[i].line,
                     "t = " + std::to_string(parsed[i].sample.t));
    }
  }

  VisionLog log;
  log.raw_start_s = parsed.front().sample.t;
  log.samples.reserve(parsed.size());
  for (auto& r : parsed) {
    r.sample.t -= log.raw_start_s;
    log.samples.push_back(r.sample);
  }
  return log;
}

MissionLog load_mission_log(std::istream& in) {
  auto rows = read_rows(in);
  if (rows.empty()) throw LogError(LogError::Kind::EmptyLog, 0, "no data rows");

  MissionLog log;
  log.entries.reserve(rows.size());
  for (const auto& [line_no, fields] : rows) {
    if (fields.size() != 5) {
      throw LogError(LogError::Kind::MalformedRow, line_no,
                     "expected 5 fields, got " + std::to_string(fields.size()));
    }
    MissionEntry e;
    if (!parse_double(fields[0], e.t) || !std::isfinite(e.t)) {
      throw LogError(LogError::Kind::MalformedRow, line_no, "bad timestamp");
    }
    const auto mode = parse_mode(fields[1]);
    if (!mode) {
      throw LogError(LogError::Kind::MalformedRow, line_no,
                     "unknown mode '" + fields[1] + "'");
    }
    e.mode = *mode;
    const auto health = bridge::parse_health(fields[2]);
    if (!health) {
      throw LogError(LogError::Kind::MalformedRow, line_no,
                     "unknown health '" + fields[2] + "'");
    }
    e.health = *health;
    const bool has_id = !fields[3].empty();
    const bool has_status = !fields[4].empty();
    if (has_id != has_status) {
      throw LogError(LogError::Kind::MalformedRow, line_no,
                     "ack id/status must be both present or both empty");
    }
    if (has_id) {
      double id;
      const auto status = parse_ack_status(fields[4]);
      if (!parse_double(fields[3], id) || id < 0 || !status) {
        throw LogError(LogError::Kind::MalformedRow, line_no, "bad ack fields");
      }
      e.last_ack = std::make_pair(static_cast<uint32_t>(id), *status);
    }
    log.entries.push_back(e);
  }

  std::stable_sort(log.entries.begin(), log.entries.end(),
                   [](const MissionEntry& x, const MissionEntry& y) {
                     return x.t < y.t;
                   });
  log.raw_start_s = log.entries.front().t;
  for (auto& e : log.entries) e.t -= log.raw_start_s;
  return log;
}

ResourceLog load_resource_log(std::istream& in) {
  auto rows = read_rows(in);
  if (rows.empty()) throw LogError(LogError::Kind::EmptyLog, 0, "no data rows");

  ResourceLog log;
  log.samples.reserve(rows.size());
  for (const auto& [line_no, fields] : rows) {
    if (fields.size() != 4) {
      throw LogError(LogError::Kind::MalformedRow, line_no,
                     "expected 4 fields, got " + std::to_string(fields.size()));
    }
    double v[4];
    for (int i = 0; i < 4; ++i) {
      if (!parse_double(fields[i], v[i]) || !std::isfinite(v[i])) {
        throw LogError(LogError::Kind::MalformedRow, line_no, "bad number");
      }
    }
    if (v[1] < 0.0 || v[1] > 100.0 || v[2] < 0.0 || v[3] < 0.0) {
      throw LogError(LogError::Kind::MalformedRow, line_no, "value out of range");
    }
    log.samples.push_back(ResourceSample{v[0], v[1], v[2], v[3]});
  }

  std::stable_sort(log.samples.begin(), log.samples.end(),
                   [](const ResourceSample& x, const ResourceSample& y) {
                     return x.t < y.t;
                   });
  log.raw_start_s = log.samples.front().t;
  for (auto& s : log.samples) s.t -= log.raw_start_s;
  return log;
}

VisionLog load_vision_log_file(const std::string& path) {
  return load_file(path, [](std::istream& in) { return load_vision_log(in); });
}

MissionLog load_mission_log_file(const std::string& path) {
  return load_file(path, [](std::istream& in) { return load_mission_log(in); });
}

ResourceLog load_resource_log_file(const std::string& path) {
  return load_file(path, [](std::istream& in) { return load_resource_log(in); });
}

double align_streams(const VisionLog& vision, const MissionLog& mission) {
  if (vision.samples.empty() || mission.entries.empty()) {
    throw LogError(LogError::Kind::EmptyLog, 0, "cannot align empty streams");
  }
  return mission.raw_start_s - vision.raw_start_s;
}

}  // namespace fsw::analyzer
