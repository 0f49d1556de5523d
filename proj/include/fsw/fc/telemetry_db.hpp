#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "fsw/core/types.hpp"

namespace fsw::fc {

using TelemetryValue = std::variant<double, PoseSample>;

// Static-capacity latest-value store. The channel set is fixed at
// construction; writes to unregistered channels are rejected.
class TelemetryDb {
 public:
  explicit TelemetryDb(const std::vector<std::string>& channel_ids);

  struct Entry {
    TelemetryValue value;
    TimestampS updated_at = 0.0;
    bool written = false;
  };

  // Returns false for an unknown channel.
  bool record(const std::string& channel_id, TelemetryValue value,
              TimestampS t);

  std::optional<Entry> read(const std::string& channel_id) const;

  size_t channel_count() const { return channels_.size(); }

 private:
  std::map<std::string, Entry> channels_;
};

}  // namespace fsw::fc
