#include "fsw/fc/telemetry_db.hpp"

namespace fsw::fc {

TelemetryDb::TelemetryDb(const std::vector<std::string>& channel_ids) {
  for (const auto& id : channel_ids) channels_.emplace(id, Entry{});
}

bool TelemetryDb::record(const std::string& channel_id, TelemetryValue value,
                         TimestampS t) {
  auto it = channels_.find(channel_id);
  if (it == channels_.end()) return false;
  it->second = Entry{std::move(value), t, true};
  return true;
}

std::optional<TelemetryDb::Entry> TelemetryDb::read(
    const std::string& channel_id) const {
  auto it = channels_.find(channel_id);
  if (it == channels_.end()) return std::nullopt;
  return it->second;
}

}  // namespace fsw::fc
