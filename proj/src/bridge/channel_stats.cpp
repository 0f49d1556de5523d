#include "fsw/bridge/channel_stats.hpp"

namespace fsw::bridge {

void update_channel_stats(ChannelStats& stats, const BridgeFrame& frame,
                          uint64_t arrival_time_ns, int64_t& highest_seq_seen) {
  ++stats.received;
  const int64_t seq = static_cast<int64_t>(frame.header.seq);
  if (seq <= highest_seq_seen) {
    ++stats.stale_superseded;
    return;
  }
  highest_seq_seen = seq;
  const uint64_t age = arrival_time_ns >= frame.header.send_time_ns
                           ? arrival_time_ns - frame.header.send_time_ns
                           : 0;
  if (age > stats.staleness_threshold_ns) {
    ++stats.stale_aged;
  } else {
    ++stats.fresh;
  }
}

void ChannelTracker::on_frame(const BridgeFrame& frame,
                              uint64_t arrival_time_ns) {
  auto [it, inserted] = channels_.try_emplace(frame.header.msg_type);
  if (inserted) it->second.stats.staleness_threshold_ns = threshold_ns_;
  update_channel_stats(it->second.stats, frame, arrival_time_ns,
                       it->second.highest_seq);
}

const ChannelStats& ChannelTracker::channel(MsgType type) const {
  auto [it, inserted] = channels_.try_emplace(type);
  if (inserted) it->second.stats.staleness_threshold_ns = threshold_ns_;
  return it->second.stats;
}

ChannelStats ChannelTracker::aggregate() const {
  ChannelStats total;
  total.staleness_threshold_ns = threshold_ns_;
  for (const auto& [type, entry] : channels_) {
    total.received += entry.stats.received;
    total.fresh += entry.stats.fresh;
    total.stale_superseded += entry.stats.stale_superseded;
    total.stale_aged += entry.stats.stale_aged;
  }
  return total;
}

}  // namespace fsw::bridge
