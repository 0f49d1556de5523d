#pragma once

#include <cstdint>
#include <map>

#include "fsw/bridge/frame.hpp"

namespace fsw::bridge {

// Default staleness threshold. Far above nominal bridge-hop ages, so only
// genuinely delayed frames are classified as aged.
inline constexpr uint64_t kDefaultStalenessNs = 500'000'000;

// Per-channel freshness accounting. A frame is stale if its seq was
// superseded by a newer delivery, or if its age at arrival exceeds the
// threshold. Invariant: received == fresh + stale_superseded + stale_aged.
struct ChannelStats {
  uint64_t received = 0;
  uint64_t fresh = 0;
  uint64_t stale_superseded = 0;
  uint64_t stale_aged = 0;
  uint64_t staleness_threshold_ns = kDefaultStalenessNs;

  double freshness_pct() const {
    return received == 0 ? 100.0 : 100.0 * static_cast<double>(fresh) /
                                       static_cast<double>(received);
  }
};

// Classifies one delivered frame (frame must already have passed CRC).
void update_channel_stats(ChannelStats& stats, const BridgeFrame& frame,
                          uint64_t arrival_time_ns, int64_t& highest_seq_seen);

// Tracks one ChannelStats per msg_type; seq monotonicity is per channel.
class ChannelTracker {
 public:
  explicit ChannelTracker(uint64_t staleness_threshold_ns = kDefaultStalenessNs)
      : threshold_ns_(staleness_threshold_ns) {}

  void on_frame(const BridgeFrame& frame, uint64_t arrival_time_ns);

  const ChannelStats& channel(MsgType type) const;
  ChannelStats aggregate() const;

 private:
  struct Entry {
    ChannelStats stats;
    int64_t highest_seq = -1;
  };
  uint64_t threshold_ns_;
  mutable std::map<MsgType, Entry> channels_;
};

}  // namespace fsw::bridge
