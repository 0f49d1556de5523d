#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "fsw/core/types.hpp"

namespace fsw::fc {

enum class DispatchError : uint8_t { DuplicateCommandId, UnknownOpcode };

struct DispatcherState {
  uint64_t sent = 0;
  uint64_t succeeded = 0;
  uint64_t rejected = 0;
  uint64_t timed_out = 0;
  uint64_t pending = 0;

  double success_rate_pct() const {
    return sent == 0 ? 0.0
                     : 100.0 * static_cast<double>(succeeded) /
                           static_cast<double>(sent);
  }
};

// Tracks command acknowledgment outcomes against a per-command deadline.
// Invariant after every event: sent == succeeded + rejected + timed_out + pending.
class CommandDispatcher {
 public:
  using ForwardFn = std::function<void(const Command&)>;

  // 2 s: far above observed round trips, below mission phase durations.
  static constexpr double kDefaultAckTimeoutS = 2.0;

  explicit CommandDispatcher(ForwardFn forward,
                             double ack_timeout_s = kDefaultAckTimeoutS)
      : forward_(std::move(forward)), ack_timeout_s_(ack_timeout_s) {}

  // Forwards the command and opens a pending entry. nullopt on success.
  std::optional<DispatchError> dispatch(const Command& cmd);

  // Settles the matching pending entry; acks for unknown or already
  // settled ids are ignored.
  void settle(const CommandAck& ack);

  // Marks every pending command whose deadline has passed as timed out.
  void expire_deadlines(TimestampS virtual_now);

  const DispatcherState& state() const { return state_; }

 private:
  ForwardFn forward_;
  double ack_timeout_s_;
  DispatcherState state_;
  std::map<uint32_t, TimestampS> pending_deadline_;
  std::map<uint32_t, bool> seen_;  // all ids ever dispatched
};

}  // namespace fsw::fc
