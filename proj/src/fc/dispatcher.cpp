#include "fsw/fc/dispatcher.hpp"

#include <vector>

namespace fsw::fc {

std::optional<DispatchError> CommandDispatcher::dispatch(const Command& cmd) {
  if (seen_.contains(cmd.id)) return DispatchError::DuplicateCommandId;
  if (static_cast<uint8_t>(cmd.opcode) > static_cast<uint8_t>(Opcode::Land)) {
    return DispatchError::UnknownOpcode;
  }
  if (cmd.args.size() != opcode_arity(cmd.opcode)) {
    return DispatchError::UnknownOpcode;
  }
  seen_.emplace(cmd.id, true);
  ++state_.sent;
  ++state_.pending;
  pending_deadline_.emplace(cmd.id, cmd.issued_at + ack_timeout_s_);
  if (forward_) forward_(cmd);
  return std::nullopt;
}

void CommandDispatcher::settle(const CommandAck& ack) {
  auto it = pending_deadline_.find(ack.command_id);
  if (it == pending_deadline_.end()) return;
  pending_deadline_.erase(it);
  --state_.pending;
  switch (ack.status) {
    case AckStatus::Success: ++state_.succeeded; break;
    case AckStatus::Rejected: ++state_.rejected; break;
    case AckStatus::Timeout: ++state_.timed_out; break;
  }
}

void CommandDispatcher::expire_deadlines(TimestampS virtual_now) {
  std::vector<uint32_t> expired;
  for (const auto& [id, deadline] : pending_deadline_) {
    if (virtual_now > deadline) expired.push_back(id);
  }
  for (uint32_t id : expired) {
    pending_deadline_.erase(id);
    --state_.pending;
    ++state_.timed_out;
  }
}

}  // namespace fsw::fc
