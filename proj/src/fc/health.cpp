#include "fsw/fc/health.hpp"

#include <stdexcept>

namespace fsw::fc {

HealthMonitor::HealthMonitor(const std::vector<std::string>& components,
                             double timeout_s)
    : timeout_s_(timeout_s) {
  for (const auto& c : components) entries_.emplace(c, Entry{});
}

void HealthMonitor::ping(const std::string& component, TimestampS virtual_now) {
  auto it = entries_.find(component);
  if (it == entries_.end()) return;
  it->second.last_ping = virtual_now;
}

std::vector<HealthTransition> HealthMonitor::check(TimestampS virtual_now) {
  std::vector<HealthTransition> transitions;
  for (auto& [component, entry] : entries_) {
    const double silence = virtual_now - entry.last_ping;
    HealthLevel next = HealthLevel::Fault;
    if (silence <= timeout_s_) {
      next = HealthLevel::Healthy;
    } else if (silence <= 2.0 * timeout_s_) {
      next = HealthLevel::Degraded;
    }
    if (next != entry.status) {
      transitions.push_back({component, entry.status, next, virtual_now});
      entry.status = next;
    }
  }
  return transitions;
}

HealthLevel HealthMonitor::status(const std::string& component) const {
  auto it = entries_.find(component);
  if (it == entries_.end()) throw std::out_of_range("unknown component: " + component);
  return it->second.status;
}

HealthLevel HealthMonitor::aggregate() const {
  HealthLevel worst = HealthLevel::Healthy;
  for (const auto& [component, entry] : entries_) {
    if (static_cast<uint8_t>(entry.status) > static_cast<uint8_t>(worst)) {
      worst = entry.status;
    }
  }
  return worst;
}

}  // namespace fsw::fc
