#pragma once

#include <map>
#include <string>
#include <vector>

#include "fsw/bridge/payloads.hpp"
#include "fsw/core/types.hpp"

namespace fsw::fc {

using bridge::HealthLevel;

struct HealthTransition {
  std::string component;
  HealthLevel from;
  HealthLevel to;
  TimestampS at;
};

// Ping-based liveness monitor. Healthy while now - last_ping <= timeout,
// Degraded while <= 2*timeout, Fault beyond that.
class HealthMonitor {
 public:
  // Timeout defaults to 3 scheduler periods of the monitored group.
  HealthMonitor(const std::vector<std::string>& components, double timeout_s);

  void ping(const std::string& component, TimestampS virtual_now);

  // Recomputes all statuses; returns the transitions this check produced.
  std::vector<HealthTransition> check(TimestampS virtual_now);

  HealthLevel status(const std::string& component) const;
  HealthLevel aggregate() const;  // worst status across components

 private:
  struct Entry {
    TimestampS last_ping = 0.0;
    HealthLevel status = HealthLevel::Healthy;
  };
  double timeout_s_;
  std::map<std::string, Entry> entries_;
};

}  // namespace fsw::fc
