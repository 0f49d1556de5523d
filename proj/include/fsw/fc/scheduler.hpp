#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsw::fc {

struct NonMonotonicClock : std::runtime_error {
  NonMonotonicClock() : std::runtime_error("virtual clock did not advance") {}
};

struct RateGroupMember {
  std::string id;
  std::function<void(uint64_t /*virtual_now_ns*/)> run;
};

// Deterministic rate-group executor under virtual time. Groups run
// shortest-period first; within a group, members in declaration order.
// A group of period P runs exactly floor(T/P) times over T of virtual time.
class Scheduler {
 public:
  // Member order within a group is fixed at registration.
  void add_group(uint64_t period_ns, std::vector<RateGroupMember> members);

  // Advances virtual time to virtual_now_ns and runs every due period.
  // Throws NonMonotonicClock unless virtual_now_ns > previous tick.
  void tick(uint64_t virtual_now_ns);

  uint64_t runs(size_t group_index) const { return groups_[group_index].runs; }
  size_t group_count() const { return groups_.size(); }

 private:
  struct Group {
    uint64_t period_ns;
    uint64_t next_due_ns;
    uint64_t runs = 0;
    std::vector<RateGroupMember> members;
  };
  std::vector<Group> groups_;
  uint64_t last_tick_ns_ = 0;
  bool ticked_ = false;
};

}  // namespace fsw::fc
