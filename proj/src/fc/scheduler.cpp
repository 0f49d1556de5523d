#include "fsw/fc/scheduler.hpp"

#include <algorithm>

namespace fsw::fc {

void Scheduler::add_group(uint64_t period_ns,
                          std::vector<RateGroupMember> members) {
  if (period_ns == 0) throw std::invalid_argument("rate group period must be > 0");
  Group g{period_ns, period_ns, 0, std::move(members)};
  auto pos = std::upper_bound(
      groups_.begin(), groups_.end(), g,
      [](const Group& x, const Group& y) { return x.period_ns < y.period_ns; });
  groups_.insert(pos, std::move(g));
}

void Scheduler::tick(uint64_t virtual_now_ns) {
  if (ticked_ && virtual_now_ns <= last_tick_ns_) throw NonMonotonicClock();
  ticked_ = true;
  last_tick_ns_ = virtual_now_ns;

  // Run due periods in time order; at equal instants the shorter period
  // goes first (groups_ is sorted by period, scan order breaks the tie).
  for (;;) {
    Group* due = nullptr;
    for (auto& g : groups_) {
      if (g.next_due_ns > virtual_now_ns) continue;
      if (due == nullptr || g.next_due_ns < due->next_due_ns) due = &g;
    }
    if (due == nullptr) break;
    const uint64_t instant = due->next_due_ns;
    for (auto& m : due->members) m.run(instant);
    ++due->runs;
    due->next_due_ns += due->period_ns;
  }
}

}  // namespace fsw::fc
