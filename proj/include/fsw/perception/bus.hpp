#pragma once

#include <any>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fsw::perception {

enum class Reliability { BestEffort, Reliable };

struct QosPolicy {
  Reliability reliability = Reliability::BestEffort;
  size_t depth = 1;  // queue capacity, >= 1
};

// Topic-based pub-sub bus. Publishing enqueues into each matching
// subscription's queue per its QoS: BestEffort drops the oldest on
// overflow; Reliable never drops (overflow waits in a backlog and moves
// into the queue as routing frees space). Callbacks must not publish
// re-entrantly during route(); they should enqueue for the next cycle.
class MessageBus {
 public:
  using Callback = std::function<void(const std::any&)>;

  class Subscription {
   public:
    Subscription(QosPolicy qos, Callback cb) : qos_(qos), cb_(std::move(cb)) {}

    uint64_t delivered() const { return delivered_; }
    uint64_t dropped() const { return dropped_; }

   private:
    friend class MessageBus;
    QosPolicy qos_;
    Callback cb_;
    std::deque<std::any> queue_;
    std::deque<std::any> backlog_;  // Reliable overflow, in publish order
    uint64_t delivered_ = 0;
    uint64_t dropped_ = 0;
  };

  using SubscriptionHandle = std::shared_ptr<Subscription>;

  SubscriptionHandle subscribe(const std::string& topic, QosPolicy qos,
                               Callback cb);

  // A message on a topic with no subscribers is discarded.
  void publish(const std::string& topic, std::any message);

  // Delivers every queued message to its subscriber, then refills from
  // Reliable backlogs. Returns the number of deliveries made.
  size_t route();

 private:
  std::map<std::string, std::vector<SubscriptionHandle>> topics_;
};

}  // namespace fsw::perception
