#include "fsw/perception/bus.hpp"

namespace fsw::perception {

MessageBus::SubscriptionHandle MessageBus::subscribe(const std::string& topic,
                                                     QosPolicy qos,
                                                     Callback cb) {
  if (qos.depth < 1) qos.depth = 1;
  auto sub = std::make_shared<Subscription>(qos, std::move(cb));
  topics_[topic].push_back(sub);
  return sub;
}

void MessageBus::publish(const std::string& topic, std::any message) {
  auto it = topics_.find(topic);
  if (it == topics_.end()) return;
  for (auto& sub : it->second) {
    if (sub->queue_.size() < sub->qos_.depth) {
      sub->queue_.push_back(message);
    } else if (sub->qos_.reliability == Reliability::BestEffort) {
      sub->queue_.pop_front();
      ++sub->dropped_;
      sub->queue_.push_back(message);
    } else {
      sub->backlog_.push_back(message);
    }
  }
}

size_t MessageBus::route() {
  size_t deliveries = 0;
  for (auto& [topic, subs] : topics_) {
    for (auto& sub : subs) {
      while (!sub->queue_.empty()) {
        std::any msg = std::move(sub->queue_.front());
        sub->queue_.pop_front();
        ++sub->delivered_;
        ++deliveries;
        if (sub->cb_) sub->cb_(msg);
      }
      while (!sub->backlog_.empty() && sub->queue_.size() < sub->qos_.depth) {
        sub->queue_.push_back(std::move(sub->backlog_.front()));
        sub->backlog_.pop_front();
      }
    }
  }
  return deliveries;
}

}  // namespace fsw::perception
