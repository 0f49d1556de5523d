#include "fsw/bridge/transport.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace fsw::bridge {

class SimLink::Side : public Endpoint {
 public:
  Side(Direction& out, Direction& in) : out_(out), in_(in) {}

  void send(const Datagram& datagram, uint64_t now_ns) override {
    out_.enqueue(datagram, now_ns);
  }

  std::vector<Datagram> poll(uint64_t now_ns) override {
    return in_.drain(now_ns);
  }

 private:
  Direction& out_;
  Direction& in_;
};

void SimLink::Direction::enqueue(const Datagram& datagram, uint64_t now_ns) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  if (faults.drop_prob > 0.0 && uniform(rng) < faults.drop_prob) return;
  uint64_t deliver_at = now_ns + faults.delay_ns;
  if (faults.reorder_prob > 0.0 && uniform(rng) < faults.reorder_prob) {
    deliver_at += faults.reorder_delay_ns;
  }
  queue.push_back(Pending{deliver_at, next_order++, datagram});
}

std::vector<Datagram> SimLink::Direction::drain(uint64_t now_ns) {
  std::vector<Pending> due;
  for (auto it = queue.begin(); it != queue.end();) {
    if (it->deliver_at_ns <= now_ns) {
      due.push_back(std::move(*it));
      it = queue.erase(it);
    } else {
      ++it;
    }
  }
  std::stable_sort(due.begin(), due.end(), [](const auto& x, const auto& y) {
    return x.deliver_at_ns != y.deliver_at_ns ? x.deliver_at_ns < y.deliver_at_ns
                                              : x.order < y.order;
  });
  std::vector<Datagram> out;
  out.reserve(due.size());
  for (auto& p : due) out.push_back(std::move(p.bytes));
  return out;
}

SimLink::SimLink(FaultProfile a_to_b, FaultProfile b_to_a, uint64_t seed) {
  a_to_b_.faults = a_to_b;
  a_to_b_.rng.seed(seed);
  b_to_a_.faults = b_to_a;
  b_to_a_.rng.seed(seed ^ 0x9E3779B97F4A7C15ull);
  a_ = std::make_unique<Side>(a_to_b_, b_to_a_);
  b_ = std::make_unique<Side>(b_to_a_, a_to_b_);
}

SimLink::~SimLink() = default;

Endpoint& SimLink::a() { return *a_; }
Endpoint& SimLink::b() { return *b_; }

UdpEndpoint::UdpEndpoint(uint16_t local_port, uint16_t remote_port)
    : remote_port_(remote_port) {
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) throw std::runtime_error("socket() failed");

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(local_port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw std::runtime_error("bind() failed");
  }
  const int flags = ::fcntl(fd_, F_GETFL, 0);
  ::fcntl(fd_, F_SETFL, flags | O_NONBLOCK);
}

UdpEndpoint::~UdpEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

void UdpEndpoint::send(const Datagram& datagram, uint64_t) {
  sockaddr_in dest{};
  dest.sin_family = AF_INET;
  dest.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  dest.sin_port = htons(remote_port_);
  ::sendto(fd_, datagram.data(), datagram.size(), 0,
           reinterpret_cast<sockaddr*>(&dest), sizeof(dest));
}

std::vector<Datagram> UdpEndpoint::poll(uint64_t) {
  std::vector<Datagram> out;
  uint8_t buf[65536];
  for (;;) {
    const ssize_t n = ::recv(fd_, buf, sizeof(buf), 0);
    if (n <= 0) break;
    out.emplace_back(buf, buf + n);
  }
  return out;
}

}  // namespace fsw::bridge
