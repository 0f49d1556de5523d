#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <vector>

namespace fsw::bridge {

using Datagram = std::vector<uint8_t>;

// Datagram delivery surface shared by the simulated and UDP transports.
// One frame per datagram, no fragmentation.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual void send(const Datagram& datagram, uint64_t now_ns) = 0;
  virtual std::vector<Datagram> poll(uint64_t now_ns) = 0;
};

struct FaultProfile {
  double drop_prob = 0.0;     // per-datagram Bernoulli loss
  double reorder_prob = 0.0;  // per-datagram chance of extra hold-back delay
  uint64_t delay_ns = 0;      // base one-way delay
  uint64_t reorder_delay_ns = 25'000'000;  // extra delay on a reorder hit
};

// In-process bidirectional link under virtual time. Seeded loss, reorder
// (modeled as extra delay so later datagrams overtake), and fixed delay.
class SimLink {
 public:
  SimLink(FaultProfile a_to_b, FaultProfile b_to_a, uint64_t seed);
  ~SimLink();

  Endpoint& a();
  Endpoint& b();

 private:
  struct Pending {
    uint64_t deliver_at_ns;
    uint64_t order;
    Datagram bytes;
  };

  class Side;

  struct Direction {
    FaultProfile faults;
    std::mt19937_64 rng;
    std::deque<Pending> queue;
    uint64_t next_order = 0;

    void enqueue(const Datagram& datagram, uint64_t now_ns);
    std::vector<Datagram> drain(uint64_t now_ns);
  };

  Direction a_to_b_;
  Direction b_to_a_;
  std::unique_ptr<Side> a_;
  std::unique_ptr<Side> b_;
};

// UDP/IPv4 endpoint, one frame per datagram, nonblocking receive. Used by
// the wall-clock bench path; the now_ns arguments are ignored.
class UdpEndpoint : public Endpoint {
 public:
  // Binds to 127.0.0.1:local_port and targets 127.0.0.1:remote_port.
  // Throws std::runtime_error on socket failure.
  UdpEndpoint(uint16_t local_port, uint16_t remote_port);
  ~UdpEndpoint() override;

  UdpEndpoint(const UdpEndpoint&) = delete;
  UdpEndpoint& operator=(const UdpEndpoint&) = delete;

  void send(const Datagram& datagram, uint64_t now_ns) override;
  std::vector<Datagram> poll(uint64_t now_ns) override;

 private:
  int fd_ = -1;
  uint16_t remote_port_;
};

}  // namespace fsw::bridge
