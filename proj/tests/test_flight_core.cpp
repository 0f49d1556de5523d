#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fsw/fc/dispatcher.hpp"
#include "fsw/fc/health.hpp"
#include "fsw/fc/scheduler.hpp"
#include "fsw/fc/telemetry_db.hpp"

using namespace fsw;
using namespace fsw::fc;

TEST_CASE("rate groups run floor(T/P) times") {
  Scheduler sched;
  int fast_runs = 0;
  int slow_runs = 0;
  sched.add_group(10'000'000, {{"fast", [&](uint64_t) { ++fast_runs; }}});
  sched.add_group(100'000'000, {{"slow", [&](uint64_t) { ++slow_runs; }}});

  for (uint64_t ms = 1; ms <= 1000; ++ms) sched.tick(ms * 1'000'000);
  CHECK(fast_runs == 100);
  CHECK(slow_runs == 10);

  // Coarse ticks must not lose periods.
  Scheduler coarse;
  int runs = 0;
  coarse.add_group(10'000'000, {{"g", [&](uint64_t) { ++runs; }}});
  coarse.tick(1'000'000'000);
  CHECK(runs == 100);
  coarse.tick(1'005'000'000);
  CHECK(runs == 100);
  coarse.tick(1'010'000'000);
  CHECK(runs == 101);
}

TEST_CASE("scheduler rejects a non-advancing clock") {
  Scheduler sched;
  sched.add_group(10'000'000, {});
  sched.tick(1'000'000);
  CHECK_THROWS_AS(sched.tick(1'000'000), NonMonotonicClock);
  CHECK_THROWS_AS(sched.tick(500'000), NonMonotonicClock);
  CHECK_NOTHROW(sched.tick(2'000'000));
}

TEST_CASE("within-tick order: shortest period first, declaration order inside") {
  Scheduler sched;
  std::vector<std::string> trace;
  sched.add_group(100'000'000, {{"slow_a", [&](uint64_t) { trace.push_back("slow_a"); }}});
  sched.add_group(10'000'000, {{"fast_a", [&](uint64_t) { trace.push_back("fast_a"); }},
                               {"fast_b", [&](uint64_t) { trace.push_back("fast_b"); }}});
  sched.tick(100'000'000);
  // 10 fast periods come due; at t=100ms the fast group still precedes.
  REQUIRE(trace.size() == 21);
  CHECK(trace[0] == "fast_a");
  CHECK(trace[1] == "fast_b");
  CHECK(trace[18] == "fast_a");
  CHECK(trace[19] == "fast_b");
  CHECK(trace[20] == "slow_a");
}

TEST_CASE("telemetry db latest-value semantics") {
  TelemetryDb db({"alt", "pose"});
  CHECK(db.channel_count() == 2);

  CHECK(db.record("alt", 1.5, 0.1));
  auto entry = db.read("alt");
  REQUIRE(entry.has_value());
  CHECK(std::get<double>(entry->value) == 1.5);

  CHECK(db.record("alt", 2.5, 0.2));
  CHECK(std::get<double>(db.read("alt")->value) == 2.5);
  CHECK(db.read("alt")->updated_at == 0.2);

  CHECK_FALSE(db.record("unregistered", 1.0, 0.3));
  CHECK_FALSE(db.read("unregistered").has_value());

  // Capacity is fixed: failed writes never grow the channel set.
  CHECK(db.channel_count() == 2);
}

TEST_CASE("dispatcher settles acks and expires deadlines") {
  std::vector<Command> forwarded;
  CommandDispatcher d([&](const Command& c) { forwarded.push_back(c); });

  Command arm{1, Opcode::Arm, {}, 0.5};
  CHECK_FALSE(d.dispatch(arm));
  CHECK(forwarded.size() == 1);
  CHECK(d.state().sent == 1);
  CHECK(d.state().pending == 1);

  SUBCASE("duplicate id") {
    auto err = d.dispatch(arm);
    REQUIRE(err.has_value());
    CHECK(*err == DispatchError::DuplicateCommandId);
    CHECK(d.state().sent == 1);
  }

  SUBCASE("arity mismatch is rejected as unknown opcode") {
    Command bad{2, Opcode::Goto, {1.0}, 0.6};
    CHECK(d.dispatch(bad) == DispatchError::UnknownOpcode);
  }

  SUBCASE("success ack") {
    d.settle({1, AckStatus::Success, 0.6});
    CHECK(d.state().succeeded == 1);
    CHECK(d.state().pending == 0);
    CHECK(d.state().success_rate_pct() == doctest::Approx(100.0));
    // A second ack for the same id is ignored.
    d.settle({1, AckStatus::Rejected, 0.7});
    CHECK(d.state().succeeded == 1);
    CHECK(d.state().rejected == 0);
  }

  SUBCASE("no ack within 2 s times out") {
    d.expire_deadlines(2.4);
    CHECK(d.state().pending == 1);  // deadline is issued_at + 2.0 = 2.5
    d.expire_deadlines(2.6);
    CHECK(d.state().timed_out == 1);
    CHECK(d.state().pending == 0);
    CHECK(d.state().success_rate_pct() == doctest::Approx(0.0));
  }
}

TEST_CASE("dispatcher conservation under random ack orderings and losses") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 30; ++trial) {
    CommandDispatcher d([](const Command&) {});
    std::vector<uint32_t> ids;
    for (uint32_t i = 0; i < 40; ++i) {
      Command c{i, Opcode::Arm, {}, static_cast<double>(i) * 0.01};
      REQUIRE_FALSE(d.dispatch(c));
      ids.push_back(i);
    }
    std::shuffle(ids.begin(), ids.end(), rng);
    std::uniform_int_distribution<int> coin(0, 3);
    for (uint32_t id : ids) {
      const int c = coin(rng);
      if (c == 0) continue;  // ack lost
      const AckStatus status = c == 1 ? AckStatus::Success
                             : c == 2 ? AckStatus::Rejected
                                      : AckStatus::Timeout;
      d.settle({id, status, 1.0});
      const auto& s = d.state();
      CHECK(s.sent == s.succeeded + s.rejected + s.timed_out + s.pending);
    }
    d.expire_deadlines(100.0);
    const auto& s = d.state();
    CHECK(s.pending == 0);
    CHECK(s.sent == s.succeeded + s.rejected + s.timed_out);
  }
}

TEST_CASE("health thresholds") {
  HealthMonitor h({"imu"}, 1.0);
  h.ping("imu", 10.0);

  SUBCASE("recent ping is healthy") {
    h.check(10.5);
    CHECK(h.status("imu") == HealthLevel::Healthy);
  }
  SUBCASE("silence of 1.5x timeout is degraded") {
    auto transitions = h.check(11.5);
    CHECK(h.status("imu") == HealthLevel::Degraded);
    REQUIRE(transitions.size() == 1);
    CHECK(transitions[0].from == HealthLevel::Healthy);
    CHECK(transitions[0].to == HealthLevel::Degraded);
  }
  SUBCASE("silence of 2.5x timeout is fault") {
    h.check(12.5);
    CHECK(h.status("imu") == HealthLevel::Fault);
    CHECK(h.aggregate() == HealthLevel::Fault);
  }
  SUBCASE("recovery transitions back") {
    h.check(12.5);
    h.ping("imu", 12.6);
    auto transitions = h.check(12.7);
    REQUIRE(transitions.size() == 1);
    CHECK(transitions[0].to == HealthLevel::Healthy);
  }
}
