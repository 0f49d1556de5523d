#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fsw/autopilot/autopilot.hpp"

using namespace fsw;
using namespace fsw::autopilot;

TEST_CASE("command handling rules") {
  AutopilotState s;

  SUBCASE("arm from disarmed succeeds, re-arm is rejected") {
    auto ack = handle_command(s, {1, Opcode::Arm, {}, 0}, 0.1);
    CHECK(ack.status == AckStatus::Success);
    CHECK(s.armed);
    CHECK(handle_command(s, {2, Opcode::Arm, {}, 0}, 0.2).status ==
          AckStatus::Rejected);
  }

  SUBCASE("guided transition and takeoff") {
    handle_command(s, {1, Opcode::Arm, {}, 0}, 0.1);
    auto ack = handle_command(s, {2, Opcode::SetMode, {4.0}, 0}, 0.2);
    CHECK(ack.status == AckStatus::Success);
    CHECK(s.mode == FlightMode::Guided);
    CHECK(handle_command(s, {3, Opcode::Takeoff, {1.0}, 0}, 0.3).status ==
          AckStatus::Success);
    CHECK(s.setpoint[2] == 1.0);
  }

  SUBCASE("takeoff while disarmed is rejected") {
    s.mode = FlightMode::Guided;
    CHECK(handle_command(s, {1, Opcode::Takeoff, {1.0}, 0}, 0.1).status ==
          AckStatus::Rejected);
  }

  SUBCASE("goto requires guided") {
    handle_command(s, {1, Opcode::Arm, {}, 0}, 0.1);
    CHECK(handle_command(s, {2, Opcode::Goto, {1, 2, 3}, 0}, 0.2).status ==
          AckStatus::Rejected);
    handle_command(s, {3, Opcode::SetMode, {4.0}, 0}, 0.3);
    CHECK(handle_command(s, {4, Opcode::Goto, {1, 2, 3}, 0}, 0.4).status ==
          AckStatus::Success);
    CHECK(s.setpoint == Vec3{1, 2, 3});
  }

  SUBCASE("land allowed from any armed mode and zeroes the z setpoint") {
    handle_command(s, {1, Opcode::Arm, {}, 0}, 0.1);
    s.setpoint = {1, 1, 2};
    auto ack = handle_command(s, {2, Opcode::Land, {}, 0}, 0.2);
    CHECK(ack.status == AckStatus::Success);
    CHECK(s.mode == FlightMode::Land);
    CHECK(s.setpoint[2] == 0.0);
  }

  SUBCASE("stabilize <-> guided <-> poshold graph") {
    handle_command(s, {1, Opcode::Arm, {}, 0}, 0.1);
    // Stabilize -> PosHold is not an edge.
    CHECK(handle_command(s, {2, Opcode::SetMode, {16.0}, 0}, 0.2).status ==
          AckStatus::Rejected);
    handle_command(s, {3, Opcode::SetMode, {4.0}, 0}, 0.3);
    CHECK(handle_command(s, {4, Opcode::SetMode, {16.0}, 0}, 0.4).status ==
          AckStatus::Success);
    CHECK(s.mode == FlightMode::PosHold);
  }

  SUBCASE("land -> stabilize only after disarm") {
    handle_command(s, {1, Opcode::Arm, {}, 0}, 0.1);
    handle_command(s, {2, Opcode::Land, {}, 0}, 0.2);
    CHECK(handle_command(s, {3, Opcode::SetMode, {0.0}, 0}, 0.3).status ==
          AckStatus::Rejected);
    handle_command(s, {4, Opcode::Disarm, {}, 0}, 0.4);
    CHECK(handle_command(s, {5, Opcode::SetMode, {0.0}, 0}, 0.5).status ==
          AckStatus::Success);
  }
}

TEST_CASE("mode transition closure: every opcode defined in every state") {
  uint32_t id = 0;
  for (FlightMode mode : {FlightMode::Stabilize, FlightMode::Guided,
                          FlightMode::PosHold, FlightMode::Land}) {
    for (bool armed : {false, true}) {
      for (Opcode op : {Opcode::Arm, Opcode::Disarm, Opcode::SetMode,
                        Opcode::Takeoff, Opcode::Goto, Opcode::Land}) {
        AutopilotState s;
        s.mode = mode;
        s.armed = armed;
        std::vector<double> args(opcode_arity(op), 4.0);
        const Command cmd{++id, op, args, 0.0};
        const CommandAck ack = handle_command(s, cmd, 1.0);
        CHECK(ack.command_id == cmd.id);
        CHECK((ack.status == AckStatus::Success ||
               ack.status == AckStatus::Rejected));
      }
    }
  }
}

TEST_CASE("step dynamics") {
  AutopilotState s;

  SUBCASE("fixed point and identity") {
    s.position = s.setpoint = {1, 2, 3};
    step_dynamics(s, 0.1);
    CHECK(s.position == Vec3{1, 2, 3});
    s.setpoint = {5, 5, 5};
    step_dynamics(s, 0.0);
    CHECK(s.position == Vec3{1, 2, 3});
  }

  SUBCASE("negative dt throws") {
    CHECK_THROWS_AS(step_dynamics(s, -0.001), NegativeDt);
  }

  SUBCASE("geometric convergence matches the closed form") {
    s.position = {0, 0, 0};
    s.setpoint = {1, 0, 0};
    s.tracking_gain = 1.0;
    for (int i = 0; i < 1000; ++i) step_dynamics(s, 0.001);
    const double expected = 1.0 - std::pow(1.0 - 0.001, 1000);
    CHECK(s.position[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(s.position[0] == doctest::Approx(0.6323).epsilon(1e-4));
  }

  SUBCASE("monotone convergence per axis") {
    s.position = {0, -3, 10};
    s.setpoint = {2, 4, -1};
    double prev[3] = {2, 7, 11};
    for (int i = 0; i < 5000; ++i) {
      step_dynamics(s, 0.01);
      for (int k = 0; k < 3; ++k) {
        const double err = std::abs(s.setpoint[k] - s.position[k]);
        if (prev[k] > 1e-12) CHECK(err < prev[k]);
        prev[k] = err;
      }
    }
    for (int k = 0; k < 3; ++k) CHECK(prev[k] < 1e-10);
  }

  SUBCASE("yaw takes the shortest arc") {
    s.yaw_deg = 170.0;
    s.yaw_setpoint_deg = -170.0;
    step_dynamics(s, 0.1);
    CHECK(s.yaw_deg > 170.0);  // wraps toward +180 and beyond
    for (int i = 0; i < 2000; ++i) step_dynamics(s, 0.01);
    CHECK(std::abs(wrap_deg(s.yaw_deg - (-170.0))) < 1e-6);
  }
}

TEST_CASE("autopilot sim logs cadence, transitions, acks and auto-disarm") {
  AutopilotSim sim;
  sim.on_command({1, Opcode::Arm, {}, 0}, 0.05);
  sim.on_command({2, Opcode::SetMode, {4.0}, 0}, 0.06);
  sim.on_command({3, Opcode::Takeoff, {1.0}, 0}, 0.07);
  for (int ms = 1; ms <= 12000; ++ms) {
    sim.step(static_cast<double>(ms) * 1e-3);
    if (ms == 5000) sim.on_command({4, Opcode::Land, {}, 0}, 5.0);
  }

  const auto& log = sim.log();
  REQUIRE_FALSE(log.empty());
  for (size_t i = 1; i < log.size(); ++i) CHECK(log[i].t >= log[i - 1].t);

  size_t acks = 0;
  for (const auto& e : log) {
    if (e.last_ack) ++acks;
  }
  CHECK(acks == 4);

  // Landed and auto-disarmed; altitude pinned near zero afterwards.
  CHECK(sim.state().mode == FlightMode::Land);
  CHECK_FALSE(sim.state().armed);
  CHECK(sim.state().position[2] >= 0.0);
  CHECK(sim.state().position[2] <= AutopilotSim::kLandedAltitudeM);

  // 10 Hz periodic entries dominate: ~120 over 12 s plus events.
  CHECK(log.size() > 120);
  CHECK(log.size() < 140);
}
