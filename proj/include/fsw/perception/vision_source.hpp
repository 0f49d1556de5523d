#pragma once

#include <random>
#include <vector>

#include "fsw/perception/trajectory.hpp"

namespace fsw::perception {

struct GapWindow {
  double start_s = 0.0;
  double duration_s = 0.0;

  double end_s() const { return start_s + duration_s; }
};

struct VisionSourceConfig {
  double nominal_rate_hz = 100.0;
  double jitter_std_ms = 0.0;   // Gaussian perturbation of each emission instant
  double drop_prob = 0.0;       // per-sample Bernoulli loss
  std::vector<GapWindow> gap_schedule;  // non-overlapping, sorted
  uint64_t seed = 0;
};

// Simulated motion-capture stream: emits the trajectory pose at jittered
// nominal instants, skips Bernoulli drops, and emits nothing strictly
// inside a gap window. A blocked stream resumes with one emission attempt
// exactly at the gap's end, so an on-grid gap start yields an inter-sample
// interval equal to the gap duration.
class VisionSource {
 public:
  VisionSource(VisionSourceConfig config, Trajectory trajectory);

  // Emits every sample whose instant has passed. virtual_now_s must not
  // move backwards.
  std::vector<PoseSample> step(double virtual_now_s);

  uint64_t emitted() const { return emitted_; }
  uint64_t dropped() const { return dropped_; }

 private:
  VisionSourceConfig config_;
  Trajectory trajectory_;
  std::mt19937_64 rng_;
  double period_s_;
  double grid_base_s_ = 0.0;
  uint64_t grid_index_ = 0;
  double prev_emit_s_ = -1.0;
  uint64_t emitted_ = 0;
  uint64_t dropped_ = 0;
};

}  // namespace fsw::perception
