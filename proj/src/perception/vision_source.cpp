#include "fsw/perception/vision_source.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsw::perception {

namespace {
// Slack for grid-instant comparisons against gap boundaries; instants on
// a boundary count as outside the gap.
constexpr double kGridEps = 1e-9;
}  // namespace

VisionSource::VisionSource(VisionSourceConfig config, Trajectory trajectory)
    : config_(std::move(config)),
      trajectory_(std::move(trajectory)),
      rng_(config_.seed) {
  if (config_.nominal_rate_hz <= 0.0) {
    throw std::invalid_argument("nominal_rate_hz must be > 0");
  }
  for (size_t i = 0; i < config_.gap_schedule.size(); ++i) {
    const auto& g = config_.gap_schedule[i];
    if (g.duration_s <= 0.0) throw std::invalid_argument("gap duration must be > 0");
    if (i > 0 && g.start_s < config_.gap_schedule[i - 1].end_s()) {
      throw std::invalid_argument("gap windows must be sorted and non-overlapping");
    }
  }
  period_s_ = 1.0 / config_.nominal_rate_hz;
  grid_base_s_ = trajectory_.start_s();
  grid_index_ = 0;
}

std::vector<PoseSample> VisionSource::step(double virtual_now_s) {
  std::vector<PoseSample> out;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, config_.jitter_std_ms * 1e-3);

  for (;;) {
    // Integer-indexed grid keeps nominal instants free of accumulated
    // floating-point drift.
    double instant =
        grid_base_s_ + static_cast<double>(grid_index_) * period_s_;
    bool gap_jump = false;
    for (const auto& gap : config_.gap_schedule) {
      if (instant > gap.start_s + kGridEps && instant < gap.end_s() - kGridEps) {
        // Blocked: the stream resumes with one emission exactly at the
        // window end.
        instant = gap.end_s();
        gap_jump = true;
        break;
      }
    }
    if (instant > virtual_now_s + kGridEps ||
        instant > trajectory_.end_s() + kGridEps) {
      break;
    }

    double stamp = instant;
    if (config_.jitter_std_ms > 0.0) {
      stamp += jitter(rng_);
      // Timestamps stay strictly increasing.
      stamp = std::max(stamp, prev_emit_s_ + 1e-4);
    }

    const bool drop =
        config_.drop_prob > 0.0 && uniform(rng_) < config_.drop_prob;
    if (drop) {
      ++dropped_;
    } else {
      const double eval_t =
          std::clamp(stamp, trajectory_.start_s(), trajectory_.end_s());
      auto pose = trajectory_.eval(eval_t);
      if (pose.ok()) {
        out.push_back(PoseSample{stamp, pose.value().position,
                                 pose.value().orientation});
        prev_emit_s_ = stamp;
        ++emitted_;
      }
    }

    if (gap_jump) {
      grid_base_s_ = instant;
      grid_index_ = 1;
    } else {
      ++grid_index_;
    }
  }
  return out;
}

}  // namespace fsw::perception
