#pragma once

#include "fsw/analyzer/timing.hpp"

namespace fsw::analyzer {

// Centered-difference derivative series; each output point sits at an
// interior input timestamp (both ends are lost).
struct KinematicSeries {
  std::vector<double> t_s;
  std::vector<Vec3> values;  // velocity [m/s] or acceleration [m/s^2]
};

// v(t_i) = (p(t_{i+1}) - p(t_{i-1})) / (t_{i+1} - t_{i-1}); on non-uniform
// grids the denominator is twice the local mean span. Needs >= 3 samples.
KinematicSeries finite_diff_velocity(const VisionLog& log);

// Same stencil applied to a velocity (or any vector) series.
KinematicSeries finite_diff_derivative(const KinematicSeries& series);

}  // namespace fsw::analyzer
