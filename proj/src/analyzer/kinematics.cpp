#include "fsw/analyzer/kinematics.hpp"

namespace fsw::analyzer {

namespace {

KinematicSeries centered_diff(const std::vector<double>& t,
                              const std::vector<Vec3>& p) {
  if (p.size() < 3) {
    throw TooFewSamples("centered difference needs at least 3 points");
  }
  KinematicSeries out;
  out.t_s.reserve(p.size() - 2);
  out.values.reserve(p.size() - 2);
  for (size_t i = 1; i + 1 < p.size(); ++i) {
    const double span = t[i + 1] - t[i - 1];
    out.t_s.push_back(t[i]);
    out.values.push_back({(p[i + 1][0] - p[i - 1][0]) / span,
                          (p[i + 1][1] - p[i - 1][1]) / span,
                          (p[i + 1][2] - p[i - 1][2]) / span});
  }
  return out;
}

}  // namespace

KinematicSeries finite_diff_velocity(const VisionLog& log) {
  std::vector<double> t;
  std::vector<Vec3> p;
  t.reserve(log.samples.size());
  p.reserve(log.samples.size());
  for (const auto& s : log.samples) {
    t.push_back(s.t);
    p.push_back(s.position);
  }
  return centered_diff(t, p);
}

KinematicSeries finite_diff_derivative(const KinematicSeries& series) {
  return centered_diff(series.t_s, series.values);
}

}  // namespace fsw::analyzer
