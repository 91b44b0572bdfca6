#include "sebot/detector.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sebot {

double detection_hazard(const DetectorModel& det, int follows) {
  const double h = det.base_rate * (1.0 + det.follow_sensitivity * static_cast<double>(follows));
  return std::clamp(h, 0.0, 1.0);
}

int follows_in_window(std::span<const std::uint8_t> followed, int window) {
  const auto w = static_cast<std::size_t>(std::max(window, 0));
  const std::size_t start = followed.size() > w ? followed.size() - w : 0;
  return static_cast<int>(std::count(followed.begin() + static_cast<std::ptrdiff_t>(start),
                                     followed.end(), std::uint8_t{1}));
}

bool detector_check(std::span<const std::uint8_t> followed, const DetectorModel& det, Engine& stream) {
  const double h = detection_hazard(det, follows_in_window(followed, det.window));
  // always consume one draw so the stream position tracks the step count
  return next_unit(stream) < h;
}

int follow_every_step_detection(const DetectorModel& det, int t_max, std::uint64_t episode_seed) {
  auto stream = make_engine(episode_seed, Stream::Detector);
  for (int t = 0; t < t_max; ++t) {
    const int f = std::min<int>(t + 1, std::max(det.window, 0));
    if (next_unit(stream) < detection_hazard(det, f)) return t + 1;
  }
  return 0;
}

double follow_every_step_detected_fraction(const DetectorModel& det, int t_max, int episodes,
                                           std::uint64_t seed) {
  if (episodes <= 0) return 0.0;
  int detected = 0;
#pragma omp parallel for reduction(+ : detected) schedule(static)
  for (int i = 0; i < episodes; ++i)
    if (follow_every_step_detection(det, t_max, mix_keys(seed, static_cast<std::uint64_t>(i))) > 0)
      ++detected;
  return static_cast<double>(detected) / static_cast<double>(episodes);
}

double follow_every_step_detection_probability(const DetectorModel& det, int t_max) {
  double survive = 1.0;
  for (int t = 0; t < t_max; ++t)
    survive *= 1.0 - detection_hazard(det, std::min<int>(t + 1, std::max(det.window, 0)));
  return 1.0 - survive;
}

Calibration calibrate_detector(const DetectorModel& det, int t_max, int episodes,
                               std::uint64_t seed) {
  DetectorModel probe = det;
  auto fraction_at = [&](double rate) {
    probe.base_rate = rate;
    return follow_every_step_detected_fraction(probe, t_max, episodes, seed);
  };

  // Detection fraction is non-decreasing in base_rate for fixed draws.
  double lo = 0.0;
  double hi = 1.0;
  double f_lo = fraction_at(lo);
  double f_hi = fraction_at(hi);
  for (int iter = 0; iter < 60 && f_lo < det.target_accuracy && f_hi > det.target_accuracy; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = fraction_at(mid);
    if (f < det.target_accuracy) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
      f_hi = f;
    }
  }
  const bool take_lo = std::abs(f_lo - det.target_accuracy) < std::abs(f_hi - det.target_accuracy);
  return take_lo ? Calibration{lo, f_lo} : Calibration{hi, f_hi};
}

}  // namespace sebot
