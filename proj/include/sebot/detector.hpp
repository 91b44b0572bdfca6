#pragma once

#include <cstdint>
#include <span>

#include "sebot/rng.hpp"

namespace sebot {

/// Two-parameter hazard model standing in for a trained bot detector.
/// Per-step hazard: clamp(base_rate * (1 + follow_sensitivity * f), 0, 1),
/// where f counts follow actions in the last `window` steps (current included).
struct DetectorModel {
  double base_rate = 0.005;
  double follow_sensitivity = 2.0;
  int window = 10;
  double target_accuracy = 0.9;
};

double detection_hazard(const DetectorModel& det, int follows_in_window);

/// Follow actions among the last `window` entries of `followed`.
int follows_in_window(std::span<const std::uint8_t> followed, int window);

/// One Bernoulli(hazard) draw from the detector stream.
bool detector_check(std::span<const std::uint8_t> followed, const DetectorModel& det, Engine& stream);

/// Step (1-based) at which a bot that follows every step is detected, or 0
/// when it survives all t_max steps. Uses the same detector stream as an
/// episode with that seed.
int follow_every_step_detection(const DetectorModel& det, int t_max, std::uint64_t episode_seed);

/// Fraction of `episodes` seeded runs (seeds mix_keys(seed, i)) in which the
/// follow-every-step bot is detected within t_max steps.
double follow_every_step_detected_fraction(const DetectorModel& det, int t_max, int episodes,
                                           std::uint64_t seed);

struct Calibration {
  double base_rate = 0.0;
  double detected_fraction = 0.0;
};

/// Bisects base_rate so the follow-every-step bot is detected in
/// target_accuracy of `episodes` seeded runs. Other detector fields are kept.
Calibration calibrate_detector(const DetectorModel& det, int t_max, int episodes = 1000,
                               std::uint64_t seed = 0);

/// Closed-form detection probability of the follow-every-step bot.
double follow_every_step_detection_probability(const DetectorModel& det, int t_max);

}  // namespace sebot
