#include <gtest/gtest.h>

#include "sebot/detector.hpp"

using namespace sebot;

TEST(Detector, HazardFormulaAndClamp) {
  const DetectorModel det{0.005, 2.0, 10, 0.9};
  EXPECT_DOUBLE_EQ(detection_hazard(det, 0), 0.005);
  EXPECT_DOUBLE_EQ(detection_hazard(det, 10), 0.105);
  EXPECT_EQ(detection_hazard({0.6, 2.0, 10, 0.9}, 3), 1.0);
  EXPECT_GT(detection_hazard(det, 10), detection_hazard(det, 0));
}

TEST(Detector, WindowCountsRecentFollows) {
  const std::vector<std::uint8_t> trace{1, 1, 0, 0, 1, 0, 1};
  EXPECT_EQ(follows_in_window(trace, 3), 2);
  EXPECT_EQ(follows_in_window(trace, 100), 4);
  EXPECT_EQ(follows_in_window(trace, 0), 0);
}

TEST(Detector, FollowHeavyTraceHasHigherHazard) {
  const DetectorModel det{0.005, 2.0, 10, 0.9};
  const std::vector<std::uint8_t> follow(10, 1);
  const std::vector<std::uint8_t> tweet(10, 0);
  EXPECT_GT(detection_hazard(det, follows_in_window(follow, det.window)),
            detection_hazard(det, follows_in_window(tweet, det.window)));
}

TEST(Detector, ExtremeBaseRates) {
  auto eng = make_engine(1, Stream::Detector);
  const std::vector<std::uint8_t> trace{1, 1, 1};
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(detector_check(trace, {0.0, 2.0, 10, 0.9}, eng));
  EXPECT_TRUE(detector_check(trace, {1.0, 0.0, 10, 0.9}, eng));
  EXPECT_EQ(follow_every_step_detection({1.0, 0.0, 10, 0.9}, 120, 3), 1);
  EXPECT_EQ(follow_every_step_detection({0.0, 2.0, 10, 0.9}, 120, 3), 0);
}

TEST(Detector, MonteCarloMatchesClosedForm) {
  const DetectorModel det{0.001, 2.0, 10, 0.9};
  const double exact = follow_every_step_detection_probability(det, 120);
  const double mc = follow_every_step_detected_fraction(det, 120, 20000, 5);
  EXPECT_NEAR(mc, exact, 4 * std::sqrt(exact * (1 - exact) / 20000));
}

TEST(Detector, CalibrationHitsTarget) {
  const DetectorModel det{0.005, 2.0, 10, 0.9};
  const auto cal = calibrate_detector(det, 120, 1000, 11);
  EXPECT_NEAR(cal.detected_fraction, 0.9, 0.02);
  DetectorModel tuned = det;
  tuned.base_rate = cal.base_rate;
  EXPECT_DOUBLE_EQ(follow_every_step_detected_fraction(tuned, 120, 1000, 11), cal.detected_fraction);
  const auto other = calibrate_detector({0.005, 2.0, 10, 0.5}, 120, 1000, 11);
  EXPECT_LT(other.base_rate, cal.base_rate);
}
