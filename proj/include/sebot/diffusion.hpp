#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sebot/graph.hpp"

namespace sebot {

struct DiffusionConfig {
  double p = 0.8;
  std::uint32_t trials = 200;
  std::uint64_t seed = 0;
};

struct SpreadEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Independent Cascade on the directed view with uniform activation
/// probability p (edge weights are ignored). Seeds count as reached.
///
/// Each trial t draws the coin of out-edge e from a counter-based stream
/// keyed on (seed, t, e), so a trial is the live-edge reachability of the
/// seed set. Results are therefore bit-identical across thread counts and
/// monotone in p and in the seed set for a fixed config.
///
/// Throws std::domain_error for an empty seed set or trials == 0, and
/// std::invalid_argument for p outside [0, 1] or seeds out of range.
SpreadEstimate icm_simulate(const WeightedGraph& g, std::span<const VertexId> seeds,
                            const DiffusionConfig& cfg);

/// Single-threaded reference for icm_simulate.
SpreadEstimate icm_simulate_serial(const WeightedGraph& g, std::span<const VertexId> seeds,
                                   const DiffusionConfig& cfg);

/// Sum over all trials of the reached-vertex count; an empty seed set gives 0.
/// Integer totals make marginal gains exact under common random numbers.
std::uint64_t icm_total_reached(const WeightedGraph& g, std::span<const VertexId> seeds,
                                const DiffusionConfig& cfg);

/// Per-trial reached counts, in trial order.
std::vector<std::uint32_t> icm_trial_counts(const WeightedGraph& g, std::span<const VertexId> seeds,
                                            const DiffusionConfig& cfg, bool parallel = true);

/// spread / n clamped to [0, 1]; n must be > 0.
double influence_ratio(double spread, std::size_t n);

}  // namespace sebot
