#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sebot/detector.hpp"
#include "sebot/diffusion.hpp"
#include "sebot/graph.hpp"
#include "sebot/influence.hpp"
#include "sebot/rng.hpp"
#include "sebot/selection.hpp"

namespace sebot {

enum class ActivityPolicyKind { Uniform, Profile, Scripted };

std::string_view policy_name(ActivityPolicyKind k) noexcept;
std::optional<ActivityPolicyKind> parse_policy(std::string_view name) noexcept;

struct ActivityPolicy {
  ActivityPolicyKind kind = ActivityPolicyKind::Uniform;
  std::array<double, kRelationCount> profile{};  // indexed by RelationKind
  std::vector<RelationKind> script;
};

/// Next activity. Scripted indexes the script cyclically by history length.
/// Throws ConfigError for an empty profile table or script.
RelationKind activity_policy(const ActivityPolicy& policy, std::span<const RelationKind> history,
                             Engine& stream);

struct EpisodeConfig {
  double p = 0.8;
  std::uint32_t trials = 200;
  int t_max = 120;
  int max_height = 3;
  PruneOptions prune{};
  DetectorModel detector{};
  ActivityPolicy policy{};
  SelectorKind selector = SelectorKind::Entropy;
  SelectMode mode = SelectMode::Argmax;
  std::uint64_t seed = 0;
  double gamma = 1.0;
  VertexId bot = 0;
  std::size_t feature_dim = 16;
  std::shared_ptr<const FeatureMatrix> features;  // overrides structural_features
};

/// Throws ConfigError on out-of-range knobs.
void validate(const EpisodeConfig& cfg, const MultiRelGraph& g);

struct EpisodeState {
  int t = 0;
  VertexId bot = 0;
  std::vector<VertexId> followers;
  std::vector<RelationKind> history;
  std::vector<std::uint8_t> followed;  // per step: 1 if a follower was added
  bool alive = true;
  double cumulative_reward = 0.0;
  double discounted_reward = 0.0;
  double spread = 0.0;
};

struct StepOutcome {
  int t = 0;  // step index, 0-based
  RelationKind action = RelationKind::Tweet;
  std::optional<VertexId> new_follower;
  double reward = 0.0;
  bool detected = false;
  double spread_estimate = 0.0;
  std::size_t pruned = 0;
};

struct FollowerPick {
  std::optional<VertexId> follower;
  std::size_t pruned = 0;
};

/// One follower choice for `bot` on relation `r` with the given selector.
/// The entropy selector projects, optimizes, prunes and samples (or takes
/// the argmax of) the conditional-entropy distribution; the others pick
/// from the same candidate set on the diffusion view.
FollowerPick pick_follower(const MultiRelGraph& g, RelationKind r, VertexId bot,
                           std::span<const VertexId> followers, const EpisodeConfig& cfg,
                           std::uint64_t step_seed);

/// The socialbot MDP loop over a private copy of the graph.
class Episode {
 public:
  Episode(EpisodeConfig cfg, MultiRelGraph graph);

  const EpisodeState& state() const noexcept { return state_; }
  const MultiRelGraph& graph() const noexcept { return graph_; }
  const EpisodeConfig& config() const noexcept { return cfg_; }
  double baseline_spread() const noexcept { return baseline_; }
  bool done() const noexcept { return !state_.alive || state_.t >= cfg_.t_max; }

  /// Throws std::domain_error once the episode is over.
  StepOutcome step();

 private:
  double estimate_spread() const;

  EpisodeConfig cfg_;
  MultiRelGraph graph_;
  EpisodeState state_;
  Engine activity_stream_;
  Engine detector_stream_;
  double baseline_ = 0.0;
};

struct EpisodeSummary {
  std::uint64_t seed = 0;
  double episode_reward = 0.0;  // final spread estimate
  int episode_length = 0;
  int survival_steps = 0;       // steps completed without detection
  double final_influence_ratio = 0.0;
  double baseline_spread = 0.0;
  double discounted_reward = 0.0;
  bool detected = false;
  std::vector<VertexId> followers;
  std::vector<StepOutcome> steps;
};

EpisodeSummary run_episode(const EpisodeConfig& cfg, const MultiRelGraph& g);

/// `count` independent episodes with seeds cfg.seed + i, run in parallel and
/// returned in seed order.
std::vector<EpisodeSummary> run_episodes(const EpisodeConfig& cfg, const MultiRelGraph& g,
                                         std::size_t count);

/// Seed set of size k built by repeated pick_follower calls for `bot`.
/// Throws std::domain_error when k exceeds the eligible vertex count.
std::vector<VertexId> follower_seed_set(const MultiRelGraph& g, RelationKind r, VertexId bot,
                                        std::size_t k, const EpisodeConfig& cfg);

}  // namespace sebot
