#include "sebot/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "sebot/errors.hpp"
#include "sebot/tree_ops.hpp"

namespace sebot {

std::string_view policy_name(ActivityPolicyKind k) noexcept {
  switch (k) {
    case ActivityPolicyKind::Uniform: return "uniform";
    case ActivityPolicyKind::Profile: return "profile";
    case ActivityPolicyKind::Scripted: return "scripted";
  }
  return "?";
}

std::optional<ActivityPolicyKind> parse_policy(std::string_view name) noexcept {
  for (auto k : {ActivityPolicyKind::Uniform, ActivityPolicyKind::Profile,
                 ActivityPolicyKind::Scripted})
    if (name == policy_name(k)) return k;
  return std::nullopt;
}

RelationKind activity_policy(const ActivityPolicy& policy, std::span<const RelationKind> history,
                             Engine& stream) {
  switch (policy.kind) {
    case ActivityPolicyKind::Uniform: {
      const auto i = static_cast<std::size_t>(next_unit(stream) * kRelationCount);
      return kAllRelations[std::min(i, kRelationCount - 1)];
    }
    case ActivityPolicyKind::Profile: {
      const double total = std::accumulate(policy.profile.begin(), policy.profile.end(), 0.0);
      if (!(total > 0.0)) throw ConfigError("activity profile table is empty");
      const double u = next_unit(stream) * total;
      double acc = 0.0;
      std::size_t last = 0;
      for (std::size_t i = 0; i < kRelationCount; ++i) {
        if (policy.profile[i] <= 0.0) continue;
        last = i;
        acc += policy.profile[i];
        if (u < acc) return kAllRelations[i];
      }
      return kAllRelations[last];
    }
    case ActivityPolicyKind::Scripted:
      if (policy.script.empty()) throw ConfigError("scripted activity policy has no steps");
      return policy.script[history.size() % policy.script.size()];
  }
  throw ConfigError("unknown activity policy");
}

void validate(const EpisodeConfig& cfg, const MultiRelGraph& g) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(cfg.p)) throw ConfigError("p must lie in [0, 1]");
  if (cfg.trials == 0) throw ConfigError("trials must be >= 1");
  if (cfg.t_max < 1) throw ConfigError("T_max must be >= 1");
  if (cfg.max_height < 2) throw ConfigError("K must be >= 2");
  if (!(cfg.prune.ratio >= 0.0 && cfg.prune.ratio < 1.0))
    throw ConfigError("prune_ratio must satisfy 0 <= ratio < 1");
  if (!in_unit(cfg.detector.base_rate)) throw ConfigError("detector base_rate must lie in [0, 1]");
  if (cfg.detector.follow_sensitivity < 0.0)
    throw ConfigError("detector follow_sensitivity must be >= 0");
  if (cfg.detector.window < 0) throw ConfigError("detector window must be >= 0");
  if (!in_unit(cfg.detector.target_accuracy))
    throw ConfigError("detector target_accuracy must lie in [0, 1]");
  if (!in_unit(cfg.gamma)) throw ConfigError("gamma must lie in [0, 1]");
  if (cfg.bot >= g.vertex_count()) throw ConfigError("bot vertex is not in the graph");
  if (cfg.feature_dim < 2) throw ConfigError("feature dimension must be >= 2");
  if (cfg.features && cfg.features->rows() != g.vertex_count())
    throw ConfigError("feature file row count does not match the graph");
  if (cfg.policy.kind == ActivityPolicyKind::Scripted && cfg.policy.script.empty())
    throw ConfigError("scripted activity policy has no steps");
  if (cfg.policy.kind == ActivityPolicyKind::Profile &&
      !(std::accumulate(cfg.policy.profile.begin(), cfg.policy.profile.end(), 0.0) > 0.0))
    throw ConfigError("activity profile table is empty");
}

namespace {

std::vector<VertexId> eligible(const WeightedGraph& g, VertexId bot,
                               std::span<const VertexId> followers) {
  const std::unordered_set<VertexId> taken(followers.begin(), followers.end());
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_active(v) && v != bot && !taken.contains(v)) out.push_back(v);
  return out;
}

}  // namespace

FollowerPick pick_follower(const MultiRelGraph& g, RelationKind r, VertexId bot,
                           std::span<const VertexId> followers, const EpisodeConfig& cfg,
                           std::uint64_t step_seed) {
  FollowerPick pick;
  if (cfg.selector == SelectorKind::Entropy) {
    const FeatureMatrix feats =
        cfg.features ? *cfg.features : structural_features(g, cfg.feature_dim);
    auto projected = std::make_shared<const WeightedGraph>(project(g, r, feats));
    auto opt = optimize(projected, {.max_height = cfg.max_height});

    std::unordered_set<VertexId> guarded(followers.begin(), followers.end());
    guarded.insert(bot);
    auto pruned = prune(opt.tree, guarded, cfg.prune);
    pick.pruned = pruned.removed.size();

    const auto candidates = eligible(*pruned.graph, bot, followers);
    if (candidates.empty()) return pick;
    const auto dist = selection_distribution(pruned.tree, bot, candidates);
    pick.follower = select_follower(dist, cfg.mode, step_seed);
    return pick;
  }

  const auto diffusion = diffusion_view(g);
  const auto candidates = eligible(diffusion, bot, followers);
  if (candidates.empty()) return pick;

  switch (cfg.selector) {
    case SelectorKind::Degree: {
      VertexId best = candidates.front();
      for (VertexId v : candidates)
        if (diffusion.out_degree(v) > diffusion.out_degree(best)) best = v;
      pick.follower = best;
      break;
    }
    case SelectorKind::Celf: {
      const DiffusionConfig dc{cfg.p, cfg.trials, cfg.seed};
      std::vector<VertexId> seeds(followers.begin(), followers.end());
      seeds.push_back(bot);
      seeds.push_back(kNoVertex);
      std::uint64_t best_total = 0;
      VertexId best = candidates.front();
      bool first = true;
      for (VertexId v : candidates) {
        seeds.back() = v;
        const auto total = icm_total_reached(diffusion, seeds, dc);
        if (first || total > best_total) {
          best_total = total;
          best = v;
          first = false;
        }
      }
      pick.follower = best;
      break;
    }
    case SelectorKind::Random: {
      Engine eng{step_seed};
      const auto i = static_cast<std::size_t>(next_unit(eng) * static_cast<double>(candidates.size()));
      pick.follower = candidates[std::min(i, candidates.size() - 1)];
      break;
    }
    case SelectorKind::Entropy: break;
  }
  return pick;
}

Episode::Episode(EpisodeConfig cfg, MultiRelGraph graph)
    : cfg_(std::move(cfg)),
      graph_(std::move(graph)),
      activity_stream_(make_engine(cfg_.seed, Stream::Activity)),
      detector_stream_(make_engine(cfg_.seed, Stream::Detector)) {
  validate(cfg_, graph_);
  state_.bot = cfg_.bot;
  baseline_ = estimate_spread();
  state_.spread = baseline_;
}

double Episode::estimate_spread() const {
  std::vector<VertexId> seeds = state_.followers;
  seeds.push_back(state_.bot);
  const DiffusionConfig dc{cfg_.p, cfg_.trials, cfg_.seed};
  return icm_simulate(diffusion_view(graph_), seeds, dc).mean;
}

StepOutcome Episode::step() {
  if (!state_.alive) throw std::domain_error("step: the socialbot has been detected");
  if (state_.t >= cfg_.t_max) throw std::domain_error("step: episode reached T_max");

  StepOutcome out;
  out.t = state_.t;
  out.action = activity_policy(cfg_.policy, state_.history, activity_stream_);
  state_.history.push_back(out.action);

  if (out.action != RelationKind::Tweet) {
    const std::uint64_t step_seed =
        mix_keys(derive_seed(cfg_.seed, Stream::Selection), static_cast<std::uint64_t>(state_.t));
    const auto pick =
        pick_follower(graph_, out.action, state_.bot, state_.followers, cfg_, step_seed);
    out.pruned = pick.pruned;
    if (pick.follower) {
      graph_.add_edge(state_.bot, *pick.follower, out.action, state_.t);
      state_.followers.push_back(*pick.follower);
      out.new_follower = pick.follower;
    }
  }
  state_.followed.push_back(out.new_follower ? 1 : 0);

  out.detected = detector_check(state_.followed, cfg_.detector, detector_stream_);

  const double spread = estimate_spread();
  out.reward = spread - state_.spread;
  out.spread_estimate = spread;
  state_.spread = spread;
  state_.cumulative_reward += out.reward;
  state_.discounted_reward += std::pow(cfg_.gamma, state_.t) * out.reward;
  ++state_.t;
  if (out.detected) state_.alive = false;
  return out;
}

EpisodeSummary run_episode(const EpisodeConfig& cfg, const MultiRelGraph& g) {
  Episode ep(cfg, g);
  EpisodeSummary s;
  s.seed = cfg.seed;
  s.baseline_spread = ep.baseline_spread();
  while (!ep.done()) s.steps.push_back(ep.step());

  const auto& st = ep.state();
  s.episode_reward = st.spread;
  s.episode_length = st.t;
  s.detected = !st.alive;
  s.survival_steps = st.t - (s.detected ? 1 : 0);
  s.final_influence_ratio = influence_ratio(st.spread, ep.graph().vertex_count());
  s.discounted_reward = st.discounted_reward;
  s.followers = st.followers;
  return s;
}

std::vector<EpisodeSummary> run_episodes(const EpisodeConfig& cfg, const MultiRelGraph& g,
                                         std::size_t count) {
  std::vector<EpisodeSummary> out(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      EpisodeConfig c = cfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(i);
      out[i] = run_episode(c, g);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<VertexId> follower_seed_set(const MultiRelGraph& g, RelationKind r, VertexId bot,
                                        std::size_t k, const EpisodeConfig& cfg) {
  if (bot >= g.vertex_count()) throw std::domain_error("follower_seed_set: bot not in graph");
  if (k + 1 > g.vertex_count())
    throw std::domain_error("follower_seed_set: budget exceeds eligible vertex count");
  MultiRelGraph work = g;
  std::vector<VertexId> followers;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t step_seed =
        mix_keys(derive_seed(cfg.seed, Stream::Selection), static_cast<std::uint64_t>(i));
    const auto pick = pick_follower(work, r, bot, followers, cfg, step_seed);
    if (!pick.follower) throw std::domain_error("follower_seed_set: ran out of candidates");
    work.add_edge(bot, *pick.follower, r, static_cast<std::int64_t>(i));
    followers.push_back(*pick.follower);
  }
  return followers;
}

}  // namespace sebot
