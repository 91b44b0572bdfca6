#include "sebot/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sebot/rng.hpp"

namespace sebot {

namespace {

// Reusable per-thread BFS state; `stamp` avoids clearing `visited` per trial.
struct CascadeScratch {
  std::vector<std::uint32_t> visited;
  std::vector<VertexId> frontier;
  std::uint32_t stamp = 0;

  explicit CascadeScratch(std::size_t n) : visited(n, 0) { frontier.reserve(n); }
};

std::uint32_t run_cascade(const WeightedGraph& g, std::span<const VertexId> seeds, double p,
                          std::uint64_t trial_key, CascadeScratch& s) {
  if (++s.stamp == 0) {
    std::fill(s.visited.begin(), s.visited.end(), 0);
    s.stamp = 1;
  }
  s.frontier.clear();
  for (VertexId v : seeds) {
    if (s.visited[v] != s.stamp) {
      s.visited[v] = s.stamp;
      s.frontier.push_back(v);
    }
  }
  std::size_t head = 0;
  while (head < s.frontier.size()) {
    const VertexId v = s.frontier[head++];
    const std::size_t base = g.out_edge_base(v);
    const auto targets = g.out_neighbors(v);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const VertexId u = targets[k];
      if (s.visited[u] == s.stamp) continue;
      if (to_unit(mix_keys(trial_key, base + k)) < p) {
        s.visited[u] = s.stamp;
        s.frontier.push_back(u);
      }
    }
  }
  return static_cast<std::uint32_t>(s.frontier.size());
}

void check_inputs(const WeightedGraph& g, std::span<const VertexId> seeds,
                  const DiffusionConfig& cfg) {
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("icm: p must lie in [0, 1]");
  for (VertexId v : seeds)
    if (v >= g.vertex_count()) throw std::invalid_argument("icm: seed vertex out of range");
}

std::uint64_t trial_key(const DiffusionConfig& cfg, std::uint64_t trial) {
  return mix_keys(derive_seed(cfg.seed, Stream::Diffusion), trial);
}

SpreadEstimate summarize(std::span<const std::uint32_t> counts) {
  const auto trials = static_cast<double>(counts.size());
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double mean = static_cast<double>(total) / trials;
  if (counts.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - mean;
    ss += d * d;
  }
  const double var = ss / (trials - 1.0);
  return {mean, std::sqrt(var / trials)};
}

}  // namespace

std::vector<std::uint32_t> icm_trial_counts(const WeightedGraph& g, std::span<const VertexId> seeds,
                                            const DiffusionConfig& cfg, bool parallel) {
  check_inputs(g, seeds, cfg);
  std::vector<std::uint32_t> counts(cfg.trials, 0);
  if (seeds.empty()) return counts;
  const auto trials = static_cast<std::int64_t>(cfg.trials);

  if (parallel) {
#pragma omp parallel
    {
      CascadeScratch scratch(g.vertex_count());
#pragma omp for schedule(static)
      for (std::int64_t t = 0; t < trials; ++t)
        counts[t] = run_cascade(g, seeds, cfg.p, trial_key(cfg, static_cast<std::uint64_t>(t)), scratch);
    }
  } else {
    CascadeScratch scratch(g.vertex_count());
    for (std::int64_t t = 0; t < trials; ++t)
      counts[t] = run_cascade(g, seeds, cfg.p, trial_key(cfg, static_cast<std::uint64_t>(t)), scratch);
  }
  return counts;
}

std::uint64_t icm_total_reached(const WeightedGraph& g, std::span<const VertexId> seeds,
                                const DiffusionConfig& cfg) {
  std::uint64_t total = 0;
  for (auto c : icm_trial_counts(g, seeds, cfg)) total += c;
  return total;
}

SpreadEstimate icm_simulate(const WeightedGraph& g, std::span<const VertexId> seeds,
                            const DiffusionConfig& cfg) {
  if (seeds.empty()) throw std::domain_error("icm_simulate: empty seed set");
  if (cfg.trials == 0) throw std::domain_error("icm_simulate: trials must be >= 1");
  return summarize(icm_trial_counts(g, seeds, cfg, true));
}

SpreadEstimate icm_simulate_serial(const WeightedGraph& g, std::span<const VertexId> seeds,
                                   const DiffusionConfig& cfg) {
  if (seeds.empty()) throw std::domain_error("icm_simulate: empty seed set");
  if (cfg.trials == 0) throw std::domain_error("icm_simulate: trials must be >= 1");
  return summarize(icm_trial_counts(g, seeds, cfg, false));
}

double influence_ratio(double spread, std::size_t n) {
  if (n == 0) throw std::domain_error("influence_ratio: n must be > 0");
  return std::clamp(spread / static_cast<double>(n), 0.0, 1.0);
}

}  // namespace sebot
