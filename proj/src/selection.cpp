#include "sebot/selection.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "sebot/rng.hpp"

namespace sebot {

std::string_view selector_name(SelectorKind k) noexcept {
  switch (k) {
    case SelectorKind::Entropy: return "entropy";
    case SelectorKind::Celf: return "celf";
    case SelectorKind::Degree: return "degree";
    case SelectorKind::Random: return "random";
  }
  return "?";
}

std::optional<SelectorKind> parse_selector(std::string_view name) noexcept {
  for (auto k : {SelectorKind::Entropy, SelectorKind::Celf, SelectorKind::Degree,
                 SelectorKind::Random})
    if (name == selector_name(k)) return k;
  return std::nullopt;
}

double conditional_se(const EncodingTree& t, VertexId u, VertexId b) {
  if (u == b) return 0.0;
  const NodeId leaf_u = t.leaf_of(u);
  const NodeId meet = t.lowest_common_ancestor(leaf_u, t.leaf_of(b));
  double h = 0.0;
  for (NodeId x = leaf_u; x != meet; x = t.node(x).parent) h += assigned_entropy(t, x);
  return h;
}

SelectionDistribution normalize_scores(std::vector<VertexId> candidates, std::vector<double> scores) {
  if (candidates.empty()) throw std::domain_error("selection: empty candidate set");
  if (candidates.size() != scores.size())
    throw std::invalid_argument("selection: candidates and scores differ in length");
  SelectionDistribution d{std::move(candidates), std::move(scores), {}};
  const double total = std::accumulate(d.scores.begin(), d.scores.end(), 0.0);
  d.probs.resize(d.scores.size());
  if (total > 0.0) {
    for (std::size_t i = 0; i < d.scores.size(); ++i) d.probs[i] = d.scores[i] / total;
  } else {
    std::fill(d.probs.begin(), d.probs.end(), 1.0 / static_cast<double>(d.probs.size()));
  }
  return d;
}

SelectionDistribution selection_distribution(const EncodingTree& t, VertexId bot,
                                             std::span<const VertexId> candidates) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (VertexId u : candidates) scores.push_back(conditional_se(t, u, bot));
  return normalize_scores({candidates.begin(), candidates.end()}, std::move(scores));
}

VertexId select_follower(const SelectionDistribution& dist, SelectMode mode, std::uint64_t seed) {
  if (dist.candidates.empty()) throw std::domain_error("select_follower: empty distribution");
  if (mode == SelectMode::Argmax) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < dist.probs.size(); ++i) {
      if (dist.probs[i] > dist.probs[best] ||
          (dist.probs[i] == dist.probs[best] && dist.candidates[i] < dist.candidates[best]))
        best = i;
    }
    return dist.candidates[best];
  }
  auto eng = make_engine(seed, Stream::Selection);
  const double u = next_unit(eng);
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    if (dist.probs[i] <= 0.0) continue;
    last_positive = i;
    acc += dist.probs[i];
    if (u < acc) return dist.candidates[i];
  }
  return dist.candidates[last_positive];
}

std::vector<VertexId> celf_select(const WeightedGraph& g, std::size_t k, const DiffusionConfig& cfg,
                                  std::span<const VertexId> excluded) {
  if (k > g.vertex_count()) throw std::domain_error("celf_select: budget exceeds vertex count");
  const std::unordered_set<VertexId> skip(excluded.begin(), excluded.end());

  struct Entry {
    std::uint64_t gain;  // reached-count total over all trials
    VertexId vertex;
    std::size_t round;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.vertex > b.vertex;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  std::vector<VertexId> chosen;
  chosen.reserve(k);
  std::uint64_t current = 0;
  std::vector<VertexId> probe(1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (skip.contains(v)) continue;
    probe[0] = v;
    heap.push({icm_total_reached(g, probe, cfg), v, 0});
  }

  while (chosen.size() < k && !heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    if (top.round == chosen.size()) {
      chosen.push_back(top.vertex);
      current += top.gain;
      continue;
    }
    probe = chosen;
    probe.push_back(top.vertex);
    const std::uint64_t with = icm_total_reached(g, probe, cfg);
    heap.push({with - current, top.vertex, chosen.size()});
  }
  if (chosen.size() < k) throw std::domain_error("celf_select: not enough eligible vertices");
  return chosen;
}

std::vector<VertexId> degree_select(const WeightedGraph& g, std::size_t k,
                                    std::span<const VertexId> excluded) {
  if (k > g.vertex_count()) throw std::domain_error("degree_select: budget exceeds vertex count");
  const std::unordered_set<VertexId> skip(excluded.begin(), excluded.end());
  std::vector<VertexId> order;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!skip.contains(v)) order.push_back(v);
  if (k > order.size()) throw std::domain_error("degree_select: not enough eligible vertices");
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return g.out_degree(a) > g.out_degree(b);
  });
  order.resize(k);
  return order;
}

}  // namespace sebot
