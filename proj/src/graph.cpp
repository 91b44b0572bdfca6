#include "sebot/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace sebot {

std::string_view relation_name(RelationKind r) noexcept {
  switch (r) {
    case RelationKind::Tweet: return "tweet";
    case RelationKind::Retweet: return "retweet";
    case RelationKind::Mention: return "mention";
    case RelationKind::Reply: return "reply";
  }
  return "?";
}

std::string_view relation_code(RelationKind r) noexcept {
  switch (r) {
    case RelationKind::Tweet: return "TW";
    case RelationKind::Retweet: return "RT";
    case RelationKind::Mention: return "MT";
    case RelationKind::Reply: return "RE";
  }
  return "?";
}

std::optional<RelationKind> parse_relation(std::string_view token) noexcept {
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto r : kAllRelations) {
    std::string code(relation_code(r));
    std::transform(code.begin(), code.end(), code.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == code || lower == relation_name(r)) return r;
  }
  return std::nullopt;
}

// --- MultiRelGraph --------------------------------------------------------

std::size_t MultiRelGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& e : edges_) total += e.size();
  return total;
}

bool MultiRelGraph::add_edge(VertexId src, VertexId dst, RelationKind r, std::int64_t timestamp) {
  if (src >= n_ || dst >= n_) throw std::invalid_argument("add_edge: vertex out of range");
  if (src == dst) {
    ++dropped_self_loops_;
    return false;
  }
  if (!seen_[index(r)].insert(key(src, dst)).second) return false;
  edges_[index(r)].push_back({src, dst, timestamp});
  return true;
}

bool MultiRelGraph::has_edge(VertexId src, VertexId dst, RelationKind r) const {
  return seen_[index(r)].contains(key(src, dst));
}

VertexId MultiRelGraph::add_vertex() { return static_cast<VertexId>(n_++); }

std::vector<Event> MultiRelGraph::events() const {
  std::vector<Event> out;
  out.reserve(edge_count());
  for (auto r : kAllRelations)
    for (const auto& e : edges_[index(r)]) out.push_back({e.src, e.dst, r, e.timestamp});
  return out;
}

MultiRelGraph build_multirel(std::span<const Event> events, std::size_t n) {
  MultiRelGraph g(n);
  for (const auto& ev : events) {
    if (ev.src >= n || ev.dst >= n)
      throw std::invalid_argument("build_multirel: vertex index " +
                                  std::to_string(std::max(ev.src, ev.dst)) + " >= n = " +
                                  std::to_string(n));
    if (ev.timestamp < 0) throw std::invalid_argument("build_multirel: negative timestamp");
    g.add_edge(ev.src, ev.dst, ev.relation, ev.timestamp);
  }
  return g;
}

// --- features -------------------------------------------------------------

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t dim)
    : rows_(rows), dim_(dim), data_(rows * dim, 0.0) {}

namespace {

// 4 relations x (in, out) + total + first + last
constexpr std::size_t kRawFeatures = 2 * kRelationCount + 3;

}  // namespace

FeatureMatrix structural_features(const MultiRelGraph& g, std::size_t d) {
  if (d < 2) throw std::domain_error("structural_features: dimension must be >= 2");
  const std::size_t n = g.vertex_count();

  std::vector<std::array<double, kRawFeatures>> raw(n);
  std::vector<std::int64_t> first(n, std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> last(n, std::numeric_limits<std::int64_t>::min());
  std::int64_t t_min = std::numeric_limits<std::int64_t>::max();
  std::int64_t t_max = std::numeric_limits<std::int64_t>::min();

  for (auto r : kAllRelations) {
    const std::size_t k = static_cast<std::size_t>(r);
    for (const auto& e : g.edges(r)) {
      raw[e.src][2 * k + 1] += 1.0;
      raw[e.dst][2 * k] += 1.0;
      for (VertexId v : {e.src, e.dst}) {
        raw[v][2 * kRelationCount] += 1.0;
        first[v] = std::min(first[v], e.timestamp);
        last[v] = std::max(last[v], e.timestamp);
      }
      t_min = std::min(t_min, e.timestamp);
      t_max = std::max(t_max, e.timestamp);
    }
  }

  const double span = t_max > t_min ? static_cast<double>(t_max - t_min) : 1.0;
  FeatureMatrix out(n, d);
  for (std::size_t v = 0; v < n; ++v) {
    auto& f = raw[v];
    for (std::size_t i = 0; i < 2 * kRelationCount + 1; ++i) f[i] = std::log1p(f[i]);
    if (first[v] <= last[v]) {
      // offset by one so an active vertex never collides with the isolated all-zero row
      f[kRawFeatures - 2] = 1.0 + static_cast<double>(first[v] - t_min) / span;
      f[kRawFeatures - 1] = 1.0 + static_cast<double>(last[v] - t_min) / span;
    }
    auto row = out.row(v);
    if (d >= kRawFeatures) {
      std::copy(f.begin(), f.end(), row.begin());
    } else {
      for (std::size_t i = 0; i < kRawFeatures; ++i) row[i % d] += f[i];
    }
  }
  return out;
}

// --- WeightedGraph --------------------------------------------------------

WeightedGraph::WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges,
                             std::vector<bool> active)
    : n_(n), active_(std::move(active)), edges_(std::move(edges)) {
  if (active_.empty()) active_.assign(n, true);
  if (active_.size() != n) throw std::invalid_argument("WeightedGraph: active mask size != n");
  active_count_ = static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true));

  std::map<std::pair<VertexId, VertexId>, double> undirected;
  std::vector<std::size_t> out_count(n, 0);
  for (const auto& e : edges_) {
    if (e.src >= n || e.dst >= n) throw std::invalid_argument("WeightedGraph: vertex out of range");
    if (e.src == e.dst) throw std::invalid_argument("WeightedGraph: self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("WeightedGraph: weights must be positive and finite");
    if (!active_[e.src] || !active_[e.dst])
      throw std::invalid_argument("WeightedGraph: edge touches an inactive vertex");
    ++out_count[e.src];
    undirected[{std::min(e.src, e.dst), std::max(e.src, e.dst)}] += e.weight;
  }

  out_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) out_offsets_[v + 1] = out_offsets_[v] + out_count[v];
  out_targets_.resize(edges_.size());
  {
    std::vector<std::size_t> cursor(out_offsets_.begin(), out_offsets_.end() - 1);
    for (const auto& e : edges_) out_targets_[cursor[e.src]++] = e.dst;
  }

  std::vector<std::size_t> sym_count(n, 0);
  for (const auto& [pair, w] : undirected) {
    ++sym_count[pair.first];
    ++sym_count[pair.second];
  }
  sym_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) sym_offsets_[v + 1] = sym_offsets_[v] + sym_count[v];
  sym_.resize(sym_offsets_[n]);
  degree_.assign(n, 0.0);
  {
    std::vector<std::size_t> cursor(sym_offsets_.begin(), sym_offsets_.end() - 1);
    for (const auto& [pair, w] : undirected) {
      sym_[cursor[pair.first]++] = {pair.second, w};
      sym_[cursor[pair.second]++] = {pair.first, w};
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    double d = 0.0;
    for (const auto& nb : sym_neighbors(static_cast<VertexId>(v))) d += nb.weight;
    degree_[v] = d;
    volume_ += d;
  }
}

WeightedGraph WeightedGraph::without_vertices(std::span<const VertexId> removed) const {
  std::vector<bool> active = active_;
  for (VertexId v : removed) {
    if (v >= n_) throw std::invalid_argument("without_vertices: vertex out of range");
    active[v] = false;
  }
  std::vector<WeightedEdge> kept;
  kept.reserve(edges_.size());
  for (const auto& e : edges_)
    if (active[e.src] && active[e.dst]) kept.push_back(e);
  return WeightedGraph(n_, std::move(kept), std::move(active));
}

WeightedGraph project(const MultiRelGraph& g, RelationKind r, const FeatureMatrix& feats) {
  if (feats.rows() != g.vertex_count())
    throw std::invalid_argument("project: feature matrix has wrong row count");
  std::vector<WeightedEdge> edges;
  edges.reserve(g.edges(r).size());
  for (const auto& e : g.edges(r)) {
    const double w = spearman_weight(feats.row(e.src), feats.row(e.dst));
    edges.push_back({e.src, e.dst, positive_weight(w)});
  }
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

WeightedGraph diffusion_view(const MultiRelGraph& g) {
  std::vector<WeightedEdge> edges;
  std::unordered_set<std::uint64_t> seen;
  for (auto r : kAllRelations) {
    for (const auto& e : g.edges(r)) {
      const auto k = (static_cast<std::uint64_t>(e.src) << 32) | e.dst;
      if (seen.insert(k).second) edges.push_back({e.src, e.dst, 1.0});
    }
  }
  return WeightedGraph(g.vertex_count(), std::move(edges));
}

}  // namespace sebot
