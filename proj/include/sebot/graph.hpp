#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sebot {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

enum class RelationKind : std::uint8_t { Tweet = 0, Retweet = 1, Mention = 2, Reply = 3 };

inline constexpr std::array<RelationKind, 4> kAllRelations{
    RelationKind::Tweet, RelationKind::Retweet, RelationKind::Mention, RelationKind::Reply};
inline constexpr std::size_t kRelationCount = kAllRelations.size();

/// Lower-case name: "tweet", "retweet", "mention", "reply".
std::string_view relation_name(RelationKind r) noexcept;
/// Two-letter edge-list code: TW, RT, MT, RE.
std::string_view relation_code(RelationKind r) noexcept;
/// Accepts either the edge-list code or the name (case-insensitive).
std::optional<RelationKind> parse_relation(std::string_view token) noexcept;

struct Event {
  VertexId src = 0;
  VertexId dst = 0;
  RelationKind relation = RelationKind::Tweet;
  std::int64_t timestamp = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

struct TimedEdge {
  VertexId src = 0;
  VertexId dst = 0;
  std::int64_t timestamp = 0;

  friend bool operator==(const TimedEdge&, const TimedEdge&) = default;
};

/// Directed multi-relational user graph. Edge lists are kept per relation,
/// deduplicated on (src, dst); the first occurrence's timestamp wins.
class MultiRelGraph {
 public:
  MultiRelGraph() = default;
  explicit MultiRelGraph(std::size_t n) : n_(n) {}

  std::size_t vertex_count() const noexcept { return n_; }
  std::span<const TimedEdge> edges(RelationKind r) const noexcept {
    return edges_[index(r)];
  }
  std::size_t edge_count() const noexcept;
  std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }

  /// Returns false when the edge was a self-loop or a duplicate.
  bool add_edge(VertexId src, VertexId dst, RelationKind r, std::int64_t timestamp);
  bool has_edge(VertexId src, VertexId dst, RelationKind r) const;
  /// Grows the vertex set by one isolated vertex and returns its id.
  VertexId add_vertex();

  /// All edges as events, relation-major in insertion order.
  std::vector<Event> events() const;

  friend bool operator==(const MultiRelGraph& a, const MultiRelGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  static std::size_t index(RelationKind r) noexcept { return static_cast<std::size_t>(r); }
  static std::uint64_t key(VertexId s, VertexId d) noexcept {
    return (static_cast<std::uint64_t>(s) << 32) | d;
  }

  std::size_t n_ = 0;
  std::array<std::vector<TimedEdge>, kRelationCount> edges_{};
  std::array<std::unordered_set<std::uint64_t>, kRelationCount> seen_{};
  std::size_t dropped_self_loops_ = 0;
};

/// Throws std::invalid_argument if an index is >= n or a timestamp is negative.
MultiRelGraph build_multirel(std::span<const Event> events, std::size_t n);

/// Row-major n x d matrix of per-vertex representation vectors.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t dim);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<double> row(std::size_t v) noexcept { return {data_.data() + v * dim_, dim_}; }
  std::span<const double> row(std::size_t v) const noexcept {
    return {data_.data() + v * dim_, dim_};
  }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Deterministic per-vertex features from per-relation in/out degree,
/// total activity and first/last activity time, folded into dimension d.
FeatureMatrix structural_features(const MultiRelGraph& g, std::size_t d);

struct WeightedEdge {
  VertexId src = 0;
  VertexId dst = 0;
  double weight = 1.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct Neighbor {
  VertexId vertex = 0;
  double weight = 0.0;
};

/// Homogeneous weighted graph with a directed view (for diffusion) and a
/// symmetric view (for entropy), where each directed edge adds its weight to
/// both endpoint degrees and anti-parallel edges are summed.
///
/// Vertex ids stay stable when vertices are removed; removed vertices are
/// simply marked inactive and lose their incident edges.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges, std::vector<bool> active = {});

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t active_count() const noexcept { return active_count_; }
  bool is_active(VertexId v) const noexcept { return active_[v]; }
  std::span<const WeightedEdge> edges() const noexcept { return edges_; }

  /// Directed out-neighbours. The position of a target inside the global
  /// out-target array is a stable per-edge index (see out_edge_base).
  std::span<const VertexId> out_neighbors(VertexId v) const noexcept {
    return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
  }
  std::size_t out_edge_base(VertexId v) const noexcept { return out_offsets_[v]; }
  std::size_t out_degree(VertexId v) const noexcept {
    return out_offsets_[v + 1] - out_offsets_[v];
  }

  std::span<const Neighbor> sym_neighbors(VertexId v) const noexcept {
    return {sym_.data() + sym_offsets_[v], sym_offsets_[v + 1] - sym_offsets_[v]};
  }
  double degree(VertexId v) const noexcept { return degree_[v]; }
  double volume() const noexcept { return volume_; }

  /// Copy with the given vertices deactivated and their edges dropped.
  WeightedGraph without_vertices(std::span<const VertexId> removed) const;

 private:
  std::size_t n_ = 0;
  std::size_t active_count_ = 0;
  std::vector<bool> active_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<VertexId> out_targets_;
  std::vector<std::size_t> sym_offsets_{0};
  std::vector<Neighbor> sym_;
  std::vector<double> degree_;
  double volume_ = 0.0;
};

/// 1 - 6 * ||rank(a) - rank(b)||^2 / (d (d^2 - 1)), average ranks for ties.
/// Throws std::domain_error for d < 2 or mismatched lengths.
double spearman_weight(std::span<const double> a, std::span<const double> b);

/// Average (fractional) 1-based ranks of the components of x.
std::vector<double> average_ranks(std::span<const double> x);

inline constexpr double kMinEdgeWeight = 1e-6;

/// Maps a correlation in [-1, 1] to a strictly positive edge weight.
constexpr double positive_weight(double w) noexcept {
  const double m = (1.0 + w) / 2.0;
  return m < kMinEdgeWeight ? kMinEdgeWeight : m;
}

/// Keeps only edges of kind r, weighted by positive_weight(spearman(...)).
WeightedGraph project(const MultiRelGraph& g, RelationKind r, const FeatureMatrix& feats);

/// Union of all relations with unit weights; the ICM diffusion substrate.
WeightedGraph diffusion_view(const MultiRelGraph& g);

}  // namespace sebot
