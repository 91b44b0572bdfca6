#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sebot/graph.hpp"

namespace sebot {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct TreeNode {
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  VertexId vertex = kNoVertex;  // set on leaves only
  double volume = 0.0;          // sum of member degrees
  double cut = 0.0;             // symmetric weight leaving the member set
  int depth = 0;                // root layer is 0
  bool alive = true;
};

/// Rooted hierarchy of vertex communities over a WeightedGraph.
///
/// Nodes live in an arena; removed nodes become tombstones until compact()
/// renumbers the survivors in ascending id order. Leaves biject with the
/// graph's active vertices. Interior vertex sets are derived by traversal.
class EncodingTree {
 public:
  EncodingTree() = default;

  /// Root with one leaf child per active vertex (leaf ids follow vertex order).
  static EncodingTree one_layer(std::shared_ptr<const WeightedGraph> graph);

  const WeightedGraph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const WeightedGraph>& graph_ptr() const noexcept { return graph_; }

  NodeId root() const noexcept { return root_; }
  std::size_t arena_size() const noexcept { return nodes_.size(); }
  std::size_t live_count() const noexcept { return live_; }
  const TreeNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  bool contains(NodeId id) const noexcept {
    return id >= 0 && static_cast<std::size_t>(id) < nodes_.size() && nodes_[id].alive;
  }
  bool is_leaf(NodeId id) const { return node(id).children.empty(); }
  NodeId leaf_of(VertexId v) const;

  /// Live node ids in ascending order.
  std::vector<NodeId> live_nodes() const;
  /// Live non-leaf nodes at the given depth, ascending.
  std::vector<NodeId> interior_at_layer(int layer) const;
  /// Longest root-to-leaf path length.
  int height() const;

  std::vector<VertexId> vertices(NodeId id) const;
  /// Ancestors of id from its parent up to the root.
  std::vector<NodeId> ancestors(NodeId id) const;
  NodeId lowest_common_ancestor(NodeId a, NodeId b) const;

  // --- structural edits -------------------------------------------------
  /// Creates an interior node under `parent` adopting `children` (all must be
  /// children of parent). The new node takes the slot of the first adopted
  /// child. `cut` is the caller-computed boundary weight of the union.
  NodeId adopt(NodeId parent, std::span<const NodeId> children, double cut);
  /// Removes an interior non-root node, reattaching its children in place.
  void dissolve(NodeId id);
  /// Removes a non-root subtree; an interior ancestor left childless is removed too.
  void remove_subtree(NodeId id);
  /// Rebinds to a graph and recomputes volume, cut and depth for every node.
  void rebind(std::shared_ptr<const WeightedGraph> graph);
  void recompute_caches();
  /// Renumbers live nodes densely, preserving relative id order.
  void compact();

  /// Standalone scratch copy of the subtree at `id`. The copy's root keeps the
  /// original volume, so operators on the copy's root score exactly as on id.
  EncodingTree clone_subtree(NodeId id) const;

  /// Full traversal check: partition property, leaf/vertex bijection,
  /// depths, and cached volume/cut against recomputation (relative `tol`).
  /// Returns an empty string when valid, else a description of the first fault.
  std::string validate(double tol = 1e-9) const;

  // Used by the JSON loader.
  static EncodingTree from_parts(std::shared_ptr<const WeightedGraph> graph,
                                 std::vector<TreeNode> nodes, NodeId root);

 private:
  void set_depths(NodeId from, int depth);
  double boundary_weight(std::span<const VertexId> members) const;

  std::shared_ptr<const WeightedGraph> graph_;
  std::vector<TreeNode> nodes_;
  std::vector<NodeId> leaf_of_;  // per vertex, kNoNode when inactive
  NodeId root_ = kNoNode;
  std::size_t live_ = 0;
};

struct OneDimEntropy {
  double value = 0.0;
  bool degenerate = false;  // vol(G) == 0
};

/// -sum_v (d_v/vol) log2(d_v/vol) over the symmetric view.
OneDimEntropy one_dim_entropy(const WeightedGraph& g);

/// -(g_a / vol) log2(V_a / V_parent). Throws std::domain_error for the root.
double assigned_entropy(const EncodingTree& t, NodeId id);

/// Sum of assigned entropies of every non-root node.
double tree_entropy(const EncodingTree& t);

}  // namespace sebot
