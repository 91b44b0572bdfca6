#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

#include "sebot/encoding_tree.hpp"

namespace sebot {

/// Per-node community influence I_a: the sum of assigned entropies on the
/// path from a up to, but excluding, the root. The root has no value.
class InfluenceMap {
 public:
  InfluenceMap() = default;
  InfluenceMap(std::vector<double> values, NodeId root)
      : values_(std::move(values)), root_(root) {}

  /// Throws std::out_of_range for the root or ids outside the tree.
  double at(NodeId id) const;
  bool contains(NodeId id) const noexcept;
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;  // NaN for root and dead arena slots
  NodeId root_ = kNoNode;
};

/// One top-down pass accumulating assigned entropies.
InfluenceMap community_influence(const EncodingTree& t);

struct PruneResult {
  EncodingTree tree;
  std::shared_ptr<const WeightedGraph> graph;
  std::vector<VertexId> removed;          // ascending
  std::vector<NodeId> pruned_subtrees;    // ids in the input tree
};

struct PruneOptions {
  double ratio = 0.05;
  int subtree_height = 1;
};

/// Removes whole low-influence subtrees of the configured height (interior
/// nodes whose children are all leaves, for height 1), in ascending I order
/// (ties to the smaller id), while the cumulative removed vertex count stays
/// within ratio * active vertex count. Subtrees holding a protected vertex
/// are skipped; the scan stops at the first subtree that would overflow the
/// budget. The root is never pruned. Removed vertices are deactivated in the
/// returned graph and the tree caches are recomputed against it.
///
/// Throws std::domain_error unless 0 <= ratio < 1.
PruneResult prune(const EncodingTree& t, const std::unordered_set<VertexId>& protected_vertices,
                  const PruneOptions& opts = {});

/// CSV `node_id,size,I_alpha,pruned` over every non-root node of t.
void write_influence_report(std::ostream& out, const EncodingTree& t, const InfluenceMap& influence,
                            std::span<const NodeId> pruned = {});

}  // namespace sebot
