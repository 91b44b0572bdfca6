#include "sebot/influence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sebot {

double InfluenceMap::at(NodeId id) const {
  if (!contains(id)) throw std::out_of_range("InfluenceMap: no value for node " + std::to_string(id));
  return values_[static_cast<std::size_t>(id)];
}

bool InfluenceMap::contains(NodeId id) const noexcept {
  return id >= 0 && static_cast<std::size_t>(id) < values_.size() && id != root_ &&
         !std::isnan(values_[static_cast<std::size_t>(id)]);
}

InfluenceMap community_influence(const EncodingTree& t) {
  std::vector<double> values(t.arena_size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<NodeId> stack;
  for (NodeId c : t.node(t.root()).children) {
    values[c] = assigned_entropy(t, c);
    stack.push_back(c);
  }
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    for (NodeId c : t.node(cur).children) {
      values[c] = values[cur] + assigned_entropy(t, c);
      stack.push_back(c);
    }
  }
  return InfluenceMap(std::move(values), t.root());
}

namespace {

int subtree_height(const EncodingTree& t, NodeId id) {
  const auto& n = t.node(id);
  if (n.children.empty()) return 0;
  int h = 0;
  for (NodeId c : n.children) h = std::max(h, subtree_height(t, c) + 1);
  return h;
}

}  // namespace

PruneResult prune(const EncodingTree& t, const std::unordered_set<VertexId>& protected_vertices,
                  const PruneOptions& opts) {
  if (!(opts.ratio >= 0.0 && opts.ratio < 1.0))
    throw std::domain_error("prune: ratio must satisfy 0 <= ratio < 1");
  if (opts.subtree_height < 1) throw std::domain_error("prune: subtree height must be >= 1");

  const auto influence = community_influence(t);
  struct Candidate {
    double influence;
    NodeId id;
    std::vector<VertexId> members;
  };
  std::vector<Candidate> candidates;
  for (NodeId id : t.live_nodes()) {
    if (id == t.root() || t.is_leaf(id)) continue;
    if (subtree_height(t, id) != opts.subtree_height) continue;
    candidates.push_back({influence.at(id), id, t.vertices(id)});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.influence != b.influence) return a.influence < b.influence;
    return a.id < b.id;
  });

  const double budget = opts.ratio * static_cast<double>(t.graph().active_count());
  std::vector<VertexId> removed;
  std::vector<NodeId> pruned;
  for (const auto& c : candidates) {
    const bool guarded = std::any_of(c.members.begin(), c.members.end(), [&](VertexId v) {
      return protected_vertices.contains(v);
    });
    if (guarded) continue;
    if (static_cast<double>(removed.size() + c.members.size()) > budget) break;
    removed.insert(removed.end(), c.members.begin(), c.members.end());
    pruned.push_back(c.id);
  }

  PruneResult out{t, t.graph_ptr(), {}, pruned};
  if (pruned.empty()) return out;

  std::sort(removed.begin(), removed.end());
  out.graph = std::make_shared<const WeightedGraph>(t.graph().without_vertices(removed));
  for (NodeId id : pruned)
    if (out.tree.contains(id)) out.tree.remove_subtree(id);
  out.tree.rebind(out.graph);
  out.tree.compact();
  out.removed = std::move(removed);
  return out;
}

void write_influence_report(std::ostream& out, const EncodingTree& t, const InfluenceMap& influence,
                            std::span<const NodeId> pruned) {
  out << "node_id,size,I_alpha,pruned\n";
  char buf[64];
  for (NodeId id : t.live_nodes()) {
    if (id == t.root()) continue;
    const bool was_pruned = std::find(pruned.begin(), pruned.end(), id) != pruned.end();
    std::snprintf(buf, sizeof buf, "%.9g", influence.at(id));
    out << id << ',' << t.vertices(id).size() << ',' << buf << ','
        << (was_pruned ? "true" : "false") << '\n';
  }
}

}  // namespace sebot
