#include "sebot/encoding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sebot {

EncodingTree EncodingTree::one_layer(std::shared_ptr<const WeightedGraph> graph) {
  if (!graph) throw std::invalid_argument("one_layer: null graph");
  EncodingTree t;
  t.graph_ = std::move(graph);
  const auto& g = *t.graph_;
  t.leaf_of_.assign(g.vertex_count(), kNoNode);

  TreeNode root;
  root.volume = g.volume();
  t.nodes_.push_back(root);
  t.root_ = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_active(v)) continue;
    TreeNode leaf;
    leaf.parent = 0;
    leaf.vertex = v;
    leaf.volume = g.degree(v);
    leaf.cut = g.degree(v);
    leaf.depth = 1;
    const auto id = static_cast<NodeId>(t.nodes_.size());
    t.nodes_.push_back(std::move(leaf));
    t.nodes_[0].children.push_back(id);
    t.leaf_of_[v] = id;
  }
  t.live_ = t.nodes_.size();
  return t;
}

NodeId EncodingTree::leaf_of(VertexId v) const {
  if (v >= leaf_of_.size() || leaf_of_[v] == kNoNode)
    throw std::out_of_range("leaf_of: vertex " + std::to_string(v) + " not in tree");
  return leaf_of_[v];
}

std::vector<NodeId> EncodingTree::live_nodes() const {
  std::vector<NodeId> out;
  out.reserve(live_);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].alive) out.push_back(static_cast<NodeId>(i));
  return out;
}

std::vector<NodeId> EncodingTree::interior_at_layer(int layer) const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.alive && n.depth == layer && !n.children.empty()) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

int EncodingTree::height() const {
  int h = 0;
  for (const auto& n : nodes_)
    if (n.alive) h = std::max(h, n.depth);
  return h;
}

std::vector<VertexId> EncodingTree::vertices(NodeId id) const {
  std::vector<VertexId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    const auto& n = node(cur);
    if (n.children.empty()) {
      if (n.vertex != kNoVertex) out.push_back(n.vertex);
    } else {
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
  }
  return out;
}

std::vector<NodeId> EncodingTree::ancestors(NodeId id) const {
  std::vector<NodeId> out;
  for (NodeId p = node(id).parent; p != kNoNode; p = node(p).parent) out.push_back(p);
  return out;
}

NodeId EncodingTree::lowest_common_ancestor(NodeId a, NodeId b) const {
  while (node(a).depth > node(b).depth) a = node(a).parent;
  while (node(b).depth > node(a).depth) b = node(b).parent;
  while (a != b) {
    a = node(a).parent;
    b = node(b).parent;
  }
  return a;
}

void EncodingTree::set_depths(NodeId from, int depth) {
  std::vector<std::pair<NodeId, int>> stack{{from, depth}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    nodes_[id].depth = d;
    for (NodeId c : nodes_[id].children) stack.emplace_back(c, d + 1);
  }
}

double EncodingTree::boundary_weight(std::span<const VertexId> members) const {
  std::unordered_set<VertexId> inside(members.begin(), members.end());
  double cut = 0.0;
  for (VertexId v : members)
    for (const auto& nb : graph_->sym_neighbors(v))
      if (!inside.contains(nb.vertex)) cut += nb.weight;
  return cut;
}

NodeId EncodingTree::adopt(NodeId parent, std::span<const NodeId> children, double cut) {
  if (children.empty()) throw std::invalid_argument("adopt: no children");
  auto& siblings = nodes_.at(parent).children;
  std::unordered_set<NodeId> adopted(children.begin(), children.end());

  const auto id = static_cast<NodeId>(nodes_.size());
  TreeNode fresh;
  fresh.parent = parent;
  fresh.depth = nodes_[parent].depth + 1;
  fresh.cut = cut;

  std::vector<NodeId> kept;
  kept.reserve(siblings.size() - children.size() + 1);
  bool placed = false;
  for (NodeId c : siblings) {
    if (adopted.contains(c)) {
      if (!placed) {
        kept.push_back(id);
        placed = true;
      }
      fresh.children.push_back(c);
    } else {
      kept.push_back(c);
    }
  }
  if (fresh.children.size() != children.size())
    throw std::invalid_argument("adopt: some nodes are not children of the parent");

  for (NodeId c : fresh.children) fresh.volume += nodes_[c].volume;
  siblings = std::move(kept);
  nodes_.push_back(std::move(fresh));
  ++live_;
  for (NodeId c : nodes_[id].children) {
    nodes_[c].parent = id;
    set_depths(c, nodes_[id].depth + 1);
  }
  return id;
}

void EncodingTree::dissolve(NodeId id) {
  auto& n = nodes_.at(id);
  if (id == root_) throw std::invalid_argument("dissolve: cannot remove the root");
  if (n.children.empty()) throw std::invalid_argument("dissolve: node is a leaf");
  auto& siblings = nodes_[n.parent].children;
  auto pos = std::find(siblings.begin(), siblings.end(), id);
  pos = siblings.erase(pos);
  siblings.insert(pos, n.children.begin(), n.children.end());
  for (NodeId c : n.children) {
    nodes_[c].parent = n.parent;
    set_depths(c, n.depth);
  }
  n.children.clear();
  n.alive = false;
  --live_;
}

void EncodingTree::remove_subtree(NodeId id) {
  if (id == root_) throw std::invalid_argument("remove_subtree: cannot remove the root");
  NodeId parent = nodes_.at(id).parent;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    auto& n = nodes_[cur];
    for (NodeId c : n.children) stack.push_back(c);
    if (n.vertex != kNoVertex) leaf_of_[n.vertex] = kNoNode;
    n.children.clear();
    n.alive = false;
    --live_;
  }
  auto& siblings = nodes_[parent].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), id));
  if (siblings.empty() && parent != root_) remove_subtree(parent);
}

void EncodingTree::rebind(std::shared_ptr<const WeightedGraph> graph) {
  graph_ = std::move(graph);
  recompute_caches();
}

void EncodingTree::recompute_caches() {
  // Post-order: leaves from the graph, interior nodes from their children.
  std::vector<NodeId> order;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    order.push_back(cur);
    for (NodeId c : nodes_[cur].children) stack.push_back(c);
  }
  set_depths(root_, 0);

  // Edge crossing: for each undirected edge, every node strictly below the
  // endpoints' LCA on either side is cut by it.
  for (NodeId id : order) nodes_[id].cut = 0.0;
  const auto& g = *graph_;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    if (leaf_of_.size() <= u || leaf_of_[u] == kNoNode) continue;
    for (const auto& nb : g.sym_neighbors(u)) {
      if (nb.vertex < u || leaf_of_[nb.vertex] == kNoNode) continue;
      const NodeId a = leaf_of_[u];
      const NodeId b = leaf_of_[nb.vertex];
      const NodeId lca = lowest_common_ancestor(a, b);
      for (NodeId x = a; x != lca; x = nodes_[x].parent) nodes_[x].cut += nb.weight;
      for (NodeId x = b; x != lca; x = nodes_[x].parent) nodes_[x].cut += nb.weight;
    }
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& n = nodes_[*it];
    if (n.children.empty()) {
      n.volume = n.vertex != kNoVertex ? g.degree(n.vertex) : 0.0;
    } else {
      n.volume = 0.0;
      for (NodeId c : n.children) n.volume += nodes_[c].volume;
    }
  }
}

void EncodingTree::compact() {
  std::vector<NodeId> remap(nodes_.size(), kNoNode);
  NodeId next = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].alive) remap[i] = next++;

  std::vector<TreeNode> packed;
  packed.reserve(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!nodes_[i].alive) continue;
    TreeNode n = std::move(nodes_[i]);
    if (n.parent != kNoNode) n.parent = remap[n.parent];
    for (auto& c : n.children) c = remap[c];
    packed.push_back(std::move(n));
  }
  nodes_ = std::move(packed);
  root_ = remap[root_];
  for (auto& l : leaf_of_)
    if (l != kNoNode) l = remap[l];
  live_ = nodes_.size();
}

EncodingTree EncodingTree::clone_subtree(NodeId id) const {
  // Collect the subtree, then renumber in ascending original-id order so tie
  // breaks by id behave identically on the copy.
  std::vector<NodeId> members;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    members.push_back(cur);
    for (NodeId c : nodes_[cur].children) stack.push_back(c);
  }
  std::sort(members.begin(), members.end());

  std::unordered_map<NodeId, NodeId> remap;
  remap.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    remap.emplace(members[i], static_cast<NodeId>(i));

  EncodingTree t;
  t.graph_ = graph_;
  t.leaf_of_.assign(leaf_of_.size(), kNoNode);
  t.nodes_.reserve(members.size());
  const int base_depth = nodes_[id].depth;
  for (NodeId old : members) {
    TreeNode n = nodes_[old];
    n.parent = old == id ? kNoNode : remap.at(n.parent);
    for (auto& c : n.children) c = remap.at(c);
    n.depth -= base_depth;
    if (n.vertex != kNoVertex) t.leaf_of_[n.vertex] = remap.at(old);
    t.nodes_.push_back(std::move(n));
  }
  t.root_ = remap.at(id);
  t.live_ = t.nodes_.size();
  return t;
}

std::string EncodingTree::validate(double tol) const {
  std::ostringstream err;
  if (!contains(root_)) return "root is not a live node";
  if (nodes_[root_].parent != kNoNode) return "root has a parent";

  const auto& g = *graph_;
  std::vector<int> seen_vertex(g.vertex_count(), 0);
  std::size_t reached = 0;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    ++reached;
    const auto& n = nodes_[cur];
    if (!n.alive) return "dead node " + std::to_string(cur) + " reachable";
    const int expect_depth = cur == root_ ? 0 : nodes_[n.parent].depth + 1;
    if (n.depth != expect_depth) return "node " + std::to_string(cur) + " has stale depth";
    if (n.children.empty()) {
      if (n.vertex == kNoVertex) {
        if (cur != root_) return "interior node " + std::to_string(cur) + " has no children";
        continue;
      }
      if (n.vertex >= g.vertex_count() || !g.is_active(n.vertex))
        return "leaf " + std::to_string(cur) + " maps to an absent vertex";
      if (seen_vertex[n.vertex]++) return "vertex " + std::to_string(n.vertex) + " in two leaves";
      if (leaf_of_[n.vertex] != cur) return "leaf index out of sync";
    } else {
      if (n.vertex != kNoVertex) return "interior node carries a vertex";
      for (NodeId c : n.children) {
        if (!contains(c)) return "child " + std::to_string(c) + " is not live";
        if (nodes_[c].parent != cur) return "child " + std::to_string(c) + " has wrong parent";
        stack.push_back(c);
      }
    }
  }
  if (reached != live_) return "live nodes unreachable from root";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_active(v) && !seen_vertex[v]) return "vertex " + std::to_string(v) + " has no leaf";

  EncodingTree fresh = *this;
  fresh.recompute_caches();
  const double scale = std::max(1.0, g.volume());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!nodes_[i].alive) continue;
    if (std::abs(nodes_[i].volume - fresh.nodes_[i].volume) > tol * scale)
      return "node " + std::to_string(i) + " volume cache mismatch";
    if (std::abs(nodes_[i].cut - fresh.nodes_[i].cut) > tol * scale)
      return "node " + std::to_string(i) + " cut cache mismatch";
  }
  if (std::abs(nodes_[root_].cut) > tol * scale) return "root cut is nonzero";
  return {};
}

EncodingTree EncodingTree::from_parts(std::shared_ptr<const WeightedGraph> graph,
                                      std::vector<TreeNode> nodes, NodeId root) {
  EncodingTree t;
  t.graph_ = std::move(graph);
  t.nodes_ = std::move(nodes);
  t.root_ = root;
  t.leaf_of_.assign(t.graph_->vertex_count(), kNoNode);
  t.live_ = 0;
  for (std::size_t i = 0; i < t.nodes_.size(); ++i) {
    const auto& n = t.nodes_[i];
    if (!n.alive) continue;
    ++t.live_;
    if (n.vertex != kNoVertex) {
      if (n.vertex >= t.leaf_of_.size()) throw std::invalid_argument("leaf vertex out of range");
      t.leaf_of_[n.vertex] = static_cast<NodeId>(i);
    }
  }
  return t;
}

// --- entropies ------------------------------------------------------------

OneDimEntropy one_dim_entropy(const WeightedGraph& g) {
  const double vol = g.volume();
  if (!(vol > 0.0)) return {0.0, true};
  double h = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const double d = g.degree(v);
    if (d > 0.0) {
      const double p = d / vol;
      h -= p * std::log2(p);
    }
  }
  return {h, false};
}

double assigned_entropy(const EncodingTree& t, NodeId id) {
  const auto& n = t.node(id);
  if (n.parent == kNoNode) throw std::domain_error("assigned_entropy: root has no assigned entropy");
  const double vol = t.graph().volume();
  const double parent_volume = t.node(n.parent).volume;
  if (n.cut <= 0.0 || n.volume <= 0.0 || vol <= 0.0 || n.volume >= parent_volume) return 0.0;
  return -(n.cut / vol) * std::log2(n.volume / parent_volume);
}

double tree_entropy(const EncodingTree& t) {
  double h = 0.0;
  for (NodeId id : t.live_nodes())
    if (id != t.root()) h += assigned_entropy(t, id);
  return h;
}

}  // namespace sebot
