#include "sebot/tree_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "sebot/errors.hpp"

namespace sebot {

namespace {

// One group of original children during stretch. Scores drop the
// sum_c g_c log2 V_c part of the cost, which cancels in every merge delta.
struct Cluster {
  double volume = 0.0;
  double cut = 0.0;
  double child_cut_sum = 0.0;
  std::vector<int> members;  // slots into the original child list
  std::map<int, double> adjacent;
  unsigned version = 0;
  bool alive = true;
};

struct MergeCandidate {
  double gain;
  int a;
  int b;
  unsigned version_a;
  unsigned version_b;
};

void verify_delta(const char* what, double before, double after, double claimed, double tol) {
  if (std::abs((before - after) - claimed) > tol * std::max(1.0, before))
    throw InvariantError(std::string(what) + ": local entropy delta disagrees with recomputation");
}

// max-heap on gain, ties to the smallest (a, b)
struct CandidateOrder {
  bool operator()(const MergeCandidate& x, const MergeCandidate& y) const {
    if (x.gain != y.gain) return x.gain < y.gain;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

double cluster_score(double volume, double cut, double child_cut_sum, double parent_volume) {
  return -cut * std::log2(volume / parent_volume) + child_cut_sum * std::log2(volume);
}

double merge_gain(const Cluster& x, const Cluster& y, double between, double parent_volume,
                  double vol) {
  const double volume = x.volume + y.volume;
  const double cut = std::max(0.0, x.cut + y.cut - 2.0 * between);
  const double before = cluster_score(x.volume, x.cut, x.child_cut_sum, parent_volume) +
                        cluster_score(y.volume, y.cut, y.child_cut_sum, parent_volume);
  const double after = cluster_score(volume, cut, x.child_cut_sum + y.child_cut_sum, parent_volume);
  return (before - after) / vol;
}

// Gain of hanging x and y under a fresh node while keeping x and y as
// nodes themselves. Everything but the shared edges cancels.
double nested_gain(const Cluster& x, const Cluster& y, double between, double parent_volume,
                   double vol) {
  return 2.0 * between * std::log2(parent_volume / (x.volume + y.volume)) / vol;
}

enum class MergeOrder { Flat, Nested };

void merge_clusters(std::vector<Cluster>& clusters, int a, int b) {
  auto& x = clusters[a];
  auto& y = clusters[b];
  const double between = x.adjacent.at(b);
  x.volume += y.volume;
  x.cut = std::max(0.0, x.cut + y.cut - 2.0 * between);
  x.child_cut_sum += y.child_cut_sum;
  x.members.insert(x.members.end(), y.members.begin(), y.members.end());
  x.adjacent.erase(b);
  for (const auto& [k, w] : y.adjacent) {
    if (k == a) continue;
    x.adjacent[k] += w;
    auto& other = clusters[k].adjacent;
    other.erase(b);
    other[a] += w;
  }
  y.adjacent.clear();
  y.alive = false;
  ++x.version;
}

struct MergePlan {
  std::vector<std::pair<int, int>> merges;
  double gain = 0.0;  // flat entropy decrease of applying all merges
};

// Flat order only accepts merges that lower the flattened entropy, which can
// stall in a local minimum (two bridged triangles end up as three pairs).
// Nested order follows the combine gain, then keeps the prefix of its merge
// sequence whose flattened layer is cheapest.
MergePlan agglomerate(std::vector<Cluster> clusters, MergeOrder order, double parent_volume,
                      double vol) {
  std::priority_queue<MergeCandidate, std::vector<MergeCandidate>, CandidateOrder> heap;
  auto push_pair = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    const double w = clusters[a].adjacent.at(b);
    const double gain = order == MergeOrder::Flat
                            ? merge_gain(clusters[a], clusters[b], w, parent_volume, vol)
                            : nested_gain(clusters[a], clusters[b], w, parent_volume, vol);
    heap.push({gain, a, b, clusters[a].version, clusters[b].version});
  };
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (const auto& [j, w] : clusters[i].adjacent)
      if (static_cast<int>(i) < j) push_pair(static_cast<int>(i), j);

  MergePlan plan;
  double running = 0.0;
  std::size_t keep = 0;
  while (!heap.empty()) {
    const auto top = heap.top();
    heap.pop();
    const auto& x = clusters[top.a];
    const auto& y = clusters[top.b];
    if (!x.alive || !y.alive || x.version != top.version_a || y.version != top.version_b) continue;
    if (!(top.gain > kMinEntropyGain)) break;

    running += merge_gain(x, y, x.adjacent.at(top.b), parent_volume, vol);
    merge_clusters(clusters, top.a, top.b);
    plan.merges.emplace_back(top.a, top.b);
    if (running > plan.gain) {
      plan.gain = running;
      keep = plan.merges.size();
    }
    for (const auto& [k, w] : clusters[top.a].adjacent) push_pair(top.a, k);
  }
  plan.merges.resize(keep);
  return plan;
}

}  // namespace

double stretch(EncodingTree& t, NodeId id, OpAudit* audit) {
  const std::vector<NodeId> children = t.node(id).children;
  const std::size_t count = children.size();
  const double vol = t.graph().volume();
  const double parent_volume = t.node(id).volume;
  if (count < 2 || !(vol > 0.0) || !(parent_volume > 0.0)) return 0.0;

  const double before = audit && audit->verify ? tree_entropy(t) : 0.0;

  std::unordered_map<VertexId, int> owner;
  std::vector<std::vector<VertexId>> members(count);
  for (std::size_t i = 0; i < count; ++i) {
    members[i] = t.vertices(children[i]);
    for (VertexId v : members[i]) owner.emplace(v, static_cast<int>(i));
  }

  std::vector<Cluster> clusters(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& child = t.node(children[i]);
    auto& c = clusters[i];
    c.volume = child.volume;
    c.cut = child.cut;
    c.child_cut_sum = child.cut;
    c.members = {static_cast<int>(i)};
    for (VertexId v : members[i]) {
      for (const auto& nb : t.graph().sym_neighbors(v)) {
        auto it = owner.find(nb.vertex);
        if (it != owner.end() && it->second != static_cast<int>(i))
          c.adjacent[it->second] += nb.weight;
      }
    }
  }

  const auto flat = agglomerate(clusters, MergeOrder::Flat, parent_volume, vol);
  const auto nested = agglomerate(clusters, MergeOrder::Nested, parent_volume, vol);
  const auto& plan = nested.gain > flat.gain ? nested : flat;
  if (!(plan.gain > kMinEntropyGain)) return 0.0;

  for (const auto& [a, b] : plan.merges) merge_clusters(clusters, a, b);
  for (auto& c : clusters) {
    if (!c.alive || c.members.size() < 2) continue;
    std::sort(c.members.begin(), c.members.end());
    std::vector<NodeId> adopted;
    adopted.reserve(c.members.size());
    for (int slot : c.members) adopted.push_back(children[slot]);
    t.adopt(id, adopted, c.cut);
  }

  if (audit) {
    audit->ops.push_back({OpKind::Stretch, id, plan.gain});
    if (audit->verify) verify_delta("stretch", before, tree_entropy(t), plan.gain, audit->verify_tol);
  }
  return plan.gain;
}

double compress(EncodingTree& t, NodeId id, OpAudit* audit) {
  const double vol = t.graph().volume();
  const double parent_volume = t.node(id).volume;
  if (!(vol > 0.0) || !(parent_volume > 0.0)) return 0.0;

  double total = 0.0;
  for (;;) {
    std::vector<NodeId> candidates;
    for (NodeId c : t.node(id).children)
      if (!t.is_leaf(c)) candidates.push_back(c);
    std::sort(candidates.begin(), candidates.end());

    NodeId best = kNoNode;
    double best_gain = 0.0;
    for (NodeId c : candidates) {
      const auto& n = t.node(c);
      if (!(n.volume > 0.0)) continue;
      double child_cut_sum = 0.0;
      for (NodeId gc : n.children) child_cut_sum += t.node(gc).cut;
      // removing c drops its own term and re-parents each grandchild term
      const double gain = (child_cut_sum - n.cut) * std::log2(n.volume / parent_volume) / vol;
      if (best == kNoNode || gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    if (best == kNoNode || !(best_gain > kMinEntropyGain)) break;

    const double before = audit && audit->verify ? tree_entropy(t) : 0.0;
    t.dissolve(best);
    if (audit) {
      audit->ops.push_back({OpKind::Compress, id, best_gain});
      if (audit->verify)
        verify_delta("compress", before, tree_entropy(t), best_gain, audit->verify_tol);
    }
    total += best_gain;
  }
  return total;
}

namespace {

void check_layer(const EncodingTree& t, int layer) {
  if (layer < 0 || layer > t.height())
    throw std::domain_error("avg_reduction: layer " + std::to_string(layer) + " out of range");
}

}  // namespace

double avg_reduction(const EncodingTree& t, int layer) {
  check_layer(t, layer);
  const auto nodes = t.interior_at_layer(layer);
  if (nodes.empty()) return 0.0;

  std::vector<double> reduction(nodes.size(), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    EncodingTree scratch = t.clone_subtree(nodes[k]);
    const NodeId root = scratch.root();
    reduction[k] = stretch(scratch, root) + compress(scratch, root);
  }

  double sum = 0.0;
  for (double r : reduction) sum += r;
  return sum / static_cast<double>(nodes.size());
}

double avg_reduction_serial(const EncodingTree& t, int layer) {
  check_layer(t, layer);
  const auto nodes = t.interior_at_layer(layer);
  if (nodes.empty()) return 0.0;

  double sum = 0.0;
  for (NodeId id : nodes) {
    EncodingTree scratch = t;
    sum += stretch(scratch, id) + compress(scratch, id);
  }
  return sum / static_cast<double>(nodes.size());
}

OptimizeResult optimize(std::shared_ptr<const WeightedGraph> g, const OptimizeOptions& opts,
                        OpAudit* audit) {
  if (opts.max_height < 2) throw std::invalid_argument("optimize: K must be >= 2");

  OptimizeResult res;
  const auto h1 = one_dim_entropy(*g);
  res.tree = EncodingTree::one_layer(std::move(g));
  res.initial_entropy = h1.value;
  res.final_entropy = h1.value;
  res.degenerate = h1.degenerate;
  if (h1.degenerate) return res;

  auto& tree = res.tree;
  const std::size_t cap =
      opts.max_rounds ? opts.max_rounds : 4 * tree.graph().vertex_count() + 16;
  while (res.rounds < cap) {
    const int h = tree.height();
    if (h >= opts.max_height) break;

    int best_layer = -1;
    double best = 0.0;
    for (int layer = 0; layer < h; ++layer) {
      const double r = opts.parallel ? avg_reduction(tree, layer) : avg_reduction_serial(tree, layer);
      if (r > best) {
        best = r;
        best_layer = layer;
      }
    }
    if (best_layer < 0 || !(best > kMinEntropyGain)) break;

    for (NodeId id : tree.interior_at_layer(best_layer)) {
      stretch(tree, id, audit);
      compress(tree, id, audit);
    }
    ++res.rounds;
  }
  tree.compact();
  res.final_entropy = tree_entropy(tree);
  return res;
}

}  // namespace sebot
