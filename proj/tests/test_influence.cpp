#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "sebot/influence.hpp"
#include "sebot/tree_ops.hpp"

using namespace sebot;

namespace {

std::shared_ptr<const WeightedGraph> share(WeightedGraph g) {
  return std::make_shared<const WeightedGraph>(std::move(g));
}

// 100 vertices: communities {0..2}, {3..5}, {6..9} are triangles/cliques
// hanging off a ring over the remaining vertices.
EncodingTree hundred_vertex_tree() {
  std::vector<WeightedEdge> e;
  auto clique = [&](VertexId lo, VertexId hi) {
    for (VertexId a = lo; a < hi; ++a)
      for (VertexId b = a + 1; b < hi; ++b) e.push_back({a, b, 1});
  };
  clique(0, 3);
  clique(3, 6);
  clique(6, 10);
  for (VertexId v = 10; v < 100; ++v) e.push_back({v, v + 1 < 100 ? v + 1 : 10, 1});
  e.push_back({0, 10, 1});
  e.push_back({3, 40, 1});
  e.push_back({6, 70, 1});
  auto t = EncodingTree::one_layer(share(WeightedGraph(100, e)));
  auto leaves = [&](VertexId lo, VertexId hi) {
    std::vector<NodeId> ids;
    for (VertexId v = lo; v < hi; ++v) ids.push_back(t.leaf_of(v));
    return ids;
  };
  for (auto [lo, hi] : {std::pair{0u, 3u}, {3u, 6u}, {6u, 10u}}) {
    const auto ids = leaves(lo, hi);
    t.adopt(t.root(), ids, 0.0);
  }
  t.recompute_caches();
  return t;
}

}  // namespace

TEST(CommunityInfluence, TwoTriangleValues) {
  const auto r = optimize(share(oracle::two_triangles()), {.max_height = 2});
  const auto inf = community_influence(r.tree);
  const NodeId leaf = r.tree.leaf_of(0);
  const NodeId community = r.tree.node(leaf).parent;
  EXPECT_NEAR(inf.at(community), 0.0714285714, 1e-9);
  EXPECT_NEAR(inf.at(leaf), 0.3296224, 1e-6);
  EXPECT_NEAR(inf.at(community), assigned_entropy(r.tree, community), 1e-15);
  EXPECT_FALSE(inf.contains(r.tree.root()));
  EXPECT_THROW(inf.at(r.tree.root()), std::out_of_range);
}

TEST(CommunityInfluence, TopDownMatchesBottomUpAndIsMonotone) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = share(oracle::random_graph(18, 0.2, seed));
    const auto t = oracle::random_tree(g, seed + 100);
    const auto inf = community_influence(t);
    const auto ref = oracle::bottom_up_influence(t);
    for (NodeId id : t.live_nodes()) {
      if (id == t.root()) continue;
      EXPECT_NEAR(inf.at(id), ref[static_cast<std::size_t>(id)], 1e-9);
      const NodeId parent = t.node(id).parent;
      if (parent != t.root()) EXPECT_GE(inf.at(id), inf.at(parent));
    }
  }
}

TEST(Prune, ZeroRatioRemovesNothing) {
  const auto t = hundred_vertex_tree();
  const auto r = prune(t, {}, {.ratio = 0.0});
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(r.tree.live_count(), t.live_count());
}

TEST(Prune, CumulativeBudgetStopsAtFirstOverflow) {
  // sizes 3, 3, 4 against a budget of 5: only the first candidate fits
  const auto t = hundred_vertex_tree();
  const auto r = prune(t, {}, {.ratio = 0.05});
  EXPECT_EQ(r.pruned_subtrees.size(), 1u);
  EXPECT_LE(r.removed.size(), 5u);
  EXPECT_EQ(r.graph->active_count(), 100 - r.removed.size());
  EXPECT_TRUE(r.tree.validate().empty()) << r.tree.validate();
  for (VertexId v : r.removed) EXPECT_FALSE(r.graph->is_active(v));
}

TEST(Prune, ProtectedSubtreesAreSkipped) {
  const auto t = hundred_vertex_tree();
  const auto r = prune(t, {0, 3, 6}, {.ratio = 0.05});
  EXPECT_TRUE(r.removed.empty());
  const auto partial = prune(t, {0, 3}, {.ratio = 0.05});
  EXPECT_EQ(partial.removed, (std::vector<VertexId>{6, 7, 8, 9}));
}

TEST(Prune, RatioMustBeBelowOne) {
  const auto t = hundred_vertex_tree();
  EXPECT_THROW(prune(t, {}, {.ratio = 1.0}), std::domain_error);
  EXPECT_THROW(prune(t, {}, {.ratio = -0.1}), std::domain_error);
}

TEST(InfluenceReport, CsvShape) {
  const auto t = hundred_vertex_tree();
  const auto inf = community_influence(t);
  std::ostringstream out;
  const std::vector<NodeId> pruned{t.node(t.leaf_of(0)).parent};
  write_influence_report(out, t, inf, pruned);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "node_id,size,I_alpha,pruned");
  std::size_t rows = 0, flagged = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.ends_with(",true")) ++flagged;
  }
  EXPECT_EQ(rows, t.live_count() - 1);
  EXPECT_EQ(flagged, 1u);
}
