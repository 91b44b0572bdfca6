#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "sebot/graph.hpp"

using namespace sebot;

TEST(Relation, CodesAndNamesRoundTrip) {
  for (auto r : kAllRelations) {
    EXPECT_EQ(parse_relation(relation_code(r)), r);
    EXPECT_EQ(parse_relation(relation_name(r)), r);
  }
  EXPECT_EQ(parse_relation("rt"), RelationKind::Retweet);
  EXPECT_EQ(parse_relation("MT"), RelationKind::Mention);
  EXPECT_EQ(parse_relation("RE"), RelationKind::Reply);
  EXPECT_FALSE(parse_relation("LIKE").has_value());
  EXPECT_FALSE(parse_relation("").has_value());
}

TEST(MultiRel, DeduplicatesOnSourceAndTarget) {
  const std::vector<Event> ev{{0, 1, RelationKind::Retweet, 10}, {0, 1, RelationKind::Retweet, 12}};
  const auto g = build_multirel(ev, 2);
  ASSERT_EQ(g.edges(RelationKind::Retweet).size(), 1u);
  EXPECT_EQ(g.edges(RelationKind::Retweet)[0].timestamp, 10);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(MultiRel, DropsSelfLoopsWithCounter) {
  const std::vector<Event> ev{{0, 0, RelationKind::Reply, 5}};
  const auto g = build_multirel(ev, 1);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.dropped_self_loops(), 1u);
}

TEST(MultiRel, SameEndpointsDifferentRelationsAreDistinct) {
  MultiRelGraph g(2);
  EXPECT_TRUE(g.add_edge(0, 1, RelationKind::Retweet, 1));
  EXPECT_TRUE(g.add_edge(0, 1, RelationKind::Mention, 1));
  EXPECT_FALSE(g.add_edge(0, 1, RelationKind::Mention, 3));
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(0, 1, RelationKind::Mention));
  EXPECT_FALSE(g.has_edge(1, 0, RelationKind::Mention));
}

TEST(MultiRel, RejectsBadEvents) {
  const std::vector<Event> out_of_range{{0, 3, RelationKind::Tweet, 0}};
  EXPECT_THROW(build_multirel(out_of_range, 3), std::invalid_argument);
  const std::vector<Event> negative{{0, 1, RelationKind::Tweet, -1}};
  EXPECT_THROW(build_multirel(negative, 3), std::invalid_argument);
}

TEST(MultiRel, IdempotentOnOwnEvents) {
  const std::vector<Event> ev{{0, 1, RelationKind::Retweet, 4},
                              {2, 1, RelationKind::Reply, 9},
                              {1, 0, RelationKind::Retweet, 3},
                              {2, 1, RelationKind::Reply, 11}};
  const auto g = build_multirel(ev, 3);
  const auto again = build_multirel(g.events(), 3);
  EXPECT_EQ(g, again);
}

TEST(MultiRel, AddVertexGrowsIsolated) {
  MultiRelGraph g(2);
  EXPECT_EQ(g.add_vertex(), 2u);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_TRUE(g.add_edge(2, 0, RelationKind::Tweet, 0));
}

TEST(Features, IsolatedVertexHasZeroRow) {
  MultiRelGraph g(3);
  g.add_edge(0, 1, RelationKind::Retweet, 5);
  const auto f = structural_features(g, 16);
  for (double x : f.row(2)) EXPECT_EQ(x, 0.0);
}

TEST(Features, IdenticalIncidenceGivesIdenticalRows) {
  MultiRelGraph g(4);
  g.add_edge(0, 2, RelationKind::Retweet, 7);
  g.add_edge(0, 3, RelationKind::Retweet, 7);
  const auto f = structural_features(g, 16);
  const auto a = f.row(2);
  const auto b = f.row(3);
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
}

TEST(Features, ShapeAndDeterminism) {
  MultiRelGraph g(3);
  g.add_edge(0, 1, RelationKind::Mention, 1);
  g.add_edge(1, 2, RelationKind::Reply, 100);
  const auto f = structural_features(g, 8);
  EXPECT_EQ(f.rows(), 3u);
  EXPECT_EQ(f.dim(), 8u);
  for (std::size_t v = 0; v < 3; ++v)
    for (double x : f.row(v)) EXPECT_TRUE(std::isfinite(x));
  EXPECT_EQ(f, structural_features(g, 8));
  EXPECT_THROW(structural_features(g, 1), std::domain_error);
}

TEST(Spearman, HandEvaluatedCases) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> rev{3, 2, 1};
  const std::vector<double> swap{1, 3, 2};
  EXPECT_DOUBLE_EQ(spearman_weight(a, a), 1.0);
  EXPECT_DOUBLE_EQ(spearman_weight(a, rev), -1.0);
  EXPECT_DOUBLE_EQ(spearman_weight(a, swap), 0.5);
}

TEST(Spearman, AverageRanksForTies) {
  const std::vector<double> x{10, 20, 20, 5};
  const auto r = average_ranks(x);
  EXPECT_EQ(r, (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(Spearman, DomainErrors) {
  const std::vector<double> one{1};
  const std::vector<double> two{1, 2};
  const std::vector<double> three{1, 2, 3};
  EXPECT_THROW(spearman_weight(one, one), std::domain_error);
  EXPECT_THROW(spearman_weight(two, three), std::domain_error);
}

TEST(Spearman, SymmetricAndMonotoneInvariant) {
  std::mt19937_64 eng(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(7), b(7);
    for (auto& x : a) x = nd(eng);
    for (auto& x : b) x = nd(eng);
    const double w = spearman_weight(a, b);
    EXPECT_GE(w, -1.0);
    EXPECT_LE(w, 1.0);
    EXPECT_DOUBLE_EQ(w, spearman_weight(b, a));
    std::vector<double> ta(a.size());
    std::transform(a.begin(), a.end(), ta.begin(), [](double x) { return std::exp(3 * x) + 2; });
    EXPECT_DOUBLE_EQ(w, spearman_weight(ta, b));
    EXPECT_DOUBLE_EQ(spearman_weight(a, a), 1.0);
  }
}

TEST(Projection, PositiveWeightTransform) {
  EXPECT_DOUBLE_EQ(positive_weight(-1.0), kMinEdgeWeight);
  EXPECT_DOUBLE_EQ(positive_weight(1.0), 1.0);
  EXPECT_DOUBLE_EQ(positive_weight(0.0), 0.5);
}

TEST(Projection, FiltersByRelation) {
  MultiRelGraph g(5);
  g.add_edge(0, 1, RelationKind::Retweet, 1);
  g.add_edge(1, 2, RelationKind::Retweet, 2);
  g.add_edge(2, 3, RelationKind::Reply, 3);
  g.add_edge(3, 4, RelationKind::Reply, 4);
  g.add_edge(4, 0, RelationKind::Reply, 5);
  const auto wg = project(g, RelationKind::Retweet, structural_features(g, 16));
  EXPECT_EQ(wg.edges().size(), 2u);
  EXPECT_EQ(wg.vertex_count(), 5u);
  EXPECT_EQ(wg.degree(4), 0.0);
}

TEST(Projection, ExtremeCorrelationsMapToFloorAndOne) {
  MultiRelGraph g(3);
  g.add_edge(0, 1, RelationKind::Mention, 1);
  g.add_edge(0, 2, RelationKind::Mention, 1);
  FeatureMatrix f(3, 3);
  const double rows[3][3] = {{1, 2, 3}, {3, 2, 1}, {1, 2, 3}};
  for (std::size_t v = 0; v < 3; ++v) std::copy(rows[v], rows[v] + 3, f.row(v).begin());
  const auto wg = project(g, RelationKind::Mention, f);
  ASSERT_EQ(wg.edges().size(), 2u);
  EXPECT_DOUBLE_EQ(wg.edges()[0].weight, 1e-6);
  EXPECT_DOUBLE_EQ(wg.edges()[1].weight, 1.0);
}

TEST(WeightedGraphView, DegreesAndVolumeMatchRecomputation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(15, 0.2, seed);
    const auto d = oracle::degrees(g);
    double total_weight = 0.0;
    for (const auto& e : g.edges()) total_weight += e.weight;
    for (VertexId v = 0; v < 15; ++v) EXPECT_NEAR(g.degree(v), d[v], 1e-9 * (1 + d[v]));
    EXPECT_NEAR(g.volume(), 2 * total_weight, 1e-9 * g.volume());
  }
}

TEST(WeightedGraphView, AntiParallelEdgesSum) {
  const WeightedGraph g(2, {{0, 1, 0.5}, {1, 0, 0.25}});
  ASSERT_EQ(g.sym_neighbors(0).size(), 1u);
  EXPECT_DOUBLE_EQ(g.sym_neighbors(0)[0].weight, 0.75);
  EXPECT_DOUBLE_EQ(g.degree(1), 0.75);
  EXPECT_EQ(g.out_degree(0), 1u);
  EXPECT_EQ(g.out_neighbors(1)[0], 0u);
}

TEST(WeightedGraphView, RejectsInvalidEdges) {
  EXPECT_THROW(WeightedGraph(2, {{0, 0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(2, {{0, 1, 0.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(2, {{0, 2, 1.0}}), std::invalid_argument);
}

TEST(WeightedGraphView, WithoutVerticesKeepsIds) {
  const auto g = oracle::two_triangles();
  const std::vector<VertexId> gone{0, 1};
  const auto h = g.without_vertices(gone);
  EXPECT_EQ(h.vertex_count(), 6u);
  EXPECT_EQ(h.active_count(), 4u);
  EXPECT_FALSE(h.is_active(0));
  EXPECT_TRUE(h.is_active(2));
  EXPECT_DOUBLE_EQ(h.degree(2), 1.0);
  EXPECT_DOUBLE_EQ(h.volume(), 8.0);
}

TEST(DiffusionView, UnionOfRelationsUnitWeights) {
  MultiRelGraph g(3);
  g.add_edge(0, 1, RelationKind::Retweet, 1);
  g.add_edge(0, 1, RelationKind::Reply, 1);
  g.add_edge(1, 2, RelationKind::Tweet, 1);
  const auto v = diffusion_view(g);
  EXPECT_EQ(v.edges().size(), 2u);
  for (const auto& e : v.edges()) EXPECT_EQ(e.weight, 1.0);
}
