#include <gtest/gtest.h>

#include <omp.h>

#include "oracles.hpp"
#include "sebot/diffusion.hpp"

using namespace sebot;

namespace {

WeightedGraph path_graph(std::size_t n) {
  std::vector<WeightedEdge> e;
  for (VertexId v = 0; v + 1 < n; ++v) e.push_back({v, v + 1, 1});
  return WeightedGraph(n, e);
}

}  // namespace

TEST(Icm, ProbabilityOneReachesEverything) {
  const auto g = path_graph(7);
  const std::vector<VertexId> seeds{0};
  const auto est = icm_simulate(g, seeds, {1.0, 50, 3});
  EXPECT_EQ(est.mean, 7.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(Icm, ProbabilityZeroReachesSeedsOnly) {
  const auto g = path_graph(7);
  const std::vector<VertexId> seeds{0, 4};
  const auto est = icm_simulate(g, seeds, {0.0, 50, 3});
  EXPECT_EQ(est.mean, 2.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(Icm, SingleEdgeHalf) {
  const WeightedGraph g(2, {{0, 1, 1}});
  const std::vector<VertexId> seeds{0};
  const auto est = icm_simulate(g, seeds, {0.5, 100000, 17});
  EXPECT_NEAR(est.mean, 1.5, 3 * est.std_error);
}

TEST(Icm, WeightsAreIgnored) {
  const WeightedGraph light(3, {{0, 1, 1e-6}, {1, 2, 1e-6}});
  const WeightedGraph heavy(3, {{0, 1, 5.0}, {1, 2, 5.0}});
  const std::vector<VertexId> seeds{0};
  const DiffusionConfig cfg{0.6, 500, 9};
  EXPECT_EQ(icm_simulate(light, seeds, cfg).mean, icm_simulate(heavy, seeds, cfg).mean);
}

TEST(Icm, MatchesExactEnumerationOnSmallFixtures) {
  std::mt19937_64 eng(5);
  for (int f = 0; f < 10; ++f) {
    const std::size_t n = 3 + eng() % 3;
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<WeightedEdge> edges;
    while (pairs.size() < 4) {
      const VertexId a = eng() % n, b = eng() % n;
      if (a == b || std::find(pairs.begin(), pairs.end(), std::pair{a, b}) != pairs.end()) continue;
      pairs.emplace_back(a, b);
      edges.push_back({a, b, 1});
    }
    const WeightedGraph g(n, edges);
    const std::vector<VertexId> seeds{0};
    const double p = 0.3 + 0.05 * f;
    const auto est = icm_simulate(g, seeds, {p, 40000, static_cast<std::uint64_t>(f)});
    EXPECT_NEAR(est.mean, oracle::exact_spread(n, pairs, seeds, p), 4 * est.std_error + 1e-12);
  }
}

TEST(Icm, BitIdenticalAcrossThreadCountsAndSerial) {
  const auto g = oracle::random_graph(30, 0.1, 2);
  const std::vector<VertexId> seeds{0, 5};
  const DiffusionConfig cfg{0.4, 3000, 77};
  const auto serial = icm_simulate_serial(g, seeds, cfg);
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    const auto par = icm_simulate(g, seeds, cfg);
    EXPECT_EQ(par.mean, serial.mean);
    EXPECT_EQ(par.std_error, serial.std_error);
  }
  EXPECT_EQ(icm_trial_counts(g, seeds, cfg, true), icm_trial_counts(g, seeds, cfg, false));
}

TEST(Icm, MonotoneInProbabilityAndSeedSet) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = oracle::random_graph(30, 0.08, seed);
    const std::vector<VertexId> small{1};
    const std::vector<VertexId> big{1, 7, 20};
    double last = 0.0;
    for (double p = 0.0; p <= 1.0; p += 0.1) {
      const DiffusionConfig cfg{p, 400, seed};
      const double a = icm_simulate(g, small, cfg).mean;
      EXPECT_GE(a, last);
      EXPECT_GE(icm_simulate(g, big, cfg).mean, a);
      last = a;
    }
  }
}

TEST(Icm, TotalsMatchMeans) {
  const auto g = oracle::random_graph(20, 0.1, 4);
  const std::vector<VertexId> seeds{2, 3};
  const DiffusionConfig cfg{0.5, 1000, 8};
  const auto total = icm_total_reached(g, seeds, cfg);
  EXPECT_DOUBLE_EQ(icm_simulate(g, seeds, cfg).mean, static_cast<double>(total) / 1000.0);
  EXPECT_EQ(icm_total_reached(g, {}, cfg), 0u);
}

TEST(Icm, Errors) {
  const auto g = path_graph(3);
  const std::vector<VertexId> none;
  const std::vector<VertexId> ok{0};
  const std::vector<VertexId> bad{9};
  EXPECT_THROW(icm_simulate(g, none, {}), std::domain_error);
  EXPECT_THROW(icm_simulate(g, ok, {0.5, 0, 1}), std::domain_error);
  EXPECT_THROW(icm_simulate(g, ok, {1.5, 10, 1}), std::invalid_argument);
  EXPECT_THROW(icm_simulate(g, bad, {0.5, 10, 1}), std::invalid_argument);
}

TEST(InfluenceRatio, Arithmetic) {
  EXPECT_EQ(influence_ratio(1485, 1500), 0.99);
  EXPECT_EQ(influence_ratio(1500, 1500), 1.0);
  EXPECT_EQ(influence_ratio(0, 1500), 0.0);
  EXPECT_EQ(influence_ratio(2000, 1500), 1.0);
  EXPECT_THROW(influence_ratio(1, 0), std::domain_error);
}
