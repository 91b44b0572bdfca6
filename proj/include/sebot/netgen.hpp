#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sebot/graph.hpp"
#include "sebot/kv_config.hpp"

namespace sebot {

struct StarNetConfig {
  std::size_t communities = 10;
  std::vector<std::size_t> sizes{15};  // one entry per community, or one shared size
  double inter_edge_prob = 0.1;
  std::array<double, kRelationCount> mix{0.25, 0.25, 0.25, 0.25};  // by RelationKind
  std::uint64_t seed = 0;
};

/// Throws ConfigError when sizes < 2, q outside [0,1] or the mix does not sum to 1.
void validate(const StarNetConfig& cfg);

/// Reads keys communities, sizes, inter_edge_prob, mix.tweet, mix.retweet,
/// mix.mention, mix.reply, seed; missing keys keep their defaults.
StarNetConfig star_config_from(const KeyValueConfig& kv);

/// Communities are laid out consecutively, hub first. Each leaf gets one
/// hub -> leaf edge and each ordered hub pair gets a bridge with probability
/// q; relations are drawn from the mix. Deterministic per seed.
MultiRelGraph gen_star_network(const StarNetConfig& cfg);

struct LoadedGraph {
  MultiRelGraph graph;
  std::vector<std::string> ids;  // dense id -> original token
};

/// Merges edge-list files into one graph, remapping tokens to dense ids in
/// order of first appearance. A file paired with a relation may use three
/// columns (`src dst timestamp`); four-column lines carry their own relation.
/// Throws ParseError with file and line for malformed input.
LoadedGraph load_higgs(const std::vector<std::pair<std::filesystem::path, std::optional<RelationKind>>>& files);

struct SplitResult {
  MultiRelGraph train;
  MultiRelGraph test;
  std::vector<VertexId> train_ids;  // new train id -> original id
  std::vector<VertexId> test_ids;
  std::size_t dropped_cross_edges = 0;
};

/// Vertex-induced split; round(train_fraction * n) vertices go to train.
/// Throws std::domain_error when either side would be empty.
SplitResult split(const MultiRelGraph& g, double train_fraction, std::uint64_t seed);

}  // namespace sebot
