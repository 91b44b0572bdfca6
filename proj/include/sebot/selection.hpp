#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sebot/diffusion.hpp"
#include "sebot/encoding_tree.hpp"

namespace sebot {

enum class SelectorKind { Entropy, Celf, Degree, Random };

std::string_view selector_name(SelectorKind k) noexcept;
std::optional<SelectorKind> parse_selector(std::string_view name) noexcept;

enum class SelectMode { Sample, Argmax };

/// Sum of assigned entropies from u's leaf up to, but excluding, the lowest
/// node whose community also contains b. Zero when u == b.
/// Throws std::out_of_range if either vertex has no leaf.
double conditional_se(const EncodingTree& t, VertexId u, VertexId b);

struct SelectionDistribution {
  std::vector<VertexId> candidates;
  std::vector<double> scores;
  std::vector<double> probs;
};

/// Scores every candidate by conditional_se against the bot and normalises;
/// all-zero scores give the uniform distribution.
/// Throws std::domain_error for an empty candidate list.
SelectionDistribution selection_distribution(const EncodingTree& t, VertexId bot,
                                             std::span<const VertexId> candidates);

/// Same normalisation for precomputed scores.
SelectionDistribution normalize_scores(std::vector<VertexId> candidates, std::vector<double> scores);

/// Argmax ties go to the smaller vertex id. Sampling draws one uniform from
/// a generator seeded with `seed`.
VertexId select_follower(const SelectionDistribution& dist, SelectMode mode, std::uint64_t seed);

/// Lazy-greedy (CELF) influence maximization; marginal gains come from
/// icm_total_reached with the shared cfg, so every evaluation reuses the same
/// random numbers. Returns k seeds in pick order. Ties go to the smaller id.
/// Throws std::domain_error for k > vertex count.
std::vector<VertexId> celf_select(const WeightedGraph& g, std::size_t k, const DiffusionConfig& cfg,
                                  std::span<const VertexId> excluded = {});

/// Top-k by directed out-degree, ties to the smaller id.
/// Throws std::domain_error for k > vertex count.
std::vector<VertexId> degree_select(const WeightedGraph& g, std::size_t k,
                                    std::span<const VertexId> excluded = {});

}  // namespace sebot
