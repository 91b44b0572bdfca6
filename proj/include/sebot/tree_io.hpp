#pragma once

#include <filesystem>
#include <memory>

#include "json.hpp"
#include "sebot/encoding_tree.hpp"

namespace sebot {

/// {"root", "height", "graph_volume", "nodes": [{id, parent, children,
/// vertices (leaves only), volume, cut, assigned_entropy}]}. Dead arena
/// slots are skipped; ids are the arena ids.
nlohmann::json tree_to_json(const EncodingTree& t);

/// Inverse of tree_to_json. Cached volume/cut are taken from the document
/// as-is; call validate() to check them against the graph.
/// Throws std::invalid_argument on structural problems.
EncodingTree tree_from_json(const nlohmann::json& doc, std::shared_ptr<const WeightedGraph> graph);

void write_tree_json(const std::filesystem::path& path, const EncodingTree& t);

}  // namespace sebot
