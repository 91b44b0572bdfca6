#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sebot/graph.hpp"

namespace sebot {

/// One parsed edge-list line with ids still in their textual form.
struct RawEvent {
  std::string src;
  std::string dst;
  std::int64_t timestamp = 0;
  RelationKind relation = RelationKind::Tweet;
  std::size_t line = 0;
};

struct EdgeListFile {
  std::vector<RawEvent> events;
  /// From a `# vertices N` header line, when present.
  std::optional<std::size_t> declared_vertices;
};

/// Parses `src dst timestamp relation` lines; `#` lines and blank lines are
/// skipped. When `implied` is set, three-column lines take that relation.
/// Throws ParseError naming `source` and the 1-based line number.
EdgeListFile parse_edge_list(std::istream& in, const std::string& source,
                             std::optional<RelationKind> implied = std::nullopt);

/// Edge list with non-negative integer ids. The vertex count is `n` when
/// given, else the `# vertices N` header, else max id + 1.
MultiRelGraph read_edge_list(const std::filesystem::path& path,
                             std::optional<std::size_t> n = std::nullopt);
MultiRelGraph parse_dense_edge_list(std::istream& in, const std::string& source,
                                    std::optional<std::size_t> n = std::nullopt);

void write_edge_list(std::ostream& out, const MultiRelGraph& g);
void write_edge_list(const std::filesystem::path& path, const MultiRelGraph& g);

/// CSV rows `vertex, x1, ..., xd`. Every vertex 0..n-1 must appear exactly once.
FeatureMatrix read_feature_csv(std::istream& in, const std::string& source, std::size_t n);
FeatureMatrix read_feature_csv(const std::filesystem::path& path, std::size_t n);

}  // namespace sebot
