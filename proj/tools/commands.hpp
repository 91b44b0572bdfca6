#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sebot/kv_config.hpp"
#include "sebot/simulator.hpp"

namespace sebot::cli {

enum ExitCode : int { kOk = 0, kIoOrParse = 2, kConfig = 3, kInternal = 4 };

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  int threads = 0;
  bool no_timing = false;
};

struct TreeArgs {
  std::filesystem::path input;
  std::string relation = "RT";
  int max_height = 3;
  std::filesystem::path out = "tree.json";
  std::filesystem::path features;
  double prune_ratio = 0.05;
};

struct DiffuseArgs {
  std::filesystem::path input;
  std::vector<unsigned long long> seeds;
  double p = 0.8;
  std::uint32_t trials = 10000;
};

struct SplitArgs {
  std::filesystem::path input;
  double fraction = 0.1;
};

int cmd_tree(const TreeArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_diffuse(const DiffuseArgs& args, const GlobalOptions& g, std::ostream& out,
                std::ostream& err);
int cmd_episode(const std::filesystem::path& config, const GlobalOptions& g, std::ostream& out,
                std::ostream& err);
int cmd_compare(const std::filesystem::path& config, const GlobalOptions& g, std::ostream& out,
                std::ostream& err);
int cmd_gen(const std::filesystem::path& config, const GlobalOptions& g, std::ostream& out,
            std::ostream& err);
int cmd_split(const SplitArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err);

/// Graph named by `graph = path` (relative to base_dir), else generated from
/// star-network keys. When `bot` is absent a fresh isolated vertex is appended
/// and used as the bot.
struct GraphSource {
  MultiRelGraph graph;
  VertexId bot = 0;
  bool bot_appended = false;
};
GraphSource load_graph_source(const KeyValueConfig& kv, const std::filesystem::path& base_dir);

/// Episode knobs from a config; unknown values raise ConfigError.
EpisodeConfig episode_config_from(const KeyValueConfig& kv, const GraphSource& src,
                                  const std::filesystem::path& base_dir);

/// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string version_string();

}  // namespace sebot::cli
