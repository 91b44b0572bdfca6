#include "commands.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sebot/edge_list.hpp"
#include "sebot/errors.hpp"
#include "sebot/influence.hpp"
#include "sebot/netgen.hpp"
#include "sebot/tree_io.hpp"
#include "sebot/tree_ops.hpp"

#ifndef SEBOT_VERSION
#define SEBOT_VERSION "0.1.0"
#endif

namespace sebot::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string version_string() { return SEBOT_VERSION; }

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

fs::path prepare_out_dir(const GlobalOptions& g) {
  std::error_code ec;
  fs::create_directories(g.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + g.out_dir.string());
  return g.out_dir;
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

struct Manifest {
  std::string command;
  json config = json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  Clock::time_point started = Clock::now();

  void write(const fs::path& dir, const GlobalOptions& g) {
    const auto ms =
        std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    json doc;
    doc["command"] = command;
    doc["version"] = version_string();
    doc["seed"] = seed;
    doc["config"] = config;
    doc["outputs"] = outputs;
    doc["threads"] = g.threads;
    doc["wall_clock_ms"] = g.no_timing ? 0.0 : ms;
    auto out = open_output(dir / "manifest.json");
    out << doc.dump(2) << '\n';
  }
};

json snapshot(const KeyValueConfig& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv.entries()) j[k] = v;
  return j;
}

void warn_unused(const KeyValueConfig& kv, std::ostream& err) {
  for (const auto& k : kv.unused_keys()) err << "warning: unknown config key '" << k << "'\n";
}

RelationKind relation_or_throw(const std::string& token) {
  auto r = parse_relation(token);
  if (!r) throw ConfigError("unknown relation '" + token + "'");
  return *r;
}

// Maps exceptions onto the documented exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kIoOrParse;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoOrParse;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const json::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace

GraphSource load_graph_source(const KeyValueConfig& kv, const fs::path& base_dir) {
  GraphSource src;
  if (auto path = kv.get("graph")) {
    src.graph = read_edge_list(resolve(*path, base_dir));
  } else if (kv.has("communities") || kv.has("sizes")) {
    src.graph = gen_star_network(star_config_from(kv));
  } else {
    throw ConfigError("config needs either 'graph' or star-network keys");
  }
  if (kv.has("bot")) {
    src.bot = static_cast<VertexId>(kv.get_uint("bot", 0));
    if (src.bot >= src.graph.vertex_count()) throw ConfigError("bot vertex is not in the graph");
  } else {
    src.bot = src.graph.add_vertex();
    src.bot_appended = true;
  }
  return src;
}

EpisodeConfig episode_config_from(const KeyValueConfig& kv, const GraphSource& src,
                                  const fs::path& base_dir) {
  EpisodeConfig cfg;
  cfg.bot = src.bot;
  cfg.p = kv.get_double("p", cfg.p);
  cfg.trials = static_cast<std::uint32_t>(kv.get_uint("trials", cfg.trials));
  cfg.t_max = static_cast<int>(kv.get_int("T_max", cfg.t_max));
  cfg.max_height = static_cast<int>(kv.get_int("K", cfg.max_height));
  cfg.prune.ratio = kv.get_double("prune_ratio", cfg.prune.ratio);
  cfg.prune.subtree_height = static_cast<int>(kv.get_int("prune_height", cfg.prune.subtree_height));
  cfg.seed = kv.get_uint("seed", cfg.seed);
  cfg.gamma = kv.get_double("gamma", cfg.gamma);
  cfg.feature_dim = kv.get_uint("feature_dim", cfg.feature_dim);

  cfg.detector.base_rate = kv.get_double("detector.base_rate", cfg.detector.base_rate);
  cfg.detector.follow_sensitivity =
      kv.get_double("detector.follow_sensitivity", cfg.detector.follow_sensitivity);
  cfg.detector.window = static_cast<int>(kv.get_int("detector.window", cfg.detector.window));
  cfg.detector.target_accuracy =
      kv.get_double("detector.target_accuracy", cfg.detector.target_accuracy);

  const auto selector = kv.get_string("selector", "entropy");
  if (auto k = parse_selector(selector)) cfg.selector = *k;
  else throw ConfigError("unknown selector '" + selector + "'");

  const auto mode = kv.get_string("mode", "argmax");
  if (mode == "argmax") cfg.mode = SelectMode::Argmax;
  else if (mode == "sample") cfg.mode = SelectMode::Sample;
  else throw ConfigError("mode must be 'argmax' or 'sample'");

  const auto policy = kv.get_string("policy", "uniform");
  if (auto k = parse_policy(policy)) cfg.policy.kind = *k;
  else throw ConfigError("unknown activity policy '" + policy + "'");
  for (const auto& token : kv.get_list("policy.sequence"))
    cfg.policy.script.push_back(relation_or_throw(token));
  for (auto r : kAllRelations)
    cfg.policy.profile[static_cast<std::size_t>(r)] =
        kv.get_double("policy." + std::string(relation_name(r)), 0.0);

  if (auto path = kv.get("features"))
    cfg.features = std::make_shared<const FeatureMatrix>(
        read_feature_csv(resolve(*path, base_dir), src.graph.vertex_count()));

  validate(cfg, src.graph);
  return cfg;
}

// --- tree -----------------------------------------------------------------

int cmd_tree(const TreeArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Manifest manifest;
    manifest.command = "tree";
    if (args.max_height < 2) throw ConfigError("K must be >= 2");
    if (!(args.prune_ratio >= 0.0 && args.prune_ratio < 1.0))
      throw ConfigError("prune ratio must satisfy 0 <= ratio < 1");
    const RelationKind relation = relation_or_throw(args.relation);
    const auto graph = read_edge_list(args.input);
    const auto dir = prepare_out_dir(g);

    const FeatureMatrix feats = args.features.empty()
                                    ? structural_features(graph, 16)
                                    : read_feature_csv(args.features, graph.vertex_count());
    auto projected = std::make_shared<const WeightedGraph>(project(graph, relation, feats));
    auto result = optimize(projected, {.max_height = args.max_height});
    if (const auto why = result.tree.validate(); !why.empty()) throw InvariantError(why);

    const auto tree_path = resolve(args.out, dir);
    write_tree_json(tree_path, result.tree);

    const auto influence = community_influence(result.tree);
    std::vector<NodeId> pruned;
    if (!result.degenerate && args.prune_ratio > 0.0)
      pruned = prune(result.tree, {}, {.ratio = args.prune_ratio}).pruned_subtrees;
    {
      auto report = open_output(dir / "influence.csv");
      write_influence_report(report, result.tree, influence, pruned);
    }

    const double reduction =
        result.initial_entropy > 0.0
            ? 100.0 * (result.initial_entropy - result.final_entropy) / result.initial_entropy
            : 0.0;
    out << "relation " << relation_name(relation) << ", vertices " << projected->vertex_count()
        << ", edges " << projected->edges().size() << '\n';
    if (result.degenerate) out << "degenerate: graph volume is zero\n";
    out << "H1(G)  = " << num(result.initial_entropy) << '\n';
    out << "HT(T*) = " << num(result.final_entropy) << '\n';
    out << "reduction = " << num(reduction) << "%\n";
    out << "height = " << result.tree.height() << ", nodes = " << result.tree.live_count()
        << ", pruned subtrees = " << pruned.size() << '\n';

    manifest.config = {{"input", args.input.string()},
                       {"relation", std::string(relation_code(relation))},
                       {"K", args.max_height},
                       {"prune_ratio", args.prune_ratio},
                       {"features", args.features.string()}};
    manifest.outputs = {tree_path.string(), (dir / "influence.csv").string()};
    manifest.write(dir, g);
    return static_cast<int>(kOk);
  });
}

// --- diffuse --------------------------------------------------------------

int cmd_diffuse(const DiffuseArgs& args, const GlobalOptions& g, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    Manifest manifest;
    manifest.command = "diffuse";
    manifest.seed = g.seed.value_or(0);
    if (args.seeds.empty()) throw ConfigError("at least one seed vertex is required");
    if (!(args.p >= 0.0 && args.p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
    if (args.trials == 0) throw ConfigError("trials must be >= 1");
    const auto graph = read_edge_list(args.input);
    std::vector<VertexId> seeds;
    for (auto s : args.seeds) {
      if (s >= graph.vertex_count()) throw ConfigError("seed vertex out of range");
      seeds.push_back(static_cast<VertexId>(s));
    }
    const auto dir = prepare_out_dir(g);
    const auto view = diffusion_view(graph);
    const auto est = icm_simulate(view, seeds, {args.p, args.trials, manifest.seed});
    const double ratio = influence_ratio(est.mean, view.vertex_count());

    auto csv = open_output(dir / "diffusion.csv");
    csv << "p,trials,mean_spread,stderr,influence_ratio\n"
        << num(args.p) << ',' << args.trials << ',' << num(est.mean) << ',' << num(est.std_error)
        << ',' << num(ratio) << '\n';
    out << "spread = " << num(est.mean) << " +- " << num(est.std_error) << " (ratio "
        << num(ratio) << ")\n";

    manifest.config = {{"input", args.input.string()},
                       {"seeds", args.seeds},
                       {"p", args.p},
                       {"trials", args.trials}};
    manifest.outputs = {(dir / "diffusion.csv").string()};
    manifest.write(dir, g);
    return static_cast<int>(kOk);
  });
}

// --- episode --------------------------------------------------------------

namespace {

json step_json(std::uint64_t seed, const StepOutcome& s) {
  json j;
  j["episode_seed"] = seed;
  j["t"] = s.t;
  j["action"] = relation_name(s.action);
  j["new_follower"] = s.new_follower ? json(*s.new_follower) : json(nullptr);
  j["reward"] = s.reward;
  j["detected"] = s.detected;
  j["spread_estimate"] = s.spread_estimate;
  j["pruned"] = s.pruned;
  return j;
}

}  // namespace

int cmd_episode(const fs::path& config, const GlobalOptions& g, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    Manifest manifest;
    manifest.command = "episode";
    auto kv = KeyValueConfig::load(config);
    if (g.seed) kv.set("seed", std::to_string(*g.seed));
    const auto base = config.parent_path();
    const auto src = load_graph_source(kv, base);
    auto cfg = episode_config_from(kv, src, base);
    const auto episodes = kv.get_uint("episodes", 1);
    if (episodes == 0) throw ConfigError("episodes must be >= 1");

    std::optional<Calibration> calibration;
    if (kv.get_bool("detector.calibrate", false)) {
      const auto runs = static_cast<int>(kv.get_int("calibration.episodes", 1000));
      calibration = calibrate_detector(cfg.detector, cfg.t_max, runs, cfg.seed);
      cfg.detector.base_rate = calibration->base_rate;
      out << "calibrated detector base_rate = " << num(calibration->base_rate)
          << " (follow-every-step detection " << num(calibration->detected_fraction) << ")\n";
    }
    warn_unused(kv, err);
    const auto dir = prepare_out_dir(g);

    const auto results = run_episodes(cfg, src.graph, episodes);

    auto log = open_output(dir / "episode.jsonl");
    auto summary = open_output(dir / "summary.csv");
    summary << "seed,reward,length,influence_ratio\n";
    for (const auto& r : results) {
      for (const auto& s : r.steps) log << step_json(r.seed, s).dump() << '\n';
      summary << r.seed << ',' << num(r.episode_reward) << ',' << r.episode_length << ','
              << num(r.final_influence_ratio) << '\n';
      out << "seed " << r.seed << ": reward " << num(r.episode_reward) << ", length "
          << r.episode_length << ", followers " << r.followers.size()
          << (r.detected ? ", detected" : ", survived") << '\n';
    }

    manifest.seed = cfg.seed;
    manifest.config = snapshot(kv);
    if (src.bot_appended) manifest.config["bot (appended)"] = src.bot;
    if (calibration) manifest.config["calibrated_base_rate"] = calibration->base_rate;
    manifest.outputs = {(dir / "episode.jsonl").string(), (dir / "summary.csv").string()};
    manifest.write(dir, g);
    return static_cast<int>(kOk);
  });
}

// --- compare --------------------------------------------------------------

int cmd_compare(const fs::path& config, const GlobalOptions& g, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    Manifest manifest;
    manifest.command = "compare";
    auto kv = KeyValueConfig::load(config);
    if (g.seed) kv.set("seed", std::to_string(*g.seed));
    const auto base = config.parent_path();
    // p may be a list here; the episode reader only understands a scalar
    std::vector<double> ps = kv.has("p") ? kv.get_double_list("p") : std::vector<double>{0.8};
    if (ps.empty()) throw ConfigError("p list is empty");
    kv.set("p", num(ps.front()));
    const auto src = load_graph_source(kv, base);
    auto cfg = episode_config_from(kv, src, base);

    std::vector<SelectorKind> selectors;
    for (const auto& name : kv.get_list("selectors")) {
      auto k = parse_selector(name);
      if (!k) throw ConfigError("unknown selector '" + name + "'");
      selectors.push_back(*k);
    }
    if (selectors.empty()) selectors = {SelectorKind::Entropy, SelectorKind::Celf, SelectorKind::Degree};
    auto budgets = kv.get_uint_list("budgets");
    if (budgets.empty()) budgets = {1, 5, 10};
    const RelationKind relation = relation_or_throw(kv.get_string("relation", "retweet"));
    warn_unused(kv, err);
    const auto dir = prepare_out_dir(g);

    // Seed sets are drawn among the original vertices; an appended bot is excluded.
    const auto view = diffusion_view(src.graph);
    const std::size_t eligible = src.graph.vertex_count() - 1;
    std::vector<VertexId> excluded{src.bot};

    auto seeds_csv = open_output(dir / "compare_seeds.csv");
    seeds_csv << "selector,budget,p,status,seeds\n";
    std::vector<std::string> outputs{(dir / "compare_seeds.csv").string()};
    bool warned = false;

    for (double p : ps) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
      const auto name = ps.size() == 1 ? std::string("compare.csv") : "compare_p" + num(p) + ".csv";
      auto csv = open_output(dir / name);
      outputs.push_back((dir / name).string());
      csv << "selector,budget,mean_spread,stderr,wall_ms\n";
      EpisodeConfig pc = cfg;
      pc.p = p;
      const DiffusionConfig dc{p, cfg.trials, cfg.seed};

      for (auto selector : selectors) {
        for (auto budget : budgets) {
          const auto t0 = Clock::now();
          std::vector<VertexId> chosen;
          std::string status = "ok";
          try {
            if (budget > eligible)
              throw std::domain_error("budget " + std::to_string(budget) + " exceeds " +
                                      std::to_string(eligible) + " eligible vertices");
            switch (selector) {
              case SelectorKind::Entropy: {
                EpisodeConfig ec = pc;
                ec.selector = SelectorKind::Entropy;
                chosen = follower_seed_set(src.graph, relation, src.bot, budget, ec);
                break;
              }
              case SelectorKind::Celf: chosen = celf_select(view, budget, dc, excluded); break;
              case SelectorKind::Degree: chosen = degree_select(view, budget, excluded); break;
              case SelectorKind::Random: {
                EpisodeConfig ec = pc;
                ec.selector = SelectorKind::Random;
                chosen = follower_seed_set(src.graph, relation, src.bot, budget, ec);
                break;
              }
            }
          } catch (const std::domain_error& e) {
            status = std::string("error: ") + e.what();
          }
          double mean = 0.0;
          double se = 0.0;
          if (status == "ok" && !chosen.empty()) {
            const auto est = icm_simulate(view, chosen, dc);
            mean = est.mean;
            se = est.std_error;
          }
          const double ms =
              g.no_timing ? 0.0
                          : std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
          if (status == "ok") {
            csv << selector_name(selector) << ',' << budget << ',' << num(mean) << ',' << num(se)
                << ',' << num(ms) << '\n';
          } else {
            csv << selector_name(selector) << ',' << budget << ",nan,nan," << num(ms) << '\n';
            err << "warning: " << selector_name(selector) << " budget " << budget << ": "
                << status << '\n';
            warned = true;
          }
          seeds_csv << selector_name(selector) << ',' << budget << ',' << num(p) << ','
                    << status << ',';
          for (std::size_t i = 0; i < chosen.size(); ++i) seeds_csv << (i ? " " : "") << chosen[i];
          seeds_csv << '\n';
          out << selector_name(selector) << " k=" << budget << " p=" << num(p) << ": "
              << (status == "ok" ? num(mean) + " +- " + num(se) : status) << '\n';
        }
      }
    }
    if (warned) err << "warning: some rows could not be computed\n";

    manifest.seed = cfg.seed;
    manifest.config = snapshot(kv);
    manifest.config["p"] = ps;
    manifest.outputs = outputs;
    manifest.write(dir, g);
    return static_cast<int>(kOk);
  });
}

// --- gen / split ----------------------------------------------------------

int cmd_gen(const fs::path& config, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Manifest manifest;
    manifest.command = "gen";
    auto kv = KeyValueConfig::load(config);
    if (g.seed) kv.set("seed", std::to_string(*g.seed));
    const auto cfg = star_config_from(kv);
    warn_unused(kv, err);
    const auto dir = prepare_out_dir(g);
    const auto graph = gen_star_network(cfg);
    write_edge_list(dir / "network.txt", graph);
    out << "generated " << graph.vertex_count() << " vertices, " << graph.edge_count()
        << " edges\n";
    manifest.seed = cfg.seed;
    manifest.config = snapshot(kv);
    manifest.outputs = {(dir / "network.txt").string()};
    manifest.write(dir, g);
    return static_cast<int>(kOk);
  });
}

int cmd_split(const SplitArgs& args, const GlobalOptions& g, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    Manifest manifest;
    manifest.command = "split";
    manifest.seed = g.seed.value_or(0);
    if (!(args.fraction > 0.0 && args.fraction < 1.0))
      throw ConfigError("fraction must lie in (0, 1)");
    const auto graph = read_edge_list(args.input);
    const auto dir = prepare_out_dir(g);
    const auto res = split(graph, args.fraction, manifest.seed);
    write_edge_list(dir / "train.txt", res.train);
    write_edge_list(dir / "test.txt", res.test);
    for (const auto& [name, ids] : {std::pair{"train_ids.csv", &res.train_ids},
                                    std::pair{"test_ids.csv", &res.test_ids}}) {
      auto csv = open_output(dir / name);
      csv << "new_id,original_id\n";
      for (std::size_t i = 0; i < ids->size(); ++i) csv << i << ',' << (*ids)[i] << '\n';
    }
    out << "train " << res.train.vertex_count() << " vertices / " << res.train.edge_count()
        << " edges, test " << res.test.vertex_count() << " vertices / " << res.test.edge_count()
        << " edges, dropped cross edges " << res.dropped_cross_edges << '\n';
    manifest.config = {{"input", args.input.string()}, {"fraction", args.fraction}};
    manifest.outputs = {(dir / "train.txt").string(), (dir / "test.txt").string(),
                        (dir / "train_ids.csv").string(), (dir / "test_ids.csv").string()};
    manifest.write(dir, g);
    return static_cast<int>(kOk);
  });
}

// --- dispatch -------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural-entropy socialbot simulation toolkit", "sebot"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  GlobalOptions g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Run seed (overrides config files)");
  app.add_option("--out-dir", g.out_dir, "Directory for outputs")->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)");
  app.add_flag("--no-timing", g.no_timing, "Write zero wall-clock fields for byte-stable outputs");

  TreeArgs tree;
  auto* tree_cmd = app.add_subcommand("tree", "Optimize an encoding tree for one relation");
  tree_cmd->add_option("input", tree.input, "Edge-list file")->required();
  tree_cmd->add_option("--relation,-r", tree.relation, "RT, MT, RE or TW")->capture_default_str();
  tree_cmd->add_option("--K,-K", tree.max_height, "Maximum tree height")->capture_default_str();
  tree_cmd->add_option("--out,-o", tree.out, "Tree JSON path (inside --out-dir)")->capture_default_str();
  tree_cmd->add_option("--features", tree.features, "Feature CSV overriding structural features");
  tree_cmd->add_option("--prune-ratio", tree.prune_ratio, "Flag prunable communities")
      ->capture_default_str();

  DiffuseArgs diffuse;
  auto* diffuse_cmd = app.add_subcommand("diffuse", "Monte Carlo ICM spread of a seed set");
  diffuse_cmd->add_option("input", diffuse.input, "Edge-list file")->required();
  diffuse_cmd->add_option("--seeds", diffuse.seeds, "Seed vertex ids")->required()->delimiter(',');
  diffuse_cmd->add_option("--p", diffuse.p, "Activation probability")->capture_default_str();
  diffuse_cmd->add_option("--trials", diffuse.trials, "Monte Carlo trials")->capture_default_str();

  fs::path episode_cfg;
  auto* episode_cmd = app.add_subcommand("episode", "Run socialbot episodes from a config");
  episode_cmd->add_option("config", episode_cfg, "Key-value config file")->required();

  fs::path compare_cfg;
  auto* compare_cmd = app.add_subcommand("compare", "Compare follower selectors by spread");
  compare_cmd->add_option("config", compare_cfg, "Key-value config file")->required();

  fs::path gen_cfg;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a star-community network");
  gen_cmd->add_option("config", gen_cfg, "Key-value config file")->required();

  SplitArgs split_args;
  auto* split_cmd = app.add_subcommand("split", "Vertex-induced train/test split");
  split_cmd->add_option("input", split_args.input, "Edge-list file")->required();
  split_cmd->add_option("--fraction", split_args.fraction, "Train fraction")->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }
  if (*seed_opt) g.seed = seed;
  if (g.threads < 0) {
    err << "config error: --threads must be >= 0\n";
    return kConfig;
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);

  if (*tree_cmd) return cmd_tree(tree, g, out, err);
  if (*diffuse_cmd) return cmd_diffuse(diffuse, g, out, err);
  if (*episode_cmd) return cmd_episode(episode_cfg, g, out, err);
  if (*compare_cmd) return cmd_compare(compare_cfg, g, out, err);
  if (*gen_cmd) return cmd_gen(gen_cfg, g, out, err);
  if (*split_cmd) return cmd_split(split_args, g, out, err);
  return kConfig;
}

}  // namespace sebot::cli
