#include "sebot/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "sebot/edge_list.hpp"
#include "sebot/errors.hpp"
#include "sebot/rng.hpp"

namespace sebot {

void validate(const StarNetConfig& cfg) {
  if (cfg.communities == 0) throw ConfigError("communities must be >= 1");
  if (cfg.sizes.size() != 1 && cfg.sizes.size() != cfg.communities)
    throw ConfigError("sizes must list one size or one per community");
  for (auto s : cfg.sizes)
    if (s < 2) throw ConfigError("every community needs a hub and at least one leaf");
  if (!(cfg.inter_edge_prob >= 0.0 && cfg.inter_edge_prob <= 1.0))
    throw ConfigError("inter_edge_prob must lie in [0, 1]");
  double total = 0.0;
  for (double m : cfg.mix) {
    if (m < 0.0) throw ConfigError("relation mix entries must be >= 0");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("relation mix must sum to 1");
}

StarNetConfig star_config_from(const KeyValueConfig& kv) {
  StarNetConfig cfg;
  cfg.communities = kv.get_uint("communities", cfg.communities);
  if (kv.has("sizes")) {
    cfg.sizes.clear();
    for (auto s : kv.get_uint_list("sizes")) cfg.sizes.push_back(s);
  }
  cfg.inter_edge_prob = kv.get_double("inter_edge_prob", cfg.inter_edge_prob);
  const bool any_mix = std::any_of(kAllRelations.begin(), kAllRelations.end(), [&](RelationKind r) {
    return kv.has("mix." + std::string(relation_name(r)));
  });
  if (any_mix) {
    for (auto r : kAllRelations)
      cfg.mix[static_cast<std::size_t>(r)] = kv.get_double("mix." + std::string(relation_name(r)), 0.0);
  }
  cfg.seed = kv.get_uint("seed", cfg.seed);
  validate(cfg);
  return cfg;
}

namespace {

RelationKind draw_relation(const std::array<double, kRelationCount>& mix, Engine& eng) {
  const double u = next_unit(eng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < kRelationCount; ++i) {
    if (mix[i] <= 0.0) continue;
    last = i;
    acc += mix[i];
    if (u < acc) return kAllRelations[i];
  }
  return kAllRelations[last];
}

}  // namespace

MultiRelGraph gen_star_network(const StarNetConfig& cfg) {
  validate(cfg);
  std::vector<std::size_t> sizes =
      cfg.sizes.size() == 1 ? std::vector<std::size_t>(cfg.communities, cfg.sizes.front()) : cfg.sizes;
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});

  MultiRelGraph g(n);
  auto eng = make_engine(cfg.seed, Stream::Network);
  std::int64_t clock = 0;
  std::vector<VertexId> hubs;
  VertexId next = 0;
  for (auto size : sizes) {
    const VertexId hub = next;
    hubs.push_back(hub);
    for (std::size_t i = 1; i < size; ++i)
      g.add_edge(hub, static_cast<VertexId>(hub + i), draw_relation(cfg.mix, eng), clock++);
    next = static_cast<VertexId>(next + size);
  }
  for (VertexId a : hubs) {
    for (VertexId b : hubs) {
      if (a == b) continue;
      // draw both coins unconditionally so q does not shift later draws
      const double coin = next_unit(eng);
      const RelationKind r = draw_relation(cfg.mix, eng);
      if (coin < cfg.inter_edge_prob) g.add_edge(a, b, r, clock++);
    }
  }
  return g;
}

LoadedGraph load_higgs(
    const std::vector<std::pair<std::filesystem::path, std::optional<RelationKind>>>& files) {
  LoadedGraph out;
  std::unordered_map<std::string, VertexId> index;
  auto intern = [&](const std::string& token) {
    auto [it, fresh] = index.emplace(token, static_cast<VertexId>(out.ids.size()));
    if (fresh) out.ids.push_back(token);
    return it->second;
  };

  std::vector<Event> events;
  for (const auto& [path, relation] : files) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    for (const auto& raw : parse_edge_list(in, path.string(), relation).events)
      events.push_back({intern(raw.src), intern(raw.dst), raw.relation, raw.timestamp});
  }
  out.graph = build_multirel(events, out.ids.size());
  return out;
}

SplitResult split(const MultiRelGraph& g, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::domain_error("split: train fraction must lie in (0, 1)");
  const std::size_t n = g.vertex_count();
  const auto k = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  if (k == 0 || k >= n) throw std::domain_error("split: fraction leaves one side empty");

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  auto eng = make_engine(seed, Stream::Split);
  // Fisher-Yates with our own draws so the split is stable across standard libraries
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(next_unit(eng) * static_cast<double>(i + 1));
    std::swap(order[i], order[std::min(j, i)]);
  }

  SplitResult res;
  res.train_ids.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  res.test_ids.assign(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
  std::sort(res.train_ids.begin(), res.train_ids.end());
  std::sort(res.test_ids.begin(), res.test_ids.end());

  std::vector<int> side(n, 0);
  std::vector<VertexId> local(n, 0);
  for (std::size_t i = 0; i < res.train_ids.size(); ++i) {
    side[res.train_ids[i]] = 1;
    local[res.train_ids[i]] = static_cast<VertexId>(i);
  }
  for (std::size_t i = 0; i < res.test_ids.size(); ++i) {
    side[res.test_ids[i]] = 2;
    local[res.test_ids[i]] = static_cast<VertexId>(i);
  }

  res.train = MultiRelGraph(res.train_ids.size());
  res.test = MultiRelGraph(res.test_ids.size());
  for (const auto& ev : g.events()) {
    if (side[ev.src] != side[ev.dst]) {
      ++res.dropped_cross_edges;
      continue;
    }
    auto& target = side[ev.src] == 1 ? res.train : res.test;
    target.add_edge(local[ev.src], local[ev.dst], ev.relation, ev.timestamp);
  }
  return res;
}

}  // namespace sebot
