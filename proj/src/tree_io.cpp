#include "sebot/tree_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "sebot/errors.hpp"

namespace sebot {

using nlohmann::json;

json tree_to_json(const EncodingTree& t) {
  json nodes = json::array();
  for (NodeId id : t.live_nodes()) {
    const auto& n = t.node(id);
    json entry;
    entry["id"] = id;
    entry["parent"] = n.parent == kNoNode ? json(nullptr) : json(n.parent);
    entry["children"] = n.children;
    if (n.children.empty() && n.vertex != kNoVertex)
      entry["vertices"] = json::array({n.vertex});
    else
      entry["vertices"] = json::array();
    entry["volume"] = n.volume;
    entry["cut"] = n.cut;
    entry["assigned_entropy"] = id == t.root() ? 0.0 : assigned_entropy(t, id);
    nodes.push_back(std::move(entry));
  }
  json doc;
  doc["root"] = t.root();
  doc["height"] = t.height();
  doc["graph_volume"] = t.graph().volume();
  doc["nodes"] = std::move(nodes);
  return doc;
}

EncodingTree tree_from_json(const json& doc, std::shared_ptr<const WeightedGraph> graph) {
  if (!graph) throw std::invalid_argument("tree_from_json: null graph");
  const auto& entries = doc.at("nodes");
  NodeId max_id = -1;
  for (const auto& e : entries) max_id = std::max(max_id, e.at("id").get<NodeId>());
  if (max_id < 0) throw std::invalid_argument("tree_from_json: no nodes");

  std::vector<TreeNode> nodes(static_cast<std::size_t>(max_id) + 1);
  for (auto& n : nodes) n.alive = false;
  for (const auto& e : entries) {
    const auto id = e.at("id").get<NodeId>();
    auto& n = nodes[id];
    if (n.alive) throw std::invalid_argument("tree_from_json: duplicate node id");
    n.alive = true;
    n.parent = e.at("parent").is_null() ? kNoNode : e.at("parent").get<NodeId>();
    n.children = e.at("children").get<std::vector<NodeId>>();
    const auto verts = e.at("vertices").get<std::vector<VertexId>>();
    if (verts.size() > 1) throw std::invalid_argument("tree_from_json: leaf with several vertices");
    if (!verts.empty()) n.vertex = verts.front();
    n.volume = e.at("volume").get<double>();
    n.cut = e.at("cut").get<double>();
  }

  const auto root = doc.at("root").get<NodeId>();
  if (root < 0 || root > max_id || !nodes[root].alive)
    throw std::invalid_argument("tree_from_json: bad root");
  // depths from the root
  std::vector<std::pair<NodeId, int>> stack{{root, 0}};
  std::size_t visited = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    if (++visited > nodes.size()) throw std::invalid_argument("tree_from_json: cycle");
    nodes[id].depth = d;
    for (NodeId c : nodes[id].children) {
      if (c < 0 || c > max_id || !nodes[c].alive)
        throw std::invalid_argument("tree_from_json: dangling child");
      if (nodes[c].parent != id) throw std::invalid_argument("tree_from_json: parent link mismatch");
      stack.emplace_back(c, d + 1);
    }
  }
  if (nodes[root].parent != kNoNode) throw std::invalid_argument("tree_from_json: root has a parent");
  const auto alive = std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.alive; });
  if (visited != static_cast<std::size_t>(alive))
    throw std::invalid_argument("tree_from_json: unreachable nodes");
  return EncodingTree::from_parts(std::move(graph), std::move(nodes), root);
}

void write_tree_json(const std::filesystem::path& path, const EncodingTree& t) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << tree_to_json(t).dump(1) << '\n';
}

}  // namespace sebot
