#include "sebot/edge_list.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sebot/errors.hpp"

namespace sebot {

namespace {

template <typename T>
bool parse_number(const std::string& s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

EdgeListFile parse_edge_list(std::istream& in, const std::string& source,
                             std::optional<RelationKind> implied) {
  EdgeListFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      std::istringstream header{std::string(body.substr(1))};
      std::string word;
      std::size_t count = 0;
      if (header >> word >> count && word == "vertices") out.declared_vertices = count;
      continue;
    }

    std::istringstream fields{std::string(body)};
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));

    RawEvent ev;
    ev.line = lineno;
    if (tok.size() == 4) {
      auto rel = parse_relation(tok[3]);
      if (!rel) throw ParseError(source, lineno, "unknown relation '" + tok[3] + "'");
      ev.relation = *rel;
    } else if (tok.size() == 3 && implied) {
      ev.relation = *implied;
    } else {
      throw ParseError(source, lineno,
                       "expected 'src dst timestamp relation', got " +
                           std::to_string(tok.size()) + " fields");
    }
    if (!parse_number(tok[2], ev.timestamp) || ev.timestamp < 0)
      throw ParseError(source, lineno, "bad timestamp '" + tok[2] + "'");
    ev.src = std::move(tok[0]);
    ev.dst = std::move(tok[1]);
    out.events.push_back(std::move(ev));
  }
  return out;
}

MultiRelGraph parse_dense_edge_list(std::istream& in, const std::string& source,
                                    std::optional<std::size_t> n) {
  const auto file = parse_edge_list(in, source);
  if (!n) n = file.declared_vertices;
  const auto& raw = file.events;
  std::vector<Event> events;
  events.reserve(raw.size());
  std::size_t max_id_plus_one = 0;
  for (const auto& r : raw) {
    Event ev;
    if (!parse_number(r.src, ev.src) || !parse_number(r.dst, ev.dst))
      throw ParseError(source, r.line, "vertex ids must be non-negative integers");
    if (n && (ev.src >= *n || ev.dst >= *n))
      throw ParseError(source, r.line, "vertex id exceeds vertex count " + std::to_string(*n));
    ev.relation = r.relation;
    ev.timestamp = r.timestamp;
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(ev.src, ev.dst) + 1);
    events.push_back(ev);
  }
  return build_multirel(events, n.value_or(max_id_plus_one));
}

MultiRelGraph read_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n) {
  auto in = open_input(path);
  return parse_dense_edge_list(in, path.string(), n);
}

void write_edge_list(std::ostream& out, const MultiRelGraph& g) {
  out << "# vertices " << g.vertex_count() << "\n";
  for (const auto& ev : g.events())
    out << ev.src << ' ' << ev.dst << ' ' << ev.timestamp << ' ' << relation_code(ev.relation)
        << '\n';
}

void write_edge_list(const std::filesystem::path& path, const MultiRelGraph& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_edge_list(out, g);
}

FeatureMatrix read_feature_csv(std::istream& in, const std::string& source, std::size_t n) {
  std::vector<std::vector<double>> rows(n);
  std::vector<bool> seen(n, false);
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::vector<std::string> cells;
    std::stringstream ss{std::string(body)};
    for (std::string cell; std::getline(ss, cell, ',');) cells.emplace_back(trim(cell));

    std::size_t v = 0;
    if (cells.empty() || !parse_number(cells[0], v))
      throw ParseError(source, lineno, "first column must be a vertex id");
    if (v >= n) throw ParseError(source, lineno, "vertex id out of range");
    if (seen[v]) throw ParseError(source, lineno, "duplicate row for vertex " + cells[0]);
    const std::size_t d = cells.size() - 1;
    if (d < 2) throw ParseError(source, lineno, "need at least 2 feature columns");
    if (dim == 0) dim = d;
    if (d != dim) throw ParseError(source, lineno, "inconsistent feature dimension");

    auto& row = rows[v];
    row.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      try {
        std::size_t used = 0;
        row[i] = std::stod(cells[i + 1], &used);
        if (used != cells[i + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(source, lineno, "bad number '" + cells[i + 1] + "'");
      }
      if (!std::isfinite(row[i])) throw ParseError(source, lineno, "non-finite feature");
    }
    seen[v] = true;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) throw ParseError(source, lineno, "missing row for vertex " + std::to_string(v));

  FeatureMatrix out(n, dim);
  for (std::size_t v = 0; v < n; ++v) std::copy(rows[v].begin(), rows[v].end(), out.row(v).begin());
  return out;
}

FeatureMatrix read_feature_csv(const std::filesystem::path& path, std::size_t n) {
  auto in = open_input(path);
  return read_feature_csv(in, path.string(), n);
}

}  // namespace sebot
