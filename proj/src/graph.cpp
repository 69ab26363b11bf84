#include "dagas/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "dagas/errors.hpp"

namespace dagas {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// k^e if it fits in int64, otherwise nullopt.
std::optional<std::int64_t> checked_power(std::int64_t k, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / k) return std::nullopt;
    r *= k;
  }
  return r;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError("expected integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

AgreeableGraph AgreeableGraph::square_lattice() { return {GraphKind::square_lattice, 0}; }

AgreeableGraph AgreeableGraph::cylinder(int n) {
  if (n < 2) throw DomainError("cylinder circumference must be >= 2, got " + std::to_string(n));
  return {GraphKind::cylinder, n};
}

AgreeableGraph AgreeableGraph::kary_tree(int k) {
  if (k < 1) throw DomainError("tree arity must be >= 1, got " + std::to_string(k));
  return {GraphKind::kary_tree, k};
}

AgreeableGraph AgreeableGraph::finite_dag(std::vector<std::string> labels,
                                          const std::vector<std::pair<std::string, std::string>>& edges) {
  AgreeableGraph g(GraphKind::finite_dag, 0);
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw DomainError("duplicate vertex label");
  }
  const auto n = static_cast<std::int64_t>(labels.size());
  g.labels_ = std::move(labels);
  g.adjacency_.resize(g.labels_.size());
  for (std::int64_t i = 0; i < n; ++i) {
    g.index_.emplace(g.labels_[static_cast<std::size_t>(i)], i);
    g.vertex_ids_.push_back({i, 0});
  }
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& [from, to] : edges) {
    const auto f = g.index_.find(from);
    const auto t = g.index_.find(to);
    if (f == g.index_.end() || t == g.index_.end()) {
      throw DomainError("edge " + from + " -> " + to + " references an undeclared vertex");
    }
    if (!seen.emplace(f->second, t->second).second) {
      throw AgreeabilityError("multiple edge " + from + " -> " + to);
    }
    if (f->second == t->second) throw AgreeabilityError("self loop at " + from);
    g.adjacency_[static_cast<std::size_t>(f->second)].push_back({t->second, 0});
  }

  // Kahn's algorithm; leftover vertices lie on a cycle.
  std::vector<int> indegree(g.labels_.size(), 0);
  for (const auto& kids : g.adjacency_) {
    for (const auto& c : kids) ++indegree[static_cast<std::size_t>(c.x)];
  }
  std::vector<std::int64_t> ready;
  for (std::int64_t i = n - 1; i >= 0; --i) {
    if (indegree[static_cast<std::size_t>(i)] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    const std::int64_t v = ready.back();
    ready.pop_back();
    g.topo_.push_back({v, 0});
    for (const auto& c : g.adjacency_[static_cast<std::size_t>(v)]) {
      if (--indegree[static_cast<std::size_t>(c.x)] == 0) ready.push_back(c.x);
    }
  }
  if (static_cast<std::int64_t>(g.topo_.size()) != n) {
    for (std::size_t i = 0; i < indegree.size(); ++i) {
      if (indegree[i] > 0) throw AgreeabilityError("directed cycle through vertex " + g.labels_[i]);
    }
  }

  // Transitive closure, descendants first.
  g.reach_.assign(g.labels_.size(), std::vector<bool>(g.labels_.size(), false));
  for (auto it = g.topo_.rbegin(); it != g.topo_.rend(); ++it) {
    auto& row = g.reach_[static_cast<std::size_t>(it->x)];
    for (const auto& c : g.adjacency_[static_cast<std::size_t>(it->x)]) {
      row[static_cast<std::size_t>(c.x)] = true;
      const auto& sub = g.reach_[static_cast<std::size_t>(c.x)];
      for (std::size_t j = 0; j < sub.size(); ++j) {
        if (sub[j]) row[j] = true;
      }
    }
  }
  return g;
}

std::size_t AgreeableGraph::max_out_degree() const {
  switch (kind_) {
    case GraphKind::square_lattice:
    case GraphKind::cylinder:
      return 2;
    case GraphKind::kary_tree:
      return static_cast<std::size_t>(parameter_);
    case GraphKind::finite_dag: {
      std::size_t m = 0;
      for (const auto& kids : adjacency_) m = std::max(m, kids.size());
      return m;
    }
  }
  return 0;
}

bool AgreeableGraph::contains(VertexId v) const {
  switch (kind_) {
    case GraphKind::square_lattice:
      return true;
    case GraphKind::cylinder:
      return v.x >= 0 && v.x < parameter_;
    case GraphKind::kary_tree: {
      if (v.y < 0 || v.x < 0) return false;
      const auto width = checked_power(parameter_, v.y);
      return !width || v.x < *width;
    }
    case GraphKind::finite_dag:
      return v.y == 0 && v.x >= 0 && v.x < static_cast<std::int64_t>(labels_.size());
  }
  return false;
}

void AgreeableGraph::children(VertexId v, ChildList& out) const {
  out.clear();
  switch (kind_) {
    case GraphKind::square_lattice:
      out.assign({VertexId{v.x, v.y + 1}, VertexId{v.x + 1, v.y + 1}});
      return;
    case GraphKind::cylinder:
      if (!contains(v)) throw DomainError("vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) + ") is not on the cylinder");
      out.assign({VertexId{v.x, v.y + 1}, VertexId{(v.x + 1) % parameter_, v.y + 1}});
      return;
    case GraphKind::kary_tree: {
      if (!contains(v)) throw DomainError("vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) + ") is not in the tree");
      const std::int64_t k = parameter_;
      if (v.x > (std::numeric_limits<std::int64_t>::max() - (k - 1)) / k) {
        throw ResourceError("tree vertex index overflows at depth " + std::to_string(v.y + 1));
      }
      for (std::int64_t i = 0; i < k; ++i) out.push_back({k * v.x + i, v.y + 1});
      return;
    }
    case GraphKind::finite_dag:
      if (!contains(v)) throw DomainError("unknown vertex index " + std::to_string(v.x));
      for (const auto& c : adjacency_[static_cast<std::size_t>(v.x)]) out.push_back(c);
      return;
  }
}

ChildList AgreeableGraph::children(VertexId v) const {
  ChildList out;
  children(v, out);
  return out;
}

bool AgreeableGraph::is_ancestor(VertexId a, VertexId b) const {
  switch (kind_) {
    case GraphKind::square_lattice: {
      const std::int64_t dy = b.y - a.y;
      const std::int64_t dx = b.x - a.x;
      return dy > 0 && dx >= 0 && dx <= dy;
    }
    case GraphKind::cylinder: {
      const std::int64_t dy = b.y - a.y;
      return dy > 0 && floor_mod(b.x - a.x, parameter_) <= dy;
    }
    case GraphKind::kary_tree: {
      const std::int64_t dy = b.y - a.y;
      if (dy <= 0) return false;
      const auto width = checked_power(parameter_, dy);
      return width ? b.x / *width == a.x : a.x == 0;
    }
    case GraphKind::finite_dag:
      if (!contains(a) || !contains(b)) throw DomainError("unknown vertex in ancestry query");
      return reach_[static_cast<std::size_t>(a.x)][static_cast<std::size_t>(b.x)];
  }
  return false;
}

bool AgreeableGraph::is_free(std::span<const VertexId> set) const {
  for (const auto& u : set) {
    for (const auto& v : set) {
      if (!(u == v) && is_ancestor(u, v)) return false;
    }
  }
  return true;
}

std::span<const VertexId> AgreeableGraph::vertices() const {
  if (kind_ != GraphKind::finite_dag) throw DomainError("vertex list requested for an infinite graph");
  return vertex_ids_;
}

std::string AgreeableGraph::name(VertexId v) const {
  if (kind_ == GraphKind::finite_dag) {
    if (!contains(v)) throw DomainError("unknown vertex index " + std::to_string(v.x));
    return labels_[static_cast<std::size_t>(v.x)];
  }
  return std::to_string(v.x) + "," + std::to_string(v.y);
}

VertexId AgreeableGraph::parse_vertex(std::string_view text) const {
  if (kind_ == GraphKind::finite_dag) {
    const auto it = index_.find(std::string(text));
    if (it == index_.end()) throw DomainError("unknown vertex '" + std::string(text) + "'");
    return {it->second, 0};
  }
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("expected 'x,y', got '" + std::string(text) + "'");
  const VertexId v{parse_int(text.substr(0, comma)), parse_int(text.substr(comma + 1))};
  if (!contains(v)) throw DomainError("vertex '" + std::string(text) + "' is outside " + describe());
  return v;
}

std::string AgreeableGraph::describe() const {
  switch (kind_) {
    case GraphKind::square_lattice:
      return "sq";
    case GraphKind::cylinder:
      return "cyl:" + std::to_string(parameter_);
    case GraphKind::kary_tree:
      return "tree:" + std::to_string(parameter_);
    case GraphKind::finite_dag:
      return "dag";
  }
  return "?";
}

AgreeableGraph load_dag(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("DAG file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw ParseError("DAG file needs a \"vertices\" array");
  }
  std::vector<std::string> labels;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw ParseError("vertex labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw ParseError("each edge must be a pair of vertex labels");
      }
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return AgreeableGraph::finite_dag(std::move(labels), edges);
}

AgreeableGraph load_dag_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open DAG file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_dag(buffer.str());
}

AgreeableGraph parse_graph_spec(std::string_view spec) {
  if (spec == "sq" || spec == "square") return AgreeableGraph::square_lattice();
  if (spec.starts_with("cyl:")) return AgreeableGraph::cylinder(static_cast<int>(parse_int(spec.substr(4))));
  if (spec.starts_with("tree:")) return AgreeableGraph::kary_tree(static_cast<int>(parse_int(spec.substr(5))));
  if (spec.starts_with("dag:")) return load_dag_file(std::string(spec.substr(4)));
  throw ParseError("unknown graph '" + std::string(spec) + "' (expected sq, cyl:N, tree:K or dag:PATH)");
}

}  // namespace dagas
