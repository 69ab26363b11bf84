#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dagas {

/// Vertex of an agreeable graph.
///
/// Lattices use (column, row); k-ary trees use (index within depth, depth);
/// finite DAGs use (label rank, 0), where ranks follow the sorted label order.
/// The total order compares rows first, then columns.
struct VertexId {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend bool operator<(const VertexId& a, const VertexId& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
  friend bool operator>(const VertexId& a, const VertexId& b) { return b < a; }
};

struct VertexHash {
  std::size_t operator()(const VertexId& v) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(v.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(v.y) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

using ChildList = boost::container::small_vector<VertexId, 4>;

enum class GraphKind { square_lattice, cylinder, kary_tree, finite_dag };

/// Directed graph with no multiple edges, no directed cycles and finite child lists.
///
/// Built-in lattices and trees are intensional (children computed on demand);
/// finite DAGs store their adjacency. Instances are immutable.
class AgreeableGraph {
 public:
  static AgreeableGraph square_lattice();
  /// Cylinder of circumference n ≥ 2: (x, y) → (x, y+1), (x+1 mod n, y+1).
  static AgreeableGraph cylinder(int n);
  /// Rooted k-ary tree, root (0, 0); (x, y) → (k·x + i, y+1) for i = 0..k-1.
  static AgreeableGraph kary_tree(int k);
  /// Finite DAG; child order follows edge order. Throws AgreeabilityError on
  /// duplicate edges or cycles and DomainError on unknown endpoints.
  static AgreeableGraph finite_dag(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::string, std::string>>& edges);

  GraphKind kind() const { return kind_; }
  /// n for a cylinder, k for a tree, 0 otherwise.
  int parameter() const { return parameter_; }
  bool is_finite() const { return kind_ == GraphKind::finite_dag; }
  /// Upper bound on child-list length.
  std::size_t max_out_degree() const;

  bool contains(VertexId v) const;
  /// Ordered children; throws DomainError for a vertex outside the graph.
  ChildList children(VertexId v) const;
  void children(VertexId v, ChildList& out) const;

  /// True iff there is a directed path of length ≥ 1 from `ancestor` to `descendant`.
  bool is_ancestor(VertexId ancestor, VertexId descendant) const;
  /// No element of `set` is an ancestor of another.
  bool is_free(std::span<const VertexId> set) const;

  /// Finite-DAG only: all vertices in label order.
  std::span<const VertexId> vertices() const;
  std::size_t vertex_count() const { return labels_.size(); }
  /// A topological order of a finite DAG.
  const std::vector<VertexId>& topological_order() const { return topo_; }

  /// Human/JSON name of a vertex: "x,y" for lattices and trees, the label for DAGs.
  std::string name(VertexId v) const;
  /// Inverse of name(); throws DomainError when the text names no vertex.
  VertexId parse_vertex(std::string_view text) const;
  /// Short description such as "sq", "cyl:5", "tree:2", "dag".
  std::string describe() const;

 private:
  AgreeableGraph(GraphKind kind, int parameter) : kind_(kind), parameter_(parameter) {}

  GraphKind kind_;
  int parameter_ = 0;
  // finite-dag storage
  std::vector<std::string> labels_;
  std::vector<VertexId> vertex_ids_;
  std::unordered_map<std::string, std::int64_t> index_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::vector<bool>> reach_;
  std::vector<VertexId> topo_;
};

/// Parses the JSON finite-DAG format {"vertices": [...], "edges": [[u, v], ...]}.
AgreeableGraph load_dag(std::string_view text);
AgreeableGraph load_dag_file(const std::string& path);

/// Parses "sq", "cyl:N", "tree:K" or "dag:PATH".
AgreeableGraph parse_graph_spec(std::string_view spec);

}  // namespace dagas
