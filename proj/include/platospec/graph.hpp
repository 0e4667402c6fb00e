#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace platospec {

/// Which endpoint of the unit interval (0,1) an edge end sits at.
enum class EndSide : std::uint8_t { Zero = 0, One = 1 };

struct EdgeEnd {
  int edge = 0;
  EndSide end = EndSide::Zero;

  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

/// A vertex with its incident edge ends. The order of `ends` is the cyclic
/// order seen by orientation-sensitive couplings.
struct Vertex {
  int id = 0;
  std::vector<EdgeEnd> ends;

  int degree() const { return static_cast<int>(ends.size()); }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Equilateral metric graph with unit edges. Immutable once built; all
/// transformations return new graphs.
class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(std::vector<Vertex> vertices, int edge_count);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int id) const;
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return edge_count_; }
  int degree_sum() const;

  friend bool operator==(const MetricGraph&, const MetricGraph&) = default;

 private:
  std::vector<Vertex> vertices_;
  int edge_count_ = 0;
};

enum class Solid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

inline constexpr Solid kAllSolids[] = {Solid::Tetrahedron, Solid::Cube, Solid::Octahedron,
                                       Solid::Dodecahedron, Solid::Icosahedron};

std::string_view to_string(Solid solid);
/// Parses "tetrahedron", "cube", ... (case-insensitive). Throws std::invalid_argument.
Solid parse_solid(std::string_view name);

/// 1-skeleton of a Platonic solid. Edge ends at each vertex are listed
/// clockwise as seen from outside the solid; the endpoint with the smaller
/// vertex id is the Zero end of every edge.
MetricGraph build_platonic(Solid solid);

struct ValidationIssue {
  std::string code;  // "duplicate end", "dangling end", "missing end", "bad edge id", "disconnected"
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(std::string_view code) const;
};

ValidationReport validate(const MetricGraph& graph);

/// Rotates the end list of one vertex cyclically (element i moves to i - shift).
/// Throws std::out_of_range for an unknown vertex.
MetricGraph rotate_vertex_order(const MetricGraph& graph, int vertex_id, int shift);

/// Reorders the ends of one vertex: new_ends[i] = old_ends[perm[i]].
MetricGraph permute_vertex_order(const MetricGraph& graph, int vertex_id,
                                 const std::vector<int>& perm);

/// Swaps which endpoint of `edge` is Zero and which is One.
MetricGraph flip_edge(const MetricGraph& graph, int edge);

/// Sizes of the breadth-first layers rooted at `root`, refined by the number
/// of neighbours each layer vertex has in the previous layer.
std::vector<std::vector<int>> bfs_layer_profile(const MetricGraph& graph, int root);

/// Vertex ids at the two ends of every edge, indexed by edge id: {zero, one}.
/// Entries are -1 when an end is not attached.
std::vector<std::pair<int, int>> edge_endpoints(const MetricGraph& graph);

}  // namespace platospec
