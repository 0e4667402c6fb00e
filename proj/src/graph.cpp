#include "platospec/graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace platospec {

namespace {

using Point = std::array<double, 3>;

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Point scale(const Point& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double norm(const Point& a) { return std::sqrt(dot(a, a)); }

// Standard coordinates, all solids centred at the origin.
std::vector<Point> solid_coordinates(Solid solid) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Point> pts;
  switch (solid) {
    case Solid::Tetrahedron:
      pts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      break;
    case Solid::Cube:
      for (double x : {-1.0, 1.0})
        for (double y : {-1.0, 1.0})
          for (double z : {-1.0, 1.0}) pts.push_back({x, y, z});
      break;
    case Solid::Octahedron:
      pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    case Solid::Dodecahedron:
      for (double x : {-1.0, 1.0})
        for (double y : {-1.0, 1.0})
          for (double z : {-1.0, 1.0}) pts.push_back({x, y, z});
      for (double a : {-1.0, 1.0})
        for (double b : {-1.0, 1.0}) {
          pts.push_back({0, a / phi, b * phi});
          pts.push_back({a / phi, b * phi, 0});
          pts.push_back({b * phi, 0, a / phi});
        }
      break;
    case Solid::Icosahedron:
      for (double a : {-1.0, 1.0})
        for (double b : {-1.0, 1.0}) {
          pts.push_back({0, a, b * phi});
          pts.push_back({a, b * phi, 0});
          pts.push_back({b * phi, 0, a});
        }
      break;
  }
  return pts;
}

MetricGraph skeleton_from_coordinates(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  double shortest = INFINITY;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) shortest = std::min(shortest, norm(sub(pts[i], pts[j])));

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(norm(sub(pts[i], pts[j])) - shortest) < 1e-9 * shortest) edges.emplace_back(i, j);

  std::vector<Vertex> vertices(n);
  for (int v = 0; v < n; ++v) {
    struct Incident {
      EdgeEnd end;
      double angle;
    };
    std::vector<Incident> incident;
    const Point normal = scale(pts[v], 1.0 / norm(pts[v]));
    Point e1{};
    Point e2{};
    bool frame = false;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      const auto [a, b] = edges[e];
      if (a != v && b != v) continue;
      const int other = (a == v) ? b : a;
      const Point d = sub(pts[other], pts[v]);
      const Point t = sub(d, scale(normal, dot(d, normal)));
      if (!frame) {
        e1 = scale(t, 1.0 / norm(t));
        e2 = cross(normal, e1);
        frame = true;
      }
      incident.push_back({{e, a == v ? EndSide::Zero : EndSide::One}, std::atan2(dot(t, e2), dot(t, e1))});
    }
    // (e1, e2, outward normal) is right-handed, so clockwise seen from
    // outside means decreasing angle.
    std::sort(incident.begin(), incident.end(),
              [](const Incident& x, const Incident& y) { return x.angle > y.angle; });
    vertices[v].id = v;
    for (const auto& inc : incident) vertices[v].ends.push_back(inc.end);
  }
  return MetricGraph(std::move(vertices), static_cast<int>(edges.size()));
}

std::vector<std::vector<int>> adjacency(const MetricGraph& graph) {
  std::vector<std::vector<int>> adj(graph.vertex_count());
  for (const auto& [a, b] : edge_endpoints(graph)) {
    if (a < 0 || b < 0) continue;
    adj[a].push_back(b);
    if (a != b) adj[b].push_back(a);
  }
  return adj;
}

}  // namespace

MetricGraph::MetricGraph(std::vector<Vertex> vertices, int edge_count)
    : vertices_(std::move(vertices)), edge_count_(edge_count) {
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    if (vertices_[i].id != i) throw std::invalid_argument("vertex ids must be 0..V-1 in order");
  }
  if (edge_count_ < 0) throw std::invalid_argument("negative edge count");
}

const Vertex& MetricGraph::vertex(int id) const {
  if (id < 0 || id >= vertex_count()) throw std::out_of_range("unknown vertex id " + std::to_string(id));
  return vertices_[id];
}

int MetricGraph::degree_sum() const {
  return std::accumulate(vertices_.begin(), vertices_.end(), 0,
                         [](int acc, const Vertex& v) { return acc + v.degree(); });
}

std::string_view to_string(Solid solid) {
  switch (solid) {
    case Solid::Tetrahedron: return "tetrahedron";
    case Solid::Cube: return "cube";
    case Solid::Octahedron: return "octahedron";
    case Solid::Dodecahedron: return "dodecahedron";
    case Solid::Icosahedron: return "icosahedron";
  }
  return "?";
}

Solid parse_solid(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Solid s : kAllSolids)
    if (lower == to_string(s)) return s;
  if (lower == "tetra") return Solid::Tetrahedron;
  if (lower == "octa") return Solid::Octahedron;
  if (lower == "dodeca") return Solid::Dodecahedron;
  if (lower == "icosa") return Solid::Icosahedron;
  throw std::invalid_argument("unknown solid '" + std::string(name) + "'");
}

MetricGraph build_platonic(Solid solid) { return skeleton_from_coordinates(solid_coordinates(solid)); }

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.code == code; });
}

std::vector<std::pair<int, int>> edge_endpoints(const MetricGraph& graph) {
  std::vector<std::pair<int, int>> ends(graph.edge_count(), {-1, -1});
  for (const auto& v : graph.vertices()) {
    for (const auto& e : v.ends) {
      if (e.edge < 0 || e.edge >= graph.edge_count()) continue;
      (e.end == EndSide::Zero ? ends[e.edge].first : ends[e.edge].second) = v.id;
    }
  }
  return ends;
}

ValidationReport validate(const MetricGraph& graph) {
  ValidationReport report;
  const int n_edges = graph.edge_count();
  std::vector<int> seen(2 * static_cast<std::size_t>(n_edges), 0);
  for (const auto& v : graph.vertices()) {
    for (const auto& e : v.ends) {
      if (e.edge < 0 || e.edge >= n_edges) {
        report.issues.push_back({"bad edge id", "vertex " + std::to_string(v.id) + " references edge " +
                                                    std::to_string(e.edge)});
        continue;
      }
      int& count = seen[2 * e.edge + static_cast<int>(e.end)];
      if (++count == 2) {
        report.issues.push_back({"duplicate end", "edge " + std::to_string(e.edge) + " end " +
                                                      std::to_string(static_cast<int>(e.end)) +
                                                      " appears at more than one vertex slot"});
      }
    }
  }
  if (graph.degree_sum() != 2 * n_edges) {
    report.issues.push_back({"dangling end", "degree sum " + std::to_string(graph.degree_sum()) +
                                                 " != 2N = " + std::to_string(2 * n_edges)});
  }
  for (int e = 0; e < n_edges; ++e) {
    for (int side = 0; side < 2; ++side) {
      if (seen[2 * e + side] == 0)
        report.issues.push_back({"missing end", "edge " + std::to_string(e) + " end " + std::to_string(side) +
                                                    " is not attached to any vertex"});
    }
  }
  if (graph.vertex_count() > 0) {
    const auto adj = adjacency(graph);
    std::vector<char> reached(graph.vertex_count(), 0);
    std::queue<int> queue;
    queue.push(0);
    reached[0] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int w : adj[v])
        if (!reached[w]) {
          reached[w] = 1;
          queue.push(w);
        }
    }
    if (std::count(reached.begin(), reached.end(), 0) > 0)
      report.issues.push_back({"disconnected", "not every vertex is reachable from vertex 0"});
  }
  return report;
}

MetricGraph rotate_vertex_order(const MetricGraph& graph, int vertex_id, int shift) {
  std::vector<Vertex> vertices = graph.vertices();
  auto& ends = vertices.at(static_cast<std::size_t>(graph.vertex(vertex_id).id)).ends;
  const int d = static_cast<int>(ends.size());
  if (d > 0) {
    const int s = ((shift % d) + d) % d;
    std::rotate(ends.begin(), ends.begin() + s, ends.end());
  }
  return MetricGraph(std::move(vertices), graph.edge_count());
}

MetricGraph permute_vertex_order(const MetricGraph& graph, int vertex_id, const std::vector<int>& perm) {
  const auto& old_ends = graph.vertex(vertex_id).ends;
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  if (check.size() != old_ends.size() || std::adjacent_find(check.begin(), check.end()) != check.end() ||
      (!check.empty() && (check.front() != 0 || check.back() != static_cast<int>(check.size()) - 1)))
    throw std::invalid_argument("not a permutation of the vertex's ends");
  std::vector<Vertex> vertices = graph.vertices();
  for (std::size_t i = 0; i < perm.size(); ++i) vertices[vertex_id].ends[i] = old_ends[perm[i]];
  return MetricGraph(std::move(vertices), graph.edge_count());
}

MetricGraph flip_edge(const MetricGraph& graph, int edge) {
  if (edge < 0 || edge >= graph.edge_count()) throw std::out_of_range("unknown edge id " + std::to_string(edge));
  std::vector<Vertex> vertices = graph.vertices();
  for (auto& v : vertices)
    for (auto& e : v.ends)
      if (e.edge == edge) e.end = (e.end == EndSide::Zero) ? EndSide::One : EndSide::Zero;
  return MetricGraph(std::move(vertices), graph.edge_count());
}

std::vector<std::vector<int>> bfs_layer_profile(const MetricGraph& graph, int root) {
  const auto adj = adjacency(graph);
  std::vector<int> layer_of(graph.vertex_count(), -1);
  std::vector<std::vector<int>> layers{{graph.vertex(root).id}};
  layer_of[root] = 0;
  while (true) {
    std::vector<int> next;
    for (int v : layers.back())
      for (int w : adj[v])
        if (layer_of[w] < 0) {
          layer_of[w] = static_cast<int>(layers.size());
          next.push_back(w);
        }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  // Per layer: sorted multiset of back-edge counts.
  std::vector<std::vector<int>> profile;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    std::vector<int> back;
    for (int v : layers[l]) {
      int c = 0;
      for (int w : adj[v]) c += (l > 0 && layer_of[w] == static_cast<int>(l) - 1);
      back.push_back(c);
    }
    std::sort(back.begin(), back.end());
    profile.push_back(std::move(back));
  }
  return profile;
}

}  // namespace platospec
