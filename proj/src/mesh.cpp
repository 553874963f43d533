#include "vemmd/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace vemmd {

namespace {

double signed_area(const std::vector<Vec2>& poly) {
  double twice = 0.0;
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly, double area) {
  double cx = 0.0, cy = 0.0;
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double w = cross(a, b);
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  return {cx / (6.0 * area), cy / (6.0 * area)};
}

double polygon_diameter(const std::vector<Vec2>& poly) {
  double d2 = 0.0;
  for (size_t i = 0; i < poly.size(); ++i)
    for (size_t j = i + 1; j < poly.size(); ++j) {
      const Vec2 d = poly[i] - poly[j];
      d2 = std::max(d2, dot(d, d));
    }
  return std::sqrt(d2);
}

int orient(const Vec2& a, const Vec2& b, const Vec2& c, double eps) {
  const double v = cross(b - a, c - a);
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p, double eps) {
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
         p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps) {
  const int o1 = orient(a, b, c, eps);
  const int o2 = orient(a, b, d, eps);
  const int o3 = orient(c, d, a, eps);
  const int o4 = orient(c, d, b, eps);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c, eps)) return true;
  if (o2 == 0 && on_segment(a, b, d, eps)) return true;
  if (o3 == 0 && on_segment(c, d, a, eps)) return true;
  if (o4 == 0 && on_segment(c, d, b, eps)) return true;
  return false;
}

void check_simple(const std::vector<Vec2>& poly, int cell_index) {
  const int m = static_cast<int>(poly.size());
  const double scale = polygon_diameter(poly);
  const double eps = 1e-14 * scale * scale;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      // skip edges sharing a vertex
      if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % m], poly[j], poly[(j + 1) % m], eps))
        throw Error("build_mesh: cell " + std::to_string(cell_index) + " is not a simple polygon");
    }
  }
}

}  // namespace

std::vector<Vec2> PolyMesh::cell_polygon(int K) const {
  std::vector<Vec2> poly;
  poly.reserve(cells[K].size());
  for (int v : cells[K]) poly.push_back(vertices[v]);
  return poly;
}

Vec2 PolyMesh::outward_normal(int K, int local_edge) const {
  const CellEdge& ce = cell_edges[K][local_edge];
  return edges[ce.edge].normal * ce.sign;
}

PolyMesh build_mesh(std::vector<Vec2> vertices, std::vector<std::vector<int>> cells) {
  PolyMesh m;
  m.vertices = std::move(vertices);
  m.cells = std::move(cells);

  const int nv = m.num_vertices();
  std::vector<char> used(nv, 0);

  for (size_t K = 0; K < m.cells.size(); ++K) {
    auto& loop = m.cells[K];
    if (loop.size() < 3) throw Error("build_mesh: cell " + std::to_string(K) + " has fewer than 3 vertices");
    for (int v : loop) {
      if (v < 0 || v >= nv) throw Error("build_mesh: cell " + std::to_string(K) + " references invalid vertex");
      used[v] = 1;
    }
    for (size_t i = 0; i < loop.size(); ++i)
      for (size_t j = i + 1; j < loop.size(); ++j)
        if (loop[i] == loop[j])
          throw Error("build_mesh: cell " + std::to_string(K) + " repeats a vertex");

    std::vector<Vec2> poly;
    poly.reserve(loop.size());
    for (int v : loop) poly.push_back(m.vertices[v]);
    double area = signed_area(poly);
    if (area < 0.0) {  // clockwise input: reorient
      std::reverse(loop.begin(), loop.end());
      std::reverse(poly.begin(), poly.end());
      area = -area;
    }
    const double diam = polygon_diameter(poly);
    if (!(area > 1e-14 * diam * diam))
      throw Error("build_mesh: cell " + std::to_string(K) + " has non-positive area");
    check_simple(poly, static_cast<int>(K));

    m.cell_area.push_back(area);
    m.cell_centroid.push_back(polygon_centroid(poly, area));
    m.cell_diameter.push_back(diam);
  }

  for (int v = 0; v < nv; ++v)
    if (!used[v]) throw Error("build_mesh: dangling vertex " + std::to_string(v));

  // Deduplicate edges. First CCW traversal fixes the global orientation, so
  // its right normal is outward for that cell (sign +1); the neighbor must
  // traverse the edge in reverse (sign -1).
  std::map<std::pair<int, int>, int> edge_index;
  m.cell_edges.resize(m.cells.size());
  for (size_t K = 0; K < m.cells.size(); ++K) {
    const auto& loop = m.cells[K];
    const int n = static_cast<int>(loop.size());
    for (int i = 0; i < n; ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % n];
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        Edge e;
        e.a = a;
        e.b = b;
        const Vec2 t = m.vertices[b] - m.vertices[a];
        e.length = norm(t);
        if (!(e.length > 0.0)) throw Error("build_mesh: zero-length edge in cell " + std::to_string(K));
        e.normal = right_normal(t / e.length);
        e.midpoint = (m.vertices[a] + m.vertices[b]) * 0.5;
        e.cells[0] = static_cast<int>(K);
        const int id = m.num_edges();
        m.edges.push_back(e);
        edge_index.emplace(key, id);
        m.cell_edges[K].push_back({id, +1.0});
      } else {
        Edge& e = m.edges[it->second];
        if (e.cells[1] >= 0)
          throw Error("build_mesh: edge shared by more than two cells");
        if (e.a == a && e.b == b)
          throw Error("build_mesh: inconsistent cell orientation at edge " + std::to_string(it->second));
        e.cells[1] = static_cast<int>(K);
        m.cell_edges[K].push_back({it->second, -1.0});
      }
    }
  }

  for (int e = 0; e < m.num_edges(); ++e)
    if (m.edges[e].boundary()) m.boundary_edges.push_back(e);

  m.h = *std::max_element(m.cell_diameter.begin(), m.cell_diameter.end());
  return m;
}

bool point_in_kernel(const std::vector<Vec2>& poly, const Vec2& p, double tol_scale) {
  const int n = static_cast<int>(poly.size());
  const double diam = polygon_diameter(poly);
  const double tol = tol_scale * diam * diam;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if (cross(b - a, p - a) < -tol) return false;
  }
  return true;
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
  const int n = static_cast<int>(poly.size());
  const double diam = polygon_diameter(poly);
  const double eps = 1e-12 * diam;
  bool inside = false;
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[j];
    const Vec2& b = poly[i];
    // boundary counts as inside
    const double len = dist(a, b);
    if (len > 0 && std::abs(cross(b - a, p - a)) <= eps * len && on_segment(a, b, p, eps)) return true;
    if ((b.y > p.y) != (a.y > p.y)) {
      const double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

bool QualityReport::all_star_shaped() const {
  return std::all_of(star_shaped_wrt_centroid.begin(), star_shaped_wrt_centroid.end(),
                     [](bool b) { return b; });
}

QualityReport quality(const PolyMesh& mesh) {
  QualityReport q;
  q.min_edge_ratio = 1.0;
  q.quasi_uniformity = 1.0;
  q.star_shaped_wrt_centroid.resize(mesh.num_cells());
  for (int K = 0; K < mesh.num_cells(); ++K) {
    const double hK = mesh.cell_diameter[K];
    for (const CellEdge& ce : mesh.cell_edges[K])
      q.min_edge_ratio = std::min(q.min_edge_ratio, mesh.edges[ce.edge].length / hK);
    q.quasi_uniformity = std::min(q.quasi_uniformity, hK / mesh.h);
    q.n_edges_max = std::max(q.n_edges_max, static_cast<int>(mesh.cell_edges[K].size()));
    q.star_shaped_wrt_centroid[K] = point_in_kernel(mesh.cell_polygon(K), mesh.cell_centroid[K]);
  }
  return q;
}

PolyMesh scale_mesh(const PolyMesh& mesh, const Vec2& origin, double factor) {
  std::vector<Vec2> verts(mesh.vertices.size());
  for (size_t i = 0; i < verts.size(); ++i) verts[i] = origin + mesh.vertices[i] * factor;
  return build_mesh(std::move(verts), mesh.cells);
}

std::string mesh_to_json(const PolyMesh& mesh) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const Vec2& v : mesh.vertices) j["vertices"].push_back({v.x, v.y});
  j["cells"] = mesh.cells;
  return j.dump();
}

PolyMesh mesh_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("vertices") || !j.contains("cells"))
    throw Error("mesh_from_json: missing 'vertices' or 'cells'");
  std::vector<Vec2> verts;
  for (const auto& v : j["vertices"]) verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  std::vector<std::vector<int>> cells = j["cells"].get<std::vector<std::vector<int>>>();
  return build_mesh(std::move(verts), std::move(cells));
}

void save_mesh_json(const PolyMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_mesh_json: cannot open " + path);
  out << mesh_to_json(mesh) << "\n";
}

PolyMesh load_mesh_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_mesh_json: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return mesh_from_json(ss.str());
}

}  // namespace vemmd
