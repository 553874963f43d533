#include "vemmd/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace vemmd {

namespace {

// Portable uniform double in [0,1); avoids distribution implementation drift.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

PolyMesh make_square(int n) {
  std::vector<Vec2> verts;
  verts.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> cells;
  cells.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  return build_mesh(std::move(verts), std::move(cells));
}

PolyMesh make_triangular(int n) {
  std::vector<Vec2> verts;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> cells;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return build_mesh(std::move(verts), std::move(cells));
}

// Each grid square is split into two congruent non-convex hexagons by the
// centrally symmetric zig-zag (0,s/2)-(s/3,2s/3)-(2s/3,s/3)-(s,s/2).
PolyMesh make_concave(int n) {
  std::vector<Vec2> verts;
  std::vector<std::vector<int>> cells;
  std::map<std::pair<long long, long long>, int> index;
  // All vertices live on the lattice (i/(3n), j/(6n)); key by integer coords.
  auto vid = [&](long long i3, long long j6) {
    auto it = index.find({i3, j6});
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(verts.size());
    verts.push_back({static_cast<double>(i3) / (3.0 * n), static_cast<double>(j6) / (6.0 * n)});
    index.emplace(std::make_pair(i3, j6), id);
    return id;
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const long long x0 = 3LL * i, y0 = 6LL * j;  // lattice coords of square corner
      const int c00 = vid(x0, y0);
      const int c10 = vid(x0 + 3, y0);
      const int c11 = vid(x0 + 3, y0 + 6);
      const int c01 = vid(x0, y0 + 6);
      const int p0 = vid(x0, y0 + 3);           // (0, s/2)
      const int p1 = vid(x0 + 1, y0 + 4);       // (s/3, 2s/3)
      const int p2 = vid(x0 + 2, y0 + 2);       // (2s/3, s/3)
      const int p3 = vid(x0 + 3, y0 + 3);       // (s, s/2)
      cells.push_back({c00, c10, p3, p2, p1, p0});
      cells.push_back({c11, c01, p0, p1, p2, p3});
    }
  return build_mesh(std::move(verts), std::move(cells));
}

// ---------------------------------------------------------------------------
// Clipped Voronoi on the unit square with Lloyd relaxation.

struct ClippedCell {
  std::vector<Vec2> poly;
};

std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& m, const Vec2& d) {
  // keep points with (x - m).d <= 0
  std::vector<Vec2> out;
  const int n = static_cast<int>(poly.size());
  out.reserve(n + 1);
  for (int i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double sp = dot(p - m, d);
    const double sq = dot(q - m, d);
    if (sp <= 0.0) out.push_back(p);
    if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) {
      const double t = sp / (sp - sq);
      out.push_back(p + (q - p) * t);
    }
  }
  return out;
}

class SiteGrid {
public:
  SiteGrid(const std::vector<Vec2>& sites, int n) : sites_(sites), n_(std::max(n, 1)) {
    buckets_.resize(n_ * n_);
    for (int i = 0; i < static_cast<int>(sites.size()); ++i)
      buckets_[bucket_of(sites[i])].push_back(i);
  }

  // Sites in the ring of grid cells at Chebyshev distance r around p's bucket.
  void ring(const Vec2& p, int r, std::vector<int>& out) const {
    out.clear();
    const int bi = clampi(static_cast<int>(p.x * n_));
    const int bj = clampi(static_cast<int>(p.y * n_));
    for (int j = bj - r; j <= bj + r; ++j) {
      if (j < 0 || j >= n_) continue;
      for (int i = bi - r; i <= bi + r; ++i) {
        if (i < 0 || i >= n_) continue;
        if (std::max(std::abs(i - bi), std::abs(j - bj)) != r) continue;
        const auto& b = buckets_[j * n_ + i];
        out.insert(out.end(), b.begin(), b.end());
      }
    }
  }

  double cell_size() const { return 1.0 / n_; }

private:
  int clampi(int v) const { return std::min(std::max(v, 0), n_ - 1); }
  int bucket_of(const Vec2& p) const {
    return clampi(static_cast<int>(p.y * n_)) * n_ + clampi(static_cast<int>(p.x * n_));
  }
  const std::vector<Vec2>& sites_;
  int n_;
  std::vector<std::vector<int>> buckets_;
};

std::vector<ClippedCell> voronoi_cells(const std::vector<Vec2>& sites, int n) {
  const SiteGrid grid(sites, n);
  const std::vector<Vec2> box = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<ClippedCell> cells(sites.size());
  std::vector<int> ring_sites;
  std::vector<std::pair<double, int>> ordered;

  for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
    std::vector<Vec2> poly = box;
    auto max_radius = [&]() {
      double r = 0.0;
      for (const Vec2& p : poly) r = std::max(r, dist(p, sites[i]));
      return r;
    };
    double radius = max_radius();
    const int max_ring = 2 * grid.cell_size() > 0 ? static_cast<int>(2.0 / grid.cell_size()) + 2 : 2;
    for (int r = 0; r <= max_ring; ++r) {
      // no site beyond this ring can cut the current cell
      if (r > 1 && (r - 1) * grid.cell_size() > 2.0 * radius) break;
      grid.ring(sites[i], r, ring_sites);
      ordered.clear();
      for (int j : ring_sites)
        if (j != i) ordered.push_back({dist(sites[j], sites[i]), j});
      std::sort(ordered.begin(), ordered.end());
      for (const auto& [dij, j] : ordered) {
        if (dij > 2.0 * radius) break;
        const Vec2 m = (sites[i] + sites[j]) * 0.5;
        const Vec2 d = sites[j] - sites[i];
        poly = clip_halfplane(poly, m, d);
        if (poly.size() < 3) throw Error("voronoi: empty cell (duplicate seeds?)");
        radius = max_radius();
      }
    }
    cells[i].poly = std::move(poly);
  }
  return cells;
}

Vec2 clipped_centroid(const std::vector<Vec2>& poly) {
  double twice = 0.0, cx = 0.0, cy = 0.0;
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double w = cross(a, b);
    twice += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  return {cx / (3.0 * twice), cy / (3.0 * twice)};
}

// Global vertex welding with a tolerance-aware hash grid.
class VertexWelder {
public:
  explicit VertexWelder(double tol) : tol_(tol) {}

  int add(const Vec2& p) {
    const long long qx = static_cast<long long>(std::floor(p.x / tol_));
    const long long qy = static_cast<long long>(std::floor(p.y / tol_));
    for (long long dy = -1; dy <= 1; ++dy)
      for (long long dx = -1; dx <= 1; ++dx) {
        auto it = map_.find({qx + dx, qy + dy});
        if (it == map_.end()) continue;
        for (int id : it->second)
          if (dist(points_[id], p) <= tol_) return id;
      }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    map_[{qx, qy}].push_back(id);
    return id;
  }

  std::vector<Vec2> points_;

private:
  double tol_;
  std::map<std::pair<long long, long long>, std::vector<int>> map_;
};

// Collapse edges shorter than tol by merging endpoints (handles the tiny
// Voronoi edges produced by nearly cocircular seed quadruples).
void collapse_short_edges(std::vector<Vec2>& verts, std::vector<std::vector<int>>& loops, double tol) {
  std::vector<int> remap(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) remap[i] = static_cast<int>(i);
  auto root = [&](int v) {
    while (remap[v] != v) v = remap[v] = remap[remap[v]];
    return v;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& loop : loops) {
      const int m = static_cast<int>(loop.size());
      for (int i = 0; i < m; ++i) {
        const int a = root(loop[i]);
        const int b = root(loop[(i + 1) % m]);
        if (a != b && dist(verts[a], verts[b]) < tol) {
          const Vec2 mid = (verts[a] + verts[b]) * 0.5;
          verts[a] = mid;
          remap[b] = a;
          changed = true;
        }
      }
    }
  }
  for (auto& loop : loops) {
    for (int& v : loop) v = root(v);
    std::vector<int> cleaned;
    for (int v : loop)
      if (cleaned.empty() || cleaned.back() != v) cleaned.push_back(v);
    while (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
    loop = std::move(cleaned);
  }
}

PolyMesh mesh_from_voronoi(const std::vector<ClippedCell>& cells, int n) {
  VertexWelder welder(1e-9 / n);
  std::vector<std::vector<int>> loops;
  loops.reserve(cells.size());
  for (const auto& c : cells) {
    std::vector<int> loop;
    for (const Vec2& p : c.poly) {
      const int id = welder.add(p);
      if (loop.empty() || loop.back() != id) loop.push_back(id);
    }
    while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
    loops.push_back(std::move(loop));
  }
  std::vector<Vec2> verts = welder.points_;
  collapse_short_edges(verts, loops, 1e-7 / n);

  // drop unreferenced vertices
  std::vector<int> newid(verts.size(), -1);
  std::vector<Vec2> compact;
  for (auto& loop : loops)
    for (int& v : loop) {
      if (newid[v] < 0) {
        newid[v] = static_cast<int>(compact.size());
        compact.push_back(verts[v]);
      }
      v = newid[v];
    }
  return build_mesh(std::move(compact), std::move(loops));
}

PolyMesh make_voronoi(int n, std::uint64_t seed, bool structured) {
  std::mt19937_64 rng(seed ^ (structured ? 0x5eedf00dULL : 0xbadc0deULL));
  std::vector<Vec2> sites;
  sites.reserve(static_cast<size_t>(n) * n);
  if (structured) {
    const double jitter = 0.25 / n;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        sites.push_back({(i + 0.5) / n + jitter * (2.0 * uniform01(rng) - 1.0),
                         (j + 0.5) / n + jitter * (2.0 * uniform01(rng) - 1.0)});
  } else {
    for (int i = 0; i < n * n; ++i) {
      const double x = uniform01(rng);
      const double y = uniform01(rng);
      sites.push_back({x, y});
    }
  }
  const int lloyd_iters = structured ? 3 : 1;
  std::vector<ClippedCell> cells;
  for (int it = 0; it <= lloyd_iters; ++it) {
    cells = voronoi_cells(sites, n);
    if (it == lloyd_iters) break;
    for (size_t i = 0; i < sites.size(); ++i) sites[i] = clipped_centroid(cells[i].poly);
  }
  return mesh_from_voronoi(cells, n);
}

}  // namespace

MeshFamily mesh_family_from_string(const std::string& name) {
  if (name == "triangular") return MeshFamily::Triangular;
  if (name == "square") return MeshFamily::Square;
  if (name == "concave") return MeshFamily::Concave;
  if (name == "voronoi_structured") return MeshFamily::VoronoiStructured;
  if (name == "voronoi_random") return MeshFamily::VoronoiRandom;
  throw Error("unknown mesh family: " + name);
}

std::string to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::Triangular: return "triangular";
    case MeshFamily::Square: return "square";
    case MeshFamily::Concave: return "concave";
    case MeshFamily::VoronoiStructured: return "voronoi_structured";
    case MeshFamily::VoronoiRandom: return "voronoi_random";
  }
  throw Error("invalid mesh family");
}

PolyMesh generate(MeshFamily family, int n, std::uint64_t seed) {
  if (n < 1) throw Error("generate: subdivision count must be >= 1");
  switch (family) {
    case MeshFamily::Triangular: return make_triangular(n);
    case MeshFamily::Square: return make_square(n);
    case MeshFamily::Concave: return make_concave(n);
    case MeshFamily::VoronoiStructured: return make_voronoi(n, seed, true);
    case MeshFamily::VoronoiRandom: return make_voronoi(n, seed, false);
  }
  throw Error("invalid mesh family");
}

}  // namespace vemmd
