#include "vemmd/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>

namespace vemmd {

namespace {

// Legendre polynomial value and derivative at x.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

void gauss_legendre(int npoints, std::vector<double>& nodes, std::vector<double>& weights) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(npoints);
  if (it == cache.end()) {
    std::vector<double> xs(npoints), ws(npoints);
    for (int i = 0; i < npoints; ++i) {
      // Chebyshev initial guess, Newton refinement
      double x = std::cos(M_PI * (i + 0.75) / (npoints + 0.5));
      for (int iter = 0; iter < 100; ++iter) {
        const auto [p, dp] = legendre(npoints, x);
        const double dx = p / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const auto [p, dp] = legendre(npoints, x);
      (void)p;
      xs[i] = x;
      ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    it = cache.emplace(npoints, std::make_pair(std::move(xs), std::move(ws))).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

Quadrature edge_quadrature(const Vec2& a, const Vec2& b, int exactness) {
  const double len = dist(a, b);
  if (!(len > 0.0)) throw Error("edge_quadrature: zero-length edge");
  const int n = (exactness + 2) / 2;  // ceil((d+1)/2)
  std::vector<double> xs, ws;
  gauss_legendre(std::max(n, 1), xs, ws);
  Quadrature q;
  q.exactness = exactness;
  const Vec2 mid = (a + b) * 0.5;
  const Vec2 half = (b - a) * 0.5;
  for (size_t i = 0; i < xs.size(); ++i) {
    q.points.push_back(mid + half * xs[i]);
    q.weights.push_back(ws[i] * 0.5 * len);
  }
  return q;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& poly) {
  const int n = static_cast<int>(poly.size());
  if (n < 3) throw Error("ear_clip: degenerate polygon");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;

  double diam2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec2 d = poly[i] - poly[j];
      diam2 = std::max(diam2, dot(d, d));
    }
  const double eps = 1e-14 * diam2;

  auto inside_tri = [&](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    const double d1 = cross(b - a, p - a);
    const double d2 = cross(c - b, p - b);
    const double d3 = cross(a - c, p - c);
    return d1 >= -eps && d2 >= -eps && d3 >= -eps;
  };

  std::vector<std::array<int, 3>> tris;
  int guard = 0;
  while (idx.size() > 3) {
    const int m = static_cast<int>(idx.size());
    bool clipped = false;
    for (int i = 0; i < m; ++i) {
      const int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
      const Vec2 &a = poly[ia], &b = poly[ib], &c = poly[ic];
      if (cross(b - a, c - a) <= eps) continue;  // reflex or degenerate corner
      bool ear = true;
      for (int j = 0; j < m; ++j) {
        const int iv = idx[j];
        if (iv == ia || iv == ib || iv == ic) continue;
        if (inside_tri(a, b, c, poly[iv])) {
          ear = false;
          break;
        }
      }
      if (ear) {
        tris.push_back({ia, ib, ic});
        idx.erase(idx.begin() + i);
        clipped = true;
        break;
      }
    }
    if (!clipped || ++guard > 4 * n) throw Error("ear_clip: triangulation failed (degenerate polygon)");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

namespace {

void add_triangle_rule(Quadrature& q, const Vec2& a, const Vec2& b, const Vec2& c, int exactness) {
  // Collapsed tensor Gauss on the reference triangle: (u,v) -> a + u(b-a) + v(1-u)(c-a),
  // Jacobian 2*area*(1-u). Degree d integrand needs d+1 in u and d in v.
  const int nu = (exactness + 3) / 2;
  const int nv = (exactness + 2) / 2;
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre(std::max(nu, 1), xu, wu);
  gauss_legendre(std::max(nv, 1), xv, wv);
  const double area2 = cross(b - a, c - a);  // twice signed area
  for (size_t i = 0; i < xu.size(); ++i) {
    const double u = 0.5 * (xu[i] + 1.0);
    for (size_t j = 0; j < xv.size(); ++j) {
      const double v = 0.5 * (xv[j] + 1.0);
      const Vec2 p = a + (b - a) * u + (c - a) * (v * (1.0 - u));
      q.points.push_back(p);
      q.weights.push_back(0.25 * wu[i] * wv[j] * area2 * (1.0 - u));
    }
  }
}

}  // namespace

Quadrature polygon_quadrature(const std::vector<Vec2>& poly, int exactness) {
  if (poly.size() < 3) throw Error("polygon_quadrature: degenerate polygon");
  Quadrature q;
  q.exactness = exactness;

  double area = 0.0;
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) area += 0.5 * cross(poly[i], poly[(i + 1) % m]);
  Vec2 centroid{0, 0};
  for (int i = 0; i < m; ++i) {
    const double w = cross(poly[i], poly[(i + 1) % m]);
    centroid += (poly[i] + poly[(i + 1) % m]) * w;
  }
  centroid = centroid / (6.0 * area);

  if (point_in_kernel(poly, centroid)) {
    for (int i = 0; i < m; ++i)
      add_triangle_rule(q, centroid, poly[i], poly[(i + 1) % m], exactness);
  } else {
    for (const auto& t : ear_clip(poly))
      add_triangle_rule(q, poly[t[0]], poly[t[1]], poly[t[2]], exactness);
  }
  return q;
}

Quadrature polygon_quadrature(const PolyMesh& mesh, int cell, int exactness) {
  return polygon_quadrature(mesh.cell_polygon(cell), exactness);
}

}  // namespace vemmd
