#pragma once

#include <vector>

#include "vemmd/mesh.hpp"

namespace vemmd {

struct Quadrature {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0;

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (size_t i = 0; i < points.size(); ++i) s += weights[i] * f(points[i]);
    return s;
  }
};

/// Gauss-Legendre nodes/weights on [-1,1]; cached per point count.
void gauss_legendre(int npoints, std::vector<double>& nodes, std::vector<double>& weights);

/// Segment rule exact for univariate polynomials up to the given degree.
Quadrature edge_quadrature(const Vec2& a, const Vec2& b, int exactness);

/// Positive-weight rule on a simple polygon, exact for bivariate polynomials
/// up to the requested total degree. Fan triangulation from the centroid when
/// the polygon is star-shaped w.r.t. it, ear clipping otherwise; collapsed
/// tensor Gauss per triangle.
Quadrature polygon_quadrature(const std::vector<Vec2>& poly, int exactness);

/// Convenience overload for a mesh cell.
Quadrature polygon_quadrature(const PolyMesh& mesh, int cell, int exactness);

/// Ear-clipping triangulation; returns vertex index triples.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& poly);

}  // namespace vemmd
