#pragma once

#include <Eigen/Dense>

#include "vemmd/quadrature.hpp"

namespace vemmd {

/// Scaled monomials m_a(x) = ((x - center)/h)^a on an element, enumerated by
/// total degree: 1, X, Y, X^2, XY, Y^2, ... with X = (x-xc)/h, Y = (y-yc)/h.
struct ScaledMonomialBasis {
  Vec2 center;
  double h = 1.0;
  int degree = 1;

  ScaledMonomialBasis() = default;
  ScaledMonomialBasis(const Vec2& center_, double h_, int degree_)
      : center(center_), h(h_), degree(degree_) {}

  static int dimension(int degree) { return (degree + 1) * (degree + 2) / 2; }
  int size() const { return dimension(degree); }

  /// Exponent pair (ax, ay) of basis function i.
  static std::pair<int, int> exponents(int i);

  double eval(int i, const Vec2& x) const;
  Vec2 grad(int i, const Vec2& x) const;
};

/// Gram matrix of the scaled monomials up to k_max on a cell; symmetric
/// positive definite for a non-degenerate cell.
Eigen::MatrixXd monomial_gram(const PolyMesh& mesh, int cell, int k_max, int quad_exactness = -1);

}  // namespace vemmd
