#include "vemmd/monomials.hpp"

namespace vemmd {

std::pair<int, int> ScaledMonomialBasis::exponents(int i) {
  int d = 0;
  while (dimension(d) <= i) ++d;
  const int offset = i - (d > 0 ? dimension(d - 1) : 0);
  return {d - offset, offset};
}

double ScaledMonomialBasis::eval(int i, const Vec2& x) const {
  const auto [ax, ay] = exponents(i);
  const double X = (x.x - center.x) / h;
  const double Y = (x.y - center.y) / h;
  double v = 1.0;
  for (int k = 0; k < ax; ++k) v *= X;
  for (int k = 0; k < ay; ++k) v *= Y;
  return v;
}

Vec2 ScaledMonomialBasis::grad(int i, const Vec2& x) const {
  const auto [ax, ay] = exponents(i);
  const double X = (x.x - center.x) / h;
  const double Y = (x.y - center.y) / h;
  auto pw = [](double b, int e) {
    double v = 1.0;
    for (int k = 0; k < e; ++k) v *= b;
    return v;
  };
  Vec2 g{0.0, 0.0};
  if (ax > 0) g.x = ax * pw(X, ax - 1) * pw(Y, ay) / h;
  if (ay > 0) g.y = ay * pw(X, ax) * pw(Y, ay - 1) / h;
  return g;
}

Eigen::MatrixXd monomial_gram(const PolyMesh& mesh, int cell, int k_max, int quad_exactness) {
  const ScaledMonomialBasis basis(mesh.cell_centroid[cell], mesh.cell_diameter[cell], k_max);
  const int dim = basis.size();
  if (quad_exactness < 2 * k_max) quad_exactness = 2 * k_max;
  const Quadrature q = polygon_quadrature(mesh, cell, quad_exactness);

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<double> vals(dim);
  for (size_t n = 0; n < q.points.size(); ++n) {
    for (int i = 0; i < dim; ++i) vals[i] = basis.eval(i, q.points[n]);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) G(i, j) += q.weights[n] * vals[i] * vals[j];
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j) G(i, j) = G(j, i);

  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw Error("monomial_gram: singular Gram matrix (degenerate cell)");
  return G;
}

}  // namespace vemmd
