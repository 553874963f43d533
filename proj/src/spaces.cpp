#include "vemmd/spaces.hpp"

#include "vemmd/quadrature.hpp"

namespace vemmd {

Eigen::VectorXd interpolate_velocity(const PolyMesh& mesh, const VectorField& v, double t,
                                     int quad_exactness) {
  Eigen::VectorXd dofs(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const Quadrature q =
        edge_quadrature(mesh.vertices[ed.a], mesh.vertices[ed.b], quad_exactness);
    dofs[e] = q.integrate([&](const Vec2& x) { return dot(v(x, t), ed.normal); }) / ed.length;
  }
  return dofs;
}

Eigen::VectorXd interpolate_concentration(const PolyMesh& mesh, const ScalarField& z, double t,
                                          int quad_exactness) {
  Eigen::VectorXd dofs(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edges[e];
    const Quadrature q =
        edge_quadrature(mesh.vertices[ed.a], mesh.vertices[ed.b], quad_exactness);
    dofs[e] = q.integrate([&](const Vec2& x) { return z(x, t); }) / ed.length;
  }
  return dofs;
}

Eigen::VectorXd project_pressure(const PolyMesh& mesh, const ScalarField& f, double t,
                                 int quad_exactness) {
  Eigen::VectorXd p(mesh.num_cells());
  double total = 0.0, volume = 0.0;
  for (int K = 0; K < mesh.num_cells(); ++K) {
    const Quadrature q = polygon_quadrature(mesh, K, quad_exactness);
    p[K] = q.integrate([&](const Vec2& x) { return f(x, t); }) / mesh.cell_area[K];
    total += p[K] * mesh.cell_area[K];
    volume += mesh.cell_area[K];
  }
  p.array() -= total / volume;
  return p;
}

Eigen::VectorXd local_dofs(const PolyMesh& mesh, int cell, const Eigen::VectorXd& global) {
  const auto& ces = mesh.cell_edges[cell];
  Eigen::VectorXd out(static_cast<Eigen::Index>(ces.size()));
  for (size_t l = 0; l < ces.size(); ++l) out[static_cast<Eigen::Index>(l)] = global[ces[l].edge];
  return out;
}

}  // namespace vemmd
