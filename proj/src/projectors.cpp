#include "vemmd/projectors.hpp"

namespace vemmd {

namespace {

void require_lowest_order(int k, const char* where) {
  if (k != 0) throw Error(std::string(where) + ": only k = 0 is implemented");
}

}  // namespace

CellProjectors make_cell_projectors(const PolyMesh& mesh, int cell) {
  CellProjectors P;
  const auto& ces = mesh.cell_edges[cell];
  const int n = static_cast<int>(ces.size());
  const double area = mesh.cell_area[cell];
  const Vec2 xc = mesh.cell_centroid[cell];
  const double hK = mesh.cell_diameter[cell];

  P.n_edges = n;
  P.basis = ScaledMonomialBasis(xc, hK, 1);
  P.grad_from_conc.resize(2, n);
  P.p1_from_conc.resize(3, n);
  P.edgeavg_from_p1.resize(n, 3);
  P.mean_from_vel.resize(2, n);
  P.div_from_vel.resize(n);
  P.normal_dofs.resize(n, 2);

  double perimeter = 0.0;
  for (int l = 0; l < n; ++l) {
    const Edge& e = mesh.edges[ces[l].edge];
    const double sL = ces[l].sign * e.length;

    P.grad_from_conc(0, l) = sL * e.normal.x / area;
    P.grad_from_conc(1, l) = sL * e.normal.y / area;
    P.div_from_vel(l) = sL / area;
    P.mean_from_vel(0, l) = sL * (e.midpoint.x - xc.x) / area;
    P.mean_from_vel(1, l) = sL * (e.midpoint.y - xc.y) / area;
    P.normal_dofs(l, 0) = e.normal.x;
    P.normal_dofs(l, 1) = e.normal.y;

    // edge average of a P1 polynomial is its midpoint value
    P.edgeavg_from_p1(l, 0) = 1.0;
    P.edgeavg_from_p1(l, 1) = P.basis.eval(1, e.midpoint);
    P.edgeavg_from_p1(l, 2) = P.basis.eval(2, e.midpoint);
    perimeter += e.length;
  }

  // Gradient part: (grad Pi z, grad m_i) = boundary integral of z dm_i/dn,
  // which reduces to h_K * Pi0(grad z) in the scaled basis.
  P.p1_from_conc.row(1) = hK * P.grad_from_conc.row(0);
  P.p1_from_conc.row(2) = hK * P.grad_from_conc.row(1);

  // Constant part from the boundary-mean rule.
  Eigen::RowVectorXd edge_lengths(n);
  double bm1 = 0.0, bm2 = 0.0;  // boundary integrals of m1, m2
  for (int l = 0; l < n; ++l) {
    const Edge& e = mesh.edges[ces[l].edge];
    edge_lengths(l) = e.length;
    bm1 += e.length * P.basis.eval(1, e.midpoint);
    bm2 += e.length * P.basis.eval(2, e.midpoint);
  }
  P.p1_from_conc.row(0) =
      (edge_lengths - bm1 * P.p1_from_conc.row(1) - bm2 * P.p1_from_conc.row(2)) / perimeter;

  P.conc_stab = Eigen::MatrixXd::Identity(n, n) - P.edgeavg_from_p1 * P.p1_from_conc;
  P.vel_stab = Eigen::MatrixXd::Identity(n, n) - P.normal_dofs * P.mean_from_vel;
  return P;
}

std::vector<CellProjectors> make_projectors(const PolyMesh& mesh) {
  std::vector<CellProjectors> out;
  out.reserve(mesh.num_cells());
  for (int K = 0; K < mesh.num_cells(); ++K) out.push_back(make_cell_projectors(mesh, K));
  return out;
}

Eigen::MatrixXd elliptic_projector(const PolyMesh& mesh, int cell, int k) {
  require_lowest_order(k, "elliptic_projector");
  return make_cell_projectors(mesh, cell).p1_from_conc;
}

Eigen::MatrixXd l2_projector_concentration(const PolyMesh& mesh, int cell, int k) {
  require_lowest_order(k, "l2_projector_concentration");
  // On the enhanced space the L2 projection onto P1 coincides with the
  // elliptic projection; this is the same matrix by construction.
  return make_cell_projectors(mesh, cell).p1_from_conc;
}

Eigen::MatrixXd grad_projector_concentration(const PolyMesh& mesh, int cell, int k) {
  require_lowest_order(k, "grad_projector_concentration");
  return make_cell_projectors(mesh, cell).grad_from_conc;
}

Eigen::MatrixXd l2_projector_velocity(const PolyMesh& mesh, int cell, int k) {
  require_lowest_order(k, "l2_projector_velocity");
  return make_cell_projectors(mesh, cell).mean_from_vel;
}

double divergence(const PolyMesh& mesh, int cell, const Eigen::VectorXd& velocity_dofs) {
  const auto& ces = mesh.cell_edges[cell];
  if (velocity_dofs.size() != static_cast<Eigen::Index>(ces.size()))
    throw Error("divergence: DOF vector size mismatch");
  double d = 0.0;
  for (size_t l = 0; l < ces.size(); ++l)
    d += ces[l].sign * mesh.edges[ces[l].edge].length * velocity_dofs[static_cast<Eigen::Index>(l)];
  return d / mesh.cell_area[cell];
}

}  // namespace vemmd
