#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vemmd/mesh.hpp"
#include "vemmd/monomials.hpp"

namespace vemmd {

/// Per-cell projector matrices for the lowest-order spaces. Concentration
/// DOFs are edge averages, velocity DOFs are edge-average normal fluxes
/// (oriented by the global edge normal); both follow the cell's local edge
/// order. All matrices are exact, no quadrature enters their construction.
struct CellProjectors {
  int n_edges = 0;
  ScaledMonomialBasis basis;  // degree 1

  /// DOFs -> coefficients of the elliptic projection onto P1 (equal to the
  /// L2 projection on the enhanced space).
  Eigen::MatrixXd p1_from_conc;  // 3 x n
  /// DOFs -> constant vector Pi0(grad z).
  Eigen::MatrixXd grad_from_conc;  // 2 x n
  /// P1 coefficients -> edge-average DOFs.
  Eigen::MatrixXd edgeavg_from_p1;  // n x 3
  /// Velocity DOFs -> constant vector Pi0 v.
  Eigen::MatrixXd mean_from_vel;  // 2 x n
  /// Velocity DOFs -> the constant div v.
  Eigen::RowVectorXd div_from_vel;  // 1 x n
  /// DOFs of a constant vector field: row e = global normal of edge e.
  Eigen::MatrixXd normal_dofs;  // n x 2

  // Stabilization kernels (I - Pi) expressed on DOFs; cached because every
  // local form reuses them.
  Eigen::MatrixXd conc_stab;  // (I - edgeavg_from_p1 * p1_from_conc), n x n
  Eigen::MatrixXd vel_stab;   // (I - normal_dofs * mean_from_vel), n x n

  /// Value of the projected concentration polynomial at a point.
  double eval_p1(const Eigen::VectorXd& coeffs, const Vec2& x) const {
    return coeffs[0] + coeffs[1] * basis.eval(1, x) + coeffs[2] * basis.eval(2, x);
  }
};

CellProjectors make_cell_projectors(const PolyMesh& mesh, int cell);

/// All cells, computed once per mesh and reused every time step.
std::vector<CellProjectors> make_projectors(const PolyMesh& mesh);

// Named accessors mirroring the individual projector operations. Only the
// lowest order is implemented; k >= 1 is rejected.
Eigen::MatrixXd elliptic_projector(const PolyMesh& mesh, int cell, int k = 0);
Eigen::MatrixXd l2_projector_concentration(const PolyMesh& mesh, int cell, int k = 0);
Eigen::MatrixXd grad_projector_concentration(const PolyMesh& mesh, int cell, int k = 0);
Eigen::MatrixXd l2_projector_velocity(const PolyMesh& mesh, int cell, int k = 0);
double divergence(const PolyMesh& mesh, int cell, const Eigen::VectorXd& velocity_dofs);

}  // namespace vemmd
