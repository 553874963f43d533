#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "vemmd/mesh.hpp"
#include "vemmd/projectors.hpp"

namespace vemmd {

using ScalarField = std::function<double(const Vec2&, double)>;
using VectorField = std::function<Vec2(const Vec2&, double)>;

/// Global DOF numbering for the lowest-order spaces: one velocity DOF per
/// edge (edge-average normal flux along the global normal), one pressure DOF
/// per cell plus one Lagrange multiplier slot for the zero-mean constraint,
/// one concentration DOF per edge (edge average). The shared edge DOF encodes
/// both H(div) normal continuity and the nonconforming moment continuity.
struct DofMap {
  int n_edges = 0;
  int n_cells = 0;
  std::vector<char> velocity_boundary;  // 1 on boundary edges

  explicit DofMap(const PolyMesh& mesh)
      : n_edges(mesh.num_edges()), n_cells(mesh.num_cells()), velocity_boundary(mesh.num_edges(), 0) {
    for (int e : mesh.boundary_edges) velocity_boundary[e] = 1;
  }

  int velocity_size() const { return n_edges; }
  int pressure_size() const { return n_cells; }      // multiplier slot excluded
  int concentration_size() const { return n_edges; }
};

/// Discrete fields at one time level.
struct SolutionState {
  Eigen::VectorXd u;  // velocity DOFs
  Eigen::VectorXd p;  // zero-mean pressure, one value per cell
  Eigen::VectorXd c;  // concentration DOFs
  double t = 0.0;
};

/// Edge-average normal-flux interpolant of an analytic vector field.
Eigen::VectorXd interpolate_velocity(const PolyMesh& mesh, const VectorField& v, double t,
                                     int quad_exactness = 6);

/// Edge-average interpolant I_h of an analytic scalar.
Eigen::VectorXd interpolate_concentration(const PolyMesh& mesh, const ScalarField& z, double t,
                                          int quad_exactness = 6);

/// Cellwise means with the global (area-weighted) mean removed.
Eigen::VectorXd project_pressure(const PolyMesh& mesh, const ScalarField& q, double t,
                                 int quad_exactness = 6);

/// Restriction of a global edge-DOF vector to the local edge order of a cell.
Eigen::VectorXd local_dofs(const PolyMesh& mesh, int cell, const Eigen::VectorXd& global);

}  // namespace vemmd
