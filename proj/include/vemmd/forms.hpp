#pragma once

#include <Eigen/Dense>
#include <functional>

#include "vemmd/projectors.hpp"
#include "vemmd/quadrature.hpp"

namespace vemmd {

/// Model coefficients. inv_mobility is A(c,x) = 1/a(c,x), the quantity the
/// Darcy form integrates.
struct Coefficients {
  std::function<double(const Vec2&)> phi;
  std::function<double(double, const Vec2&)> mobility;      // a(c, x)
  std::function<double(double, const Vec2&)> inv_mobility;  // A(c, x)
  std::function<Vec2(double, const Vec2&, double)> gravity;  // gamma(c, x, t)
  double d_m = 0.0;
  double d_l = 0.0;
  double d_t = 0.0;
};

/// Everything the local form builders need for one cell.
struct CellContext {
  const PolyMesh& mesh;
  int cell;
  const CellProjectors& proj;
  const Quadrature& rule;  // volume rule at the data quadrature degree

  double area() const { return mesh.cell_area[cell]; }
};

/// Diffusion-dispersion tensor D(u) = phi [d_m I + |u| (d_l E(u) + d_t (I - E(u)))]
/// with E(u) the projector onto u; returns phi d_m I in the |u| -> 0 limit.
Eigen::Matrix2d dispersion_tensor(const Vec2& u, double phi_val, double d_m, double d_l, double d_t);

/// Cell-mean weight |Pi0 phi| and the phi integral, reused by mass/diffusion.
struct PorosityData {
  double integral = 0.0;  // int_K phi
  double nu_m = 0.0;      // |Pi0 phi|
};
PorosityData porosity_data(const CellContext& ctx, const std::function<double(const Vec2&)>& phi);

Eigen::MatrixXd local_mass(const CellContext& ctx, const std::function<double(const Vec2&)>& phi);

Eigen::MatrixXd local_diffusion(const CellContext& ctx, const Eigen::VectorXd& u_dofs,
                                const PorosityData& por, double d_m, double d_l, double d_t);

/// Skew transport form; q_sum(x) = (q+ + q-)(x) at the bound time level.
Eigen::MatrixXd local_convection(const CellContext& ctx, const Eigen::VectorXd& u_dofs,
                                 const std::function<double(const Vec2&)>& q_sum);

Eigen::MatrixXd local_darcy(const CellContext& ctx, const Eigen::VectorXd& c_dofs,
                            const std::function<double(double, const Vec2&)>& inv_mobility);

/// Row of B(v, q) for the cellwise-constant test function q = 1.
Eigen::RowVectorXd local_div_row(const CellContext& ctx);

/// (load, Pi1 z)_K for the transport right-hand side.
Eigen::VectorXd local_transport_rhs(const CellContext& ctx,
                                    const std::function<double(const Vec2&)>& load);

/// (gamma(Pi1 c), Pi0 v)_K for the Darcy right-hand side.
Eigen::VectorXd local_gravity_rhs(const CellContext& ctx, const Eigen::VectorXd& c_dofs,
                                  const std::function<Vec2(double, const Vec2&)>& gravity);

}  // namespace vemmd
