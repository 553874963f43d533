#include "vemmd/forms.hpp"

namespace vemmd {

Eigen::Matrix2d dispersion_tensor(const Vec2& u, double phi_val, double d_m, double d_l,
                                  double d_t) {
  Eigen::Matrix2d D = d_m * Eigen::Matrix2d::Identity();
  const double mag = norm(u);
  if (mag >= 1e-14) {
    Eigen::Matrix2d E;
    E << u.x * u.x, u.x * u.y, u.x * u.y, u.y * u.y;
    E /= mag * mag;
    D += mag * (d_l * E + d_t * (Eigen::Matrix2d::Identity() - E));
  }
  return phi_val * D;
}

PorosityData porosity_data(const CellContext& ctx, const std::function<double(const Vec2&)>& phi) {
  PorosityData d;
  d.integral = ctx.rule.integrate(phi);
  d.nu_m = std::abs(d.integral / ctx.area());
  return d;
}

namespace {

// 3x3 Gram of the P1 scaled monomials weighted by a pointwise coefficient.
Eigen::Matrix3d weighted_p1_gram(const CellContext& ctx,
                                 const std::function<double(const Vec2&)>& w) {
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (size_t q = 0; q < ctx.rule.points.size(); ++q) {
    const Vec2& x = ctx.rule.points[q];
    const double wq = ctx.rule.weights[q] * w(x);
    const double m[3] = {1.0, ctx.proj.basis.eval(1, x), ctx.proj.basis.eval(2, x)};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) H(i, j) += wq * m[i] * m[j];
  }
  H(1, 0) = H(0, 1);
  H(2, 0) = H(0, 2);
  H(2, 1) = H(1, 2);
  return H;
}

Vec2 mean_velocity(const CellContext& ctx, const Eigen::VectorXd& u_dofs) {
  const Eigen::Vector2d m = ctx.proj.mean_from_vel * u_dofs;
  return {m[0], m[1]};
}

}  // namespace

Eigen::MatrixXd local_mass(const CellContext& ctx, const std::function<double(const Vec2&)>& phi) {
  const PorosityData por = porosity_data(ctx, phi);
  const Eigen::Matrix3d H = weighted_p1_gram(ctx, phi);
  const auto& P1 = ctx.proj.p1_from_conc;
  return P1.transpose() * H * P1 +
         (por.nu_m * ctx.area()) * ctx.proj.conc_stab.transpose() * ctx.proj.conc_stab;
}

Eigen::MatrixXd local_diffusion(const CellContext& ctx, const Eigen::VectorXd& u_dofs,
                                const PorosityData& por, double d_m, double d_l, double d_t) {
  const Vec2 u0 = mean_velocity(ctx, u_dofs);
  // D(Pi0 u)(x) = phi(x) * bracket(Pi0 u); only phi varies over the cell.
  const Eigen::Matrix2d bracket = dispersion_tensor(u0, 1.0, d_m, d_l, d_t);
  const auto& G = ctx.proj.grad_from_conc;
  const double nu_d = por.nu_m * (d_m + d_t * norm(u0));
  return por.integral * G.transpose() * bracket * G +
         nu_d * ctx.proj.conc_stab.transpose() * ctx.proj.conc_stab;
}

Eigen::MatrixXd local_convection(const CellContext& ctx, const Eigen::VectorXd& u_dofs,
                                 const std::function<double(const Vec2&)>& q_sum) {
  const Vec2 u0 = mean_velocity(ctx, u_dofs);
  const auto& G = ctx.proj.grad_from_conc;
  const auto& P1 = ctx.proj.p1_from_conc;
  // transport term: (Pi0 u . Pi0 grad c, Pi1 z); int_K Pi1 z = |K| a0(z)
  const Eigen::RowVectorXd s = u0.x * G.row(0) + u0.y * G.row(1);
  const Eigen::RowVectorXd w = ctx.area() * P1.row(0);
  const Eigen::MatrixXd T1 = w.transpose() * s;
  const Eigen::MatrixXd T2 = P1.transpose() * weighted_p1_gram(ctx, q_sum) * P1;
  return 0.5 * (T1 + T2 - T1.transpose());
}

Eigen::MatrixXd local_darcy(const CellContext& ctx, const Eigen::VectorXd& c_dofs,
                            const std::function<double(double, const Vec2&)>& inv_mobility) {
  const Eigen::VectorXd a = ctx.proj.p1_from_conc * c_dofs;
  const double c_mean = a[0];  // scaled monomials m1, m2 have zero cell mean
  double consistency = 0.0, weight = 0.0;
  for (size_t q = 0; q < ctx.rule.points.size(); ++q) {
    const Vec2& x = ctx.rule.points[q];
    consistency += ctx.rule.weights[q] * inv_mobility(ctx.proj.eval_p1(a, x), x);
    weight += ctx.rule.weights[q] * inv_mobility(c_mean, x);
  }
  const double nu_a = std::abs(weight / ctx.area());
  const auto& Pv = ctx.proj.mean_from_vel;
  return consistency * Pv.transpose() * Pv +
         (nu_a * ctx.area()) * ctx.proj.vel_stab.transpose() * ctx.proj.vel_stab;
}

Eigen::RowVectorXd local_div_row(const CellContext& ctx) {
  return -ctx.area() * ctx.proj.div_from_vel;
}

Eigen::VectorXd local_transport_rhs(const CellContext& ctx,
                                    const std::function<double(const Vec2&)>& load) {
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  for (size_t q = 0; q < ctx.rule.points.size(); ++q) {
    const Vec2& x = ctx.rule.points[q];
    const double wq = ctx.rule.weights[q] * load(x);
    b[0] += wq;
    b[1] += wq * ctx.proj.basis.eval(1, x);
    b[2] += wq * ctx.proj.basis.eval(2, x);
  }
  return ctx.proj.p1_from_conc.transpose() * b;
}

Eigen::VectorXd local_gravity_rhs(const CellContext& ctx, const Eigen::VectorXd& c_dofs,
                                  const std::function<Vec2(double, const Vec2&)>& gravity) {
  const Eigen::VectorXd a = ctx.proj.p1_from_conc * c_dofs;
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (size_t q = 0; q < ctx.rule.points.size(); ++q) {
    const Vec2& x = ctx.rule.points[q];
    const Vec2 gv = gravity(ctx.proj.eval_p1(a, x), x);
    g[0] += ctx.rule.weights[q] * gv.x;
    g[1] += ctx.rule.weights[q] * gv.y;
  }
  return ctx.proj.mean_from_vel.transpose() * g;
}

}  // namespace vemmd
