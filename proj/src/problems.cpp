#include "vemmd/problems.hpp"

#include <cmath>

namespace vemmd {

namespace {

// Example 1 building blocks: c = t^2 (g(x) + g(y)) with g(v) = v^2 (v-1)^2.
double g1(double v) { return v * v * (v - 1.0) * (v - 1.0); }
double g1p(double v) { return 2.0 * v * (v - 1.0) * (2.0 * v - 1.0); }
double g1pp(double v) { return 12.0 * v * v - 12.0 * v + 2.0; }

Coefficients ideal_coefficients() {
  Coefficients co;
  co.phi = [](const Vec2&) { return 1.0; };
  // The printed exact pair (u, p) satisfies u = -(1/(c+2)) grad p, so the
  // form coefficient is A(c) = c + 2.
  co.mobility = [](double c, const Vec2&) { return 1.0 / (c + 2.0); };
  co.inv_mobility = [](double c, const Vec2&) { return c + 2.0; };
  co.gravity = [](double, const Vec2&, double) { return Vec2{0.0, 0.0}; };
  co.d_m = 0.02;
  co.d_l = 1.0;
  co.d_t = 1.0;
  return co;
}

}  // namespace

Problem example1() {
  Problem p;
  p.name = "ex1";
  p.domain = {0.0, 0.0, 1.0, 1.0};
  p.t_final = 1.0;
  p.coeff = ideal_coefficients();
  p.c0 = [](const Vec2&) { return 0.0; };

  auto c_ex = [](const Vec2& x, double t) { return t * t * (g1(x.x) + g1(x.y)); };
  auto u_ex = [](const Vec2& x, double t) {
    return Vec2{t * t * g1p(x.x), t * t * g1p(x.y)};
  };
  auto p_ex = [c_ex](const Vec2& x, double t) {
    const double c = c_ex(x, t);
    const double t2 = t * t;
    return -0.5 * c * c - 2.0 * c + (17.0 / 6300.0) * t2 * t2 + (2.0 / 15.0) * t2;
  };
  p.exact = ExactSolution{c_ex, u_ex, p_ex};
  p.div_rhs_from_exact_flux = true;

  auto q_fn = [](const Vec2& x, double t) { return t * t * (g1pp(x.x) + g1pp(x.y)); };
  auto f_fn = [](const Vec2& x, double t) {
    const double t2 = t * t;
    const double gpx = g1p(x.x), gpy = g1p(x.y);
    const double gppx = g1pp(x.x), gppy = g1pp(x.y);
    const double m = std::hypot(gpx, gpy);  // |u| = t^2 m
    const double advect = t2 * t2 * (gpx * gpx + gpy * gpy);
    const double lap = t2 * (gppx + gppy);
    // grad|u| . grad c; the quotient vanishes with m
    const double slope = m > 1e-300 ? t2 * t2 * (gpx * gpx * gppx + gpy * gpy * gppy) / m : 0.0;
    return 2.0 * t * (g1(x.x) + g1(x.y)) + advect - (0.02 + t2 * m) * lap - slope;
  };
  p.forcing_f = f_fn;
  p.forcing_q = q_fn;
  p.qplus = q_fn;
  p.qminus = [](const Vec2&, double) { return 0.0; };
  p.source_div = q_fn;
  // The generalized model folds the reaction term into the load: with
  // q+ = q, q- = 0 the skew form is exactly consistent for load = f + q c.
  p.transport_load = [f_fn, q_fn, c_ex](const Vec2& x, double t) {
    return f_fn(x, t) + q_fn(x, t) * c_ex(x, t);
  };
  return p;
}

Problem example2() {
  Problem p;
  p.name = "ex2";
  p.domain = {0.0, 0.0, 1.0, 1.0};
  p.t_final = 1.0;
  p.coeff = ideal_coefficients();
  p.c0 = [](const Vec2&) { return 0.0; };

  auto expo = [](const Vec2& x) { return std::exp(-100.0 * (x.x * x.x + x.y * x.y)); };
  auto c_ex = [expo](const Vec2& x, double t) { return t * t * (1.0 - expo(x)); };
  auto u_ex = [expo](const Vec2& x, double t) {
    const double s = 200.0 * t * t * expo(x);
    return Vec2{s * x.x, s * x.y};
  };

  // Zero-mean constants from int_[0,1] exp(-a v^2) dv = sqrt(pi/a)/2 erf(sqrt(a)).
  const double i1 = std::pow(0.5 * std::sqrt(M_PI / 100.0) * std::erf(10.0), 2);
  const double i2 = std::pow(0.5 * std::sqrt(M_PI / 200.0) * std::erf(std::sqrt(200.0)), 2);
  const double eta2 = 2.0 * (1.0 - i1);
  const double eta1 = 0.5 * (1.0 - 2.0 * i1 + i2);

  auto p_ex = [c_ex, eta1, eta2](const Vec2& x, double t) {
    const double c = c_ex(x, t);
    const double t2 = t * t;
    return -0.5 * c * c - 2.0 * c + eta1 * t2 * t2 + eta2 * t2;
  };
  p.exact = ExactSolution{c_ex, u_ex, p_ex};
  p.div_rhs_from_exact_flux = true;

  auto q_fn = [expo](const Vec2& x, double t) {
    const double r2 = x.x * x.x + x.y * x.y;
    return 200.0 * t * t * expo(x) * (2.0 - 200.0 * r2);
  };
  auto f_fn = [expo](const Vec2& x, double t) {
    const double t2 = t * t;
    const double E = expo(x);
    const double r2 = x.x * x.x + x.y * x.y;
    const double r = std::sqrt(r2);
    const double s = 200.0 * t2 * E;  // |u| = s r, grad c = s (x, y)
    const double advect = s * s * r2;
    const double lap = s * (2.0 - 200.0 * r2);
    const double slope = s * s * (r - 200.0 * r2 * r);  // grad|u| . grad c
    return 2.0 * t * (1.0 - E) + advect - (0.02 + s * r) * lap - slope;
  };
  p.forcing_f = f_fn;
  p.forcing_q = q_fn;
  p.qplus = q_fn;
  p.qminus = [](const Vec2&, double) { return 0.0; };
  p.source_div = q_fn;
  p.transport_load = [f_fn, q_fn, c_ex](const Vec2& x, double t) {
    return f_fn(x, t) + q_fn(x, t) * c_ex(x, t);
  };
  return p;
}

Problem example3(int test) {
  if (test < 1 || test > 4) throw Error("example3: test index must be in 1..4");
  Problem p;
  p.name = "ex3-t" + std::to_string(test);
  p.domain = {0.0, 0.0, 1000.0, 1000.0};
  p.t_final = 3600.0;  // days

  const double mobility_ratio = (test == 2 || test == 4) ? 41.0 : 1.0;
  const bool layered = (test >= 3);
  auto permeability = [layered](const Vec2& x) {
    return layered ? (x.y < 500.0 ? 80.0 : 20.0) : 80.0;
  };

  Coefficients co;
  co.phi = [](const Vec2&) { return 0.1; };
  const double mexp = std::pow(mobility_ratio, 0.25) - 1.0;
  co.mobility = [permeability, mexp](double c, const Vec2& x) {
    return permeability(x) * std::pow(1.0 + mexp * c, 4);
  };
  co.inv_mobility = [co_mob = co.mobility](double c, const Vec2& x) {
    return 1.0 / co_mob(c, x);
  };
  co.gravity = [](double, const Vec2&, double) { return Vec2{0.0, 0.0}; };
  co.d_m = (test == 2 || test == 4) ? 0.0 : 10.0;
  co.d_l = 50.0;
  co.d_t = 5.0;
  p.coeff = co;

  p.c0 = [](const Vec2&) { return 0.0; };
  p.wells = {
      WellSpec{{1000.0, 1000.0}, 30.0, true},
      WellSpec{{0.0, 0.0}, 30.0, false},
  };
  return p;
}

Problem problem_by_name(const std::string& name) {
  if (name == "ex1") return example1();
  if (name == "ex2") return example2();
  if (name.rfind("ex3-t", 0) == 0 && name.size() == 6)
    return example3(name[5] - '0');
  throw Error("unknown problem: " + name + " (expected ex1, ex2, ex3-t1..ex3-t4)");
}

std::pair<double, double> forcing_oracle(const Problem& p, const Vec2& x, double t) {
  if (!p.forcing_f || !p.forcing_q)
    throw Error("forcing_oracle: problem " + p.name + " has no manufactured forcing");
  return {p.forcing_f(x, t), p.forcing_q(x, t)};
}

}  // namespace vemmd
