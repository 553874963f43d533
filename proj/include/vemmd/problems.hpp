#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vemmd/forms.hpp"
#include "vemmd/spaces.hpp"

namespace vemmd {

struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;
  double width() const { return xmax - xmin; }
};

struct ExactSolution {
  ScalarField c;
  VectorField u;
  ScalarField p;
};

struct WellSpec {
  Vec2 location;
  double rate = 0.0;  // area flow per day
  bool injector = false;  // injectors contribute to q+ and carry chat = 1
};

/// A concrete model problem: coefficients, sources and (optionally) the exact
/// solution bundle used by the convergence harness.
struct Problem {
  std::string name;
  Rect domain;
  double t_final = 1.0;
  Coefficients coeff;
  std::function<double(const Vec2&)> c0;

  // Pointwise sources as functions of (x, t); unused when wells are set.
  ScalarField qplus;
  ScalarField qminus;
  ScalarField source_div;      // G = q+ - q-
  ScalarField transport_load;  // right-hand side paired with Pi1 z

  std::vector<WellSpec> wells;  // realized as cell-constant densities per mesh

  std::optional<ExactSolution> exact;
  // Assemble int_K G as the boundary flux of the exact velocity; keeps the
  // discrete sources compatible to machine precision.
  bool div_rhs_from_exact_flux = false;

  // Closed-form manufactured forcing, present for ex1/ex2.
  ScalarField forcing_f;
  ScalarField forcing_q;
};

Problem example1();
Problem example2();
Problem example3(int test);

/// Lookup by CLI name: ex1 | ex2 | ex3-t1 | ex3-t2 | ex3-t3 | ex3-t4.
Problem problem_by_name(const std::string& name);

/// Closed-form (f, q) of the manufactured problems; throws if absent.
std::pair<double, double> forcing_oracle(const Problem& p, const Vec2& x, double t);

}  // namespace vemmd
