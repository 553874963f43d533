#pragma once

#include <Eigen/Sparse>
#include <optional>

#include "vemmd/problems.hpp"

namespace vemmd {

struct SimulationConfig {
  double tau = 0.01;
  double t_final = -1.0;  // < 0: use the problem default
  int degree = 0;         // polynomial degree k; only 0 is implemented
  double solver_tol = 1e-10;
  int data_quadrature_degree = 6;
  std::vector<double> snapshot_times;
};

/// Per-mesh immutable setup: DOF map, cached projectors and volume rules.
struct MeshCache {
  const PolyMesh* mesh = nullptr;
  DofMap dofs;
  std::vector<CellProjectors> proj;
  std::vector<Quadrature> cell_rule;
  int data_degree = 6;

  CellContext ctx(int K) const { return {*mesh, K, proj[K], cell_rule[K]}; }
};

MeshCache make_cache(const PolyMesh& mesh, int data_degree = 6);

/// Problem sources resolved against a mesh. Wells become constant densities
/// on the cell containing the well point; manufactured problems can assemble
/// the div data as exact boundary fluxes so the discrete compatibility and
/// per-cell conservation hold to machine precision.
class BoundSources {
public:
  BoundSources(const Problem& problem, const MeshCache& cache);

  double qplus(int cell, const Vec2& x, double t) const;
  double qminus(int cell, const Vec2& x, double t) const;
  double qsum(int cell, const Vec2& x, double t) const { return qplus(cell, x, t) + qminus(cell, x, t); }
  double load(int cell, const Vec2& x, double t) const;

  /// int_K G at time t.
  double cell_div_data(int cell, double t) const;
  /// L2 norm of G over the domain at time t.
  double div_data_norm(double t) const;

private:
  const Problem* problem_;
  const MeshCache* cache_;
  std::vector<double> well_plus_;   // per-cell density contribution of injectors
  std::vector<double> well_minus_;  // per-cell density contribution of producers
  bool has_wells_ = false;
};

struct DarcyResult {
  Eigen::VectorXd u;
  Eigen::VectorXd p;
  double multiplier = 0.0;
  double residual = 0.0;
  double conservation_defect = 0.0;  // max over cells of |sum_e s|e|u_e - int_K G|
};

/// One decoupled Darcy solve: block system with the zero-mean multiplier,
/// velocity boundary DOFs eliminated (to bc_values when given, else 0).
DarcyResult solve_darcy(const MeshCache& cache, const Coefficients& coeff,
                        const BoundSources& sources, const Eigen::VectorXd& c, double t,
                        double tol = 1e-10, const Eigen::VectorXd* bc_values = nullptr);

Eigen::SparseMatrix<double> assemble_mass(const MeshCache& cache, const Coefficients& coeff);

/// Transport matrix M/tau + Theta(u) + D(u) and right-hand side at t_next.
void assemble_transport(const MeshCache& cache, const Coefficients& coeff,
                        const BoundSources& sources, const Eigen::SparseMatrix<double>& mass,
                        const Eigen::VectorXd& u, const Eigen::VectorXd& c_old, double t_next,
                        double tau, Eigen::SparseMatrix<double>& matrix, Eigen::VectorXd& rhs);

Eigen::VectorXd solve_transport(const MeshCache& cache, const Coefficients& coeff,
                                const BoundSources& sources,
                                const Eigen::SparseMatrix<double>& mass, const Eigen::VectorXd& u,
                                const Eigen::VectorXd& c_old, double t_next, double tau,
                                double tol = 1e-10, double* residual = nullptr);

struct RunDiagnostics {
  int steps = 0;
  double max_darcy_residual = 0.0;
  double max_transport_residual = 0.0;
  double max_conservation_defect = 0.0;
};

struct RunResult {
  std::vector<SolutionState> snapshots;
  SolutionState final_state;
  RunDiagnostics diag;
};

/// Backward-Euler time loop: Darcy at t_n with c^n, then one linear transport
/// solve to t_{n+1}; a final Darcy solve pairs (u,p) with c at T.
RunResult run(const MeshCache& cache, const Problem& problem, const SimulationConfig& config);

}  // namespace vemmd
