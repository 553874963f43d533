#pragma once

#include <string>
#include <vector>

#include "vemmd/generators.hpp"
#include "vemmd/solver.hpp"

namespace vemmd {

/// L2 errors of the computable projections against the exact solution,
/// both normalized (err_*) and absolute (abs_*). The convergence tables
/// report the normalized values.
struct ErrorNorms {
  double err_u = 0.0, err_p = 0.0, err_c = 0.0;
  double abs_u = 0.0, abs_p = 0.0, abs_c = 0.0;
};

ErrorNorms compute_errors(const MeshCache& cache, const SolutionState& state,
                          const ExactSolution& exact, double t);

/// log(err_coarse/err_fine) / log(h_ratio); NaN when an error is nonpositive.
double compute_order(double err_coarse, double err_fine, double h_ratio = 2.0);

struct ErrorRow {
  double h = 0.0, tau = 0.0;
  double err_u = 0.0, order_u = 0.0;
  double err_p = 0.0, order_p = 0.0;
  double err_c = 0.0, order_c = 0.0;  // orders are NaN on the first row
};

struct LevelResult {
  ErrorRow row;
  RunDiagnostics diag;
};

/// Mesh-size and time-step schedule of a convergence study; the per-family
/// starting values mirror the benchmark tables (tau halves per level, the
/// final time is 5 * tau_first).
struct Schedule {
  int n_first = 0;
  double tau_first = 0.0;
  double t_final() const { return 5.0 * tau_first; }
};

Schedule convergence_schedule(const std::string& problem_name, MeshFamily family);

/// Generates a mesh for a problem: unit-square family rescaled to the domain.
PolyMesh make_problem_mesh(const Problem& problem, MeshFamily family, int n,
                           std::uint64_t seed = 0);

std::vector<LevelResult> run_convergence(const Problem& problem, MeshFamily family, int levels,
                                         std::uint64_t seed = 0,
                                         const SimulationConfig& base = SimulationConfig{});

std::string rows_to_csv(const std::vector<ErrorRow>& rows);

enum class ExportFormat { Csv, Vtk };

/// Writes per-cell fields (centroid coordinates, Pi1 c at the centroid,
/// pressure, Pi0 u). VTK legacy unstructured grid with polygon cells, or CSV
/// with columns x,y,c,p,ux,uy; floats as shortest round-trip decimals.
void export_fields(const MeshCache& cache, const SolutionState& state, const std::string& path,
                   ExportFormat format);

/// Shortest round-trip decimal formatting.
std::string format_double(double v);

}  // namespace vemmd
