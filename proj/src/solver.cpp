#include "vemmd/solver.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <cstdio>

namespace vemmd {

MeshCache make_cache(const PolyMesh& mesh, int data_degree) {
  MeshCache c{&mesh, DofMap(mesh), make_projectors(mesh), {}, data_degree};
  c.cell_rule.reserve(mesh.num_cells());
  for (int K = 0; K < mesh.num_cells(); ++K)
    c.cell_rule.push_back(polygon_quadrature(mesh, K, data_degree));
  return c;
}

BoundSources::BoundSources(const Problem& problem, const MeshCache& cache)
    : problem_(&problem), cache_(&cache) {
  const PolyMesh& mesh = *cache.mesh;
  if (!problem.wells.empty()) {
    has_wells_ = true;
    well_plus_.assign(mesh.num_cells(), 0.0);
    well_minus_.assign(mesh.num_cells(), 0.0);
    for (const WellSpec& w : problem.wells) {
      int host = -1;
      for (int K = 0; K < mesh.num_cells(); ++K) {
        if (point_in_polygon(mesh.cell_polygon(K), w.location)) {
          host = K;
          break;
        }
      }
      if (host < 0) throw Error("BoundSources: well location outside the mesh");
      auto& side = w.injector ? well_plus_ : well_minus_;
      side[host] += w.rate / mesh.cell_area[host];
    }
  }
}

double BoundSources::qplus(int cell, const Vec2& x, double t) const {
  if (has_wells_) return well_plus_[cell];
  return problem_->qplus ? problem_->qplus(x, t) : 0.0;
}

double BoundSources::qminus(int cell, const Vec2& x, double t) const {
  if (has_wells_) return well_minus_[cell];
  return problem_->qminus ? problem_->qminus(x, t) : 0.0;
}

double BoundSources::load(int cell, const Vec2& x, double t) const {
  if (has_wells_) return well_plus_[cell];  // injected concentration chat = 1
  return problem_->transport_load ? problem_->transport_load(x, t) : 0.0;
}

double BoundSources::cell_div_data(int cell, double t) const {
  const PolyMesh& mesh = *cache_->mesh;
  if (has_wells_)
    return (well_plus_[cell] - well_minus_[cell]) * mesh.cell_area[cell];
  if (problem_->div_rhs_from_exact_flux && problem_->exact) {
    const auto& u = problem_->exact->u;
    double flux = 0.0;
    for (const CellEdge& ce : mesh.cell_edges[cell]) {
      const Edge& e = mesh.edges[ce.edge];
      const Quadrature q =
          edge_quadrature(mesh.vertices[e.a], mesh.vertices[e.b], cache_->data_degree);
      flux += ce.sign * q.integrate([&](const Vec2& x) { return dot(u(x, t), e.normal); });
    }
    return flux;
  }
  if (!problem_->source_div) return 0.0;
  return cache_->cell_rule[cell].integrate(
      [&](const Vec2& x) { return problem_->source_div(x, t); });
}

double BoundSources::div_data_norm(double t) const {
  const PolyMesh& mesh = *cache_->mesh;
  double s = 0.0;
  if (has_wells_) {
    for (int K = 0; K < mesh.num_cells(); ++K) {
      const double d = well_plus_[K] - well_minus_[K];
      s += d * d * mesh.cell_area[K];
    }
    return std::sqrt(s);
  }
  if (!problem_->source_div) return 0.0;
  for (int K = 0; K < mesh.num_cells(); ++K) {
    const double v = cache_->cell_rule[K].integrate([&](const Vec2& x) {
      const double g = problem_->source_div(x, t);
      return g * g;
    });
    s += v;
  }
  return std::sqrt(s);
}

namespace {

double solve_sparse(Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                    const char* what) {
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) throw Error(std::string(what) + ": factorization failed");
  x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw Error(std::string(what) + ": solve failed");
  const double bn = b.norm();
  return (A * x - b).norm() / (bn > 0.0 ? bn : 1.0);
}

}  // namespace

DarcyResult solve_darcy(const MeshCache& cache, const Coefficients& coeff,
                        const BoundSources& sources, const Eigen::VectorXd& c, double t,
                        double tol, const Eigen::VectorXd* bc_values) {
  const PolyMesh& mesh = *cache.mesh;
  const int nu = cache.dofs.velocity_size();
  const int np = cache.dofs.pressure_size();
  const int ndof = nu + np + 1;  // + zero-mean multiplier

  // compatibility of the div data
  double total_g = 0.0;
  std::vector<double> g(np);
  for (int K = 0; K < np; ++K) {
    g[K] = sources.cell_div_data(K, t);
    total_g += g[K];
  }
  const double gnorm = sources.div_data_norm(t);
  if (gnorm > 0.0 && std::abs(total_g) > 1e-8 * gnorm)
    throw Error("solve_darcy: incompatible source data, integral of G = " + std::to_string(total_g));

  auto constrained = [&](int i) {
    return i < nu && cache.dofs.velocity_boundary[static_cast<size_t>(i)];
  };
  auto bc_value = [&](int i) { return bc_values ? (*bc_values)[i] : 0.0; };

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ndof);
  auto add = [&](int i, int j, double v) {
    if (v == 0.0) return;
    if (constrained(i)) return;
    if (constrained(j)) {
      rhs[i] -= v * bc_value(j);
      return;
    }
    trip.emplace_back(i, j, v);
  };

  for (int K = 0; K < mesh.num_cells(); ++K) {
    const CellContext ctx = cache.ctx(K);
    const auto& ces = mesh.cell_edges[K];
    const int n = static_cast<int>(ces.size());
    const Eigen::VectorXd c_loc = local_dofs(mesh, K, c);
    const Eigen::MatrixXd A = local_darcy(ctx, c_loc, coeff.inv_mobility);
    const Eigen::RowVectorXd B = local_div_row(ctx);
    const Eigen::VectorXd grav = local_gravity_rhs(ctx, c_loc, [&](double cv, const Vec2& x) {
      return coeff.gravity(cv, x, t);
    });
    for (int a = 0; a < n; ++a) {
      const int ia = ces[a].edge;
      if (!constrained(ia)) rhs[ia] += grav[a];
      for (int b = 0; b < n; ++b) add(ia, ces[b].edge, A(a, b));
      add(ia, nu + K, B(a));  // B^T
      add(nu + K, ia, B(a));
    }
    // zero-mean pressure multiplier
    add(nu + K, ndof - 1, mesh.cell_area[K]);
    add(ndof - 1, nu + K, mesh.cell_area[K]);
    rhs[nu + K] += -g[K];
  }
  for (int i = 0; i < nu; ++i)
    if (constrained(i)) {
      trip.emplace_back(i, i, 1.0);
      rhs[i] = bc_value(i);
    }

  Eigen::SparseMatrix<double> A(ndof, ndof);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::VectorXd x;
  DarcyResult res;
  res.residual = solve_sparse(A, rhs, x, "solve_darcy");
  if (res.residual > tol)
    throw Error("solve_darcy: residual " + std::to_string(res.residual) + " exceeds tolerance");

  res.u = x.head(nu);
  res.p = x.segment(nu, np);
  res.multiplier = x[ndof - 1];

  for (int K = 0; K < np; ++K) {
    double flux = 0.0;
    for (const CellEdge& ce : mesh.cell_edges[K])
      flux += ce.sign * mesh.edges[ce.edge].length * res.u[ce.edge];
    res.conservation_defect = std::max(res.conservation_defect, std::abs(flux - g[K]));
  }
  return res;
}

Eigen::SparseMatrix<double> assemble_mass(const MeshCache& cache, const Coefficients& coeff) {
  const PolyMesh& mesh = *cache.mesh;
  std::vector<Eigen::Triplet<double>> trip;
  for (int K = 0; K < mesh.num_cells(); ++K) {
    const Eigen::MatrixXd M = local_mass(cache.ctx(K), coeff.phi);
    const auto& ces = mesh.cell_edges[K];
    for (size_t a = 0; a < ces.size(); ++a)
      for (size_t b = 0; b < ces.size(); ++b)
        trip.emplace_back(ces[a].edge, ces[b].edge, M(a, b));
  }
  Eigen::SparseMatrix<double> M(mesh.num_edges(), mesh.num_edges());
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

void assemble_transport(const MeshCache& cache, const Coefficients& coeff,
                        const BoundSources& sources, const Eigen::SparseMatrix<double>& mass,
                        const Eigen::VectorXd& u, const Eigen::VectorXd& c_old, double t_next,
                        double tau, Eigen::SparseMatrix<double>& matrix, Eigen::VectorXd& rhs) {
  const PolyMesh& mesh = *cache.mesh;
  std::vector<Eigen::Triplet<double>> trip;
  rhs = mass * c_old / tau;
  for (int K = 0; K < mesh.num_cells(); ++K) {
    const CellContext ctx = cache.ctx(K);
    const auto& ces = mesh.cell_edges[K];
    const Eigen::VectorXd u_loc = local_dofs(mesh, K, u);
    const PorosityData por = porosity_data(ctx, coeff.phi);
    const Eigen::MatrixXd D =
        local_diffusion(ctx, u_loc, por, coeff.d_m, coeff.d_l, coeff.d_t);
    const Eigen::MatrixXd Th = local_convection(
        ctx, u_loc, [&](const Vec2& x) { return sources.qsum(K, x, t_next); });
    const Eigen::VectorXd load =
        local_transport_rhs(ctx, [&](const Vec2& x) { return sources.load(K, x, t_next); });
    for (size_t a = 0; a < ces.size(); ++a) {
      rhs[ces[a].edge] += load[static_cast<Eigen::Index>(a)];
      for (size_t b = 0; b < ces.size(); ++b)
        trip.emplace_back(ces[a].edge, ces[b].edge, D(a, b) + Th(a, b));
    }
  }
  Eigen::SparseMatrix<double> A(mesh.num_edges(), mesh.num_edges());
  A.setFromTriplets(trip.begin(), trip.end());
  matrix = A + mass / tau;
}

Eigen::VectorXd solve_transport(const MeshCache& cache, const Coefficients& coeff,
                                const BoundSources& sources,
                                const Eigen::SparseMatrix<double>& mass, const Eigen::VectorXd& u,
                                const Eigen::VectorXd& c_old, double t_next, double tau,
                                double tol, double* residual) {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd rhs, c_new;
  assemble_transport(cache, coeff, sources, mass, u, c_old, t_next, tau, A, rhs);
  const double res = solve_sparse(A, rhs, c_new, "solve_transport");
  if (res > tol)
    throw Error("solve_transport: residual " + std::to_string(res) + " exceeds tolerance");
  if (residual) *residual = res;
  return c_new;
}

RunResult run(const MeshCache& cache, const Problem& problem, const SimulationConfig& config) {
  if (config.degree != 0) throw Error("run: only degree k = 0 is implemented");
  if (!(config.tau > 0.0)) throw Error("run: time step must be positive");
  const double T = config.t_final < 0.0 ? problem.t_final : config.t_final;
  if (T < 0.0) throw Error("run: negative final time");

  const long N = std::lround(T / config.tau);
  if (std::abs(static_cast<double>(N) * config.tau - T) > 1e-9 * config.tau)
    std::fprintf(stderr, "[vemmd] warning: T=%g is not a multiple of tau=%g, using N=%ld steps\n",
                 T, config.tau, N);

  RunResult out;
  out.diag.steps = static_cast<int>(N);

  SolutionState state;
  state.t = 0.0;
  state.c = interpolate_concentration(*cache.mesh, [&](const Vec2& x, double) { return problem.c0(x); },
                                      0.0, cache.data_degree);
  state.u = Eigen::VectorXd::Zero(cache.dofs.velocity_size());
  state.p = Eigen::VectorXd::Zero(cache.dofs.pressure_size());
  if (N == 0) {
    out.final_state = state;
    return out;
  }

  const BoundSources sources(problem, cache);
  const Eigen::SparseMatrix<double> mass = assemble_mass(cache, problem.coeff);

  auto want_snapshot = [&](double t) {
    for (double s : config.snapshot_times)
      if (std::abs(s - t) <= 0.5 * config.tau) return true;
    return false;
  };

  for (long n = 0; n <= N; ++n) {
    const double tn = static_cast<double>(n) * config.tau;
    DarcyResult darcy;
    try {
      darcy = solve_darcy(cache, problem.coeff, sources, state.c, tn, config.solver_tol);
    } catch (const Error& err) {
      throw Error("step " + std::to_string(n) + ": " + err.what());
    }
    state.u = darcy.u;
    state.p = darcy.p;
    state.t = tn;
    out.diag.max_darcy_residual = std::max(out.diag.max_darcy_residual, darcy.residual);
    out.diag.max_conservation_defect =
        std::max(out.diag.max_conservation_defect, darcy.conservation_defect);
    if (n < N && want_snapshot(tn)) out.snapshots.push_back(state);
    if (n == N) break;

    double tres = 0.0;
    Eigen::VectorXd c_next;
    try {
      c_next = solve_transport(cache, problem.coeff, sources, mass, state.u, state.c,
                               tn + config.tau, config.tau, config.solver_tol, &tres);
    } catch (const Error& err) {
      throw Error("step " + std::to_string(n) + ": " + err.what());
    }
    out.diag.max_transport_residual = std::max(out.diag.max_transport_residual, tres);
    state.c = c_next;
  }
  out.final_state = state;
  if (want_snapshot(state.t)) out.snapshots.push_back(state);
  return out;
}

}  // namespace vemmd
