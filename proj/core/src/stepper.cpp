#include "chmorley/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "chmorley/norms.hpp"

namespace chmorley {

void SchemeParams::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("params: eps must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("params: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("params: t_end must be positive");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("params: newton_tol must be positive");
  if (newton_max_iter < 1) throw std::invalid_argument("params: newton_max_iter must be >= 1");
  if (!(alpha0 > 0.0)) throw std::invalid_argument("params: alpha0 must be positive");
}

int SchemeParams::step_count() const {
  const double x = t_end / dt;
  const double rounded = std::round(x);
  if (std::fabs(x - rounded) <= 1e-9 * std::max(1.0, x)) return static_cast<int>(rounded);
  return static_cast<int>(std::ceil(x));
}

NewtonError::NewtonError(int step, double residual)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "Newton did not converge at step " << step << " (residual " << residual << ")";
        return os.str();
      }()),
      step_(step),
      residual_(residual) {}

CahnHilliardStepper::CahnHilliardStepper(const MorleySpace& space, const SchemeParams& params)
    : space_(&space), params_(params) {
  params_.validate();
  const Mesh& mesh = space.mesh();
  const int n = space.dof_count();
  full_to_free_.assign(n, -1);
  const int off = space.edge_dof_offset();
  for (int i = 0; i < off; ++i) {
    full_to_free_[i] = static_cast<int>(free_to_full_.size());
    free_to_full_.push_back(i);
  }
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (!mesh.edges()[e].boundary) {
      full_to_free_[off + e] = static_cast<int>(free_to_full_.size());
      free_to_full_.push_back(off + e);
    }
  }
  mass_free_ = restrict_matrix(assemble_mass(space));
  stiffness_free_ = restrict_matrix(assemble_stiffness(space));
  implicit_part_ = SparseMat((1.0 / params_.dt) * mass_free_ + params_.eps * stiffness_free_);
}

Eigen::VectorXd CahnHilliardStepper::restrict_vector(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(free_to_full_.size());
  for (std::size_t i = 0; i < free_to_full_.size(); ++i) out[i] = full[free_to_full_[i]];
  return out;
}

Eigen::VectorXd CahnHilliardStepper::extend_vector(const Eigen::VectorXd& reduced) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space_->dof_count());
  for (std::size_t i = 0; i < free_to_full_.size(); ++i) out[free_to_full_[i]] = reduced[i];
  return out;
}

SparseMat CahnHilliardStepper::restrict_matrix(const SparseMat& full) const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(full.nonZeros());
  for (int col = 0; col < full.outerSize(); ++col) {
    const int jc = full_to_free_[col];
    if (jc < 0) continue;
    for (SparseMat::InnerIterator it(full, col); it; ++it) {
      const int ir = full_to_free_[it.row()];
      if (ir >= 0) triplets.emplace_back(ir, jc, it.value());
    }
  }
  SparseMat out(static_cast<int>(free_to_full_.size()), static_cast<int>(free_to_full_.size()));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SimulationState CahnHilliardStepper::initialize(const ScalarField& u0) {
  SimulationState state;
  state.step = 0;
  state.time = 0.0;
  if (params_.init_mode == SchemeParams::InitMode::interpolant) {
    state.coeffs = project_boundary(interpolate(*space_, u0)).coeffs;
    return state;
  }
  if (!u0.has_projection_data())
    throw std::invalid_argument(
        "initialize: projection mode needs analytic laplacian and bilaplacian");
  const double eps = params_.eps;
  const double alpha = params_.alpha0 / (eps * eps * eps);
  auto g = [&](const Vec2& p) {
    const double u = u0.value(p);
    const double lap = u0.laplacian(p);
    const Vec2 grad = u0.gradient(p);
    const double div_flux = double_well_d3(u) * grad.squaredNorm() + double_well_d2(u) * lap;
    return eps * u0.bilaplacian(p) - div_flux / eps + alpha * u;
  };
  const SparseMat b = restrict_matrix(assemble_shifted_form(*space_, u0.value, eps, params_.alpha0));
  const Eigen::VectorXd rhs = restrict_vector(assemble_load(*space_, g));
  Eigen::SparseLU<SparseMat> lu;
  lu.compute(b);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("initialize: shifted elliptic form is singular");
  state.coeffs = extend_vector(lu.solve(rhs));
  return state;
}

StepDiagnostics CahnHilliardStepper::diagnose(const SimulationState& state) const {
  StepDiagnostics d;
  d.step = state.step;
  d.time = state.time;
  MorleyFunction u(*space_, state.coeffs);
  d.mass = mean_value(u);
  d.energy = energy(u, params_.eps);
  return d;
}

StepDiagnostics CahnHilliardStepper::advance(SimulationState& state) {
  const double dt = params_.dt;
  const double eps = params_.eps;
  const Eigen::VectorXd prev = restrict_vector(state.coeffs);
  Eigen::VectorXd iter = prev;
  Eigen::VectorXd full = state.coeffs;

  std::vector<double> history;
  int solves = 0;
  for (;;) {
    const NonlinearTerm term = assemble_nonlinear_term(*space_, full);
    const Eigen::VectorXd residual = (1.0 / dt) * (mass_free_ * (iter - prev)) +
                                     eps * (stiffness_free_ * iter) +
                                     (1.0 / eps) * restrict_vector(term.residual);
    const double rnorm = residual.lpNorm<Eigen::Infinity>();
    history.push_back(rnorm);
    if (rnorm <= params_.newton_tol) break;
    if (solves >= params_.newton_max_iter) throw NewtonError(state.step + 1, rnorm);

    const SparseMat system =
        SparseMat(implicit_part_ + (1.0 / eps) * restrict_matrix(term.jacobian));
    if (!pattern_analyzed_) {
      solver_.analyzePattern(system);
      pattern_analyzed_ = true;
    }
    solver_.factorize(system);
    if (solver_.info() != Eigen::Success)
      throw std::runtime_error("advance: singular Newton matrix at step " +
                               std::to_string(state.step + 1));
    iter -= solver_.solve(residual);
    full = extend_vector(iter);
    ++solves;
  }

  state.coeffs = std::move(full);
  state.step += 1;
  state.time = state.step * dt;

  StepDiagnostics d = diagnose(state);
  d.newton_iters = solves;
  d.residual = history.back();
  d.residual_history = std::move(history);
  return d;
}

Trajectory CahnHilliardStepper::run(const ScalarField& u0,
                                    const std::vector<double>& snapshot_times) {
  const int nsteps = params_.step_count();
  const double dt = params_.dt;
  const double time_tol = 1e-9 * std::max(1.0, params_.t_end / dt);

  std::set<int> keep = {0, nsteps};
  for (double t : snapshot_times) {
    if (t < -1e-12 || t > nsteps * dt * (1.0 + 1e-12))
      throw std::invalid_argument("run: snapshot time outside [0, t_end]");
    const double x = t / dt;
    const double rounded = std::round(x);
    if (std::fabs(x - rounded) <= time_tol) {
      keep.insert(static_cast<int>(rounded));
    } else {
      keep.insert(static_cast<int>(std::floor(x)));
      keep.insert(static_cast<int>(std::floor(x)) + 1);
    }
  }

  Trajectory traj;
  traj.space = space_;
  traj.dt = dt;

  SimulationState state = initialize(u0);
  traj.diagnostics.push_back(diagnose(state));
  if (keep.count(0)) traj.snapshots.push_back({0, 0.0, state.coeffs});
  for (int n = 1; n <= nsteps; ++n) {
    traj.diagnostics.push_back(advance(state));
    if (keep.count(n)) traj.snapshots.push_back({n, state.time, state.coeffs});
  }
  return traj;
}

MorleyFunction Trajectory::at(double t) const {
  if (snapshots.empty()) throw std::out_of_range("Trajectory::at: no snapshots");
  const double x = t / dt;
  const double rounded = std::round(x);
  const bool on_grid = std::fabs(x - rounded) <= 1e-9 * std::max(1.0, x);

  auto find_step = [&](int step) -> const Snapshot* {
    for (const Snapshot& s : snapshots)
      if (s.step == step) return &s;
    return nullptr;
  };

  if (on_grid) {
    if (const Snapshot* s = find_step(static_cast<int>(rounded)))
      return MorleyFunction(*space, s->coeffs);
    throw std::out_of_range("Trajectory::at: snapshot for requested time not retained");
  }
  const int lo = static_cast<int>(std::floor(x));
  const Snapshot* a = find_step(lo);
  const Snapshot* b = find_step(lo + 1);
  if (!a || !b)
    throw std::out_of_range("Trajectory::at: bracketing snapshots not retained");
  const double w = x - lo;  // (t - t_{n-1}) / k
  return MorleyFunction(*space, (1.0 - w) * a->coeffs + w * b->coeffs);
}

const Snapshot& Trajectory::nearest_snapshot(double t) const {
  if (snapshots.empty()) throw std::out_of_range("Trajectory: no snapshots");
  const Snapshot* best = &snapshots.front();
  for (const Snapshot& s : snapshots)
    if (std::fabs(s.time - t) < std::fabs(best->time - t)) best = &s;
  return *best;
}

}  // namespace chmorley
