#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "chmorley/assembly.hpp"
#include "chmorley/fields.hpp"
#include "chmorley/morley.hpp"

namespace chmorley {

struct SchemeParams {
  double eps = 0.08;       // interface width
  double dt = 1e-5;        // time step k
  double t_end = 1e-3;     // final time T
  double newton_tol = 1e-10;  // residual infinity-norm tolerance
  int newton_max_iter = 30;
  double alpha0 = 1.0;     // shift constant of the elliptic projection

  enum class InitMode { interpolant, projection };
  InitMode init_mode = InitMode::interpolant;

  void validate() const;
  /// Number of backward Euler steps covering [0, t_end].
  int step_count() const;
};

struct StepDiagnostics {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  int newton_iters = 0;
  double residual = 0.0;
  std::vector<double> residual_history;  // per Newton iterate, starting at the initial guess
};

struct SimulationState {
  int step = 0;
  double time = 0.0;
  Eigen::VectorXd coeffs;  // member of the constrained space: boundary-edge DOFs are zero
};

/// Newton failed to reach the residual tolerance.
class NewtonError : public std::runtime_error {
 public:
  NewtonError(int step, double residual);
  int step() const { return step_; }
  double residual() const { return residual_; }

 private:
  int step_;
  double residual_;
};

struct Snapshot {
  int step = 0;
  double time = 0.0;
  Eigen::VectorXd coeffs;
};

/// Time history of a run: sparse coefficient snapshots plus per-step
/// diagnostics (row 0 describes the initial state).
struct Trajectory {
  const MorleySpace* space = nullptr;
  double dt = 0.0;
  std::vector<Snapshot> snapshots;
  std::vector<StepDiagnostics> diagnostics;

  /// Piecewise-linear-in-time interpolant between the bracketing snapshots.
  /// Throws std::out_of_range when t is outside the stored range or a
  /// bracketing snapshot was not retained.
  MorleyFunction at(double t) const;
  const Snapshot& nearest_snapshot(double t) const;
};

/// Backward Euler for the Cahn-Hilliard equation in the Morley space, full
/// Newton per step, boundary-edge DOFs eliminated. Mass and stiffness are
/// assembled once; the Jacobian pattern is analyzed once and refactorized per
/// Newton iteration (sparse direct solve).
class CahnHilliardStepper {
 public:
  CahnHilliardStepper(const MorleySpace& space, const SchemeParams& params);

  const MorleySpace& space() const { return *space_; }
  const SchemeParams& params() const { return params_; }

  /// Initial state: the boundary-projected Morley interpolant of u0, or the
  /// shifted elliptic projection when params.init_mode == projection (needs
  /// u0.laplacian and u0.bilaplacian).
  SimulationState initialize(const ScalarField& u0);

  /// One backward Euler step. Throws NewtonError on nonconvergence.
  StepDiagnostics advance(SimulationState& state);

  StepDiagnostics diagnose(const SimulationState& state) const;

  /// Step repeatedly to t_end, keeping coefficient snapshots at (and
  /// bracketing) the requested times; step 0 and the final step are always
  /// kept. Snapshot times must lie in [0, t_end].
  Trajectory run(const ScalarField& u0, const std::vector<double>& snapshot_times = {});

 private:
  Eigen::VectorXd restrict_vector(const Eigen::VectorXd& full) const;
  Eigen::VectorXd extend_vector(const Eigen::VectorXd& reduced) const;
  SparseMat restrict_matrix(const SparseMat& full) const;

  const MorleySpace* space_;
  SchemeParams params_;
  std::vector<int> full_to_free_;  // -1 for constrained DOFs
  std::vector<int> free_to_full_;
  SparseMat mass_free_;
  SparseMat stiffness_free_;
  SparseMat implicit_part_;  // M/dt + eps*A on free DOFs
  Eigen::SparseLU<SparseMat> solver_;
  bool pattern_analyzed_ = false;
};

}  // namespace chmorley
