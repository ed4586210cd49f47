#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chmorley/interface.hpp"
#include "chmorley/norms.hpp"
#include "chmorley/stepper.hpp"

namespace chmorley {

/// Flat run configuration, parseable from a key = value text file and
/// overridable by command-line flags.
struct RunConfig {
  std::string command;  // run | converge | interface | energy

  std::vector<double> eps_list;  // "eps": single value or comma list
  std::vector<int> n_list;       // "n": single value or comma list
  std::optional<double> dt;      // "k"
  std::optional<double> t_end;   // "T"
  std::string ic;                // ellipse | twocircle | constant:<c> | expr:<...>
  std::string init_mode = "interpolant";
  double alpha0 = 1.0;
  double newton_tol = 1e-10;
  int newton_max_iter = 30;
  std::vector<double> snapshots;
  std::string out = "out";
  int contour_subdivision = 4;  // "r"
  int ref_multiplier = 2;       // "n_ref"
  std::string time_norm = "final";  // final | max
  bool svg = false;

  /// Applies one key = value pair; throws std::invalid_argument on unknown
  /// keys or malformed values.
  void set(const std::string& key, const std::string& value);

  /// Problems that make the config unusable for its command; empty when valid.
  std::vector<std::string> validate() const;

  SchemeParams scheme_params() const;  // eps/dt/t_end from the single-run fields
  /// Output root: $CHMORLEY_OUT when set, the "out" field otherwise.
  std::string output_root() const;
  /// The fully resolved key = value text (the artifact-directory config echo).
  std::string resolved_text() const;
};

/// Parses a flat key = value file ('#' comments allowed) into config.
void load_config_file(RunConfig& config, const std::string& path);

struct ConvergenceStudyConfig {
  std::vector<int> levels;   // strictly increasing, power-of-two nested
  int ref_multiplier = 2;    // reference mesh: ref_multiplier * levels.back()
  SchemeParams scheme;
  std::string ic = "twocircle";
  std::vector<double> eval_times;  // defaults to {scheme.t_end}
  bool max_over_times = false;     // max over eval times instead of final time
};

struct ConvergenceStudyResult {
  ErrorReport report;                   // final-time (or max-over-times) view
  std::vector<ErrorReport> per_time;    // one report per eval time
  double max_mass_drift = 0.0;          // over every level and the reference run
};

/// Errors of each level against the nested reference solution (same time
/// step, same final time), plus observed orders.
ConvergenceStudyResult convergence_study(const ConvergenceStudyConfig& config);

// Command entry points; return process exit codes (0 ok, 2 invalid config,
// 3 solver nonconvergence).
int cmd_run(const RunConfig& config);
int cmd_converge(const RunConfig& config);
int cmd_interface(const RunConfig& config);
int cmd_energy(const RunConfig& config);
int dispatch_command(const RunConfig& config);

}  // namespace chmorley
