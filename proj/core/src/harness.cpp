#include "chmorley/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chmorley/fields.hpp"
#include "chmorley/io.hpp"

namespace chmorley {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": malformed number '" + value + "'");
  }
  if (used != value.size())
    throw std::invalid_argument(key + ": malformed number '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v)) throw std::invalid_argument(key + ": expected an integer");
  return static_cast<int>(v);
}

bool is_power_of_two(int v) { return v >= 1 && (v & (v - 1)) == 0; }

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "eps") {
    eps_list.clear();
    for (const std::string& item : split(value, ','))
      eps_list.push_back(parse_double(key, trim(item)));
  } else if (key == "n") {
    n_list.clear();
    for (const std::string& item : split(value, ','))
      n_list.push_back(parse_int(key, trim(item)));
  } else if (key == "k") {
    dt = parse_double(key, value);
  } else if (key == "T") {
    t_end = parse_double(key, value);
  } else if (key == "ic") {
    ic = value;
  } else if (key == "init_mode") {
    if (value != "interpolant" && value != "projection")
      throw std::invalid_argument("init_mode: must be interpolant or projection");
    init_mode = value;
  } else if (key == "alpha0") {
    alpha0 = parse_double(key, value);
  } else if (key == "newton_tol") {
    newton_tol = parse_double(key, value);
  } else if (key == "newton_max_iter") {
    newton_max_iter = parse_int(key, value);
  } else if (key == "snapshots") {
    snapshots.clear();
    for (const std::string& item : split(value, ','))
      if (!trim(item).empty()) snapshots.push_back(parse_double(key, trim(item)));
  } else if (key == "out") {
    out = value;
  } else if (key == "r") {
    contour_subdivision = parse_int(key, value);
  } else if (key == "n_ref") {
    ref_multiplier = parse_int(key, value);
  } else if (key == "time_norm") {
    if (value != "final" && value != "max")
      throw std::invalid_argument("time_norm: must be final or max");
    time_norm = value;
  } else if (key == "svg") {
    if (value == "true" || value == "1")
      svg = true;
    else if (value == "false" || value == "0")
      svg = false;
    else
      throw std::invalid_argument("svg: must be true or false");
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& message) {
    if (!ok) problems.push_back(message);
  };

  require(command == "run" || command == "converge" || command == "interface" ||
              command == "energy",
          "unknown command '" + command + "'");
  require(!eps_list.empty(), "missing required field: eps");
  require(!n_list.empty(), "missing required field: n");
  require(dt.has_value(), "missing required field: k");
  require(!ic.empty(), "missing required field: ic");
  for (double e : eps_list) require(e > 0.0, "eps: values must be positive");
  for (int n : n_list) require(n >= 1, "n: values must be >= 1");
  if (dt) require(*dt > 0.0, "k: must be positive");
  if (t_end) require(*t_end > 0.0, "T: must be positive");
  require(newton_tol > 0.0, "newton_tol: must be positive");
  require(newton_max_iter >= 1, "newton_max_iter: must be >= 1");
  require(alpha0 > 0.0, "alpha0: must be positive");
  require(contour_subdivision >= 1, "r: must be >= 1");
  for (double t : snapshots) require(t >= 0.0, "snapshots: times must be >= 0");
  if (!ic.empty()) {
    try {
      make_initial_condition(ic, eps_list.empty() ? 1.0 : eps_list.front());
    } catch (const std::exception& err) {
      problems.push_back(err.what());
    }
  }

  if (command == "run" || command == "energy") {
    require(eps_list.size() <= 1, command + ": eps must be a single value");
    require(n_list.size() <= 1, command + ": n must be a single value");
    require(t_end.has_value(), "missing required field: T");
  } else if (command == "converge") {
    require(eps_list.size() <= 1, "converge: eps must be a single value");
    require(t_end.has_value(), "missing required field: T");
    require(n_list.empty() || n_list.size() >= 2,
            "converge: n must list at least two levels");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
      const bool increasing = n_list[i] < n_list[i + 1];
      const bool nested = increasing && n_list[i + 1] % n_list[i] == 0 &&
                          is_power_of_two(n_list[i + 1] / n_list[i]);
      require(nested, "converge: n levels must be nested refinements by powers of 2 (got " +
                          std::to_string(n_list[i]) + " -> " + std::to_string(n_list[i + 1]) +
                          ")");
    }
    require(ref_multiplier >= 2 && is_power_of_two(ref_multiplier),
            "n_ref: reference multiplier must be a power of 2 and >= 2");
  } else if (command == "interface") {
    require(n_list.size() <= 1, "interface: n must be a single value");
    require(!snapshots.empty(), "interface: snapshots must list at least one time");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
      require(eps_list[i] > eps_list[i + 1], "interface: eps values must be strictly decreasing");
  }
  return problems;
}

SchemeParams RunConfig::scheme_params() const {
  SchemeParams p;
  p.eps = eps_list.empty() ? 0.0 : eps_list.front();
  p.dt = dt.value_or(0.0);
  if (t_end) {
    p.t_end = *t_end;
  } else if (!snapshots.empty()) {
    p.t_end = *std::max_element(snapshots.begin(), snapshots.end());
  }
  p.newton_tol = newton_tol;
  p.newton_max_iter = newton_max_iter;
  p.alpha0 = alpha0;
  p.init_mode = init_mode == "projection" ? SchemeParams::InitMode::projection
                                          : SchemeParams::InitMode::interpolant;
  return p;
}

std::string RunConfig::output_root() const {
  if (const char* env = std::getenv("CHMORLEY_OUT"); env && *env) return env;
  return out;
}

std::string RunConfig::resolved_text() const {
  std::ostringstream os;
  os << "command = " << command << "\n";
  os << "eps = " << join_doubles(eps_list) << "\n";
  os << "n = " << join_ints(n_list) << "\n";
  if (dt) os << "k = " << format_double(*dt) << "\n";
  if (t_end) os << "T = " << format_double(*t_end) << "\n";
  os << "ic = " << ic << "\n";
  os << "init_mode = " << init_mode << "\n";
  os << "alpha0 = " << format_double(alpha0) << "\n";
  os << "newton_tol = " << format_double(newton_tol) << "\n";
  os << "newton_max_iter = " << newton_max_iter << "\n";
  os << "snapshots = " << join_doubles(snapshots) << "\n";
  os << "out = " << output_root() << "\n";
  os << "r = " << contour_subdivision << "\n";
  os << "n_ref = " << ref_multiplier << "\n";
  os << "time_norm = " << time_norm << "\n";
  os << "svg = " << (svg ? "true" : "false") << "\n";
  return os.str();
}

namespace {

int report_problems(const std::vector<std::string>& problems) {
  for (const std::string& p : problems) std::cerr << "config error: " << p << "\n";
  return 2;
}

void echo_config(const RunConfig& config, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream os(dir / "config.txt");
  os << config.resolved_text();
}

std::string time_tag(double t) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << t;
  return os.str();
}

}  // namespace

ConvergenceStudyResult convergence_study(const ConvergenceStudyConfig& config) {
  std::vector<double> eval_times = config.eval_times;
  if (eval_times.empty()) eval_times.push_back(config.scheme.t_end);

  std::vector<int> ns = config.levels;
  ns.push_back(config.levels.back() * config.ref_multiplier);

  struct LevelData {
    double h = 0.0;
    std::unique_ptr<Mesh> mesh;
    std::unique_ptr<MorleySpace> space;
    std::vector<MorleyFunction> at_times;
  };
  std::vector<LevelData> levels;

  ConvergenceStudyResult result;
  for (int n : ns) {
    LevelData data;
    data.mesh = std::make_unique<Mesh>(Mesh::uniform(n, Rect{}));
    data.space = std::make_unique<MorleySpace>(*data.mesh);
    data.h = data.mesh->h();

    SchemeParams params = config.scheme;
    CahnHilliardStepper stepper(*data.space, params);
    const ScalarField ic = make_initial_condition(config.ic, params.eps);
    const Trajectory traj = stepper.run(ic, eval_times);
    for (double t : eval_times) data.at_times.push_back(traj.at(t));

    const double mass0 = traj.diagnostics.front().mass;
    for (const StepDiagnostics& d : traj.diagnostics)
      result.max_mass_drift = std::max(result.max_mass_drift, std::fabs(d.mass - mass0));
    levels.push_back(std::move(data));
  }

  const LevelData& ref = levels.back();
  for (std::size_t t = 0; t < eval_times.size(); ++t) {
    ErrorReport report;
    for (std::size_t lvl = 0; lvl + 1 < levels.size(); ++lvl) {
      ErrorRow row;
      row.h = levels[lvl].h;
      const MorleyFunction& u = levels[lvl].at_times[t];
      const MorleyFunction& u_ref = ref.at_times[t];
      row.l2 = error_vs_reference(u, u_ref, 0);
      row.h1 = error_vs_reference(u, u_ref, 1);
      row.h2 = error_vs_reference(u, u_ref, 2);
      row.linf = linf_error_vs_reference(u, u_ref);
      report.rows.push_back(row);
    }
    report.compute_orders();
    result.per_time.push_back(std::move(report));
  }

  // final-time view by default; elementwise max over times when requested
  for (std::size_t lvl = 0; lvl + 1 < levels.size(); ++lvl) {
    ErrorRow row;
    row.h = levels[lvl].h;
    const std::size_t last = eval_times.size() - 1;
    for (std::size_t t = 0; t < eval_times.size(); ++t) {
      if (!config.max_over_times && t != last) continue;
      const ErrorRow& r = result.per_time[t].rows[lvl];
      row.l2 = std::max(row.l2, r.l2);
      row.h1 = std::max(row.h1, r.h1);
      row.h2 = std::max(row.h2, r.h2);
      row.linf = std::max(row.linf, r.linf);
    }
    result.report.rows.push_back(row);
  }
  result.report.compute_orders();
  return result;
}

int cmd_run(const RunConfig& config) {
  if (auto problems = config.validate(); !problems.empty()) return report_problems(problems);

  const fs::path dir = config.output_root();
  echo_config(config, dir);
  const auto start = std::chrono::steady_clock::now();

  const Mesh mesh = Mesh::uniform(config.n_list.front(), Rect{});
  const MorleySpace space(mesh);
  CahnHilliardStepper stepper(space, config.scheme_params());
  const ScalarField ic = make_initial_condition(config.ic, config.eps_list.front());

  Trajectory traj;
  try {
    traj = stepper.run(ic, config.snapshots);
  } catch (const NewtonError& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return 3;
  }

  // one row per time step (the leading entry describes the initial state)
  write_diagnostics_csv(dir / "diagnostics.csv",
                        {traj.diagnostics.begin() + 1, traj.diagnostics.end()});
  std::vector<double> dump_times = config.snapshots;
  dump_times.push_back(traj.diagnostics.back().time);
  for (double t : dump_times) {
    const Snapshot& snap = traj.nearest_snapshot(t);
    write_dof_vector(dir / ("dof_t" + time_tag(snap.time) + ".txt"), mesh, snap.coeffs);
    if (config.svg) {
      const InterfaceCurve curve =
          extract_zero_set(MorleyFunction(space, snap.coeffs), config.contour_subdivision);
      write_curve_svg(dir / ("contour_t" + time_tag(snap.time) + ".svg"), curve, mesh.domain());
    }
  }

  const auto seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const StepDiagnostics& last = traj.diagnostics.back();
  std::cout << "run finished: steps=" << last.step << " final_mass=" << format_double(last.mass)
            << " final_energy=" << format_double(last.energy) << " wall_time_s=" << seconds
            << "\n";
  return 0;
}

int cmd_converge(const RunConfig& config) {
  if (auto problems = config.validate(); !problems.empty()) return report_problems(problems);

  const fs::path dir = config.output_root();
  echo_config(config, dir);

  ConvergenceStudyConfig study;
  study.levels = config.n_list;
  study.ref_multiplier = config.ref_multiplier;
  study.scheme = config.scheme_params();
  study.ic = config.ic;
  study.max_over_times = (config.time_norm == "max");
  study.eval_times = config.snapshots;
  study.eval_times.push_back(study.scheme.t_end);

  ConvergenceStudyResult result;
  try {
    result = convergence_study(study);
  } catch (const NewtonError& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return 3;
  }

  write_error_report_csv(dir / "convergence.csv", result.report);

  std::cout << "h,e_L2,order_L2,e_H1,order_H1,e_H2,order_H2\n";
  for (std::size_t i = 0; i < result.report.rows.size(); ++i) {
    const ErrorRow& r = result.report.rows[i];
    std::cout << format_double(r.h) << "," << format_double(r.l2) << ",";
    if (i > 0) std::cout << format_double(result.report.orders[i - 1].l2);
    std::cout << "," << format_double(r.h1) << ",";
    if (i > 0) std::cout << format_double(result.report.orders[i - 1].h1);
    std::cout << "," << format_double(r.h2) << ",";
    if (i > 0) std::cout << format_double(result.report.orders[i - 1].h2);
    std::cout << "\n";
  }
  std::cout << "max_mass_drift=" << format_double(result.max_mass_drift) << "\n";
  return 0;
}

int cmd_interface(const RunConfig& config) {
  if (auto problems = config.validate(); !problems.empty()) return report_problems(problems);

  const fs::path dir = config.output_root();
  echo_config(config, dir);

  InterfaceStudyConfig study;
  for (double eps : config.eps_list)
    study.runs.push_back({eps, config.n_list.front(), config.dt.value()});
  study.snapshot_times = config.snapshots;
  study.ic = config.ic;
  study.contour_subdivision = config.contour_subdivision;
  study.scheme = config.scheme_params();

  InterfaceStudyResult result;
  try {
    result = interface_study(study);
  } catch (const std::runtime_error& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return 3;
  }

  const Rect domain{};
  for (std::size_t i = 0; i < study.runs.size(); ++i) {
    for (std::size_t j = 0; j < study.snapshot_times.size(); ++j) {
      const std::string tag = "curve_eps" + format_double(study.runs[i].eps) + "_t" +
                              time_tag(study.snapshot_times[j]);
      write_curve_csv(dir / (tag + ".csv"), result.curves[i][j]);
      write_curve_svg(dir / (tag + ".svg"), result.curves[i][j], domain);
    }
  }

  if (!result.distances.empty()) {
    std::ofstream os(dir / "distances.csv");
    os << "time,eps_coarse,eps_fine,hausdorff_one_sided,hausdorff_symmetric\n";
    for (const InterfaceDistanceRow& row : result.distances)
      os << format_double(row.time) << "," << format_double(row.eps_coarse) << ","
         << format_double(row.eps_fine) << "," << format_double(row.one_sided) << ","
         << format_double(row.symmetric) << "\n";
  }
  std::cout << "interface study finished: " << result.curves.size() << " runs, "
            << result.distances.size() << " distance rows, max_mass_drift="
            << format_double(result.max_mass_drift) << "\n";
  return 0;
}

int cmd_energy(const RunConfig& config) {
  if (auto problems = config.validate(); !problems.empty()) return report_problems(problems);

  const fs::path dir = config.output_root();
  echo_config(config, dir);

  const Mesh mesh = Mesh::uniform(config.n_list.front(), Rect{});
  const MorleySpace space(mesh);
  CahnHilliardStepper stepper(space, config.scheme_params());
  const ScalarField ic = make_initial_condition(config.ic, config.eps_list.front());

  Trajectory traj;
  try {
    traj = stepper.run(ic, {});
  } catch (const NewtonError& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return 3;
  }

  std::ofstream os(dir / "energy.csv");
  os << "step,time,energy,delta\n";
  int increases = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.diagnostics.size(); ++i) {
    const StepDiagnostics& d = traj.diagnostics[i];
    const double delta = i == 0 ? 0.0 : d.energy - traj.diagnostics[i - 1].energy;
    os << d.step << "," << format_double(d.time) << "," << format_double(d.energy) << ","
       << format_double(delta) << "\n";
    if (i > 0 && delta > 0.0) {
      ++increases;
      worst = std::max(worst, delta);
      std::cout << "energy increase at step " << d.step << ": +" << format_double(delta) << "\n";
    }
  }
  std::cout << "energy trace: " << traj.diagnostics.size() - 1 << " steps, " << increases
            << " increases";
  if (increases > 0) std::cout << ", largest +" << format_double(worst);
  std::cout << "\n";
  return 0;
}

int dispatch_command(const RunConfig& config) {
  if (config.command == "run") return cmd_run(config);
  if (config.command == "converge") return cmd_converge(config);
  if (config.command == "interface") return cmd_interface(config);
  if (config.command == "energy") return cmd_energy(config);
  std::cerr << "config error: unknown command '" << config.command << "'\n";
  return 2;
}

}  // namespace chmorley
