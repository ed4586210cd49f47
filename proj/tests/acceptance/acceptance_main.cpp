// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Heavy studies are selectable with --criteria so they can
// run in parallel under ctest.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chmorley/assembly.hpp"
#include "chmorley/harness.hpp"
#include "chmorley/interface.hpp"
#include "chmorley/norms.hpp"
#include "chmorley/stepper.hpp"

using namespace chmorley;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

ScalarField sin_cos_field() {
  const double pi = M_PI;
  ScalarField v;
  v.value = [pi](const Vec2& p) { return std::sin(pi * p.x()) * std::cos(pi * p.y()); };
  v.gradient = [pi](const Vec2& p) {
    return Vec2(pi * std::cos(pi * p.x()) * std::cos(pi * p.y()),
                -pi * std::sin(pi * p.x()) * std::sin(pi * p.y()));
  };
  v.hessian = [pi](const Vec2& p) {
    Eigen::Matrix2d h;
    const double s = std::sin(pi * p.x()), c = std::cos(pi * p.x());
    const double sy = std::sin(pi * p.y()), cy = std::cos(pi * p.y());
    h << -pi * pi * s * cy, -pi * pi * c * sy, -pi * pi * c * sy, -pi * pi * s * cy;
    return h;
  };
  return v;
}

std::array<Vec2, 3> random_triangle(std::mt19937& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (;;) {
    std::array<Vec2, 3> tri = {Vec2(coord(rng), coord(rng)), Vec2(coord(rng), coord(rng)),
                               Vec2(coord(rng), coord(rng))};
    double area = 0.5 * ((tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() -
                         (tri[1] - tri[0]).y() * (tri[2] - tri[0]).x());
    if (area < 0.0) {
      std::swap(tri[1], tri[2]);
      area = -area;
    }
    const double diam = std::max({(tri[1] - tri[0]).norm(), (tri[2] - tri[1]).norm(),
                                  (tri[0] - tri[2]).norm()});
    if (area > 0.05 * diam * diam) return tri;
  }
}

// ---------------------------------------------------------------------------
// criteria 1 + 2a: spatial convergence orders and mass conservation of the
// convergence runs. Test 2, eps = 0.08, k = 1e-5, levels {10,20,40}, n_ref 80,
// errors at T = 0.0002 and T = 0.001 against the nested reference.
// ---------------------------------------------------------------------------
void run_convergence(bool want1, bool want2) {
  ConvergenceStudyConfig config;
  config.levels = {10, 20, 40};
  config.ref_multiplier = 2;
  config.scheme.eps = 0.08;
  config.scheme.dt = 1e-5;
  config.scheme.t_end = 1e-3;
  config.ic = "twocircle";
  config.eval_times = {2e-4, 1e-3};

  const auto t0 = std::chrono::steady_clock::now();
  const ConvergenceStudyResult result = convergence_study(config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (want1) {
    bool pass = true;
    std::ostringstream detail;
    detail.precision(4);
    detail << std::fixed;
    const char* labels[2] = {"T=0.0002", "T=0.001"};
    for (int t = 0; t < 2; ++t) {
      const ErrorRow& order = result.per_time[t].orders.back();  // n=20 -> 40 pair
      const bool ok_l2 = order.l2 >= 1.6 && order.l2 <= 2.2;
      const bool ok_h1 = order.h1 >= 1.6 && order.h1 <= 2.2;
      const bool ok_h2 = order.h2 >= 0.75 && order.h2 <= 1.15;
      pass = pass && ok_l2 && ok_h1 && ok_h2;
      detail << labels[t] << ": L2 " << order.l2 << " H1 " << order.h1 << " H2 " << order.h2
             << (t == 0 ? "; " : "");
    }
    detail << " (" << int(wall) << " s)";
    report(1, pass,
           "convergence orders, final pair, L2/H1 in [1.6,2.2], H2 in [0.75,1.15] -- " +
               detail.str());
  }
  if (want2)
    report(2, result.max_mass_drift <= 1e-10,
           fmt("mass conservation over convergence runs: max drift %.3e <= 1e-10",
               result.max_mass_drift));
}

// ---------------------------------------------------------------------------
// criteria 3 + 2b: interface convergence. Test 1 at t = 0.005 with
// eps in {0.08, 0.04, 0.02}, n = 100, k = 1e-4: consecutive one-sided
// Hausdorff distances strictly decreasing.
// ---------------------------------------------------------------------------
void run_interface(bool want2, bool want3) {
  InterfaceStudyConfig config;
  config.runs = {{0.08, 100, 1e-4}, {0.04, 100, 1e-4}, {0.02, 100, 1e-4}};
  config.snapshot_times = {0.005};
  config.ic = "ellipse";
  config.contour_subdivision = 4;

  const auto t0 = std::chrono::steady_clock::now();
  const InterfaceStudyResult result = interface_study(config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (want3) {
    const double d1 = result.distances[0].one_sided;  // 0.08 vs 0.04
    const double d2 = result.distances[1].one_sided;  // 0.04 vs 0.02
    report(3, d1 > d2,
           fmt("interface distances strictly decreasing: d(0.08,0.04)=%.5f > d(0.04,0.02)=%.5f"
               " (%d s)",
               d1, d2, int(wall)));
  }
  if (want2)
    report(2, result.max_mass_drift <= 1e-10,
           fmt("mass conservation over interface runs: max drift %.3e <= 1e-10",
               result.max_mass_drift));
}

// ---------------------------------------------------------------------------
// criterion 4: energy monotonicity. Test 2, eps = 0.08, n = 40, k = 1e-5,
// T = 0.001: J_eps nonincreasing at every step (tolerance +1e-12 per step).
// ---------------------------------------------------------------------------
void run_energy() {
  SchemeParams params;
  params.eps = 0.08;
  params.dt = 1e-5;
  params.t_end = 1e-3;
  const Mesh mesh = Mesh::uniform(40);
  const MorleySpace space(mesh);
  CahnHilliardStepper stepper(space, params);
  const Trajectory traj = stepper.run(two_circle_initial_condition(params.eps));

  int increases = 0;
  double worst = 0.0;
  for (std::size_t i = 1; i < traj.diagnostics.size(); ++i) {
    const double delta = traj.diagnostics[i].energy - traj.diagnostics[i - 1].energy;
    if (delta > 1e-12) {
      ++increases;
      worst = std::max(worst, delta);
    }
  }
  report(4, increases == 0,
         increases == 0
             ? fmt("energy nonincreasing over %zu steps (J: %.4f -> %.4f)",
                   traj.diagnostics.size() - 1, traj.diagnostics.front().energy,
                   traj.diagnostics.back().energy)
             : fmt("%d energy increases, worst +%.3e", increases, worst));
}

// ---------------------------------------------------------------------------
// criterion 5: local element matrices against an independent degree-10
// quadrature oracle, 100 random triangles, 1e-12 relative.
// ---------------------------------------------------------------------------
void run_element_oracles() {
  std::mt19937 rng(20240819);
  const TriQuadrature& oracle_rule = TriQuadrature::for_degree(10);
  auto weight = [](const Vec2& p) { return 1.2 + 0.4 * p.x() - 0.3 * p.x() * p.y(); };

  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto tri = random_triangle(rng);
    const ElementBasis basis = build_element_basis(tri, outward_normals(tri));

    Mat6 mass_oracle = Mat6::Zero();
    Mat6 grad_oracle = Mat6::Zero();
    Mat6 stiff_oracle = Mat6::Zero();
    for (std::size_t q = 0; q < oracle_rule.size(); ++q) {
      const Vec2 p = barycentric_point(tri, oracle_rule.points[q]);
      Vec6 phi;
      Eigen::Matrix<double, 2, 6> g;
      for (int j = 0; j < 6; ++j) {
        phi[j] = basis.shape_value(j, p);
        g.col(j) = basis.shape_gradient(j, p);
      }
      const double w = oracle_rule.weights[q] * basis.area;
      mass_oracle += w * (phi * phi.transpose());
      grad_oracle += (w * weight(p)) * (g.transpose() * g);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          const Eigen::Matrix2d a = basis.shape_hessian(i);
          const Eigen::Matrix2d b = basis.shape_hessian(j);
          stiff_oracle(i, j) += w * ((a(0, 0) + a(1, 1)) * (b(0, 0) + b(1, 1)) +
                                     a(0, 1) * b(0, 1) - 0.5 * a(0, 0) * b(1, 1) -
                                     0.5 * a(1, 1) * b(0, 0));
        }
    }

    const Mat6 mass = local_mass(basis, TriQuadrature::for_degree(4));
    const Mat6 stiff = local_stiffness(basis, TriQuadrature::for_degree(1));
    const Mat6 grad = local_weighted_gradient(basis, weight, TriQuadrature::for_degree(6));
    worst = std::max(worst, (mass - mass_oracle).lpNorm<Eigen::Infinity>() /
                                mass_oracle.lpNorm<Eigen::Infinity>());
    worst = std::max(worst, (stiff - stiff_oracle).lpNorm<Eigen::Infinity>() /
                                stiff_oracle.lpNorm<Eigen::Infinity>());
    worst = std::max(worst, (grad - grad_oracle).lpNorm<Eigen::Infinity>() /
                                grad_oracle.lpNorm<Eigen::Infinity>());
  }
  report(5, worst <= 1e-12,
         fmt("local mass/stiffness/weighted-gradient vs degree-10 oracle on 100 random "
             "triangles: worst rel %.3e <= 1e-12",
             worst));
}

// ---------------------------------------------------------------------------
// criterion 6: on n=2 unconstrained Morley space, exactly 3 eigenvalues of A
// below 1e-10*||A|| and the 4th strictly positive.
// ---------------------------------------------------------------------------
void run_stiffness_kernel() {
  const Mesh mesh = Mesh::uniform(2);
  const MorleySpace space(mesh);
  const Eigen::MatrixXd a = Eigen::MatrixXd(assemble_stiffness(space));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  const double threshold = 1e-10 * a.lpNorm<Eigen::Infinity>();
  int tiny = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (std::fabs(eig.eigenvalues()[i]) < threshold) ++tiny;
  const double fourth = eig.eigenvalues()[3];
  report(6, tiny == 3 && fourth > threshold,
         fmt("stiffness kernel = global linears: %d eigenvalues below 1e-10*||A||, "
             "4th = %.3e",
             tiny, fourth));
}

// ---------------------------------------------------------------------------
// criterion 7: assembled Jacobian vs central finite differences, n=2 random
// fields, 1e-6 infinity-norm.
// ---------------------------------------------------------------------------
void run_jacobian_check() {
  const Mesh mesh = Mesh::uniform(2);
  const MorleySpace space(mesh);
  std::mt19937 rng(107);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd u(space.dof_count());
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = coef(rng);
    const NonlinearTerm term = assemble_nonlinear_term(space, u);
    const double step = 1e-6;
    for (int j = 0; j < space.dof_count(); ++j) {
      Eigen::VectorXd up = u, dn = u;
      up[j] += step;
      dn[j] -= step;
      const Eigen::VectorXd col = (assemble_nonlinear_residual(space, up) -
                                   assemble_nonlinear_residual(space, dn)) /
                                  (2.0 * step);
      worst = std::max(worst,
                       (Eigen::VectorXd(term.jacobian.col(j)) - col).lpNorm<Eigen::Infinity>());
    }
  }
  report(7, worst <= 1e-6,
         fmt("Newton Jacobian vs central differences: worst component %.3e <= 1e-6", worst));
}

// ---------------------------------------------------------------------------
// criterion 8: exact reproduction of 20 random quadratics at 100 random
// points (value, gradient, Hessian), 1e-12.
// ---------------------------------------------------------------------------
void run_quadratic_reproduction() {
  const Mesh mesh = Mesh::uniform(5);
  const MorleySpace space(mesh);
  std::mt19937 rng(109);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, 6> c;
    for (double& v : c) v = coef(rng);
    ScalarField f;
    f.value = [c](const Vec2& p) {
      return c[0] + c[1] * p.x() + c[2] * p.y() + c[3] * p.x() * p.x() +
             c[4] * p.x() * p.y() + c[5] * p.y() * p.y();
    };
    f.gradient = [c](const Vec2& p) {
      return Vec2(c[1] + 2 * c[3] * p.x() + c[4] * p.y(),
                  c[2] + c[4] * p.x() + 2 * c[5] * p.y());
    };
    const MorleyFunction u = interpolate(space, f);
    for (int pt = 0; pt < 100; ++pt) {
      const Vec2 p(coord(rng), coord(rng));
      const auto ev = u.evaluate(p);
      worst = std::max(worst, std::fabs(ev.value - f.value(p)));
      worst = std::max(worst, (ev.gradient - f.gradient(p)).lpNorm<Eigen::Infinity>());
      Eigen::Matrix2d h;
      h << 2 * c[3], c[4], c[4], 2 * c[5];
      worst = std::max(worst, (ev.hessian - h).lpNorm<Eigen::Infinity>());
    }
  }
  report(8, worst <= 1e-12,
         fmt("20 random quadratics reproduced at 100 points: worst deviation %.3e <= 1e-12",
             worst));
}

// ---------------------------------------------------------------------------
// criterion 9: interpolation orders 3-j (+-0.2) for sin(pi x) cos(pi y),
// n in {8, 16, 32}.
// ---------------------------------------------------------------------------
void run_interpolation_orders() {
  const ScalarField v = sin_cos_field();
  std::vector<std::array<double, 3>> errs;
  for (int n : {8, 16, 32}) {
    const Mesh mesh = Mesh::uniform(n);
    const MorleySpace space(mesh);
    const MorleyFunction u = interpolate(space, v);
    errs.push_back({error_vs_function(u, v, 0), error_vs_function(u, v, 1),
                    error_vs_function(u, v, 2)});
  }
  bool pass = true;
  std::ostringstream detail;
  detail.precision(3);
  detail << std::fixed;
  for (int j = 0; j < 3; ++j) {
    for (std::size_t lvl = 0; lvl + 1 < errs.size(); ++lvl) {
      const double order = std::log2(errs[lvl][j] / errs[lvl + 1][j]);
      pass = pass && std::fabs(order - (3.0 - j)) <= 0.2;
      detail << "j=" << j << ":" << order << " ";
    }
  }
  report(9, pass, "interpolation orders (3-j) +- 0.2 -- observed " + detail.str());
}

// ---------------------------------------------------------------------------
// criterion 10: constant states preserved by the step to 1e-10 for
// c in {-1, 0, 0.3, 1}.
// ---------------------------------------------------------------------------
void run_steady_states() {
  const Mesh mesh = Mesh::uniform(4);
  const MorleySpace space(mesh);
  double worst = 0.0;
  for (double c : {-1.0, 0.0, 0.3, 1.0}) {
    SchemeParams params;
    params.eps = 0.08;
    params.dt = 1e-5;
    params.t_end = 1e-4;
    CahnHilliardStepper stepper(space, params);
    SimulationState state = stepper.initialize(constant_field(c));
    const Eigen::VectorXd before = state.coeffs;
    stepper.advance(state);
    worst = std::max(worst, (state.coeffs - before).lpNorm<Eigen::Infinity>());
  }
  report(10, worst <= 1e-10,
         fmt("constants -1, 0, 0.3, 1 preserved by one step: worst change %.3e <= 1e-10",
             worst));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criteria") == 0 && i + 1 < argc) {
      wanted.clear();
      std::stringstream list(argv[++i]);
      std::string item;
      while (std::getline(list, item, ',')) wanted.insert(std::stoi(item));
    }
  }

  if (wanted.count(5)) run_element_oracles();
  if (wanted.count(6)) run_stiffness_kernel();
  if (wanted.count(7)) run_jacobian_check();
  if (wanted.count(8)) run_quadratic_reproduction();
  if (wanted.count(9)) run_interpolation_orders();
  if (wanted.count(10)) run_steady_states();
  if (wanted.count(4)) run_energy();
  if (wanted.count(1) || (wanted.count(2) && !wanted.count(3)))
    run_convergence(wanted.count(1) > 0, wanted.count(2) > 0);
  if (wanted.count(3)) run_interface(wanted.count(2) > 0, true);

  return g_failures;
}
