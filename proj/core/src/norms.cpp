#include "chmorley/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "chmorley/quadrature.hpp"

namespace chmorley {

namespace {

double hessian_sq(const Eigen::Matrix2d& h) {
  return h(0, 0) * h(0, 0) + 2.0 * h(0, 1) * h(0, 1) + h(1, 1) * h(1, 1);
}

void check_order(int order) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("broken norm: derivative order must be 0, 1 or 2");
}

// 4x4 interior barycentric lattice plus vertices, edge midpoints, centroid
std::vector<std::array<double, 3>> linf_sample_lattice() {
  std::vector<std::array<double, 3>> pts = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
      {0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5},
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
  };
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const double a = i / 6.0, b = j / 6.0;
      if (a + b < 1.0) pts.push_back({1.0 - a - b, a, b});
    }
  return pts;
}

}  // namespace

double broken_norm(const MorleyFunction& u, int order) {
  check_order(order);
  const MorleySpace& space = *u.space;
  const Mesh& mesh = space.mesh();
  const TriQuadrature& rule = TriQuadrature::for_degree(4);
  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto tri = mesh.element_vertices(e);
    const double area = mesh.element_area(e);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto ev = space.evaluate(u.coeffs, e, barycentric_point(tri, rule.points[q]));
      double s = 0.0;
      if (order == 0)
        s = ev.value * ev.value;
      else if (order == 1)
        s = ev.gradient.squaredNorm();
      else
        s = hessian_sq(ev.hessian);
      local += rule.weights[q] * s;
    }
    total += area * local;
  }
  return std::sqrt(total);
}

double energy(const MorleyFunction& u, double eps) {
  const MorleySpace& space = *u.space;
  const Mesh& mesh = space.mesh();
  const TriQuadrature& rule = TriQuadrature::for_degree(10);
  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto tri = mesh.element_vertices(e);
    const double area = mesh.element_area(e);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto ev = space.evaluate(u.coeffs, e, barycentric_point(tri, rule.points[q]));
      local += rule.weights[q] *
               (0.5 * eps * ev.gradient.squaredNorm() + double_well(ev.value) / eps);
    }
    total += area * local;
  }
  return total;
}

double error_vs_function(const MorleyFunction& u, const ScalarField& v, int order) {
  check_order(order);
  if (order >= 1 && !v.gradient)
    throw std::invalid_argument("error_vs_function: field gradient required");
  if (order == 2 && !v.hessian)
    throw std::invalid_argument("error_vs_function: field hessian required");
  const MorleySpace& space = *u.space;
  const Mesh& mesh = space.mesh();
  const TriQuadrature& rule = TriQuadrature::for_degree(10);
  double total = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto tri = mesh.element_vertices(e);
    const double area = mesh.element_area(e);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 p = barycentric_point(tri, rule.points[q]);
      const auto ev = space.evaluate(u.coeffs, e, p);
      double s = 0.0;
      if (order == 0) {
        const double d = ev.value - v.value(p);
        s = d * d;
      } else if (order == 1) {
        s = (ev.gradient - v.gradient(p)).squaredNorm();
      } else {
        s = hessian_sq(ev.hessian - v.hessian(p));
      }
      local += rule.weights[q] * s;
    }
    total += area * local;
  }
  return std::sqrt(total);
}

namespace {

// coarse element containing each reference element (nested meshes)
std::vector<int> containment_map(const Mesh& coarse, const Mesh& fine) {
  if (fine.subdivisions() % coarse.subdivisions() != 0)
    throw std::invalid_argument("error_vs_reference: meshes are not nested");
  const int ratio = fine.subdivisions() / coarse.subdivisions();
  if (ratio < 1 || (ratio & (ratio - 1)) != 0)
    throw std::invalid_argument("error_vs_reference: refinement ratio must be a power of two");
  std::vector<int> map(fine.element_count());
  for (int e = 0; e < fine.element_count(); ++e)
    map[e] = coarse.locate(fine.element_centroid(e)).element;
  return map;
}

}  // namespace

double error_vs_reference(const MorleyFunction& u, const MorleyFunction& reference, int order) {
  check_order(order);
  const Mesh& coarse_mesh = u.space->mesh();
  const Mesh& fine_mesh = reference.space->mesh();
  if (&coarse_mesh == &fine_mesh || coarse_mesh.subdivisions() == fine_mesh.subdivisions()) {
    // same mesh: plain broken norm of the coefficient difference
    MorleyFunction diff(*u.space, u.coeffs - reference.coeffs);
    return broken_norm(diff, order);
  }
  const bool u_is_fine = fine_mesh.subdivisions() < coarse_mesh.subdivisions();
  const MorleyFunction& lo = u_is_fine ? reference : u;
  const MorleyFunction& hi = u_is_fine ? u : reference;
  const Mesh& lo_mesh = lo.space->mesh();
  const Mesh& hi_mesh = hi.space->mesh();

  const std::vector<int> owner = containment_map(lo_mesh, hi_mesh);
  const TriQuadrature& rule = TriQuadrature::for_degree(4);
  double total = 0.0;
  for (int e = 0; e < hi_mesh.element_count(); ++e) {
    const auto tri = hi_mesh.element_vertices(e);
    const double area = hi_mesh.element_area(e);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 p = barycentric_point(tri, rule.points[q]);
      const auto fine_ev = hi.space->evaluate(hi.coeffs, e, p);
      const auto coarse_ev = lo.space->evaluate(lo.coeffs, owner[e], p);
      double s = 0.0;
      if (order == 0) {
        const double d = fine_ev.value - coarse_ev.value;
        s = d * d;
      } else if (order == 1) {
        s = (fine_ev.gradient - coarse_ev.gradient).squaredNorm();
      } else {
        s = hessian_sq(fine_ev.hessian - coarse_ev.hessian);
      }
      local += rule.weights[q] * s;
    }
    total += area * local;
  }
  return std::sqrt(total);
}

double linf_error_vs_function(const MorleyFunction& u, const ScalarField& v) {
  const MorleySpace& space = *u.space;
  const Mesh& mesh = space.mesh();
  static const auto lattice = linf_sample_lattice();
  double worst = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto tri = mesh.element_vertices(e);
    for (const auto& lambda : lattice) {
      const Vec2 p = barycentric_point(tri, lambda);
      worst = std::max(worst, std::fabs(space.value(u.coeffs, e, p) - v.value(p)));
    }
  }
  return worst;
}

double linf_error_vs_reference(const MorleyFunction& u, const MorleyFunction& reference) {
  const Mesh& coarse_mesh = u.space->mesh();
  const Mesh& fine_mesh = reference.space->mesh();
  if (&coarse_mesh == &fine_mesh || coarse_mesh.subdivisions() == fine_mesh.subdivisions()) {
    MorleyFunction diff(*u.space, u.coeffs - reference.coeffs);
    return linf_error_vs_function(diff, constant_field(0.0));
  }
  const std::vector<int> owner = containment_map(coarse_mesh, fine_mesh);
  static const auto lattice = linf_sample_lattice();
  double worst = 0.0;
  for (int e = 0; e < fine_mesh.element_count(); ++e) {
    const auto tri = fine_mesh.element_vertices(e);
    for (const auto& lambda : lattice) {
      const Vec2 p = barycentric_point(tri, lambda);
      const double a = reference.space->value(reference.coeffs, e, p);
      const double b = u.space->value(u.coeffs, owner[e], p);
      worst = std::max(worst, std::fabs(a - b));
    }
  }
  return worst;
}

void ErrorReport::compute_orders() {
  orders.clear();
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = std::log(rows[i].h / rows[i + 1].h);
    ErrorRow o;
    o.l2 = std::log(rows[i].l2 / rows[i + 1].l2) / ratio;
    o.h1 = std::log(rows[i].h1 / rows[i + 1].h1) / ratio;
    o.h2 = std::log(rows[i].h2 / rows[i + 1].h2) / ratio;
    o.linf = std::log(rows[i].linf / rows[i + 1].linf) / ratio;
    orders.push_back(o);
  }
}

}  // namespace chmorley
