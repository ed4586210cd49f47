#include "chmorley/assembly.hpp"

#include <vector>

#include "chmorley/fields.hpp"

namespace chmorley {

namespace {

using Triplet = Eigen::Triplet<double>;

// sequential fixed-order accumulation keeps assembly deterministic
template <typename LocalFn>
SparseMat assemble_matrix(const MorleySpace& space, LocalFn&& local) {
  const int n = space.dof_count();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(space.mesh().element_count()) * 36);
  for (int e = 0; e < space.mesh().element_count(); ++e) {
    const Mat6 m = local(e);
    const auto dofs = space.element_dofs(e);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) triplets.emplace_back(dofs[i], dofs[j], m(i, j));
  }
  SparseMat out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace

Mat6 local_mass(const ElementBasis& basis, const TriQuadrature& rule) {
  Mat6 m = Mat6::Zero();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Vec2 p = barycentric_point(basis.vertices, rule.points[q]);
    Vec6 phi;
    for (int j = 0; j < 6; ++j) phi[j] = basis.shape_value(j, p);
    m += (rule.weights[q] * basis.area) * (phi * phi.transpose());
  }
  return m;
}

Mat6 local_stiffness(const ElementBasis& basis, const TriQuadrature& rule) {
  std::array<Eigen::Matrix2d, 6> hess;
  for (int j = 0; j < 6; ++j) hess[j] = basis.shape_hessian(j);
  Mat6 m = Mat6::Zero();
  double wsum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) wsum += rule.weights[q];
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const Eigen::Matrix2d& a = hess[i];
      const Eigen::Matrix2d& b = hess[j];
      const double lap = (a(0, 0) + a(1, 1)) * (b(0, 0) + b(1, 1));
      const double cross =
          a(0, 1) * b(0, 1) - 0.5 * a(0, 0) * b(1, 1) - 0.5 * a(1, 1) * b(0, 0);
      m(i, j) = basis.area * wsum * (lap + cross);
    }
  }
  return m;
}

Mat6 local_weighted_gradient(const ElementBasis& basis,
                             const std::function<double(const Vec2&)>& weight,
                             const TriQuadrature& rule) {
  Mat6 m = Mat6::Zero();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Vec2 p = barycentric_point(basis.vertices, rule.points[q]);
    Eigen::Matrix<double, 2, 6> grad;
    for (int j = 0; j < 6; ++j) grad.col(j) = basis.shape_gradient(j, p);
    m += (rule.weights[q] * basis.area * weight(p)) * (grad.transpose() * grad);
  }
  return m;
}

SparseMat assemble_mass(const MorleySpace& space) {
  const TriQuadrature& rule = TriQuadrature::for_degree(4);
  return assemble_matrix(space, [&](int e) { return local_mass(space.basis(e), rule); });
}

SparseMat assemble_stiffness(const MorleySpace& space) {
  const TriQuadrature& rule = TriQuadrature::for_degree(1);
  return assemble_matrix(space, [&](int e) { return local_stiffness(space.basis(e), rule); });
}

SparseMat assemble_weighted_gradient(const MorleySpace& space,
                                     const std::function<double(const Vec2&)>& weight,
                                     int quad_degree) {
  const TriQuadrature& rule = TriQuadrature::for_degree(quad_degree);
  return assemble_matrix(
      space, [&](int e) { return local_weighted_gradient(space.basis(e), weight, rule); });
}

namespace {

// f'(u) grad u . grad phi_i and its u-derivative, both exact at degree 6
void local_nonlinear(const ElementBasis& basis, const Vec6& dofs, const TriQuadrature& rule,
                     Vec6& residual, Mat6* jacobian) {
  residual.setZero();
  if (jacobian) jacobian->setZero();
  const Eigen::Matrix<double, 6, 1> poly = basis.polynomial(dofs);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Vec2 p = barycentric_point(basis.vertices, rule.points[q]);
    const Vec2 X = (p - basis.center) / basis.scale;
    const double u = ElementBasis::poly_value(poly, X);
    const Vec2 grad_u =
        Vec2(poly[1] + 2.0 * poly[3] * X.x() + poly[4] * X.y(),
             poly[2] + poly[4] * X.x() + 2.0 * poly[5] * X.y()) /
        basis.scale;
    Eigen::Matrix<double, 2, 6> grad;
    Vec6 phi;
    for (int j = 0; j < 6; ++j) {
      grad.col(j) = basis.shape_gradient(j, p);
      phi[j] = basis.shape_value(j, p);
    }
    const double w = rule.weights[q] * basis.area;
    const double fp = double_well_d2(u);
    residual += (w * fp) * (grad.transpose() * grad_u);
    if (jacobian) {
      const double fpp = double_well_d3(u);
      // (f''(u) phi_j grad u + f'(u) grad phi_j) . grad phi_i
      *jacobian += w * (grad.transpose() *
                        (fpp * grad_u * phi.transpose() + fp * grad));
    }
  }
}

}  // namespace

NonlinearTerm assemble_nonlinear_term(const MorleySpace& space, const Eigen::VectorXd& u) {
  const TriQuadrature& rule = TriQuadrature::for_degree(6);
  const int n = space.dof_count();
  NonlinearTerm out;
  out.residual = Eigen::VectorXd::Zero(n);
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(space.mesh().element_count()) * 36);
  Vec6 res;
  Mat6 jac;
  for (int e = 0; e < space.mesh().element_count(); ++e) {
    local_nonlinear(space.basis(e), space.gather(u, e), rule, res, &jac);
    const auto dofs = space.element_dofs(e);
    for (int i = 0; i < 6; ++i) {
      out.residual[dofs[i]] += res[i];
      for (int j = 0; j < 6; ++j) triplets.emplace_back(dofs[i], dofs[j], jac(i, j));
    }
  }
  out.jacobian.resize(n, n);
  out.jacobian.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Eigen::VectorXd assemble_nonlinear_residual(const MorleySpace& space, const Eigen::VectorXd& u) {
  const TriQuadrature& rule = TriQuadrature::for_degree(6);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
  Vec6 res;
  for (int e = 0; e < space.mesh().element_count(); ++e) {
    local_nonlinear(space.basis(e), space.gather(u, e), rule, res, nullptr);
    const auto dofs = space.element_dofs(e);
    for (int i = 0; i < 6; ++i) out[dofs[i]] += res[i];
  }
  return out;
}

SparseMat assemble_shifted_form(const MorleySpace& space,
                                const std::function<double(const Vec2&)>& w, double eps,
                                double alpha0) {
  const SparseMat stiffness = assemble_stiffness(space);
  const SparseMat weighted = assemble_weighted_gradient(
      space, [&](const Vec2& p) { return double_well_d2(w(p)); });
  const SparseMat mass = assemble_mass(space);
  const double alpha = alpha0 / (eps * eps * eps);
  return SparseMat(eps * stiffness + (1.0 / eps) * weighted + alpha * mass);
}

Eigen::VectorXd assemble_load(const MorleySpace& space,
                              const std::function<double(const Vec2&)>& g) {
  const TriQuadrature& rule = TriQuadrature::for_degree(10);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
  for (int e = 0; e < space.mesh().element_count(); ++e) {
    const ElementBasis& basis = space.basis(e);
    const auto dofs = space.element_dofs(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 p = barycentric_point(basis.vertices, rule.points[q]);
      const double w = rule.weights[q] * basis.area * g(p);
      for (int i = 0; i < 6; ++i) out[dofs[i]] += w * basis.shape_value(i, p);
    }
  }
  return out;
}

}  // namespace chmorley
