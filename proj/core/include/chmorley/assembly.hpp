#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "chmorley/morley.hpp"
#include "chmorley/quadrature.hpp"

namespace chmorley {

using SparseMat = Eigen::SparseMatrix<double>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Local element matrices, integrated with the given rule. The stiffness
/// integrand is Laplacian*Laplacian plus the Poisson-ratio-1/2 cross terms
/// u_xy v_xy - (u_xx v_yy + u_yy v_xx)/2; it is constant per element, so any
/// rule is exact for it.
Mat6 local_mass(const ElementBasis& basis, const TriQuadrature& rule);
Mat6 local_stiffness(const ElementBasis& basis, const TriQuadrature& rule);
Mat6 local_weighted_gradient(const ElementBasis& basis,
                             const std::function<double(const Vec2&)>& weight,
                             const TriQuadrature& rule);

/// Global mass matrix (degree-4 rule, exact). Symmetric positive definite.
SparseMat assemble_mass(const MorleySpace& space);

/// Global broken plate-bending stiffness with Poisson ratio 1/2. Symmetric
/// positive semidefinite; the unconstrained kernel is the global linears.
SparseMat assemble_stiffness(const MorleySpace& space);

/// sum_K int w(x) grad u . grad v over broken gradients.
SparseMat assemble_weighted_gradient(const MorleySpace& space,
                                     const std::function<double(const Vec2&)>& weight,
                                     int quad_degree = 6);

struct NonlinearTerm {
  Eigen::VectorXd residual;  // N(u)_i = sum_K int f'(u) grad u . grad phi_i
  SparseMat jacobian;        // dN/du, full Newton linearization
};

/// Residual and Jacobian of the chemical-flux term with f(u) = u^3 - u,
/// integrated exactly (degree-6 rule on quadratics).
NonlinearTerm assemble_nonlinear_term(const MorleySpace& space, const Eigen::VectorXd& u);
Eigen::VectorXd assemble_nonlinear_residual(const MorleySpace& space, const Eigen::VectorXd& u);

/// Shifted elliptic form eps*A + (1/eps)*K_w + alpha0*eps^-3*M, where K_w is
/// the broken-gradient matrix weighted by f'(w(x)). Symmetric.
SparseMat assemble_shifted_form(const MorleySpace& space,
                                const std::function<double(const Vec2&)>& w, double eps,
                                double alpha0);

/// Load vector (g, phi_i) for a callable g (degree-10 rule).
Eigen::VectorXd assemble_load(const MorleySpace& space,
                              const std::function<double(const Vec2&)>& g);

}  // namespace chmorley
