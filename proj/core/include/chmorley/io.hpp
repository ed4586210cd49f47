#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chmorley/interface.hpp"
#include "chmorley/mesh.hpp"
#include "chmorley/morley.hpp"
#include "chmorley/norms.hpp"
#include "chmorley/stepper.hpp"

namespace chmorley {

/// DOF vector dump: a two-line header recording n and the domain, then one
/// coefficient per line (full 17-digit precision).
void write_dof_vector(const std::filesystem::path& path, const Mesh& mesh,
                      const Eigen::VectorXd& coeffs);
Eigen::VectorXd read_dof_vector(const std::filesystem::path& path, int* n_out = nullptr,
                                Rect* domain_out = nullptr);

/// Diagnostics CSV: step,time,mass,energy,newton_iters,residual.
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StepDiagnostics>& rows);

/// Convergence-table CSV: h,e_L2,order_L2,e_H1,order_H1,e_H2,order_H2.
void write_error_report_csv(const std::filesystem::path& path, const ErrorReport& report);

/// Curve CSV: polyline_id,x,y.
void write_curve_csv(const std::filesystem::path& path, const InterfaceCurve& curve);

/// Stroke-only SVG of the polylines, viewBox fixed to the domain.
void write_curve_svg(const std::filesystem::path& path, const InterfaceCurve& curve,
                     const Rect& domain);

/// Matrix dump in coordinate text format: row col value.
void write_matrix_coordinate(const std::filesystem::path& path,
                             const Eigen::SparseMatrix<double>& m);

std::string format_double(double v);  // shortest round-trip-exact decimal

}  // namespace chmorley
