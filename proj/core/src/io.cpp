#include "chmorley/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chmorley {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

void write_dof_vector(const std::filesystem::path& path, const Mesh& mesh,
                      const Eigen::VectorXd& coeffs) {
  std::ofstream os = open_out(path);
  const Rect& d = mesh.domain();
  os << "# chmorley dof v1\n";
  os << "# n " << mesh.subdivisions() << " domain " << format_double(d.xmin) << " "
     << format_double(d.ymin) << " " << format_double(d.xmax) << " " << format_double(d.ymax)
     << "\n";
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) os << format_double(coeffs[i]) << "\n";
}

Eigen::VectorXd read_dof_vector(const std::filesystem::path& path, int* n_out, Rect* domain_out) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.rfind("# chmorley dof", 0) != 0)
    throw std::runtime_error(path.string() + ": not a chmorley dof file");
  if (!std::getline(is, line)) throw std::runtime_error(path.string() + ": missing header");
  {
    std::istringstream hdr(line);
    std::string hash, key;
    int n = 0;
    Rect d;
    hdr >> hash >> key >> n >> key >> d.xmin >> d.ymin >> d.xmax >> d.ymax;
    if (!hdr) throw std::runtime_error(path.string() + ": malformed header");
    if (n_out) *n_out = n;
    if (domain_out) *domain_out = d;
  }
  std::vector<double> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    values.push_back(std::stod(line));
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StepDiagnostics>& rows) {
  std::ofstream os = open_out(path);
  os << "step,time,mass,energy,newton_iters,residual\n";
  for (const StepDiagnostics& r : rows)
    os << r.step << "," << format_double(r.time) << "," << format_double(r.mass) << ","
       << format_double(r.energy) << "," << r.newton_iters << "," << format_double(r.residual)
       << "\n";
}

void write_error_report_csv(const std::filesystem::path& path, const ErrorReport& report) {
  std::ofstream os = open_out(path);
  os << "h,e_L2,order_L2,e_H1,order_H1,e_H2,order_H2\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ErrorRow& r = report.rows[i];
    os << format_double(r.h) << "," << format_double(r.l2) << ",";
    if (i > 0) os << format_double(report.orders[i - 1].l2);
    os << "," << format_double(r.h1) << ",";
    if (i > 0) os << format_double(report.orders[i - 1].h1);
    os << "," << format_double(r.h2) << ",";
    if (i > 0) os << format_double(report.orders[i - 1].h2);
    os << "\n";
  }
}

void write_curve_csv(const std::filesystem::path& path, const InterfaceCurve& curve) {
  std::ofstream os = open_out(path);
  os << "polyline_id,x,y\n";
  for (std::size_t id = 0; id < curve.polylines.size(); ++id)
    for (const Vec2& p : curve.polylines[id])
      os << id << "," << format_double(p.x()) << "," << format_double(p.y()) << "\n";
}

void write_curve_svg(const std::filesystem::path& path, const InterfaceCurve& curve,
                     const Rect& domain) {
  std::ofstream os = open_out(path);
  const double w = domain.width();
  const double h = domain.height();
  // flip y so the svg matches mathematical orientation
  auto sy = [&](double y) { return domain.ymin + domain.ymax - y; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << domain.xmin << " "
     << domain.ymin << " " << w << " " << h << "\">\n";
  os << "  <rect x=\"" << domain.xmin << "\" y=\"" << domain.ymin << "\" width=\"" << w
     << "\" height=\"" << h << "\" fill=\"none\" stroke=\"#888\" stroke-width=\""
     << 0.002 * std::max(w, h) << "\"/>\n";
  for (const auto& line : curve.polylines) {
    if (line.size() < 2) continue;
    os << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << 0.004 * std::max(w, h)
       << "\" d=\"M " << line[0].x() << " " << sy(line[0].y());
    for (std::size_t i = 1; i < line.size(); ++i)
      os << " L " << line[i].x() << " " << sy(line[i].y());
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

void write_matrix_coordinate(const std::filesystem::path& path,
                             const Eigen::SparseMatrix<double>& m) {
  std::ofstream os = open_out(path);
  for (int col = 0; col < m.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it)
      os << it.row() << " " << it.col() << " " << format_double(it.value()) << "\n";
}

}  // namespace chmorley
