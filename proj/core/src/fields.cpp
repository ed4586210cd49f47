#include "chmorley/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "chmorley/expression.hpp"

namespace chmorley {

ScalarField constant_field(double c) {
  ScalarField f;
  f.value = [c](const Vec2&) { return c; };
  f.gradient = [](const Vec2&) { return Vec2(0.0, 0.0); };
  f.hessian = [](const Vec2&) { return Eigen::Matrix2d::Zero().eval(); };
  f.laplacian = [](const Vec2&) { return 0.0; };
  f.bilaplacian = [](const Vec2&) { return 0.0; };
  return f;
}

namespace {

// Nearest ellipse parameter for a first-quadrant point: stationarity of the
// squared distance to (a cos t, b sin t) on [0, pi/2].
double nearest_ellipse_parameter(double a, double b, double px, double py) {
  auto g = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return -(a * a - b * b) * s * c + a * px * s - b * py * c;
  };
  double lo = 1e-15, hi = M_PI / 2.0;
  double glo = g(lo);
  if (glo > 0.0) return 0.0;  // minimum pinned at t = 0
  if (g(hi) < 0.0) return hi;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  // Newton polish
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double c = std::cos(t), s = std::sin(t);
    const double gv = -(a * a - b * b) * s * c + a * px * s - b * py * c;
    const double gp = -(a * a - b * b) * (c * c - s * s) + a * px * c + b * py * s;
    if (gp == 0.0) break;
    const double step = gv / gp;
    t -= step;
    t = std::clamp(t, 0.0, M_PI / 2.0);
    if (std::fabs(step) < 1e-15) break;
  }
  if (std::fabs(g(t)) > 1e-12) t = 0.5 * (lo + hi);
  return t;
}

}  // namespace

double ellipse_signed_distance(double a, double b, const Vec2& p) {
  const double px = std::fabs(p.x());
  const double py = std::fabs(p.y());
  const double t = nearest_ellipse_parameter(a, b, px, py);
  const Vec2 q(a * std::cos(t), b * std::sin(t));
  const double d = (Vec2(px, py) - q).norm();
  const double level = (p.x() / a) * (p.x() / a) + (p.y() / b) * (p.y() / b);
  return level >= 1.0 ? d : -d;
}

namespace {

Vec2 ellipse_distance_gradient(double a, double b, const Vec2& p) {
  const double sx = p.x() < 0.0 ? -1.0 : 1.0;
  const double sy = p.y() < 0.0 ? -1.0 : 1.0;
  const double px = std::fabs(p.x());
  const double py = std::fabs(p.y());
  const double t = nearest_ellipse_parameter(a, b, px, py);
  const Vec2 q(a * std::cos(t), b * std::sin(t));
  const Vec2 diff = Vec2(px, py) - q;
  const double d = diff.norm();
  if (d < 1e-14) {
    // on the curve: gradient is the outward unit normal
    const Vec2 nrm(px / (a * a), py / (b * b));
    const Vec2 unit = nrm.normalized();
    return Vec2(sx * unit.x(), sy * unit.y());
  }
  const double level = (px / a) * (px / a) + (py / b) * (py / b);
  const double sign = level >= 1.0 ? 1.0 : -1.0;
  const Vec2 grad = sign * diff / d;
  return Vec2(sx * grad.x(), sy * grad.y());
}

}  // namespace

ScalarField ellipse_initial_condition(double eps) {
  const double a = 0.6, b = 0.2;
  const double scale = 1.0 / std::sqrt(2.0 * eps);
  ScalarField f;
  f.value = [=](const Vec2& p) {
    return std::tanh(scale * ellipse_signed_distance(a, b, p));
  };
  f.gradient = [=](const Vec2& p) {
    const double t = std::tanh(scale * ellipse_signed_distance(a, b, p));
    return Vec2(scale * (1.0 - t * t) * ellipse_distance_gradient(a, b, p));
  };
  return f;
}

ScalarField two_circle_initial_condition(double eps) {
  // tanh(r1/eps) * tanh(r2/eps) with r1, r2 the circle level functions
  auto r1 = [](const Vec2& p) {
    return (p.x() - 0.3) * (p.x() - 0.3) + p.y() * p.y() - 0.25 * 0.25;
  };
  auto r2 = [](const Vec2& p) {
    return (p.x() + 0.3) * (p.x() + 0.3) + p.y() * p.y() - 0.3 * 0.3;
  };
  ScalarField f;
  f.value = [=](const Vec2& p) {
    return std::tanh(r1(p) / eps) * std::tanh(r2(p) / eps);
  };
  f.gradient = [=](const Vec2& p) {
    const double t1 = std::tanh(r1(p) / eps);
    const double t2 = std::tanh(r2(p) / eps);
    const Vec2 g1 = 2.0 * Vec2(p.x() - 0.3, p.y()) / eps;
    const Vec2 g2 = 2.0 * Vec2(p.x() + 0.3, p.y()) / eps;
    return Vec2((1.0 - t1 * t1) * t2 * g1 + t1 * (1.0 - t2 * t2) * g2);
  };
  return f;
}

ScalarField make_initial_condition(const std::string& spec, double eps) {
  if (spec.rfind("constant:", 0) == 0) {
    const std::string num = spec.substr(9);
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(num, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("initial condition: bad constant '" + num + "'");
    }
    if (used != num.size())
      throw std::invalid_argument("initial condition: bad constant '" + num + "'");
    return constant_field(c);
  }
  if (spec == "ellipse") return ellipse_initial_condition(eps);
  if (spec == "twocircle") return two_circle_initial_condition(eps);
  if (spec.rfind("expr:", 0) == 0) return compile_expression(spec.substr(5));
  throw std::invalid_argument("unknown initial condition '" + spec + "'");
}

}  // namespace chmorley
