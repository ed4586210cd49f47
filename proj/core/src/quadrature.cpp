#include "chmorley/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace chmorley {

namespace {

void add_centroid(TriQuadrature& q, double w) {
  const double t = 1.0 / 3.0;
  q.points.push_back({t, t, t});
  q.weights.push_back(w);
}

// three points (a, a, 1-2a) and cyclic permutations
void add_orbit3(TriQuadrature& q, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  q.points.push_back({a, a, b});
  q.points.push_back({a, b, a});
  q.points.push_back({b, a, a});
  for (int i = 0; i < 3; ++i) q.weights.push_back(w);
}

// six points (a, b, 1-a-b) and all permutations
void add_orbit6(TriQuadrature& q, double a, double b, double w) {
  const double c = 1.0 - a - b;
  q.points.push_back({a, b, c});
  q.points.push_back({a, c, b});
  q.points.push_back({b, a, c});
  q.points.push_back({b, c, a});
  q.points.push_back({c, a, b});
  q.points.push_back({c, b, a});
  for (int i = 0; i < 6; ++i) q.weights.push_back(w);
}

TriQuadrature make_degree_1() {
  TriQuadrature q;
  q.exactness = 1;
  add_centroid(q, 1.0);
  return q;
}

TriQuadrature make_degree_2() {
  TriQuadrature q;
  q.exactness = 2;
  add_orbit3(q, 1.0 / 6.0, 1.0 / 3.0);
  return q;
}

TriQuadrature make_degree_4() {
  TriQuadrature q;
  q.exactness = 4;
  add_orbit3(q, 0.44594849091596483, 0.2233815896780113);
  add_orbit3(q, 0.09157621350977087, 0.10995174365532204);
  return q;
}

TriQuadrature make_degree_6() {
  TriQuadrature q;
  q.exactness = 6;
  add_orbit3(q, 0.24928674517091043, 0.11678627572637937);
  add_orbit3(q, 0.06308901449150223, 0.05084490637020682);
  add_orbit6(q, 0.053145049844816945, 0.3103524510337844, 0.08285107561837357);
  return q;
}

TriQuadrature make_degree_10() {
  TriQuadrature q;
  q.exactness = 10;
  add_centroid(q, 0.090817990382754);
  add_orbit3(q, 0.48557763338365706, 0.03672595775646708);
  add_orbit3(q, 0.10948157548503717, 0.0453210594355282);
  add_orbit6(q, 0.14170721941488001, 0.3079398387641205, 0.07275791684541992);
  add_orbit6(q, 0.025003534762685888, 0.2466725606399031, 0.028327242531057277);
  add_orbit6(q, 0.009540815400299616, 0.06680325101220011, 0.009421666963732825);
  return q;
}

}  // namespace

const TriQuadrature& TriQuadrature::for_degree(int degree) {
  static const TriQuadrature d1 = make_degree_1();
  static const TriQuadrature d2 = make_degree_2();
  static const TriQuadrature d4 = make_degree_4();
  static const TriQuadrature d6 = make_degree_6();
  static const TriQuadrature d10 = make_degree_10();
  if (degree <= 1) return d1;
  if (degree <= 2) return d2;
  if (degree <= 4) return d4;
  if (degree <= 6) return d6;
  if (degree <= 10) return d10;
  throw std::invalid_argument("TriQuadrature: no rule of exactness > 10");
}

const SegmentQuadrature& SegmentQuadrature::three_point() {
  static const SegmentQuadrature q = [] {
    SegmentQuadrature s;
    const double off = std::sqrt(15.0) / 10.0;
    s.points = {0.5 - off, 0.5, 0.5 + off};
    s.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    return s;
  }();
  return q;
}

}  // namespace chmorley
