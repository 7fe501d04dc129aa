#include "chnst/quadrature.hpp"

namespace chnst {

namespace {

QuadratureRule make_degree4() {
  // Two-orbit symmetric rule; constants solved from the moment equations to
  // full double precision.
  constexpr double a1 = 0.44594849091596489;
  constexpr double a2 = 0.091576213509770743;
  constexpr double w1 = 0.22338158967801147;
  constexpr double w2 = 0.10995174365532187;

  QuadratureRule rule;
  rule.exactness = 4;
  for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
    const double b = 1.0 - 2.0 * a;
    rule.points.push_back({{a, a, b}, w});
    rule.points.push_back({{a, b, a}, w});
    rule.points.push_back({{b, a, a}, w});
  }
  return rule;
}

QuadratureRule make_degree6() {
  // 4x4 Gauss-Legendre mapped through the Duffy transform
  // (l1, l2) = (xi, eta (1 - xi)); the (1 - xi) Jacobian keeps total degree 6
  // exact with degree-7 1D nodes.
  constexpr double gx[4] = {0.069431844202973712, 0.33000947820757187,
                            0.66999052179242813, 0.93056815579702629};
  constexpr double gw[4] = {0.17392742256872693, 0.32607257743127307,
                            0.32607257743127307, 0.17392742256872693};

  QuadratureRule rule;
  rule.exactness = 6;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double l1 = gx[i];
      const double l2 = gx[j] * (1.0 - gx[i]);
      const double w = 2.0 * gw[i] * gw[j] * (1.0 - gx[i]);
      rule.points.push_back({{1.0 - l1 - l2, l1, l2}, w});
    }
  }
  return rule;
}

}  // namespace

const QuadratureRule& QuadratureRule::degree4() {
  static const QuadratureRule rule = make_degree4();
  return rule;
}

const QuadratureRule& QuadratureRule::degree6() {
  static const QuadratureRule rule = make_degree6();
  return rule;
}

}  // namespace chnst
