#pragma once

#include <array>
#include <vector>

namespace chnst {

/// Symmetric quadrature rule on the reference triangle, stored in barycentric
/// coordinates with weights normalized to sum to one (the cell integral is
/// |K| * sum_q w_q f(x_q)).  For P1 elements the barycentric coordinates of a
/// point are also the basis-function values there.
struct QuadratureRule {
  struct Point {
    std::array<double, 3> bary;
    double weight;
  };

  std::vector<Point> points;
  int exactness = 0;  ///< largest polynomial degree integrated exactly

  /// The shared 6-point degree-4 rule used by every weak-form term in the
  /// scheme and the diagnostics.  Using one rule everywhere is what makes the
  /// discrete conservation and entropy identities hold to solver precision.
  static const QuadratureRule& degree4();

  /// Independent degree-6 rule (tensor Gauss through the Duffy map), used
  /// only as a cross-check oracle in tests.
  static const QuadratureRule& degree6();
};

}  // namespace chnst
