#include "chnst/model.hpp"

#include <string>

namespace chnst {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("ModelParams: " + what);
}

}  // namespace

void ModelParams::validate() const {
  if (!(gamma > 0.0)) fail("gamma must be positive");
  if (!(epsilon >= 0.0)) fail("epsilon must be nonnegative");
  if (!(delta >= 0.0)) fail("delta must be nonnegative");
  if (!(L11 > 0.0) || !(L22 > 0.0) || !(L11 * L22 > L12 * L12)) {
    fail("diffusion matrix must be symmetric positive definite "
         "(requires L11 > 0, L22 > 0, L11*L22 > L12^2)");
  }
  if (!(visc_const > 0.0) || !(visc_quad >= 0.0)) {
    fail("viscosity must be positive for every phi "
         "(requires visc_const > 0, visc_quad >= 0)");
  }
  if (!(c_split >= 1.0)) fail("c_split must be at least 1 to keep the shifted well convex");
  if (!(theta_min > 0.0)) fail("theta_min must be positive");
}

Eigen::Matrix2d korteweg_stress(const Vec2& grad_phi, double theta, double gamma) {
  detail::require_positive_theta(theta);
  return (gamma / theta) * (grad_phi * grad_phi.transpose());
}

PotentialEval evaluate_potential(double phi_new, double phi_old, double theta,
                                 const ModelParams& p) {
  return PotentialEval{psi(phi_new, theta), dphi_psi_split(phi_new, phi_old, theta, p)};
}

}  // namespace chnst
