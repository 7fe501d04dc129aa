#include "chnst/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <type_traits>

#include "chnst/dual.hpp"
#include "chnst/quadrature.hpp"

namespace chnst {

namespace {

constexpr int kPhi = 0, kMu = 1, kTheta = 2, kU1 = 3, kU2 = 4, kPi = 5;
constexpr int kEq = 6;
using Dual18 = Dual<18>;

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Value and gradient of one field at a quadrature point.
template <typename T>
struct Fv {
  T v{}, gx{}, gy{};
};

/// Previous time level at a quadrature point (always plain numbers).
struct OldPoint {
  double phi = 0.0, theta = 0.0;
  Fv<double> u1, u2;
};

/// Lagged ("starred") quantities at a quadrature point; duals when the star
/// mode makes them unknowns of the step.
template <typename T>
struct StarPoint {
  Fv<T> phi;
  T theta{}, mu{};
  T u1{}, u2{};
};

template <typename T>
struct DensityOut {
  std::array<T, kEq> r0;
  std::array<T, kEq> r1x, r1y;
};

/// Pointwise integrand of all six weak equations: the residual contribution
/// of test function psi_a in equation e is r0[e]*psi_a + r1{x,y}[e].grad
/// psi_a.  The same code yields the residual (T = double) and, through dual
/// numbers seeded on the 18 point values/gradients, the exact Jacobian.
template <typename T>
DensityOut<T> coupled_density(const std::array<Fv<T>, kEq>& c, const OldPoint& o,
                              const StarPoint<T>& s, const ModelParams& p, double tau,
                              double h2) {
  DensityOut<T> out;
  const double inv_tau = 1.0 / tau;

  const Fv<T>& phi = c[kPhi];
  const Fv<T>& mu = c[kMu];
  const Fv<T>& theta = c[kTheta];
  const Fv<T>& u1 = c[kU1];
  const Fv<T>& u2 = c[kU2];
  const Fv<T>& pi = c[kPi];

  // midpoint velocity, its gradient, symmetric gradient, divergence
  const T um1 = 0.5 * (u1.v + o.u1.v);
  const T um2 = 0.5 * (u2.v + o.u2.v);
  const T g11 = 0.5 * (u1.gx + o.u1.gx);
  const T g12 = 0.5 * (u1.gy + o.u1.gy);
  const T g21 = 0.5 * (u2.gx + o.u2.gx);
  const T g22 = 0.5 * (u2.gy + o.u2.gy);
  const T div_um = g11 + g22;
  const T d12 = 0.5 * (g12 + g21);
  const T dd = g11 * g11 + g22 * g22 + 2.0 * (d12 * d12);

  // starred compositions
  const T eta_s = viscosity(s.phi.v, s.theta, p);
  const T s_s = entropy_pointwise(s.phi.v, s.theta, s.phi.gx, s.phi.gy, p);
  const T c_s = (s_s + s.phi.v * s.mu) / (s.theta * s.theta);
  const T kort = p.gamma / s.theta;

  const T inv_theta = 1.0 / theta.v;
  const T gphis_dot_um = s.phi.gx * um1 + s.phi.gy * um2;
  const T gphis_dot_gtheta = s.phi.gx * theta.gx + s.phi.gy * theta.gy;
  const T gmu_dot_um = mu.gx * um1 + mu.gy * um2;
  const T gtheta_dot_um = theta.gx * um1 + theta.gy * um2;

  // phase transport
  out.r0[0] = inv_tau * (phi.v - o.phi);
  out.r1x[0] = -(s.phi.v * um1) + p.L11 * mu.gx - p.L12 * theta.gx;
  out.r1y[0] = -(s.phi.v * um2) + p.L11 * mu.gy - p.L12 * theta.gy;

  // chemical potential
  out.r0[1] = mu.v - dphi_psi_split(phi.v, T(o.phi), theta.v, p);
  out.r1x[1] = -p.gamma * phi.gx;
  out.r1y[1] = -p.gamma * phi.gy;

  // internal energy, with the stabilization heat credited back
  const T e_new = internal_energy(phi.v, theta.v);
  const double e_old = internal_energy(o.phi, o.theta);
  const T grad_pi_sq = pi.gx * pi.gx + pi.gy * pi.gy;
  const T kort_coupling = kort * inv_theta * gphis_dot_gtheta;
  out.r0[2] = inv_tau * (e_new - e_old) - eta_s * dd - p.epsilon * (div_um * div_um) -
              p.delta * h2 * grad_pi_sq - s.phi.v * inv_theta * gmu_dot_um +
              kort_coupling * gphis_dot_um + c_s * gtheta_dot_um;
  const T kort_um = kort * gphis_dot_um;
  out.r1x[2] = p.L12 * mu.gx - p.L22 * theta.gx - kort_um * s.phi.gx - c_s * theta.v * um1;
  out.r1y[2] = p.L12 * mu.gy - p.L22 * theta.gy - kort_um * s.phi.gy - c_s * theta.v * um2;

  // momentum: skew convection, viscous stress, grad-div, pressure, forcing
  const T fx = s.phi.v * inv_theta * mu.gx - kort_coupling * s.phi.gx - c_s * theta.gx;
  const T fy = s.phi.v * inv_theta * mu.gy - kort_coupling * s.phi.gy - c_s * theta.gy;
  const T conv1 = 0.5 * (s.u1 * g11 + s.u2 * g12);
  const T conv2 = 0.5 * (s.u1 * g21 + s.u2 * g22);
  const T eps_div = p.epsilon * div_um;
  out.r0[3] = inv_tau * (u1.v - o.u1.v) + conv1 + fx;
  out.r0[4] = inv_tau * (u2.v - o.u2.v) + conv2 + fy;
  out.r1x[3] = -0.5 * (um1 * s.u1) + eta_s * g11 + eps_div - pi.v;
  out.r1y[3] = -0.5 * (um1 * s.u2) + eta_s * d12;
  out.r1x[4] = -0.5 * (um2 * s.u1) + eta_s * d12;
  out.r1y[4] = -0.5 * (um2 * s.u2) + eta_s * g22 + eps_div - pi.v;

  // stabilized divergence constraint
  out.r0[5] = div_um;
  out.r1x[5] = p.delta * h2 * pi.gx;
  out.r1y[5] = p.delta * h2 * pi.gy;

  return out;
}

template <bool kJac>
void assemble_body(const PeriodicMesh& mesh, const std::vector<CellP1>& cells,
                   const ModelParams& p, StarMode mode, double tau, const State& sn,
                   const State& so, double lambda, Eigen::VectorXd& r,
                   Eigen::SparseMatrix<double>* jac, const std::vector<int>* scatter,
                   const std::vector<int>* mult_col, const std::vector<int>* mean_row) {
  using T = std::conditional_t<kJac, Dual18, double>;
  const int ndof = mesh.dof_count();
  const double h2 = mesh.mesh_size() * mesh.mesh_size();
  const QuadratureRule& rule = QuadratureRule::degree4();
  const bool implicit_star = mode == StarMode::implicit_new;

  r.setZero(6 * ndof + 1);
  if constexpr (kJac) {
    std::fill(jac->valuePtr(), jac->valuePtr() + jac->nonZeros(), 0.0);
  }

  const Eigen::VectorXd* fields[kEq] = {&sn.phi.dofs, &sn.mu.dofs,  &sn.theta.dofs,
                                        &sn.u.x.dofs, &sn.u.y.dofs, &sn.pi.dofs};

  std::array<double, 324> local_jac{};
  std::array<double, 18> local_r{};

  for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
    const CellP1& cp = cells[ci];

    double nodal[kEq][3];
    double nphi_o[3], ntheta_o[3], nmu_o[3], nu1_o[3], nu2_o[3];
    for (int a = 0; a < 3; ++a) {
      const int d = cp.dofs[a];
      for (int f = 0; f < kEq; ++f) nodal[f][a] = (*fields[f])[d];
      nphi_o[a] = so.phi.dofs[d];
      ntheta_o[a] = so.theta.dofs[d];
      nmu_o[a] = so.mu.dofs[d];
      nu1_o[a] = so.u.x.dofs[d];
      nu2_o[a] = so.u.y.dofs[d];
    }

    // cellwise-constant gradients
    std::array<Fv<T>, kEq> f_new;
    for (int f = 0; f < kEq; ++f) {
      double gx = 0.0, gy = 0.0;
      for (int a = 0; a < 3; ++a) {
        gx += cp.grad[a].x() * nodal[f][a];
        gy += cp.grad[a].y() * nodal[f][a];
      }
      if constexpr (kJac) {
        f_new[f].gx = Dual18::seeded(gx, 3 * f + 1);
        f_new[f].gy = Dual18::seeded(gy, 3 * f + 2);
      } else {
        f_new[f].gx = gx;
        f_new[f].gy = gy;
      }
    }
    Fv<double> u1_o, u2_o;
    double gphi_o_x = 0.0, gphi_o_y = 0.0;
    u1_o.gx = u1_o.gy = u2_o.gx = u2_o.gy = 0.0;
    for (int a = 0; a < 3; ++a) {
      u1_o.gx += cp.grad[a].x() * nu1_o[a];
      u1_o.gy += cp.grad[a].y() * nu1_o[a];
      u2_o.gx += cp.grad[a].x() * nu2_o[a];
      u2_o.gy += cp.grad[a].y() * nu2_o[a];
      gphi_o_x += cp.grad[a].x() * nphi_o[a];
      gphi_o_y += cp.grad[a].y() * nphi_o[a];
    }

    if constexpr (kJac) {
      local_jac.fill(0.0);
    }
    local_r.fill(0.0);

    for (const auto& pt : rule.points) {
      double vals[kEq];
      for (int f = 0; f < kEq; ++f) {
        vals[f] = pt.bary[0] * nodal[f][0] + pt.bary[1] * nodal[f][1] + pt.bary[2] * nodal[f][2];
      }
      for (int f = 0; f < kEq; ++f) {
        if constexpr (kJac) {
          f_new[f].v = Dual18::seeded(vals[f], 3 * f);
        } else {
          f_new[f].v = vals[f];
        }
      }

      OldPoint old;
      old.phi = pt.bary[0] * nphi_o[0] + pt.bary[1] * nphi_o[1] + pt.bary[2] * nphi_o[2];
      old.theta = pt.bary[0] * ntheta_o[0] + pt.bary[1] * ntheta_o[1] + pt.bary[2] * ntheta_o[2];
      old.u1 = u1_o;
      old.u2 = u2_o;
      old.u1.v = pt.bary[0] * nu1_o[0] + pt.bary[1] * nu1_o[1] + pt.bary[2] * nu1_o[2];
      old.u2.v = pt.bary[0] * nu2_o[0] + pt.bary[1] * nu2_o[1] + pt.bary[2] * nu2_o[2];

      StarPoint<T> star;
      if (implicit_star) {
        star.phi = f_new[kPhi];
        star.theta = f_new[kTheta].v;
        star.mu = f_new[kMu].v;
        star.u1 = f_new[kU1].v;
        star.u2 = f_new[kU2].v;
      } else {
        const double mu_o =
            pt.bary[0] * nmu_o[0] + pt.bary[1] * nmu_o[1] + pt.bary[2] * nmu_o[2];
        star.phi.v = T(old.phi);
        star.phi.gx = T(gphi_o_x);
        star.phi.gy = T(gphi_o_y);
        star.theta = T(old.theta);
        star.mu = T(mu_o);
        star.u1 = T(old.u1.v);
        star.u2 = T(old.u2.v);
      }

      const DensityOut<T> den = coupled_density(f_new, old, star, p, tau, h2);

      const double cw = cp.area * pt.weight;
      for (int e = 0; e < kEq; ++e) {
        for (int a = 0; a < 3; ++a) {
          const T g = den.r0[e] * pt.bary[a] + den.r1x[e] * cp.grad[a].x() +
                      den.r1y[e] * cp.grad[a].y();
          if constexpr (kJac) {
            local_r[3 * e + a] += cw * g.v;
            double* row = &local_jac[(3 * e + a) * 18];
            for (int f = 0; f < kEq; ++f) {
              const double dv = g.d[3 * f];
              const double dgx = g.d[3 * f + 1];
              const double dgy = g.d[3 * f + 2];
              for (int b = 0; b < 3; ++b) {
                row[3 * f + b] += cw * (dv * pt.bary[b] + dgx * cp.grad[b].x() +
                                        dgy * cp.grad[b].y());
              }
            }
          } else {
            local_r[3 * e + a] += cw * g;
          }
        }
      }
    }

    for (int e = 0; e < kEq; ++e) {
      for (int a = 0; a < 3; ++a) {
        r[e * ndof + cp.dofs[a]] += local_r[3 * e + a];
      }
    }
    if constexpr (kJac) {
      const int* tab = scatter->data() + static_cast<std::size_t>(ci) * 324;
      double* vals = jac->valuePtr();
      for (int i = 0; i < 324; ++i) vals[tab[i]] += local_jac[i];
    }
  }

  // zero-mean pressure gauge: multiplier column on the divergence rows and
  // the mean row itself
  for (int i = 0; i < ndof; ++i) r[5 * ndof + i] += lambda;
  r[6 * ndof] = sn.pi.dofs.sum() / ndof;
  if constexpr (kJac) {
    double* vals = jac->valuePtr();
    for (int i = 0; i < ndof; ++i) {
      vals[(*mult_col)[i]] = 1.0;
      vals[(*mean_row)[i]] = 1.0 / ndof;
    }
  }
}

int value_index(const Eigen::SparseMatrix<double>& m, int row, int col) {
  const auto* outer = m.outerIndexPtr();
  const auto* inner = m.innerIndexPtr();
  const auto* beg = inner + outer[col];
  const auto* end = inner + outer[col + 1];
  const auto* it = std::lower_bound(beg, end, row);
  return static_cast<int>(it - inner);
}

}  // namespace

State::State(MeshPtr mesh) : phi(mesh), mu(mesh), theta(mesh), pi(mesh), u(std::move(mesh)) {}

void StepConfig::validate() const {
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("StepConfig: ") + what);
  };
  if (!(tau > 0.0) || !std::isfinite(tau)) fail("tau must be positive and finite");
  if (!(newton_tol > 0.0)) fail("newton_tol must be positive");
  if (newton_max < 1) fail("newton_max must be at least 1");
  if (!(damping_min_scale > 0.0) || damping_min_scale > 1.0) {
    fail("damping_min_scale must lie in (0, 1]");
  }
}

TimeStepper::TimeStepper(MeshPtr mesh, ModelParams params, StepConfig cfg)
    : mesh_(std::move(mesh)), params_(params), cfg_(cfg) {
  if (!mesh_) throw std::invalid_argument("TimeStepper: mesh must not be null");
  params_.validate();
  cfg_.validate();
  ndof_ = mesh_->dof_count();

  cells_.reserve(mesh_->cell_count());
  for (int c = 0; c < mesh_->cell_count(); ++c) cells_.push_back(cell_p1(*mesh_, c));

  const int n_sys = system_size();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(cells_.size() * 324 + 2 * static_cast<std::size_t>(ndof_) + 1);
  for (const CellP1& cp : cells_) {
    for (int e = 0; e < kEq; ++e) {
      for (int a = 0; a < 3; ++a) {
        for (int f = 0; f < kEq; ++f) {
          for (int b = 0; b < 3; ++b) {
            trips.emplace_back(e * ndof_ + cp.dofs[a], f * ndof_ + cp.dofs[b], 1.0);
          }
        }
      }
    }
  }
  for (int i = 0; i < ndof_; ++i) {
    trips.emplace_back(5 * ndof_ + i, 6 * ndof_, 1.0);
    trips.emplace_back(6 * ndof_, 5 * ndof_ + i, 1.0);
  }
  trips.emplace_back(6 * ndof_, 6 * ndof_, 1.0);
  pattern_.resize(n_sys, n_sys);
  pattern_.setFromTriplets(trips.begin(), trips.end());
  pattern_.makeCompressed();
  work_ = pattern_;

  cell_scatter_.resize(cells_.size() * 324);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const CellP1& cp = cells_[c];
    int* tab = cell_scatter_.data() + c * 324;
    for (int e = 0; e < kEq; ++e) {
      for (int a = 0; a < 3; ++a) {
        for (int f = 0; f < kEq; ++f) {
          for (int b = 0; b < 3; ++b) {
            tab[(3 * e + a) * 18 + 3 * f + b] =
                value_index(pattern_, e * ndof_ + cp.dofs[a], f * ndof_ + cp.dofs[b]);
          }
        }
      }
    }
  }
  multiplier_col_.resize(ndof_);
  mean_row_.resize(ndof_);
  for (int i = 0; i < ndof_; ++i) {
    multiplier_col_[i] = value_index(pattern_, 5 * ndof_ + i, 6 * ndof_);
    mean_row_[i] = value_index(pattern_, 6 * ndof_, 5 * ndof_ + i);
  }

  solver_.analyze(pattern_);
}

void TimeStepper::check_state(const State& s, const char* who) const {
  const ScalarField* scalars[4] = {&s.phi, &s.mu, &s.theta, &s.pi};
  for (const ScalarField* f : scalars) {
    if (!f->mesh || !same_mesh(*f->mesh, *mesh_)) {
      throw std::invalid_argument(std::string(who) + ": state mesh does not match the stepper");
    }
  }
  if (!s.u.x.mesh || !same_mesh(*s.u.x.mesh, *mesh_) || !s.u.y.mesh ||
      !same_mesh(*s.u.y.mesh, *mesh_)) {
    throw std::invalid_argument(std::string(who) + ": state mesh does not match the stepper");
  }
  const double theta_floor = s.theta.dofs.minCoeff();
  if (!(theta_floor >= params_.theta_min)) {
    throw std::domain_error(std::string(who) + ": inverse temperature " + fmt_sci(theta_floor) +
                            " below the floor " + fmt_sci(params_.theta_min));
  }
}

Eigen::VectorXd TimeStepper::pack(const State& s, double lambda) const {
  Eigen::VectorXd x(system_size());
  x.segment(0, ndof_) = s.phi.dofs;
  x.segment(ndof_, ndof_) = s.mu.dofs;
  x.segment(2 * ndof_, ndof_) = s.theta.dofs;
  x.segment(3 * ndof_, ndof_) = s.u.x.dofs;
  x.segment(4 * ndof_, ndof_) = s.u.y.dofs;
  x.segment(5 * ndof_, ndof_) = s.pi.dofs;
  x[6 * ndof_] = lambda;
  return x;
}

void TimeStepper::unpack(const Eigen::VectorXd& x, State& s) const {
  s.phi.dofs = x.segment(0, ndof_);
  s.mu.dofs = x.segment(ndof_, ndof_);
  s.theta.dofs = x.segment(2 * ndof_, ndof_);
  s.u.x.dofs = x.segment(3 * ndof_, ndof_);
  s.u.y.dofs = x.segment(4 * ndof_, ndof_);
  s.pi.dofs = x.segment(5 * ndof_, ndof_);
}

Eigen::VectorXd TimeStepper::assemble_residual(const State& state_new, const State& state_old,
                                               double lambda) const {
  Eigen::VectorXd r(system_size());
  assemble_body<false>(*mesh_, cells_, params_, cfg_.star_mode, cfg_.tau, state_new, state_old,
                       lambda, r, nullptr, nullptr, nullptr, nullptr);
  return r;
}

void TimeStepper::assemble_system(const State& state_new, const State& state_old, double lambda,
                                  Eigen::VectorXd& r, Eigen::SparseMatrix<double>& jac) const {
  assemble_body<true>(*mesh_, cells_, params_, cfg_.star_mode, cfg_.tau, state_new, state_old,
                      lambda, r, &jac, &cell_scatter_, &multiplier_col_, &mean_row_);
}

Eigen::VectorXd TimeStepper::residual(const State& state_new, const State& state_old) const {
  check_state(state_new, "residual");
  check_state(state_old, "residual");
  return assemble_residual(state_new, state_old, 0.0);
}

SparseMatrix TimeStepper::jacobian(const State& state_new, const State& state_old) const {
  check_state(state_new, "jacobian");
  check_state(state_old, "jacobian");
  Eigen::VectorXd r(system_size());
  assemble_system(state_new, state_old, 0.0, r, work_);
  SparseMatrix out;
  out.eigen() = work_;
  return out;
}

std::pair<State, StepReport> TimeStepper::advance(const State& state_old) {
  check_state(state_old, "advance");
  StepReport report;

  State cur = state_old;
  State cand(mesh_);
  double lambda = 0.0;
  Eigen::VectorXd x = pack(cur, lambda);
  Eigen::VectorXd r = assemble_residual(cur, state_old, lambda);
  double rnorm = r.norm();
  report.final_residual = rnorm;

  for (int iter = 0;; ++iter) {
    if (rnorm <= cfg_.newton_tol) {
      report.converged = true;
      break;
    }
    if (iter >= cfg_.newton_max) {
      throw StepFailure("Newton reached the iteration limit with residual " + fmt_sci(rnorm),
                        report);
    }

    assemble_system(cur, state_old, lambda, r, work_);
    solver_.factorize(work_);
    const Eigen::VectorXd dx = solver_.solve(work_, -r);
    report.max_linear_residual =
        std::max(report.max_linear_residual, solver_.last_relative_residual());
    ++report.newton_iters;

    double alpha = 1.0;
    for (;;) {
      const Eigen::VectorXd x_cand = x + alpha * dx;
      const double theta_floor = x_cand.segment(2 * ndof_, ndof_).minCoeff();
      if (theta_floor >= params_.theta_min) {
        unpack(x_cand, cand);
        const double lambda_cand = x_cand[6 * ndof_];
        const Eigen::VectorXd r_cand = assemble_residual(cand, state_old, lambda_cand);
        const double rnorm_cand = r_cand.norm();
        if (rnorm_cand < rnorm) {
          x = x_cand;
          lambda = lambda_cand;
          std::swap(cur, cand);
          cur.t = state_old.t;
          r = r_cand;
          rnorm = rnorm_cand;
          break;
        }
      }
      alpha *= 0.5;
      ++report.damping_events;
      if (alpha < cfg_.damping_min_scale) {
        report.final_residual = rnorm;
        throw StepFailure("Newton damping underflow with residual " + fmt_sci(rnorm), report);
      }
    }
    report.final_residual = rnorm;
  }

  cur.t = state_old.t + cfg_.tau;
  return {std::move(cur), report};
}

Eigen::VectorXd residual(const State& state_new, const State& state_old,
                         const ModelParams& params, const StepConfig& cfg) {
  TimeStepper stepper(state_new.mesh(), params, cfg);
  return stepper.residual(state_new, state_old);
}

SparseMatrix jacobian(const State& state_new, const State& state_old, const ModelParams& params,
                      const StepConfig& cfg) {
  TimeStepper stepper(state_new.mesh(), params, cfg);
  return stepper.jacobian(state_new, state_old);
}

std::pair<State, StepReport> advance(const State& state_old, const ModelParams& params,
                                     const StepConfig& cfg) {
  TimeStepper stepper(state_old.mesh(), params, cfg);
  return stepper.advance(state_old);
}

ScalarField initialize_mu(const ScalarField& phi0, const ScalarField& theta0,
                          const ModelParams& params) {
  params.validate();
  if (!phi0.mesh || !theta0.mesh || !same_mesh(*phi0.mesh, *theta0.mesh)) {
    throw std::invalid_argument("initialize_mu: phi0 and theta0 must share a mesh");
  }
  if (!(theta0.dofs.minCoeff() > 0.0)) {
    throw std::domain_error("initialize_mu: inverse temperature must be positive");
  }

  const PeriodicMesh& mesh = *phi0.mesh;
  const QuadratureRule& rule = QuadratureRule::degree4();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.dof_count());
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellP1 cp = cell_p1(mesh, c);
    double nphi[3], ntheta[3];
    for (int a = 0; a < 3; ++a) {
      nphi[a] = phi0.dofs[cp.dofs[a]];
      ntheta[a] = theta0.dofs[cp.dofs[a]];
    }
    Vec2 gphi = Vec2::Zero();
    for (int a = 0; a < 3; ++a) gphi += cp.grad[a] * nphi[a];
    for (const auto& pt : rule.points) {
      const double vphi = pt.bary[0] * nphi[0] + pt.bary[1] * nphi[1] + pt.bary[2] * nphi[2];
      const double vtheta =
          pt.bary[0] * ntheta[0] + pt.bary[1] * ntheta[1] + pt.bary[2] * ntheta[2];
      const double split = dphi_psi_split(vphi, vphi, vtheta, params);
      const double cw = cp.area * pt.weight;
      for (int a = 0; a < 3; ++a) {
        b[cp.dofs[a]] += cw * (split * pt.bary[a] + params.gamma * gphi.dot(cp.grad[a]));
      }
    }
  }

  const SparseMatrix mass = assemble_mass(mesh);
  return ScalarField(phi0.mesh, solve(mass, b));
}

}  // namespace chnst
