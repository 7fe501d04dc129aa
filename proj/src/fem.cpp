#include "chnst/fem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chnst {

namespace {

void require_same_mesh(const PeriodicMesh& a, const PeriodicMesh& b, const char* where) {
  if (!same_mesh(a, b)) {
    std::ostringstream msg;
    msg << where << ": mesh mismatch (" << a.subdivisions() << " vs " << b.subdivisions()
        << " subdivisions)";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

CellP1 cell_p1(const PeriodicMesh& mesh, int cell) {
  const auto& c = mesh.cell(cell);
  const Vec2 e1 = c.corners[1] - c.corners[0];
  const Vec2 e2 = c.corners[2] - c.corners[0];
  const double det = e1.x() * e2.y() - e1.y() * e2.x();

  CellP1 out;
  out.dofs = c.dofs;
  out.area = 0.5 * det;
  // rows of the inverse Jacobian transpose
  out.grad[1] = Vec2(e2.y(), -e2.x()) / det;
  out.grad[2] = Vec2(-e1.y(), e1.x()) / det;
  out.grad[0] = -(out.grad[1] + out.grad[2]);
  return out;
}

double QuadPoint::value(const ScalarField& f) const {
  require_same_mesh(*mesh, *f.mesh, "QuadPoint::value");
  return basis[0] * f.dofs[cell->dofs[0]] + basis[1] * f.dofs[cell->dofs[1]] +
         basis[2] * f.dofs[cell->dofs[2]];
}

Vec2 QuadPoint::gradient(const ScalarField& f) const {
  require_same_mesh(*mesh, *f.mesh, "QuadPoint::gradient");
  return cell->grad[0] * f.dofs[cell->dofs[0]] + cell->grad[1] * f.dofs[cell->dofs[1]] +
         cell->grad[2] * f.dofs[cell->dofs[2]];
}

double integrate(const PeriodicMesh& mesh, const QuadratureRule& rule,
                 const std::function<double(const QuadPoint&)>& integrand) {
  double total = 0.0;
  QuadPoint qp;
  qp.mesh = &mesh;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellP1 cp = cell_p1(mesh, c);
    const auto& corners = mesh.cell(c).corners;
    qp.cell = &cp;
    double cell_sum = 0.0;
    for (const auto& pt : rule.points) {
      qp.basis = pt.bary;
      qp.x = pt.bary[0] * corners[0] + pt.bary[1] * corners[1] + pt.bary[2] * corners[2];
      cell_sum += pt.weight * integrand(qp);
    }
    total += cp.area * cell_sum;
  }
  return total;
}

ScalarField interpolate_nodal(MeshPtr mesh, const std::function<double(double, double)>& f) {
  ScalarField out(mesh);
  for (int i = 0; i < mesh->dof_count(); ++i) {
    const Vec2& v = mesh->vertices()[i];
    const double val = f(v.x(), v.y());
    if (!std::isfinite(val)) {
      std::ostringstream msg;
      msg << "interpolate_nodal: non-finite value at vertex (" << v.x() << ", " << v.y() << ")";
      throw std::invalid_argument(msg.str());
    }
    out.dofs[i] = val;
  }
  return out;
}

double l2_norm_sq(const ScalarField& f) {
  return integrate(*f.mesh, QuadratureRule::degree4(),
                   [&](const QuadPoint& qp) { const double v = qp.value(f); return v * v; });
}

double h1_seminorm_sq(const ScalarField& f) {
  return integrate(*f.mesh, QuadratureRule::degree4(),
                   [&](const QuadPoint& qp) { return qp.gradient(f).squaredNorm(); });
}

double h1_norm_sq(const ScalarField& f) { return l2_norm_sq(f) + h1_seminorm_sq(f); }

double l2_norm_sq(const VectorField& u) { return l2_norm_sq(u.x) + l2_norm_sq(u.y); }

double h1_norm_sq(const VectorField& u) { return h1_norm_sq(u.x) + h1_norm_sq(u.y); }

double c_skw(const VectorField& u, const VectorField& v, const VectorField& w) {
  const PeriodicMesh& mesh = *u.x.mesh;
  require_same_mesh(mesh, *v.x.mesh, "c_skw");
  require_same_mesh(mesh, *w.x.mesh, "c_skw");
  return integrate(mesh, QuadratureRule::degree4(), [&](const QuadPoint& qp) {
    const Vec2 uu(qp.value(u.x), qp.value(u.y));
    const Vec2 vv(qp.value(v.x), qp.value(v.y));
    const Vec2 ww(qp.value(w.x), qp.value(w.y));
    const Vec2 gvx = qp.gradient(v.x), gvy = qp.gradient(v.y);
    const Vec2 gwx = qp.gradient(w.x), gwy = qp.gradient(w.y);
    const double conv_v_w = (uu.dot(gvx)) * ww.x() + (uu.dot(gvy)) * ww.y();
    const double conv_w_v = (uu.dot(gwx)) * vv.x() + (uu.dot(gwy)) * vv.y();
    return 0.5 * (conv_v_w - conv_w_v);
  });
}

namespace {

SparseMatrix assemble_p1_form(const PeriodicMesh& mesh, bool stiffness) {
  const auto& rule = QuadratureRule::degree4();
  std::vector<SparseMatrix::Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.cell_count()) * 9);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellP1 cp = cell_p1(mesh, c);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double val = 0.0;
        if (stiffness) {
          val = cp.area * cp.grad[a].dot(cp.grad[b]);
        } else {
          for (const auto& pt : rule.points) {
            val += cp.area * pt.weight * pt.bary[a] * pt.bary[b];
          }
        }
        triplets.emplace_back(cp.dofs[a], cp.dofs[b], val);
      }
    }
  }
  return SparseMatrix(mesh.dof_count(), triplets);
}

}  // namespace

SparseMatrix assemble_mass(const PeriodicMesh& mesh) { return assemble_p1_form(mesh, false); }

SparseMatrix assemble_stiffness(const PeriodicMesh& mesh) { return assemble_p1_form(mesh, true); }

ScalarField prolong(const ScalarField& coarse, const NestingMap& map, MeshPtr fine) {
  if (static_cast<int>(map.fine_parents.size()) != fine->dof_count()) {
    throw std::invalid_argument("prolong: nesting map does not match the fine mesh");
  }
  ScalarField out(std::move(fine));
  for (int i = 0; i < out.mesh->dof_count(); ++i) {
    const auto [a, b] = map.fine_parents[i];
    out.dofs[i] = 0.5 * (coarse.dofs[a] + coarse.dofs[b]);
  }
  return out;
}

VectorField prolong(const VectorField& coarse, const NestingMap& map, MeshPtr fine) {
  VectorField out;
  out.x = prolong(coarse.x, map, fine);
  out.y = prolong(coarse.y, map, std::move(fine));
  return out;
}

}  // namespace chnst
