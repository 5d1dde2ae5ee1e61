#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ricci/numerics.hpp"
#include "ricci/spaceform.hpp"

namespace ricci {

// Parametric immersion of an n-dimensional domain into flat ambient
// coordinates (dim_ambient = embed_dim of the ambient model). An analytic
// Jacobian is optional; finite differences are used when absent.
struct Immersion {
  int dim_domain = 0;
  int dim_ambient = 0;
  MapEvaluator evaluate;
  std::function<MatrixXd(const VectorXd&)> analytic_jacobian; // may be empty
  MatrixXd domain_box; // (n x 2), columns lo / hi; defaults to [-1,1]^n

  static Immersion make(int n, int m, MapEvaluator eval,
                        std::function<MatrixXd(const VectorXd&)> jac = {}) {
    Immersion imm;
    imm.dim_domain = n;
    imm.dim_ambient = m;
    imm.evaluate = std::move(eval);
    imm.analytic_jacobian = std::move(jac);
    imm.domain_box.resize(n, 2);
    imm.domain_box.col(0).setConstant(-1.0);
    imm.domain_box.col(1).setConstant(1.0);
    return imm;
  }
};

// Points closer than `margin` to the chart boundary are rejected: FD stencils
// must stay inside the domain.
inline void require_interior(const Immersion& imm, const VectorXd& point,
                             double margin) {
  if (point.size() != imm.dim_domain) {
    throw argument_error("point dimension does not match immersion domain");
  }
  for (int j = 0; j < imm.dim_domain; ++j) {
    const double m = margin * std::max(1.0, std::abs(point(j)));
    if (point(j) - imm.domain_box(j, 0) < m ||
        imm.domain_box(j, 1) - point(j) < m) {
      throw domain_error("point too close to the chart boundary (coordinate " +
                         std::to_string(j) + ")");
    }
  }
}

inline void require_interior(const Immersion& imm, const VectorXd& point,
                             const Tolerances& tol = {}) {
  require_interior(imm, point, 4.0 * std::max(tol.fd_step, tol.fd_step_second));
}

inline MatrixXd jacobian_at(const Immersion& imm, const VectorXd& point,
                            const Tolerances& tol = {}) {
  if (imm.analytic_jacobian) return imm.analytic_jacobian(point);
  const int n = imm.dim_domain;
  MatrixXd J(imm.dim_ambient, n);
  for (int j = 0; j < n; ++j) {
    const double h = tol.fd_step * std::max(1.0, std::abs(point(j)));
    VectorXd xp = point, xm = point;
    xp(j) += h;
    xm(j) -= h;
    J.col(j) = (detail::checked_eval(imm.evaluate, xp, "jacobian stencil") -
                detail::checked_eval(imm.evaluate, xm, "jacobian stencil")) /
               (2.0 * h);
  }
  return J;
}

// Induced metric g_ij = <d_i phi, d_j phi>.
inline MatrixXd pullback_metric(const Immersion& imm, const VectorXd& point,
                                const Tolerances& tol = {}) {
  const MatrixXd J = jacobian_at(imm, point, tol);
  const MatrixXd g = J.transpose() * J;
  Eigen::LDLT<MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      g.determinant() < tol.eq_tol) {
    throw domain_error("pullback_metric: immersion degenerate (rank-deficient "
                       "Jacobian) at the given point");
  }
  return g;
}

struct AdaptedFrame {
  VectorXd point;         // parameter coordinates
  VectorXd ambient_point; // phi(point)
  std::vector<VectorXd> tangent; // e_1 .. e_n, ambient vectors
  std::vector<VectorXd> normal;  // e_{n+1} .. (radial excluded for sphere)
};

namespace detail {

// Component of v orthogonal to `basis` (assumed orthonormal), with one
// re-orthogonalization pass.
inline VectorXd gs_residual(const std::vector<VectorXd>& basis, VectorXd v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const VectorXd& e : basis) v -= e.dot(v) * e;
  }
  return v;
}

} // namespace detail

// Orthonormal frame adapted to the immersion at `point`: e_1 along the
// push-forward of X when given, remaining tangent directions from Jacobian
// columns, normals from a fixed ambient-basis scan. For a sphere ambient the
// radial direction is excluded from the normal frame.
inline AdaptedFrame adapted_frame(const Immersion& imm,
                                  const AmbientSpaceForm& ambient,
                                  const VectorXd& point,
                                  const VectorXd* X = nullptr,
                                  const Tolerances& tol = {}) {
  if (imm.dim_ambient != ambient.embed_dim()) {
    throw argument_error("immersion/ambient dimension mismatch");
  }
  const int n = imm.dim_domain;
  const int m = imm.dim_ambient;

  AdaptedFrame frame;
  frame.point = point;
  frame.ambient_point = detail::checked_eval(imm.evaluate, point, "frame point");

  std::vector<VectorXd> reserved; // directions excluded from the frame
  if (ambient.kind() == AmbientKind::sphere) {
    const double r = frame.ambient_point.norm();
    if (std::abs(r - ambient.radius()) > 1e3 * tol.eq_tol * ambient.radius()) {
      throw argument_error("immersion does not map into the ambient sphere");
    }
    reserved.push_back(frame.ambient_point / r);
  }

  const MatrixXd J = jacobian_at(imm, point, tol);
  std::vector<VectorXd> candidates;
  if (X) {
    if (X->size() != n) throw argument_error("adapted_frame: X dimension mismatch");
    if (X->norm() < tol.eq_tol) throw argument_error("adapted_frame: X is zero");
    candidates.push_back(J * (*X));
    if (candidates.back().norm() < tol.eq_tol) {
      throw domain_error("adapted_frame: push-forward of X vanishes");
    }
  }
  for (int j = 0; j < n; ++j) candidates.push_back(J.col(j));

  // Residual threshold for accepting a candidate: dependence is either at
  // FD-noise level or order one, so a mid-range cut is safe.
  constexpr double kAccept = 1e-3;

  for (const VectorXd& c : candidates) {
    if (static_cast<int>(frame.tangent.size()) == n) break;
    const VectorXd r = detail::gs_residual(frame.tangent, c);
    if (r.norm() >= kAccept * std::max(1.0, c.norm())) {
      frame.tangent.push_back(r / r.norm());
    }
  }
  if (static_cast<int>(frame.tangent.size()) != n) {
    throw domain_error("adapted_frame: Jacobian rank-deficient at the point");
  }

  const int n_normal = m - n - static_cast<int>(reserved.size());
  std::vector<VectorXd> excluded = frame.tangent;
  excluded.insert(excluded.end(), reserved.begin(), reserved.end());
  for (int a = 0; a < m && static_cast<int>(frame.normal.size()) < n_normal; ++a) {
    VectorXd basis = VectorXd::Zero(m);
    basis(a) = 1.0;
    VectorXd r = detail::gs_residual(excluded, basis);
    r = detail::gs_residual(frame.normal, r);
    if (r.norm() >= kAccept) {
      frame.normal.push_back(r / r.norm());
    }
  }
  if (static_cast<int>(frame.normal.size()) != n_normal) {
    throw numerical_error("adapted_frame: could not complete the normal frame");
  }
  return frame;
}

// Frame for Lagrangian submanifolds: normal frame {J e_1, ..., J e_n}.
inline AdaptedFrame adapted_frame_lagrangian(const Immersion& imm,
                                             const AmbientSpaceForm& ambient,
                                             const VectorXd& point,
                                             const VectorXd* X = nullptr,
                                             const Tolerances& tol = {}) {
  AdaptedFrame frame = adapted_frame(imm, ambient, point, X, tol);
  frame.normal.clear();
  for (const VectorXd& e : frame.tangent) {
    frame.normal.push_back(ambient.apply_J(e));
  }
  // J(tangent) must actually be normal, i.e. the submanifold totally real.
  for (const VectorXd& nu : frame.normal) {
    for (const VectorXd& e : frame.tangent) {
      if (std::abs(nu.dot(e)) > 1e3 * tol.eq_tol) {
        throw argument_error(
            "lagrangian frame: J(tangent) is not normal at this point");
      }
    }
  }
  return frame;
}

// Second-fundamental-form coefficients h^r_ij and mean curvature components.
struct ShapeData {
  std::vector<MatrixXd> h; // h[r](i,j), r indexes the normal frame
  VectorXd H;              // H^r = (1/n) sum_i h^r_ii
  double H_norm_sq = 0.0;
};

inline std::pair<VectorXd, double> mean_curvature(const ShapeData& shape, int n) {
  VectorXd H(shape.h.size());
  for (std::size_t r = 0; r < shape.h.size(); ++r) {
    H(static_cast<int>(r)) = shape.h[r].trace() / n;
  }
  return {H, H.squaredNorm()};
}

// h(X,Y) = (ambient derivative of Y along X)^perp, evaluated as the normal
// component of the coordinate second derivative contracted with the frame's
// parameter-space coefficients. For the sphere ambient the radial direction is
// absent from the normal frame, which removes the sphere's own second
// fundamental form.
inline ShapeData second_fundamental_form(const Immersion& imm,
                                         const AmbientSpaceForm& ambient,
                                         const AdaptedFrame& frame,
                                         const Tolerances& tol = {}) {
  (void)ambient;
  const int n = imm.dim_domain;
  const int m = imm.dim_ambient;
  if (static_cast<int>(frame.tangent.size()) != n ||
      frame.point.size() != imm.dim_domain) {
    throw argument_error("second_fundamental_form: frame/immersion mismatch");
  }
  require_interior(imm, frame.point, tol);

  const MatrixXd J = jacobian_at(imm, frame.point, tol);
  // Parameter-space coefficients a_i with J a_i = e_i.
  MatrixXd E(m, n);
  for (int i = 0; i < n; ++i) E.col(i) = frame.tangent[i];
  const MatrixXd A = (J.transpose() * J).ldlt().solve(J.transpose() * E);

  const FdDerivatives fd = fd_derivatives(imm.evaluate, frame.point, tol);

  const int n_normal = static_cast<int>(frame.normal.size());
  ShapeData shape;
  shape.h.assign(n_normal, MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      VectorXd w(m);
      for (int c = 0; c < m; ++c) {
        w(c) = A.col(i).dot(fd.second[c] * A.col(j));
      }
      for (int r = 0; r < n_normal; ++r) {
        const double v = frame.normal[r].dot(w);
        shape.h[r](i, j) = v;
        shape.h[r](j, i) = v;
      }
    }
  }
  std::tie(shape.H, shape.H_norm_sq) = mean_curvature(shape, n);
  return shape;
}

// Intrinsic curvature components in an orthonormal frame;
// R(i,j,k,l) = R(e_i, e_j, e_k, e_l), K(e_i, e_j) = R(i,j,i,j).
struct CurvatureData {
  int n = 0;
  std::vector<double> R;

  explicit CurvatureData(int dim = 0)
      : n(dim), R(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  double operator()(int i, int j, int k, int l) const {
    return R[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  }
  double& at(int i, int j, int k, int l) {
    return R[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  }
};

// Gauss equation:
//   R(e_i,e_j,e_k,e_l) = R~(e_i,e_j,e_k,e_l) + sum_r (h^r_ik h^r_jl - h^r_il h^r_jk)
inline CurvatureData gauss_curvature(const AmbientSpaceForm& ambient,
                                     const AdaptedFrame& frame,
                                     const ShapeData& shape) {
  const int n = static_cast<int>(frame.tangent.size());
  const bool flat = ambient.kind() == AmbientKind::euclidean ||
                    (ambient.is_complex() && ambient.curvature() == 0.0);
  CurvatureData curv(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double val = flat ? 0.0
                            : ambient_curvature(ambient, frame.tangent[i],
                                                frame.tangent[j], frame.tangent[k],
                                                frame.tangent[l]);
          for (const MatrixXd& h : shape.h) {
            val += h(i, k) * h(j, l) - h(i, l) * h(j, k);
          }
          curv.at(i, j, k, l) = val;
        }
      }
    }
  }
  return curv;
}

// Ric(X) = sum_{j>=2} R(e_1, e_j, e_1, e_j), for a frame built with e_1 = X.
inline double ricci_direction(const CurvatureData& curv) {
  double ric = 0.0;
  for (int j = 1; j < curv.n; ++j) ric += curv(0, j, 0, j);
  return ric;
}

inline double sectional(const CurvatureData& curv, int i, int j) {
  if (i == j) throw argument_error("sectional: plane requires i != j");
  if (i < 0 || j < 0 || i >= curv.n || j >= curv.n) {
    throw argument_error("sectional: index out of range");
  }
  return curv(i, j, i, j);
}

// ---------------------------------------------------------------------------
// Independent intrinsic oracle: curvature purely from the pullback metric via
// finite-difference Christoffel symbols. Fourth-order stencils throughout so
// the nested differentiation stays well under the 1e-4 comparison tolerance.

struct OracleOptions {
  double step_jacobian = 1e-4;
  double step_metric = 1e-3;
  double step_gamma = 5e-3;
};

namespace detail {

// 4th-order central difference of a matrix-valued function in coordinate j.
template <typename F>
MatrixXd d4_central(const F& f, const VectorXd& u, int j, double h) {
  VectorXd u1 = u, u2 = u, u3 = u, u4 = u;
  u1(j) += h;
  u2(j) -= h;
  u3(j) += 2.0 * h;
  u4(j) -= 2.0 * h;
  return (8.0 * (f(u1) - f(u2)) - (f(u3) - f(u4))) / (12.0 * h);
}

inline MatrixXd oracle_jacobian(const Immersion& imm, const VectorXd& u,
                                double step) {
  if (imm.analytic_jacobian) return imm.analytic_jacobian(u);
  MatrixXd J(imm.dim_ambient, imm.dim_domain);
  auto eval = [&](const VectorXd& p) {
    return MatrixXd(checked_eval(imm.evaluate, p, "oracle jacobian stencil"));
  };
  for (int j = 0; j < imm.dim_domain; ++j) {
    const double h = step * std::max(1.0, std::abs(u(j)));
    J.col(j) = d4_central(eval, u, j, h);
  }
  return J;
}

} // namespace detail

// Coordinate-basis curvature tensor from finite-difference Christoffel
// symbols: R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma Gamma terms,
// lowered to R(i,j,k,l) = g_km R^m_ijl (same 4-tensor convention as above).
inline CurvatureData christoffel_oracle(const Immersion& imm, const VectorXd& point,
                                        const Tolerances& tol = {},
                                        const OracleOptions& opts = {}) {
  const int n = imm.dim_domain;
  const double margin = 2.0 * opts.step_gamma + 2.0 * opts.step_metric +
                        2.0 * opts.step_jacobian;
  require_interior(imm, point, margin);

  auto metric = [&](const VectorXd& u) -> MatrixXd {
    const MatrixXd J = detail::oracle_jacobian(imm, u, opts.step_jacobian);
    return J.transpose() * J;
  };

  // Gamma^l_ij packed as a stack of n matrices: gamma.block(l*n, 0, n, n).
  auto christoffel = [&](const VectorXd& u) -> MatrixXd {
    const MatrixXd g = metric(u);
    Eigen::LDLT<MatrixXd> ldlt(g);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw domain_error("christoffel_oracle: metric not positive definite");
    }
    std::vector<MatrixXd> dg(n);
    for (int k = 0; k < n; ++k) {
      const double h = opts.step_metric * std::max(1.0, std::abs(u(k)));
      dg[k] = detail::d4_central(metric, u, k, h);
    }
    MatrixXd lowered(n * n, n); // (i*n+j, m) = 1/2 (d_i g_jm + d_j g_im - d_m g_ij)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int m = 0; m < n; ++m) {
          lowered(i * n + j, m) =
              0.5 * (dg[i](j, m) + dg[j](i, m) - dg[m](i, j));
        }
      }
    }
    const MatrixXd raised = ldlt.solve(lowered.transpose()); // (l, i*n+j)
    MatrixXd gamma(n * n, n);
    for (int l = 0; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) gamma.block(l * n, 0, n, n)(i, j) = raised(l, i * n + j);
      }
    }
    return gamma;
  };

  const MatrixXd gamma0 = christoffel(point);
  std::vector<MatrixXd> dgamma(n); // dgamma[k] = d_k Gamma (stacked layout)
  for (int k = 0; k < n; ++k) {
    const double h = opts.step_gamma * std::max(1.0, std::abs(point(k)));
    dgamma[k] = detail::d4_central(christoffel, point, k, h);
  }
  const MatrixXd g0 = metric(point);

  auto G = [&](int l, int i, int j) { return gamma0(l * n + i, j); };
  auto dG = [&](int k, int l, int i, int j) { return dgamma[k](l * n + i, j); };

  CurvatureData curv(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        // R^m_{ijl}
        VectorXd Rm(n);
        for (int mm = 0; mm < n; ++mm) {
          double v = dG(i, mm, j, l) - dG(j, mm, i, l);
          for (int s = 0; s < n; ++s) {
            v += G(mm, i, s) * G(s, j, l) - G(mm, j, s) * G(s, i, l);
          }
          Rm(mm) = v;
        }
        for (int k = 0; k < n; ++k) {
          curv.at(i, j, k, l) = g0.row(k).dot(Rm);
        }
      }
    }
  }
  return curv;
}

// Coefficients of the frame's tangent vectors in parameter coordinates:
// column i solves J a = e_i.
inline MatrixXd tangent_coefficients(const Immersion& imm, const AdaptedFrame& frame,
                                     const Tolerances& tol = {}) {
  const MatrixXd J = jacobian_at(imm, frame.point, tol);
  MatrixXd E(imm.dim_ambient, static_cast<int>(frame.tangent.size()));
  for (std::size_t i = 0; i < frame.tangent.size(); ++i) {
    E.col(static_cast<int>(i)) = frame.tangent[i];
  }
  return (J.transpose() * J).ldlt().solve(J.transpose() * E);
}

// Change of basis of a coordinate-basis curvature tensor into a frame whose
// vectors have parameter coefficients in the columns of A.
inline CurvatureData curvature_in_frame(const CurvatureData& coord,
                                        const MatrixXd& A) {
  const int n = coord.n;
  CurvatureData out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                  v += coord(p, q, r, s) * A(p, i) * A(q, j) * A(r, k) * A(s, l);
                }
          out.at(i, j, k, l) = v;
        }
  return out;
}

// Totally-real / Lagrangian predicate for a tangent frame in a complex
// ambient: totally real iff max |<J e_i, e_j>| over tangent pairs is below
// tolerance; Lagrangian additionally requires n = m/2.
struct LagrangianCheck {
  bool totally_real = false;
  bool lagrangian = false;
  double max_residual = 0.0;
};

inline LagrangianCheck lagrangian_check(const AmbientSpaceForm& space,
                                        const AdaptedFrame& frame,
                                        const Tolerances& tol = {}) {
  if (!space.is_complex()) {
    throw unsupported_error("lagrangian_check: ambient is not complex");
  }
  LagrangianCheck out;
  for (const VectorXd& ei : frame.tangent) {
    const VectorXd Jei = space.apply_J(ei);
    for (const VectorXd& ej : frame.tangent) {
      out.max_residual = std::max(out.max_residual, std::abs(Jei.dot(ej)));
    }
  }
  const double check_tol = std::max(tol.eq_tol, 1e-6);
  out.totally_real = out.max_residual < check_tol;
  out.lagrangian = out.totally_real &&
                   2 * static_cast<int>(frame.tangent.size()) == space.embed_dim();
  return out;
}

} // namespace ricci
