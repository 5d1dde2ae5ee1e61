#pragma once

#include <cmath>
#include <vector>

#include "ricci/geometry.hpp"
#include "ricci/rng.hpp"

namespace ricci {

// 2-plane in the tangent space, spanned by an orthonormal pair expressed in
// the frame coordinates of the CurvatureData it was computed from.
struct TangentPlane {
  VectorXd X;
  VectorXd Y;
  double K = 0.0;
  bool converged = true;
};

namespace detail {

inline double plane_K(const CurvatureData& curv, const VectorXd& X,
                      const VectorXd& Y) {
  const int n = curv.n;
  double v = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          v += curv(p, q, r, s) * X(p) * Y(q) * X(r) * Y(s);
        }
  return v;
}

// dK/dX_a = 2 sum R_{aqrs} Y_q X_r Y_s (by pair symmetry of R).
inline VectorXd plane_K_grad_X(const CurvatureData& curv, const VectorXd& X,
                               const VectorXd& Y) {
  const int n = curv.n;
  VectorXd g = VectorXd::Zero(n);
  for (int a = 0; a < n; ++a) {
    double v = 0.0;
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) v += curv(a, q, r, s) * Y(q) * X(r) * Y(s);
    g(a) = 2.0 * v;
  }
  return g;
}

inline VectorXd plane_K_grad_Y(const CurvatureData& curv, const VectorXd& X,
                               const VectorXd& Y) {
  const int n = curv.n;
  VectorXd g = VectorXd::Zero(n);
  for (int a = 0; a < n; ++a) {
    double v = 0.0;
    for (int p = 0; p < n; ++p)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) v += curv(p, a, r, s) * X(p) * X(r) * Y(s);
    g(a) = 2.0 * v;
  }
  return g;
}

// Gram-Schmidt retraction back onto orthonormal pairs.
inline bool retract_pair(VectorXd& X, VectorXd& Y) {
  if (X.norm() < 1e-14) return false;
  X /= X.norm();
  Y -= X.dot(Y) * X;
  if (Y.norm() < 1e-14) return false;
  Y /= Y.norm();
  return true;
}

} // namespace detail

// Out-of-plane component of R(U,V)W over U, V, W in the plane. By bilinearity
// and antisymmetry every such value reduces to the two columns
//   a = (R(X,Y)X)^perp,  b = (R(X,Y)Y)^perp,
// and the residual is the largest singular value of [a b] — the sup of
// ||(R(U,V)W)^perp|| over unit U, V, W in the plane, which is invariant under
// rotations of the basis (X, Y). Zero within tolerance iff the plane is
// critical for the sectional curvature.
inline double critical_residual(const CurvatureData& curv,
                                const TangentPlane& plane,
                                const Tolerances& tol = {}) {
  const int n = curv.n;
  const VectorXd& X = plane.X;
  const VectorXd& Y = plane.Y;
  if (std::abs(X.norm() - 1.0) > 1e2 * tol.eq_tol ||
      std::abs(Y.norm() - 1.0) > 1e2 * tol.eq_tol ||
      std::abs(X.dot(Y)) > 1e2 * tol.eq_tol) {
    throw argument_error("critical_residual: plane basis not orthonormal");
  }
  MatrixXd cols(n, 2);
  const VectorXd* basis[2] = {&X, &Y};
  for (int w = 0; w < 2; ++w) {
    const VectorXd& W = *basis[w];
    VectorXd RXYW(n); // <R(X,Y)W, e_a> = R(X,Y, e_a, W)
    for (int a = 0; a < n; ++a) {
      double val = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          for (int s = 0; s < n; ++s) {
            val += curv(p, q, a, s) * X(p) * Y(q) * W(s);
          }
      RXYW(a) = val;
    }
    RXYW -= X.dot(RXYW) * X;
    RXYW -= Y.dot(RXYW) * Y;
    cols.col(w) = RXYW;
  }
  const Eigen::Matrix2d gram = cols.transpose() * cols;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// Projected-gradient descent on orthonormal pairs with seeded multi-start.
// Step halving on non-decrease; returns the best plane over all restarts.
inline TangentPlane minimize_sectional(const CurvatureData& curv, int restarts,
                                       std::uint64_t seed,
                                       const Tolerances& tol = {},
                                       int max_iterations = 500) {
  const int n = curv.n;
  if (n < 2) throw argument_error("minimize_sectional: need n >= 2");

  TangentPlane best;
  best.K = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(Rng::sub_seed(seed, static_cast<std::uint64_t>(r)));
    VectorXd X(n), Y(n);
    do {
      for (int i = 0; i < n; ++i) X(i) = rng.normal();
      for (int i = 0; i < n; ++i) Y(i) = rng.normal();
    } while (!detail::retract_pair(X, Y));

    double step = 0.1;
    double K = detail::plane_K(curv, X, Y);
    bool converged = false;
    for (int it = 0; it < max_iterations; ++it) {
      const VectorXd gX = detail::plane_K_grad_X(curv, X, Y);
      const VectorXd gY = detail::plane_K_grad_Y(curv, X, Y);
      // Tangential part w.r.t. the orthonormality constraints.
      VectorXd tX = gX - X.dot(gX) * X - Y.dot(gX) * Y;
      VectorXd tY = gY - X.dot(gY) * X - Y.dot(gY) * Y;
      const double gnorm = std::sqrt(tX.squaredNorm() + tY.squaredNorm());
      if (gnorm < 1e-10) {
        converged = true;
        break;
      }
      VectorXd Xn = X - step * gX;
      VectorXd Yn = Y - step * gY;
      if (!detail::retract_pair(Xn, Yn)) {
        step *= 0.5;
        continue;
      }
      const double Kn = detail::plane_K(curv, Xn, Yn);
      if (Kn < K - 1e-15) {
        X = Xn;
        Y = Yn;
        K = Kn;
      } else {
        step *= 0.5;
        if (step < 1e-12) {
          converged = true;
          break;
        }
      }
    }
    if (K < best.K) {
      best.X = X;
      best.Y = Y;
      best.K = K;
      best.converged = converged;
    }
  }
  (void)tol;
  return best;
}

// Deterministic grid oracle over orthonormal pairs, n <= 4. Coarse
// hyperspherical-angle grid followed by local refinement rounds around the
// best cell.
inline TangentPlane plane_scan(const CurvatureData& curv, int grid_resolution = 12) {
  const int n = curv.n;
  if (n < 2) throw argument_error("plane_scan: need n >= 2");
  if (n > 4) {
    throw unsupported_error("plane_scan: only n <= 4 (use minimize_sectional)");
  }
  const int ax = n - 1;     // angles for X on S^{n-1}
  const int ay = n - 2;     // angles for Y on the unit sphere of X-perp
  const int total = ax + ay;
  const double pi = 3.14159265358979323846;

  auto sphere_point = [](const std::vector<double>& ang, int off, int d) {
    // d = vector dimension; d-1 angles
    VectorXd v(d);
    double prod = 1.0;
    for (int i = 0; i < d - 1; ++i) {
      v(i) = prod * std::cos(ang[off + i]);
      prod *= std::sin(ang[off + i]);
    }
    v(d - 1) = prod;
    return v;
  };

  auto perp_basis = [&](const VectorXd& X) {
    // deterministic orthonormal basis of X-perp: drop the axis most aligned
    // with X, Gram-Schmidt the rest.
    int drop = 0;
    for (int i = 1; i < n; ++i) {
      if (std::abs(X(i)) > std::abs(X(drop))) drop = i;
    }
    std::vector<VectorXd> basis = {X};
    MatrixXd B(n, n - 1);
    int col = 0;
    for (int i = 0; i < n; ++i) {
      if (i == drop) continue;
      VectorXd e = VectorXd::Zero(n);
      e(i) = 1.0;
      VectorXd r = detail::gs_residual(basis, e);
      r /= r.norm();
      basis.push_back(r);
      B.col(col++) = r;
    }
    return B;
  };

  auto eval_angles = [&](const std::vector<double>& ang, TangentPlane& out) {
    const VectorXd X = sphere_point(ang, 0, n);
    VectorXd Y;
    if (n == 2) {
      Y = VectorXd(2);
      Y(0) = -X(1);
      Y(1) = X(0);
    } else {
      const MatrixXd B = perp_basis(X);
      Y = B * sphere_point(ang, ax, n - 1);
    }
    out.X = X;
    out.Y = Y;
    out.K = detail::plane_K(curv, X, Y);
  };

  std::vector<double> lo(total, 0.0), hi(total, pi);
  std::vector<double> best_ang(total, 0.5 * pi);
  TangentPlane best;
  best.K = std::numeric_limits<double>::infinity();

  const int rounds = 7;
  int res = grid_resolution;
  for (int round = 0; round < rounds; ++round) {
    std::vector<int> idx(total, 0);
    std::vector<double> ang(total);
    bool done = false;
    while (!done) {
      for (int i = 0; i < total; ++i) {
        ang[i] = lo[i] + (hi[i] - lo[i]) * (idx[i] + 0.5) / res;
      }
      TangentPlane cand;
      eval_angles(ang, cand);
      if (cand.K < best.K) {
        best = cand;
        best_ang = ang;
      }
      int d = 0;
      while (d < total && ++idx[d] == res) {
        idx[d] = 0;
        ++d;
      }
      done = (d == total);
    }
    // Shrink around the best cell for the next round.
    for (int i = 0; i < total; ++i) {
      const double w = (hi[i] - lo[i]) / res;
      lo[i] = best_ang[i] - 1.5 * w;
      hi[i] = best_ang[i] + 1.5 * w;
    }
    res = 6;
  }
  best.converged = true;
  return best;
}

} // namespace ricci
