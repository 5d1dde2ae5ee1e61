#pragma once

#include <cmath>
#include <string>

#include "ricci/numerics.hpp"

namespace ricci {

enum class AmbientKind { euclidean, sphere, complex_euclidean };

// Ambient model spaces. The sphere model is realized as the radius-1/sqrt(c)
// hypersphere in flat coordinates, so embed_dim() = manifold dim + 1 there.
//
// Curvature 4-tensor convention used throughout:
//   R(X, Y, Z, W) = <R(X, Y) W, Z>,   K(X, Y) = R(X, Y, X, Y)
// so the round sphere and the holomorphic planes of a complex space form with
// c > 0 come out with positive sectional values.
class AmbientSpaceForm {
public:
  static AmbientSpaceForm euclidean(int m) {
    if (m < 1 || m > 16) throw argument_error("euclidean: dimension out of range");
    return AmbientSpaceForm(AmbientKind::euclidean, m, m, 0.0);
  }

  static AmbientSpaceForm sphere(int m, double c) {
    if (m < 1 || m + 1 > 16) throw argument_error("sphere: dimension out of range");
    if (!(c > 0.0)) throw argument_error("sphere: requires c > 0");
    return AmbientSpaceForm(AmbientKind::sphere, m, m + 1, c);
  }

  // Complex Euclidean C^n with the standard complex structure, real dim 2n,
  // holomorphic curvature 0.
  static AmbientSpaceForm complex_euclidean(int n) {
    if (n < 1 || 2 * n > 16) {
      throw argument_error("complex_euclidean: dimension out of range");
    }
    return AmbientSpaceForm(AmbientKind::complex_euclidean, 2 * n, 2 * n, 0.0);
  }

  AmbientKind kind() const { return kind_; }
  int manifold_dim() const { return dim_; }
  int embed_dim() const { return embed_dim_; }
  double curvature() const { return c_; }
  double radius() const { return 1.0 / std::sqrt(c_); }

  bool is_complex() const { return kind_ == AmbientKind::complex_euclidean; }

  // Standard J in coordinates (x_1..x_n, y_1..y_n): J(x, y) = (-y, x).
  VectorXd apply_J(const VectorXd& v) const {
    require_complex("apply_J");
    const int n = dim_ / 2;
    if (v.size() != dim_) throw argument_error("apply_J: dimension mismatch");
    VectorXd out(dim_);
    out.head(n) = -v.tail(n);
    out.tail(n) = v.head(n);
    return out;
  }

  MatrixXd J_matrix() const {
    require_complex("J_matrix");
    const int n = dim_ / 2;
    MatrixXd J = MatrixXd::Zero(dim_, dim_);
    J.topRightCorner(n, n) = -MatrixXd::Identity(n, n);
    J.bottomLeftCorner(n, n) = MatrixXd::Identity(n, n);
    return J;
  }

  std::string name() const {
    switch (kind_) {
      case AmbientKind::euclidean:
        return "euclidean(" + std::to_string(dim_) + ")";
      case AmbientKind::sphere:
        return "sphere(" + std::to_string(dim_) + ", c=" + std::to_string(c_) + ")";
      case AmbientKind::complex_euclidean:
        return "complex_euclidean(" + std::to_string(dim_ / 2) + ")";
    }
    return "?";
  }

private:
  AmbientSpaceForm(AmbientKind k, int dim, int embed, double c)
      : kind_(k), dim_(dim), embed_dim_(embed), c_(c) {}

  void require_complex(const char* op) const {
    if (!is_complex()) {
      throw unsupported_error(std::string(op) + ": ambient is not complex");
    }
  }

  AmbientKind kind_;
  int dim_;       // manifold dimension of the ambient model
  int embed_dim_; // flat coordinate dimension
  double c_;
};

// Curvature tensor of a complex space form of holomorphic curvature c,
// evaluated as pure arithmetic for arbitrary c:
//   R(X,Y)Z = c/4 { g(Y,Z)X - g(X,Z)Y + g(JY,Z)JX - g(JX,Z)JY + 2 g(X,JY)JZ }
// returned as R(X,Y,Z,W) = <R(X,Y)W, Z>.
inline double complex_space_form_curvature(double c, const AmbientSpaceForm& space,
                                           const VectorXd& X, const VectorXd& Y,
                                           const VectorXd& Z, const VectorXd& W) {
  const VectorXd JX = space.apply_J(X);
  const VectorXd JY = space.apply_J(Y);
  const VectorXd JW = space.apply_J(W);
  const VectorXd RXYW = (c / 4.0) * (Y.dot(W) * X - X.dot(W) * Y +
                                     JY.dot(W) * JX - JX.dot(W) * JY +
                                     2.0 * X.dot(JY) * JW);
  return RXYW.dot(Z);
}

// Ambient curvature R~(X,Y,Z,W) of the model space. Flat models give 0; the
// sphere gives c (<X,Z><Y,W> - <X,W><Y,Z>).
inline double ambient_curvature(const AmbientSpaceForm& space, const VectorXd& X,
                                const VectorXd& Y, const VectorXd& Z,
                                const VectorXd& W) {
  switch (space.kind()) {
    case AmbientKind::euclidean:
      return 0.0;
    case AmbientKind::sphere:
      return space.curvature() * (X.dot(Z) * Y.dot(W) - X.dot(W) * Y.dot(Z));
    case AmbientKind::complex_euclidean:
      return complex_space_form_curvature(space.curvature(), space, X, Y, Z, W);
  }
  return 0.0;
}

// Overload validating sphere tangency at the given base point.
inline double ambient_curvature(const AmbientSpaceForm& space,
                                const VectorXd& base_point, const VectorXd& X,
                                const VectorXd& Y, const VectorXd& Z,
                                const VectorXd& W, const Tolerances& tol = {}) {
  if (space.kind() == AmbientKind::sphere) {
    const double r = base_point.norm();
    for (const VectorXd* v : {&X, &Y, &Z, &W}) {
      if (std::abs(base_point.dot(*v)) > 1e2 * tol.eq_tol * std::max(1.0, r) *
                                             std::max(1.0, v->norm())) {
        throw argument_error("ambient_curvature: vector not tangent to sphere");
      }
    }
  }
  return ambient_curvature(space, X, Y, Z, W);
}

} // namespace ricci
