#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ricci/errors.hpp"

namespace ricci {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Tolerances {
  double fd_step = 1e-5;        // base step, first derivatives
  double fd_step_second = 1e-4; // base step, second derivatives
  double eq_tol = 1e-8;         // equality / zero tests
  double psd_tol = 1e-8;        // eigenvalue sign slack

  void validate() const {
    if (!(fd_step > 0.0) || !(fd_step_second > 0.0) || !(eq_tol > 0.0) ||
        !(psd_tol > 0.0)) {
      throw argument_error("Tolerances: all fields must be strictly positive");
    }
    if (eq_tol < std::numeric_limits<double>::epsilon()) {
      throw argument_error("Tolerances: eq_tol below machine epsilon");
    }
  }
};

enum class Definiteness {
  negative_definite,
  negative_semidefinite,
  indefinite,
  positive_semidefinite,
  positive_definite,
};

inline const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return "negative-definite";
    case Definiteness::negative_semidefinite: return "negative-semidefinite";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::positive_semidefinite: return "positive-semidefinite";
    case Definiteness::positive_definite: return "positive-definite";
  }
  return "?";
}

struct SymmetricSpectrum {
  VectorXd eigenvalues; // sorted ascending
  double psd_tol = 1e-8;

  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }

  bool positive_definite() const { return min_eigenvalue() > psd_tol; }
  bool negative_definite() const { return max_eigenvalue() < -psd_tol; }
  bool positive_semidefinite() const { return min_eigenvalue() >= -psd_tol; }
  bool negative_semidefinite() const { return max_eigenvalue() <= psd_tol; }

  Definiteness definiteness() const {
    if (positive_definite()) return Definiteness::positive_definite;
    if (negative_definite()) return Definiteness::negative_definite;
    if (positive_semidefinite()) return Definiteness::positive_semidefinite;
    if (negative_semidefinite()) return Definiteness::negative_semidefinite;
    return Definiteness::indefinite;
  }
};

using MapEvaluator = std::function<VectorXd(const VectorXd&)>;
using InnerProduct = std::function<double(const VectorXd&, const VectorXd&)>;

struct FdDerivatives {
  MatrixXd jacobian;           // (m x n), entry (i,j) = d(component i)/d(param j)
  std::vector<MatrixXd> second; // second[c](i,j) = d^2(component c)/(du_i du_j)
};

namespace detail {

inline VectorXd checked_eval(const MapEvaluator& map, const VectorXd& x,
                             const char* what) {
  VectorXd y;
  try {
    y = map(x);
  } catch (const std::exception& e) {
    throw domain_error(std::string("map evaluation failed at ") + what + ": " +
                       e.what());
  }
  if (!y.allFinite()) {
    throw domain_error(std::string("map evaluation non-finite at ") + what);
  }
  return y;
}

} // namespace detail

// Central finite differences with per-coordinate step scaling
// fd_step * max(1, |x_j|). The second-derivative tensor is symmetric in its
// two parameter slots by construction.
inline FdDerivatives fd_derivatives(const MapEvaluator& map, const VectorXd& x,
                                    const Tolerances& tol = {}) {
  tol.validate();
  const int n = static_cast<int>(x.size());
  const VectorXd f0 = detail::checked_eval(map, x, "base point");
  const int m = static_cast<int>(f0.size());

  auto step1 = [&](int j) { return tol.fd_step * std::max(1.0, std::abs(x(j))); };
  auto step2 = [&](int j) {
    return tol.fd_step_second * std::max(1.0, std::abs(x(j)));
  };
  auto eval_at = [&](const VectorXd& p, int i, int j) {
    std::string where = "stencil offset in coords (" + std::to_string(i) + "," +
                        std::to_string(j) + ")";
    return detail::checked_eval(map, p, where.c_str());
  };

  FdDerivatives out;
  out.jacobian.resize(m, n);
  for (int j = 0; j < n; ++j) {
    const double h = step1(j);
    VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    out.jacobian.col(j) = (eval_at(xp, j, j) - eval_at(xm, j, j)) / (2.0 * h);
  }

  out.second.assign(m, MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    const double hi = step2(i);
    VectorXd xp = x, xm = x;
    xp(i) += hi;
    xm(i) -= hi;
    const VectorXd dii =
        (eval_at(xp, i, i) - 2.0 * f0 + eval_at(xm, i, i)) / (hi * hi);
    for (int c = 0; c < m; ++c) out.second[c](i, i) = dii(c);
    for (int j = i + 1; j < n; ++j) {
      const double hj = step2(j);
      VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp(i) += hi; xpp(j) += hj;
      xpm(i) += hi; xpm(j) -= hj;
      xmp(i) -= hi; xmp(j) += hj;
      xmm(i) -= hi; xmm(j) -= hj;
      const VectorXd dij = (eval_at(xpp, i, j) - eval_at(xpm, i, j) -
                            eval_at(xmp, i, j) + eval_at(xmm, i, j)) /
                           (4.0 * hi * hj);
      for (int c = 0; c < m; ++c) {
        out.second[c](i, j) = dij(c);
        out.second[c](j, i) = dij(c);
      }
    }
  }
  return out;
}

// Classical Gram-Schmidt with one re-orthogonalization pass. The first output
// is parallel to the first input. Throws rank_deficiency_error with the index
// of the offending vector.
inline std::vector<VectorXd> orthonormalize(const std::vector<VectorXd>& vectors,
                                            const InnerProduct& ip,
                                            const Tolerances& tol = {}) {
  std::vector<VectorXd> out;
  out.reserve(vectors.size());
  for (int k = 0; k < static_cast<int>(vectors.size()); ++k) {
    VectorXd v = vectors[k];
    const double scale = std::sqrt(std::max(ip(v, v), 0.0));
    for (int pass = 0; pass < 2; ++pass) {
      for (const VectorXd& e : out) v -= ip(e, v) * e;
    }
    const double nrm = std::sqrt(std::max(ip(v, v), 0.0));
    if (nrm < tol.eq_tol * std::max(1.0, scale)) {
      throw rank_deficiency_error(
          "orthonormalize: vector " + std::to_string(k) +
              " is dependent on its predecessors",
          k);
    }
    out.push_back(v / nrm);
  }
  return out;
}

inline std::vector<VectorXd> orthonormalize(const std::vector<VectorXd>& vectors,
                                            const Tolerances& tol = {}) {
  return orthonormalize(
      vectors, [](const VectorXd& a, const VectorXd& b) { return a.dot(b); },
      tol);
}

// Eigenvalues of the symmetrized matrix, classified with psd_tol slack.
inline SymmetricSpectrum definiteness(const MatrixXd& matrix,
                                      const Tolerances& tol = {}) {
  if (matrix.rows() != matrix.cols()) {
    throw argument_error("definiteness: matrix must be square");
  }
  const MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("definiteness: eigensolver failed to converge");
  }
  SymmetricSpectrum spec;
  spec.eigenvalues = solver.eigenvalues(); // ascending
  spec.psd_tol = tol.psd_tol;
  return spec;
}

} // namespace ricci
