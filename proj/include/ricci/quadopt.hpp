#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ricci/numerics.hpp"
#include "ricci/rng.hpp"

namespace ricci {

// Quadratic objective families maximized over the hyperplane sum(x) = k.
//   chen : f(x) = sum_{j>=2} x_1 x_j
//   lagr1: f(x) = sum_{j>=2} x_1 x_j - sum_{j>=2} x_j^2
//   lagr2: f(x) = sum_{j>=2} x_1 x_j - x_1^2
// lagr2 represents every index-r problem with r >= 2; they coincide up to
// relabeling.
enum class Family { chen, lagr1, lagr2 };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::chen: return "chen";
    case Family::lagr1: return "lagr1";
    case Family::lagr2: return "lagr2";
  }
  return "?";
}

struct QuadraticFamily {
  Family family = Family::chen;
  int n = 2;

  QuadraticFamily(Family f, int dim) : family(f), n(dim) {
    if (n < 2) throw argument_error("QuadraticFamily: n must be >= 2");
  }
};

inline double evaluate(const QuadraticFamily& fam, const VectorXd& x) {
  if (x.size() != fam.n) {
    throw argument_error("evaluate: vector length does not match family dimension");
  }
  const double tail = x.sum() - x(0);
  const double base = x(0) * tail;
  switch (fam.family) {
    case Family::chen:
      return base;
    case Family::lagr1:
      return base - (x.squaredNorm() - x(0) * x(0));
    case Family::lagr2:
      return base - x(0) * x(0);
  }
  return 0.0;
}

inline VectorXd gradient(const QuadraticFamily& fam, const VectorXd& x) {
  const int n = fam.n;
  const double tail = x.sum() - x(0);
  VectorXd g = VectorXd::Constant(n, x(0));
  g(0) = tail;
  switch (fam.family) {
    case Family::chen:
      break;
    case Family::lagr1:
      for (int j = 1; j < n; ++j) g(j) -= 2.0 * x(j);
      break;
    case Family::lagr2:
      g(0) -= 2.0 * x(0);
      break;
  }
  return g;
}

inline MatrixXd hessian(const QuadraticFamily& fam) {
  const int n = fam.n;
  MatrixXd H = MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) H(0, j) = H(j, 0) = 1.0;
  if (fam.family == Family::lagr1) {
    for (int j = 1; j < n; ++j) H(j, j) = -2.0;
  } else if (fam.family == Family::lagr2) {
    H(0, 0) = -2.0;
  }
  return H;
}

struct KktSolution {
  VectorXd point;
  double multiplier = 0.0;
  double objective_value = 0.0;
  // Orthonormal directions along which the objective is constant at the
  // maximum (empty when the maximizer is unique).
  std::vector<VectorXd> max_set_directions;
};

// Closed-form KKT maximizer on sum(x) = k. chen and lagr2 pin only x_1 and the
// tail sum; the canonical representative splits the tail equally.
inline KktSolution kkt_solve(const QuadraticFamily& fam, double k) {
  const int n = fam.n;
  KktSolution sol;
  sol.point.resize(n);
  switch (fam.family) {
    case Family::chen:
      sol.point(0) = k / 2.0;
      sol.point.tail(n - 1).setConstant(k / (2.0 * (n - 1)));
      sol.multiplier = k / 2.0;
      break;
    case Family::lagr1: {
      const double a = k / (2.0 * n);
      sol.point(0) = (n + 1) * a;
      sol.point.tail(n - 1).setConstant(a);
      sol.multiplier = (n - 1) * a;
      break;
    }
    case Family::lagr2:
      sol.point(0) = k / 4.0;
      sol.point.tail(n - 1).setConstant(3.0 * k / (4.0 * (n - 1)));
      sol.multiplier = k / 4.0;
      break;
  }
  sol.objective_value = evaluate(fam, sol.point);
  if (fam.family != Family::lagr1 && n > 2) {
    // Flat of equivalent maximizers: x_1 fixed, tail sum fixed.
    std::vector<VectorXd> dirs;
    for (int j = 1; j < n - 1; ++j) {
      VectorXd d = VectorXd::Zero(n);
      d(j) = 1.0;
      d(j + 1) = -1.0;
      dirs.push_back(d);
    }
    sol.max_set_directions = orthonormalize(dirs);
  }
  return sol;
}

inline double closed_form_max(const QuadraticFamily& fam, double k) {
  switch (fam.family) {
    case Family::chen:
      return k * k / 4.0;
    case Family::lagr1:
      return (fam.n - 1) * k * k / (4.0 * fam.n);
    case Family::lagr2:
      return k * k / 8.0;
  }
  return 0.0;
}

struct MaxCertificate {
  double tangential_gradient_norm = 0.0;
  SymmetricSpectrum restricted_hessian_spectrum;
  bool is_global_max = false;
};

namespace detail {

// Orthonormal basis of the hyperplane tangent {X : sum X_i = 0}.
inline MatrixXd hyperplane_basis(int n) {
  std::vector<VectorXd> dirs;
  for (int j = 0; j < n - 1; ++j) {
    VectorXd d = VectorXd::Zero(n);
    d(j) = 1.0;
    d(j + 1) = -1.0;
    dirs.push_back(d);
  }
  const std::vector<VectorXd> on = orthonormalize(dirs);
  MatrixXd B(n, n - 1);
  for (int j = 0; j < n - 1; ++j) B.col(j) = on[j];
  return B;
}

} // namespace detail

// First- and second-order certificate for a constrained maximum on the
// hyperplane: gradient normal to the constraint, and the Hessian restricted
// to the tangent space with no eigenvalue above psd_tol. The constraint set
// is totally geodesic in R^n, so the restricted bilinear form is the plain
// Hessian; concavity of the restriction makes the local certificate global.
inline MaxCertificate certify_constrained_max(const QuadraticFamily& fam, double k,
                                              const VectorXd& point,
                                              const Tolerances& tol = {}) {
  const int n = fam.n;
  if (point.size() != n) {
    throw argument_error("certify_constrained_max: point dimension mismatch");
  }
  if (std::abs(point.sum() - k) > tol.eq_tol * std::max(1.0, std::abs(k))) {
    throw argument_error("certify_constrained_max: point is off the hyperplane");
  }
  const VectorXd g = gradient(fam, point);
  const VectorXd tangential = g - VectorXd::Constant(n, g.mean());
  const MatrixXd B = detail::hyperplane_basis(n);
  const MatrixXd restricted = B.transpose() * hessian(fam) * B;

  MaxCertificate cert;
  cert.tangential_gradient_norm = tangential.norm();
  cert.restricted_hessian_spectrum = definiteness(restricted, tol);
  cert.is_global_max =
      cert.tangential_gradient_norm < tol.eq_tol &&
      cert.restricted_hessian_spectrum.max_eigenvalue() <= tol.psd_tol;
  return cert;
}

struct BruteForceResult {
  double empirical_max = 0.0;
  VectorXd arg;
};

// Seeded sampling oracle: uniform points on the hyperplane patch
// {sum x = k, ||x - centroid|| <= 4|k| + 4}. The canonical KKT point is always
// in the sample set. The stream is partitioned over a fixed number of logical
// workers so results are reproducible and parallelizable.
inline BruteForceResult brute_force_max(const QuadraticFamily& fam, double k,
                                        long samples, std::uint64_t seed,
                                        int workers = 4) {
  if (samples < 1) throw argument_error("brute_force_max: samples must be >= 1");
  const int n = fam.n;
  const double radius = 4.0 * std::abs(k) + 4.0;
  const double centroid = k / n;
  const double dim_exp = 1.0 / (n - 1);

  BruteForceResult best;
  best.arg = kkt_solve(fam, k).point;
  best.empirical_max = evaluate(fam, best.arg);

  std::vector<double> x(n);
  for (int w = 0; w < workers; ++w) {
    Rng rng(Rng::sub_seed(seed, static_cast<std::uint64_t>(w)));
    const long count = samples / workers + (w < samples % workers ? 1 : 0);
    for (long s = 0; s < count; ++s) {
      // Isotropic direction inside the hyperplane: mean-centered gaussian.
      double mean = 0.0;
      for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        mean += x[i];
      }
      mean /= n;
      double nrm2 = 0.0;
      for (int i = 0; i < n; ++i) {
        x[i] -= mean;
        nrm2 += x[i] * x[i];
      }
      if (nrm2 == 0.0) continue;
      const double scale =
          radius * std::pow(rng.uniform01(), dim_exp) / std::sqrt(nrm2);
      double x0 = centroid + scale * x[0];
      double tail = 0.0;
      for (int i = 1; i < n; ++i) tail += centroid + scale * x[i];
      // Inline evaluate() on the shifted sample.
      double val = x0 * tail;
      if (fam.family == Family::lagr1) {
        for (int i = 1; i < n; ++i) {
          const double xi = centroid + scale * x[i];
          val -= xi * xi;
        }
      } else if (fam.family == Family::lagr2) {
        val -= x0 * x0;
      }
      if (val > best.empirical_max) {
        best.empirical_max = val;
        best.arg.resize(n);
        best.arg(0) = x0;
        for (int i = 1; i < n; ++i) best.arg(i) = centroid + scale * x[i];
      }
    }
  }
  return best;
}

} // namespace ricci
