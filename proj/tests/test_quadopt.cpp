#include <catch2/catch_amalgamated.hpp>

#include "ricci/quadopt.hpp"
#include "ricci/rng.hpp"

using namespace ricci;

namespace {

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

} // namespace

TEST_CASE("evaluate: hand-checked values") {
  REQUIRE(evaluate(QuadraticFamily(Family::chen, 3), vec3(3, 2, 1)) == 9.0);
  REQUIRE(evaluate(QuadraticFamily(Family::lagr1, 3), vec3(4, 1, 1)) == 6.0);
  REQUIRE(evaluate(QuadraticFamily(Family::lagr2, 3), vec3(1, 2, 1)) == 2.0);
  REQUIRE_THROWS_AS(evaluate(QuadraticFamily(Family::chen, 3), VectorXd::Zero(2)),
                    argument_error);
  REQUIRE_THROWS_AS(QuadraticFamily(Family::chen, 1), argument_error);
}

TEST_CASE("gradient and hessian are consistent with evaluate") {
  Rng rng(21);
  for (Family fam : {Family::chen, Family::lagr1, Family::lagr2}) {
    const QuadraticFamily f(fam, 4);
    const MatrixXd H = hessian(f);
    REQUIRE((H - H.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int t = 0; t < 5; ++t) {
      VectorXd x(4);
      for (int i = 0; i < 4; ++i) x(i) = rng.uniform(-3.0, 3.0);
      // quadratic without linear term: f(x) = 1/2 x^T H x, grad = H x
      REQUIRE(std::abs(evaluate(f, x) - 0.5 * x.dot(H * x)) < 1e-12);
      REQUIRE((gradient(f, x) - H * x).norm() < 1e-12);
    }
  }
}

TEST_CASE("kkt_solve: closed-form points") {
  {
    const KktSolution s = kkt_solve(QuadraticFamily(Family::chen, 3), 6.0);
    REQUIRE(s.point(0) == 3.0);
    REQUIRE(std::abs(s.point.sum() - 6.0) < 1e-12);
    REQUIRE(s.objective_value == 9.0);
  }
  {
    const KktSolution s = kkt_solve(QuadraticFamily(Family::lagr1, 3), 6.0);
    REQUIRE((s.point - vec3(4, 1, 1)).norm() < 1e-12);
    REQUIRE(s.objective_value == 6.0);
    REQUIRE(s.max_set_directions.empty());
  }
  {
    const KktSolution s = kkt_solve(QuadraticFamily(Family::lagr2, 3), 4.0);
    REQUIRE(s.point(0) == 1.0);
    REQUIRE(s.objective_value == 2.0);
  }
}

TEST_CASE("kkt point satisfies stationarity: grad = multiplier * ones") {
  Rng rng(22);
  for (Family fam : {Family::chen, Family::lagr1, Family::lagr2}) {
    for (int n : {2, 3, 5, 8}) {
      const QuadraticFamily f(fam, n);
      const double k = rng.uniform(-10.0, 10.0);
      const KktSolution s = kkt_solve(f, k);
      const VectorXd g = gradient(f, s.point);
      REQUIRE((g - VectorXd::Constant(n, s.multiplier)).cwiseAbs().maxCoeff() <
              1e-10);
      REQUIRE(std::abs(s.point.sum() - k) < 1e-10 * std::max(1.0, std::abs(k)));
    }
  }
}

TEST_CASE("closed_form_max: hand-checked values and invariants") {
  REQUIRE(closed_form_max(QuadraticFamily(Family::chen, 3), 6.0) == 9.0);
  REQUIRE(closed_form_max(QuadraticFamily(Family::lagr1, 3), 6.0) == 6.0);
  REQUIRE(closed_form_max(QuadraticFamily(Family::lagr2, 5), 4.0) == 2.0);

  Rng rng(23);
  for (Family fam : {Family::chen, Family::lagr1, Family::lagr2}) {
    for (int n : {2, 4, 7}) {
      const QuadraticFamily f(fam, n);
      const double k = rng.uniform(-10.0, 10.0);
      const double s = rng.uniform(-3.0, 3.0);
      // Scaling: pure quadratics.
      REQUIRE(std::abs(closed_form_max(f, s * k) - s * s * closed_form_max(f, k)) <
              1e-9);
      // lagr2 max <= n(n-1)/4 * (k/n)^2, equality iff n = 2.
      const double rhs = n * (n - 1) / 4.0 * (k / n) * (k / n);
      const double lhs = closed_form_max(QuadraticFamily(Family::lagr2, n), k);
      REQUIRE(lhs <= rhs + 1e-12);
      if (n == 2) REQUIRE(std::abs(lhs - rhs) < 1e-12);
      else if (std::abs(k) > 1e-6) REQUIRE(lhs < rhs - 1e-12);
    }
  }
}

TEST_CASE("kkt objective equals closed form; oracle never exceeds it") {
  Rng rng(24);
  for (Family fam : {Family::chen, Family::lagr1, Family::lagr2}) {
    for (int n = 2; n <= 8; ++n) {
      const QuadraticFamily f(fam, n);
      for (int t = 0; t < 8; ++t) {
        const double k = rng.uniform(-10.0, 10.0);
        const double cf = closed_form_max(f, k);
        const KktSolution s = kkt_solve(f, k);
        REQUIRE(std::abs(s.objective_value - cf) <=
                1e-10 * std::max(1.0, std::abs(cf)));
        const BruteForceResult bf = brute_force_max(f, k, 2000, 99 + t);
        REQUIRE(bf.empirical_max <= cf + 1e-9);
      }
    }
  }
}

TEST_CASE("flat-direction invariance for chen and lagr2") {
  Rng rng(25);
  for (Family fam : {Family::chen, Family::lagr2}) {
    for (int n : {3, 5, 8}) {
      const QuadraticFamily f(fam, n);
      const double k = rng.uniform(-10.0, 10.0);
      const KktSolution s = kkt_solve(f, k);
      REQUIRE(static_cast<int>(s.max_set_directions.size()) == n - 2);
      for (const VectorXd& d : s.max_set_directions) {
        REQUIRE(std::abs(d.sum()) < 1e-10);       // stays on the hyperplane
        const VectorXd moved = s.point + 0.37 * d;
        REQUIRE(std::abs(evaluate(f, moved) - s.objective_value) < 1e-10);
      }
    }
  }
  // lagr1 has a unique maximizer.
  REQUIRE(kkt_solve(QuadraticFamily(Family::lagr1, 5), 3.0)
              .max_set_directions.empty());
}

TEST_CASE("certificates: global max at every KKT point") {
  Rng rng(26);
  for (Family fam : {Family::chen, Family::lagr1, Family::lagr2}) {
    for (int n : {2, 3, 6, 8}) {
      const QuadraticFamily f(fam, n);
      const double k = rng.uniform(-10.0, 10.0);
      const KktSolution s = kkt_solve(f, k);
      const MaxCertificate cert = certify_constrained_max(f, k, s.point);
      REQUIRE(cert.is_global_max);
      REQUIRE(cert.tangential_gradient_norm < 1e-8);
      REQUIRE(cert.restricted_hessian_spectrum.max_eigenvalue() < 1e-8);
      if (fam == Family::lagr1) {
        REQUIRE(cert.restricted_hessian_spectrum.negative_definite());
        REQUIRE(cert.restricted_hessian_spectrum.max_eigenvalue() < -1e-8);
      }
    }
  }
}

TEST_CASE("chen certificate: rank-1 negative restricted Hessian") {
  const QuadraticFamily f(Family::chen, 3);
  const KktSolution s = kkt_solve(f, 6.0);
  const MaxCertificate cert = certify_constrained_max(f, 6.0, s.point);
  const VectorXd ev = cert.restricted_hessian_spectrum.eigenvalues;
  REQUIRE(cert.restricted_hessian_spectrum.negative_semidefinite());
  int negative = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-8) ++negative;
  }
  REQUIRE(negative == 1);
}

TEST_CASE("certificate rejects a non-maximizing point") {
  const QuadraticFamily f(Family::chen, 3);
  const MaxCertificate cert = certify_constrained_max(f, 6.0, vec3(6, 0, 0));
  REQUIRE_FALSE(cert.is_global_max);
  REQUIRE(cert.tangential_gradient_norm > 0.1);
  REQUIRE_THROWS_AS(certify_constrained_max(f, 6.0, vec3(1, 1, 1)),
                    argument_error); // off the hyperplane
}

TEST_CASE("brute force oracle: reference examples and determinism") {
  {
    const BruteForceResult bf =
        brute_force_max(QuadraticFamily(Family::chen, 3), 6.0, 100000, 42);
    REQUIRE(bf.empirical_max == 9.0); // KKT point included in the sample set
  }
  {
    const BruteForceResult bf =
        brute_force_max(QuadraticFamily(Family::lagr1, 3), 6.0, 100000, 42);
    REQUIRE(bf.empirical_max == 6.0);
  }
  {
    const BruteForceResult bf =
        brute_force_max(QuadraticFamily(Family::lagr2, 5), 4.0, 100000, 42);
    REQUIRE(bf.empirical_max == 2.0);
  }
  const BruteForceResult a =
      brute_force_max(QuadraticFamily(Family::lagr1, 4), 3.0, 5000, 7);
  const BruteForceResult b =
      brute_force_max(QuadraticFamily(Family::lagr1, 4), 3.0, 5000, 7);
  REQUIRE(a.empirical_max == b.empirical_max);
  REQUIRE((a.arg - b.arg).norm() == 0.0);
  REQUIRE_THROWS_AS(brute_force_max(QuadraticFamily(Family::chen, 3), 1.0, 0, 1),
                    argument_error);
}
