#include <catch2/catch_amalgamated.hpp>

#include "ricci/numerics.hpp"
#include "ricci/rng.hpp"

using namespace ricci;

namespace {

VectorXd vec(std::initializer_list<double> vals) {
  VectorXd v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

} // namespace

TEST_CASE("fd_derivatives: circle parametrization") {
  auto map = [](const VectorXd& t) {
    VectorXd y(2);
    y << std::cos(t(0)), std::sin(t(0));
    return y;
  };
  const FdDerivatives fd = fd_derivatives(map, vec({0.0}));
  REQUIRE(std::abs(fd.jacobian(0, 0) - 0.0) < 1e-8);
  REQUIRE(std::abs(fd.jacobian(1, 0) - 1.0) < 1e-8);
}

TEST_CASE("fd_derivatives: mixed second derivative of x*y") {
  auto map = [](const VectorXd& u) {
    VectorXd y(1);
    y << u(0) * u(1);
    return y;
  };
  const FdDerivatives fd = fd_derivatives(map, vec({0.3, -0.7}));
  REQUIRE(std::abs(fd.second[0](0, 1) - 1.0) < 1e-7);
  REQUIRE(fd.second[0](0, 1) == fd.second[0](1, 0));
}

TEST_CASE("fd_derivatives: affine map has vanishing second derivatives") {
  MatrixXd A(3, 2);
  A << 1.0, 2.0, -0.5, 4.0, 0.0, 1.5;
  VectorXd b = vec({1.0, -2.0, 0.25});
  auto map = [&](const VectorXd& u) -> VectorXd { return A * u + b; };
  const FdDerivatives fd = fd_derivatives(map, vec({0.1, 0.2}));
  for (const MatrixXd& s : fd.second) {
    REQUIRE(s.cwiseAbs().maxCoeff() < 1e-7);
  }
  REQUIRE((fd.jacobian - A).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("fd_derivatives: quadratic maps match analytic Jacobian") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixXd Q(3, 3);
    VectorXd lin(3);
    for (int i = 0; i < 3; ++i) {
      lin(i) = rng.uniform(-2.0, 2.0);
      for (int j = 0; j < 3; ++j) Q(i, j) = rng.uniform(-2.0, 2.0);
    }
    auto map = [&](const VectorXd& u) -> VectorXd {
      VectorXd y(1);
      y << u.dot(Q * u) + lin.dot(u);
      return y;
    };
    VectorXd x(3);
    for (int j = 0; j < 3; ++j) x(j) = rng.uniform(-1.0, 1.0);
    const FdDerivatives fd = fd_derivatives(map, x);
    const VectorXd grad = (Q + Q.transpose()) * x + lin;
    const double scale = std::max(1.0, grad.norm());
    REQUIRE((fd.jacobian.row(0).transpose() - grad).norm() / scale < 1e-7);
  }
}

TEST_CASE("fd_derivatives: evaluation failure identifies the stencil") {
  auto map = [](const VectorXd& u) -> VectorXd {
    if (u(0) > 0.5) throw std::runtime_error("outside");
    VectorXd y(1);
    y << u(0);
    return y;
  };
  REQUIRE_THROWS_AS(fd_derivatives(map, vec({0.5})), domain_error);
}

TEST_CASE("orthonormalize: hand-checked 2d case") {
  const std::vector<VectorXd> in = {vec({2.0, 0.0}), vec({1.0, 1.0})};
  const std::vector<VectorXd> out = orthonormalize(in);
  REQUIRE((out[0] - vec({1.0, 0.0})).norm() < 1e-12);
  REQUIRE((out[1] - vec({0.0, 1.0})).norm() < 1e-12);
}

TEST_CASE("orthonormalize: idempotent on orthonormal input") {
  Rng rng(7);
  std::vector<VectorXd> in;
  for (int i = 0; i < 3; ++i) {
    VectorXd v(4);
    for (int j = 0; j < 4; ++j) v(j) = rng.normal();
    in.push_back(v);
  }
  const auto once = orthonormalize(in);
  const auto twice = orthonormalize(once);
  for (std::size_t i = 0; i < once.size(); ++i) {
    REQUIRE((once[i] - twice[i]).norm() < 1e-8);
  }
}

TEST_CASE("orthonormalize: dependent input reports the offending index") {
  const std::vector<VectorXd> in = {vec({1.0, 0.0}), vec({2.0, 0.0})};
  try {
    orthonormalize(in);
    FAIL("expected rank_deficiency_error");
  } catch (const rank_deficiency_error& e) {
    REQUIRE(e.index == 1);
  }
}

TEST_CASE("definiteness: classification") {
  MatrixXd nd = MatrixXd::Zero(2, 2);
  nd(0, 0) = -1.0;
  nd(1, 1) = -2.0;
  REQUIRE(definiteness(nd).definiteness() == Definiteness::negative_definite);

  const SymmetricSpectrum zero = definiteness(MatrixXd::Zero(3, 3));
  REQUIRE(zero.negative_semidefinite());
  REQUIRE(zero.positive_semidefinite());

  MatrixXd indef = MatrixXd::Zero(2, 2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  REQUIRE(definiteness(indef).definiteness() == Definiteness::indefinite);
}

TEST_CASE("definiteness: spectrum of -M is the negated reversal") {
  Rng rng(11);
  MatrixXd M(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M(i, j) = rng.normal();
  M = (M + M.transpose()).eval();
  const VectorXd ev = definiteness(M).eigenvalues;
  const VectorXd evn = definiteness((-M).eval()).eigenvalues;
  for (int i = 0; i < 4; ++i) {
    REQUIRE(std::abs(evn(i) + ev(3 - i)) < 1e-10);
  }
}

TEST_CASE("tolerances validate") {
  Tolerances t;
  t.eq_tol = -1.0;
  REQUIRE_THROWS_AS(t.validate(), argument_error);
}
