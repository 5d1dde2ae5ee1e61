#include <catch2/catch_amalgamated.hpp>

#include "ricci/bounds.hpp"
#include "ricci/catalog.hpp"

using namespace ricci;

namespace {

VectorXd interior_point(const Immersion& imm, Rng& rng) {
  VectorXd p(imm.dim_domain);
  for (int j = 0; j < imm.dim_domain; ++j) {
    const double lo = imm.domain_box(j, 0);
    const double hi = imm.domain_box(j, 1);
    const double m = 0.1 * (hi - lo);
    p(j) = rng.uniform(lo + m, hi - m);
  }
  return p;
}

VectorXd random_direction(Rng& rng, int n) {
  VectorXd X(n);
  do {
    for (int j = 0; j < n; ++j) X(j) = rng.normal();
  } while (X.norm() < 1e-8);
  return X;
}

} // namespace

TEST_CASE("bound_value: closed forms") {
  REQUIRE(bound_value(Theorem::t21, 2, 0.0, 1.0) == 1.0);
  REQUIRE(bound_value(Theorem::t32, 2, 0.0, 0.5) == 0.25);
  REQUIRE(bound_value(Theorem::t31, 2, 0.0, 0.5) == 0.5);
  REQUIRE(bound_value(Theorem::t21, 3, 1.0, 0.0) == 2.0);
  REQUIRE_THROWS_AS(bound_value(Theorem::t32, 1, 0.0, 1.0), argument_error);
  REQUIRE_THROWS_AS(bound_value(Theorem::t21, 3, 0.0, -1.0), argument_error);
}

TEST_CASE("verify_point: S^2(1) is the equality case of the first bound") {
  const CatalogEntry e = make_sphere(2, 1.0);
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    const VectorXd p = interior_point(e.immersion, rng);
    const VectorXd X = random_direction(rng, 2);
    const BoundReport rep = verify_point(e.immersion, e.ambient, p, X);
    REQUIRE(std::abs(rep.ric - 1.0) < 1e-5);
    REQUIRE(rep.bound_thm21.has_value());
    REQUIRE(std::abs(*rep.bound_thm21 - 1.0) < 1e-5);
    REQUIRE(std::abs(*rep.gap21) < 1e-5);
    REQUIRE(rep.all_hold());
    REQUIRE_FALSE(rep.bound_thm31.has_value()); // real ambient: only thm 2.1
  }
}

TEST_CASE("verify_point: totally geodesic equator in the ambient sphere") {
  const CatalogEntry e = make_equator_sphere(2, 1.0);
  Rng rng(32);
  const VectorXd p = interior_point(e.immersion, rng);
  const VectorXd X = random_direction(rng, 2);
  const BoundReport rep = verify_point(e.immersion, e.ambient, p, X);
  REQUIRE(std::abs(rep.ric - 1.0) < 1e-5);
  REQUIRE(rep.h_norm_sq < 1e-8);
  REQUIRE(std::abs(*rep.bound_thm21 - 1.0) < 1e-5);
  REQUIRE(std::abs(*rep.gap21) < 1e-5);
}

TEST_CASE("verify_point: Clifford torus bounds 0.5 / 0.25") {
  const CatalogEntry e = make_clifford_torus();
  Rng rng(33);
  const VectorXd p = interior_point(e.immersion, rng);
  const VectorXd X = random_direction(rng, 2);
  const BoundReport rep = verify_point(e.immersion, e.ambient, p, X);
  REQUIRE(std::abs(rep.ric) < 1e-5);
  REQUIRE(rep.totally_real);
  REQUIRE(rep.lagrangian);
  REQUIRE(std::abs(*rep.bound_thm31 - 0.5) < 1e-6);
  REQUIRE(std::abs(*rep.bound_thm32 - 0.25) < 1e-6);
  REQUIRE(rep.all_hold());
  // 3.2 improves 3.1 by exactly (n/4) ||H||^2.
  const double improvement = *rep.bound_thm31 - *rep.bound_thm32;
  REQUIRE(std::abs(improvement - 2.0 / 4.0 * rep.h_norm_sq) < 1e-12);
  REQUIRE(std::abs(improvement - 0.25) < 1e-6);
  // Flat complex ambient also counts as a real space form with c = 0.
  REQUIRE(rep.bound_thm21.has_value());
  REQUIRE(std::abs(*rep.bound_thm21 - *rep.bound_thm31) < 1e-12);
}

TEST_CASE("verify_point: S^1(1) x S^1(2) torus") {
  const CatalogEntry e = make_flat_torus({1.0, 2.0});
  Rng rng(34);
  const VectorXd p = interior_point(e.immersion, rng);
  const VectorXd X = random_direction(rng, 2);
  const BoundReport rep = verify_point(e.immersion, e.ambient, p, X);
  // ||H||^2 = (1 + 1/4)/4 = 5/16.
  REQUIRE(std::abs(rep.h_norm_sq - 5.0 / 16.0) < 1e-6);
  REQUIRE(std::abs(rep.ric) < 1e-5);
  REQUIRE(std::abs(*rep.bound_thm31 - 0.3125) < 1e-6);
  REQUIRE(std::abs(*rep.bound_thm32 - 0.15625) < 1e-6);
  REQUIRE(rep.all_hold());
}

TEST_CASE("monotone improvement on Lagrangian points") {
  Rng rng(35);
  for (const CatalogEntry& e : catalog()) {
    if (!e.lagrangian) continue;
    const VectorXd p = interior_point(e.immersion, rng);
    const VectorXd X = random_direction(rng, e.n);
    const BoundReport rep = verify_point(e.immersion, e.ambient, p, X);
    REQUIRE(rep.bound_thm31.has_value());
    REQUIRE(rep.bound_thm32.has_value());
    REQUIRE(*rep.bound_thm32 <= *rep.bound_thm31 + 1e-12);
    const double diff = *rep.bound_thm31 - *rep.bound_thm32;
    REQUIRE(std::abs(diff - e.n / 4.0 * rep.h_norm_sq) < 1e-12);
    if (rep.h_norm_sq > 1e-8) REQUIRE(*rep.bound_thm32 < *rep.bound_thm31);
  }
}

TEST_CASE("direction invariance of Ric on homogeneous manifolds") {
  Rng rng(36);
  for (const CatalogEntry& e : catalog()) {
    if (!e.homogeneous || !e.expected_ric) continue;
    const VectorXd p = interior_point(e.immersion, rng);
    double lo = 1e300, hi = -1e300;
    for (int t = 0; t < 20; ++t) {
      const VectorXd X = random_direction(rng, e.n);
      const BoundReport rep = verify_point(e.immersion, e.ambient, p, X);
      lo = std::min(lo, rep.ric);
      hi = std::max(hi, rep.ric);
    }
    INFO("manifold " << e.id);
    REQUIRE(hi - lo < 1e-6);
    REQUIRE(std::abs(hi - *e.expected_ric) < 1e-5);
  }
}

TEST_CASE("lagrangian identities: residuals vanish on Lagrangian entries") {
  Rng rng(37);
  for (const CatalogEntry& e : catalog()) {
    if (!e.lagrangian) continue;
    for (int t = 0; t < 3; ++t) {
      const VectorXd p = interior_point(e.immersion, rng);
      const AdaptedFrame f = adapted_frame_lagrangian(e.immersion, e.ambient, p);
      const ShapeData s = second_fundamental_form(e.immersion, e.ambient, f);
      const LagrangianIdentityResiduals r =
          lagrangian_identities(e.immersion, e.ambient, f, s);
      INFO("manifold " << e.id);
      REQUIRE(r.full_symmetry_residual < 1e-6);
      REQUIRE(r.shape_operator_residual < 1e-6);
    }
  }
}

TEST_CASE("lagrangian identities reject a non-Lagrangian frame") {
  const CatalogEntry e = make_clifford_torus();
  VectorXd p(2);
  p << 1.0, 2.0;
  AdaptedFrame f = adapted_frame(e.immersion, e.ambient, p);
  // Generic normal frame need not equal J(tangent); force a mismatch.
  f.normal[0] = -f.normal[0];
  const ShapeData s = second_fundamental_form(e.immersion, e.ambient, f);
  const bool j0 = (f.normal[0] - e.ambient.apply_J(f.tangent[0])).norm() < 1e-6;
  const bool j1 = (f.normal[1] - e.ambient.apply_J(f.tangent[1])).norm() < 1e-6;
  if (!(j0 && j1)) {
    REQUIRE_THROWS_AS(lagrangian_identities(e.immersion, e.ambient, f, s),
                      argument_error);
  }
  const CatalogEntry g = make_graph(2);
  const AdaptedFrame gf = adapted_frame(g.immersion, g.ambient, VectorXd::Zero(2));
  const ShapeData gs = second_fundamental_form(g.immersion, g.ambient, gf);
  REQUIRE_THROWS_AS(lagrangian_identities(g.immersion, g.ambient, gf, gs),
                    unsupported_error);
}

TEST_CASE("sweep: catalog is clean and deterministic") {
  Rng seeds(38);
  for (const CatalogEntry& e : catalog()) {
    const SweepSummary a = sweep(e.immersion, e.ambient, 5, 4242, 2, {}, 1e-6, e.id);
    INFO("manifold " << e.id);
    REQUIRE(a.clean());
    REQUIRE(a.reports > 0);
    REQUIRE(a.skipped.empty());
    const SweepSummary b = sweep(e.immersion, e.ambient, 5, 4242, 2, {}, 1e-6, e.id);
    REQUIRE(a.reports == b.reports);
    if (a.worst_gap21) REQUIRE(*a.worst_gap21 == *b.worst_gap21);
    if (a.worst_gap32) REQUIRE(*a.worst_gap32 == *b.worst_gap32);
  }
}

TEST_CASE("sweep: S^4(1) has constant gap (n-2)^2/4 = 1") {
  const CatalogEntry e = make_sphere(4, 1.0);
  const SweepSummary s = sweep(e.immersion, e.ambient, 10, 7, 2, {}, 1e-6, e.id);
  REQUIRE(s.clean());
  REQUIRE(s.worst_gap21.has_value());
  REQUIRE(std::abs(*s.worst_gap21 - 1.0) < 1e-5);
}

TEST_CASE("sweep: injected Ricci bias produces violations") {
  const CatalogEntry e = make_sphere(2, 1.0);
  const SweepSummary s =
      sweep(e.immersion, e.ambient, 5, 7, 2, {}, 1e-6, e.id, /*ric_bias=*/0.5);
  REQUIRE_FALSE(s.clean());
  for (const BoundReport& rep : s.violations) REQUIRE_FALSE(rep.all_hold());
}

TEST_CASE("verify_point validates its inputs") {
  const CatalogEntry e = make_sphere(2, 1.0);
  VectorXd p(2);
  p << 1.5, 1.5;
  REQUIRE_THROWS_AS(
      verify_point(e.immersion, e.ambient, p, VectorXd::Zero(2)), argument_error);
  VectorXd X(3);
  X << 1, 0, 0;
  REQUIRE_THROWS_AS(verify_point(e.immersion, e.ambient, p, X), argument_error);
}
