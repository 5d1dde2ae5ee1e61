#include <catch2/catch_amalgamated.hpp>

#include "ricci/catalog.hpp"
#include "ricci/exprimm.hpp"
#include "ricci/rng.hpp"

using namespace ricci;

namespace {

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

} // namespace

TEST_CASE("parse + eval: basic expression") {
  ImmersionSpec spec = parse("u1^2 + sin(u2)", 2);
  REQUIRE(spec.components.size() == 1);
  spec.domain_box.col(0).setConstant(-3.0);
  spec.domain_box.col(1).setConstant(3.0);
  REQUIRE(eval_ast(spec, vec2(2.0, 0.0))(0) == 4.0);
}

TEST_CASE("parse: cylinder spec") {
  ImmersionSpec spec = parse("cos(u1), sin(u1), u2", 2);
  REQUIRE(spec.components.size() == 3);
  spec.domain_box.col(0).setConstant(-8.0);
  spec.domain_box.col(1).setConstant(8.0);
  const VectorXd x = eval_ast(spec, vec2(0.0, 5.0));
  REQUIRE(x(0) == 1.0);
  REQUIRE(x(1) == 0.0);
  REQUIRE(x(2) == 5.0);
}

TEST_CASE("eval: numerical domain errors") {
  {
    ImmersionSpec spec = parse("sqrt(u1)", 1);
    REQUIRE_THROWS_AS(eval_ast(spec, VectorXd::Constant(1, -1.0)), domain_error);
  }
  {
    ImmersionSpec spec = parse("u1/u2", 2);
    REQUIRE_THROWS_AS(eval_ast(spec, vec2(1.0, 0.0)), domain_error);
  }
  {
    ImmersionSpec spec = parse("log(u1)", 1);
    REQUIRE_THROWS_AS(eval_ast(spec, VectorXd::Zero(1)), domain_error);
  }
  {
    ImmersionSpec spec = parse("u1", 1);
    REQUIRE_THROWS_AS(eval_ast(spec, VectorXd::Constant(1, 2.0)), domain_error);
  }
}

TEST_CASE("parse: syntax errors carry 1-based positions") {
  try {
    parse("u1 + * u2", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.position == 6);
  }
  REQUIRE_THROWS_AS(parse("sin(u1, u2)", 2), ParseError);   // arity
  REQUIRE_THROWS_AS(parse("foo(u1)", 2), ParseError);       // unknown identifier
  REQUIRE_THROWS_AS(parse("u3", 2), ParseError);            // exceeds declared n
  REQUIRE_THROWS_AS(parse("u17", 16), ParseError);          // index out of range
  REQUIRE_THROWS_AS(parse("(u1", 2), ParseError);           // unbalanced paren
  REQUIRE_THROWS_AS(parse("", 2), ParseError);              // empty
}

TEST_CASE("precedence and associativity") {
  ImmersionSpec spec = parse("2 + 3 * 4 ^ 2, -(2^2), 2^3^2, 1 - 2 - 3, u1", 1);
  spec.domain_box.col(0).setConstant(-1.0);
  spec.domain_box.col(1).setConstant(1.0);
  const VectorXd x = eval_ast(spec, VectorXd::Zero(1));
  REQUIRE(x(0) == 50.0);   // pow binds tighter than mul than add
  REQUIRE(x(1) == -4.0);
  REQUIRE(x(2) == 512.0);  // right-associative power
  REQUIRE(x(3) == -4.0);   // left-associative subtraction
}

TEST_CASE("constants pi and e") {
  ImmersionSpec spec = parse("sin(pi), log(e), u1", 1);
  const VectorXd x = eval_ast(spec, VectorXd::Zero(1));
  REQUIRE(std::abs(x(0)) < 1e-15);
  REQUIRE(std::abs(x(1) - 1.0) < 1e-15);
}

TEST_CASE("round trip: pretty print reparses to an identical tree") {
  const char* exprs[] = {
      "cos(u1), sin(u1), u2",
      "u1^2 + sin(u2), u1 * u2 - 3.5, exp(u1) / (1 + u2^2)",
      "-u1 + sqrt(1 + u2^2), pi * u1, 2 ^ 3 ^ u1",
  };
  for (const char* text : exprs) {
    const ImmersionSpec a = parse(text, 2);
    const ImmersionSpec b = parse(pretty_print(a), 2);
    INFO(text);
    REQUIRE(structurally_equal(a, b));
  }
}

TEST_CASE("eval agrees with hand-coded catalog evaluators") {
  // Unit sphere chart in hyperspherical convention.
  const CatalogEntry sphere = make_sphere(2, 1.0);
  ImmersionSpec ssp = parse("cos(u1), sin(u1)*cos(u2), sin(u1)*sin(u2)", 2);
  ssp.domain_box = sphere.immersion.domain_box;
  // Product torus.
  const CatalogEntry torus = make_flat_torus({1.0, 2.0});
  ImmersionSpec tsp = parse("cos(u1), 2*cos(u2), sin(u1), 2*sin(u2)", 2);
  tsp.domain_box = torus.immersion.domain_box;

  Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    const VectorXd ps = vec2(rng.uniform(0.5, 2.6), rng.uniform(0.5, 2.6));
    REQUIRE((eval_ast(ssp, ps) - sphere.immersion.evaluate(ps)).cwiseAbs()
                .maxCoeff() < 1e-12);
    const VectorXd pt = vec2(rng.uniform(0.1, 6.0), rng.uniform(0.1, 6.0));
    REQUIRE((eval_ast(tsp, pt) - torus.immersion.evaluate(pt)).cwiseAbs()
                .maxCoeff() < 1e-12);
  }
}

TEST_CASE("FD derivatives of parsed polynomials match analytic values") {
  ImmersionSpec spec = parse("u1^2 * u2 + 3 * u1 - u2^3", 2);
  const Immersion imm = to_immersion(spec);
  Rng rng(52);
  for (int t = 0; t < 10; ++t) {
    const VectorXd p = vec2(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
    const MatrixXd J = jacobian_at(imm, p);
    const double dx = 2.0 * p(0) * p(1) + 3.0;
    const double dy = p(0) * p(0) - 3.0 * p(1) * p(1);
    REQUIRE(std::abs(J(0, 0) - dx) < 1e-7 * std::max(1.0, std::abs(dx)));
    REQUIRE(std::abs(J(0, 1) - dy) < 1e-7 * std::max(1.0, std::abs(dy)));
  }
}

TEST_CASE("immersion files: header, boxes, and validation") {
  const std::string good =
      "n=2\nbox=0:6.2832\nbox=-1:1\ncos(u1), sin(u1), u2\n";
  const ImmersionSpec spec = parse_immersion_file(good);
  REQUIRE(spec.n == 2);
  REQUIRE(spec.components.size() == 3);
  REQUIRE(spec.domain_box(0, 1) == 6.2832);
  REQUIRE(spec.domain_box(1, 0) == -1.0);

  REQUIRE_THROWS_AS(parse_immersion_file("cos(u1), sin(u1), u2\n"),
                    argument_error); // missing n=
  REQUIRE_THROWS_AS(parse_immersion_file("n=2\nbox=0:1\ncos(u1), sin(u1), u2\n"),
                    argument_error); // box count mismatch
  REQUIRE_THROWS_AS(parse_immersion_file("n=2\nu1, u2\n"),
                    argument_error); // m must exceed n
  REQUIRE_THROWS_AS(parse_immersion_file("n=2\nbox=1:1\nbox=0:1\nu1,u2,u1\n"),
                    argument_error); // empty box
}

TEST_CASE("parser depth limit") {
  std::string deep;
  for (int i = 0; i < 80; ++i) deep += "(";
  deep += "u1";
  for (int i = 0; i < 80; ++i) deep += ")";
  REQUIRE_THROWS_AS(parse(deep, 1), ParseError);
}

TEST_CASE("to_immersion: full geometry pipeline on a parsed cylinder") {
  ImmersionSpec spec = parse_immersion_file(
      "n=2\nbox=0:6.2832\nbox=-1:1\ncos(u1), sin(u1), u2\n");
  const Immersion imm = to_immersion(spec);
  const AmbientSpaceForm amb = AmbientSpaceForm::euclidean(3);
  const AdaptedFrame f = adapted_frame(imm, amb, vec2(1.0, 0.0));
  const ShapeData s = second_fundamental_form(imm, amb, f);
  REQUIRE(std::abs(s.H_norm_sq - 0.25) < 1e-5);
}
