#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ricci/cli.hpp"

namespace {

void add_manifold_options(CLI::App* cmd, ricci::cli::RunConfig& cfg) {
  cmd->add_option("--manifold", cfg.manifold, "catalog manifold id");
  cmd->add_option("--expr-file", cfg.expr_file, "immersion expression file");
  cmd->add_option("--ambient", cfg.ambient,
                  "ambient for expression files: euclidean | complex");
  cmd->add_option("--r", cfg.r, "radius / first radius");
  cmd->add_option("--r2", cfg.r2, "second radius (sphere-product)");
  cmd->add_option("--c", cfg.c, "ambient sphere curvature");
  cmd->add_option("--alpha", cfg.alpha, "small-sphere latitude");
  cmd->add_option("--dim", cfg.dim, "intrinsic dimension of the manifold");
  cmd->add_option("--radii", cfg.radii, "flat-torus circle radii")
      ->delimiter(',');
  cmd->add_option("--point", cfg.point, "evaluation point (comma-separated)")
      ->delimiter(',');
}

void add_common_options(CLI::App* cmd, ricci::cli::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--tol", cfg.tol, "equality / eigenvalue tolerance");
  cmd->add_option("--verify-tol", cfg.verify_tol, "inequality verification slack");
  cmd->add_option("--format", cfg.format, "output format: table | json")
      ->check(CLI::IsMember({"table", "json"}));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"submanifold Ricci curvature bounds and constrained-maximum "
               "certificates"};
  app.require_subcommand(1);

  ricci::cli::RunConfig cfg;

  CLI::App* cat = app.add_subcommand("catalog", "list built-in manifolds");
  add_common_options(cat, cfg);

  CLI::App* verify =
      app.add_subcommand("verify", "verify Ricci curvature bounds on a manifold");
  add_manifold_options(verify, cfg);
  add_common_options(verify, cfg);
  verify->add_option("--theorem", cfg.theorem, "2.1 | 3.1 | 3.2 | all")
      ->check(CLI::IsMember({"2.1", "3.1", "3.2", "all"}));
  verify->add_option("--samples", cfg.samples, "points to sample");
  verify->add_option("--directions", cfg.directions, "directions per point");
#ifdef RICCI_TEST_HOOKS
  verify->add_option("--inject-ric-bias", cfg.ric_bias,
                     "test hook: additive Ricci perturbation");
#endif

  CLI::App* quad = app.add_subcommand(
      "quadopt", "constrained quadratic maximum: closed form, certificate, oracle");
  add_common_options(quad, cfg);
  quad->add_option("--family", cfg.family, "chen | lagr1 | lagr2")
      ->check(CLI::IsMember({"chen", "lagr1", "lagr2"}));
  quad->add_option("--n", cfg.n, "dimension (>= 2)");
  quad->add_option("--k", cfg.k, "hyperplane constant");
  quad->add_option("--brute-samples", cfg.brute_samples, "oracle sample count");

  CLI::App* crit = app.add_subcommand(
      "critplane", "minimize sectional curvature over tangent 2-planes");
  add_manifold_options(crit, cfg);
  add_common_options(crit, cfg);
  crit->add_option("--restarts", cfg.restarts, "multi-start count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ricci::cli::kUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return ricci::cli::run(cfg, std::cout, std::cerr);
}
