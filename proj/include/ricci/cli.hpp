#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ricci/bounds.hpp"
#include "ricci/catalog.hpp"
#include "ricci/critplane.hpp"
#include "ricci/exprimm.hpp"
#include "ricci/quadopt.hpp"
#include "ricci/report.hpp"

namespace ricci::cli {

constexpr const char* kToolName = "ricci";
constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 all checks hold, 1 verified violation or failed certificate,
// 2 usage/config error, 3 numerical failure.
enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

struct RunConfig {
  std::string command; // catalog | verify | quadopt | critplane
  std::string manifold;
  std::string expr_file;
  std::string ambient = "euclidean"; // expression files: euclidean | complex
  int n = 3;
  double k = 1.0;
  std::string family = "chen";
  std::string theorem = "all"; // 2.1 | 3.1 | 3.2 | all
  long samples = 50;
  int directions = 3;
  std::uint64_t seed = 12345; // defaulted seeds are materialized in reports
  long brute_samples = 100000;
  int restarts = 16;
  double tol = 1e-8; // eq_tol and psd_tol
  double verify_tol = 1e-6;
  std::string format = "table"; // table | json
  std::vector<double> point;    // optional evaluation point

  // catalog constructor parameters
  double r = 1.0;
  double r2 = 0.5;
  double c = 1.0;
  double alpha = 0.9;
  int dim = 2;
  std::vector<double> radii = {1.0, 2.0};

  // Fake Ricci perturbation used by the exit-code tests; never exposed as a
  // public flag.
  double ric_bias = 0.0;

  Tolerances tolerances() const {
    Tolerances t;
    t.eq_tol = tol;
    t.psd_tol = tol;
    return t;
  }
};

namespace detail {

struct Manifold {
  CatalogEntry entry;
  bool from_expr = false;
};

inline Manifold make_manifold(const RunConfig& cfg) {
  Manifold m;
  if (!cfg.expr_file.empty()) {
    std::ifstream in(cfg.expr_file);
    if (!in) throw argument_error("cannot open expression file: " + cfg.expr_file);
    std::stringstream ss;
    ss << in.rdbuf();
    ImmersionSpec spec = parse_immersion_file(ss.str());
    const int n = spec.n;
    const int mdim = static_cast<int>(spec.components.size());
    CatalogEntry e;
    e.id = "expr:" + cfg.expr_file;
    e.description = pretty_print(spec);
    e.n = n;
    if (cfg.ambient == "complex") {
      if (mdim % 2 != 0) {
        throw argument_error("complex ambient requires an even number of "
                             "components");
      }
      e.ambient = AmbientSpaceForm::complex_euclidean(mdim / 2);
    } else if (cfg.ambient == "euclidean") {
      e.ambient = AmbientSpaceForm::euclidean(mdim);
    } else {
      throw argument_error("unknown ambient '" + cfg.ambient +
                           "' (euclidean | complex)");
    }
    e.immersion = to_immersion(std::move(spec));
    m.entry = std::move(e);
    m.from_expr = true;
    return m;
  }
  const std::string& id = cfg.manifold;
  if (id.empty()) throw argument_error("no manifold selected (--manifold or --expr-file)");
  if (id == "sphere") m.entry = make_sphere(cfg.dim, cfg.r);
  else if (id == "equator-sphere") m.entry = make_equator_sphere(cfg.dim, cfg.c);
  else if (id == "small-sphere") m.entry = make_small_sphere(cfg.dim, cfg.c, cfg.alpha);
  else if (id == "clifford-torus") m.entry = make_clifford_torus();
  else if (id == "flat-torus") m.entry = make_flat_torus(cfg.radii);
  else if (id == "real-subspace") m.entry = make_real_subspace(cfg.dim);
  else if (id == "sphere-product") m.entry = make_sphere_product(cfg.r, cfg.r2);
  else if (id == "cylinder") m.entry = make_cylinder(cfg.r);
  else if (id == "graph") m.entry = make_graph(cfg.dim);
  else throw argument_error("unknown catalog manifold '" + id + "'");
  return m;
}

struct TheoremFilter {
  bool t21 = true, t31 = true, t32 = true;
};

inline TheoremFilter theorem_filter(const std::string& sel) {
  if (sel == "all") return {};
  TheoremFilter f{false, false, false};
  if (sel == "2.1") f.t21 = true;
  else if (sel == "3.1") f.t31 = true;
  else if (sel == "3.2") f.t32 = true;
  else throw argument_error("unknown theorem selection '" + sel + "'");
  return f;
}

inline void strip_unselected(BoundReport& rep, const TheoremFilter& f) {
  if (!f.t21) { rep.bound_thm21.reset(); rep.gap21.reset(); rep.holds21.reset(); }
  if (!f.t31) { rep.bound_thm31.reset(); rep.gap31.reset(); rep.holds31.reset(); }
  if (!f.t32) { rep.bound_thm32.reset(); rep.gap32.reset(); rep.holds32.reset(); }
}

inline void write_vector(JsonWriter& w, const VectorXd& v) {
  w.begin_array();
  for (int i = 0; i < v.size(); ++i) w.value(v(i));
  w.end_array();
}

inline void write_optional(JsonWriter& w, const char* name,
                           const std::optional<double>& v) {
  w.key(name);
  if (v) w.value(*v);
  else w.null_value();
}

inline void write_meta(JsonWriter& w, const RunConfig& cfg) {
  w.key("meta").begin_object();
  w.key("tool").value(kToolName);
  w.key("version").value(kVersion);
  w.key("command").value(cfg.command);
  w.key("seed").value(static_cast<unsigned long long>(cfg.seed));
  w.key("tolerances").begin_object();
  const Tolerances t = cfg.tolerances();
  w.key("fd_step").value(t.fd_step);
  w.key("fd_step_second").value(t.fd_step_second);
  w.key("eq_tol").value(t.eq_tol);
  w.key("psd_tol").value(t.psd_tol);
  w.key("verify_tol").value(cfg.verify_tol);
  w.end_object();
  w.end_object();
}

inline void write_manifold_meta(JsonWriter& w, const Manifold& m,
                                const RunConfig& cfg) {
  w.key("manifold").begin_object();
  w.key("id").value(m.entry.id);
  w.key("description").value(m.entry.description);
  w.key("n").value(m.entry.n);
  w.key("ambient").value(m.entry.ambient.name());
  w.key("lagrangian").value(m.entry.lagrangian);
  w.key("totally_geodesic").value(m.entry.totally_geodesic);
  w.key("homogeneous").value(m.entry.homogeneous);
  w.key("params").begin_object();
  w.key("r").value(cfg.r);
  w.key("r2").value(cfg.r2);
  w.key("c").value(cfg.c);
  w.key("alpha").value(cfg.alpha);
  w.key("dim").value(cfg.dim);
  w.key("radii").begin_array();
  for (double x : cfg.radii) w.value(x);
  w.end_array();
  w.end_object();
  w.end_object();
}

inline void write_bound_report(JsonWriter& w, const BoundReport& rep) {
  w.begin_object();
  w.key("point");
  write_vector(w, rep.point);
  w.key("direction");
  write_vector(w, rep.direction);
  w.key("ric").value(rep.ric);
  w.key("h_norm_sq").value(rep.h_norm_sq);
  write_optional(w, "bound_thm21", rep.bound_thm21);
  write_optional(w, "bound_thm31", rep.bound_thm31);
  write_optional(w, "bound_thm32", rep.bound_thm32);
  write_optional(w, "gap21", rep.gap21);
  write_optional(w, "gap31", rep.gap31);
  write_optional(w, "gap32", rep.gap32);
  w.key("totally_real").value(rep.totally_real);
  w.key("lagrangian").value(rep.lagrangian);
  w.key("holds").value(rep.all_hold());
  w.end_object();
}

} // namespace detail

// ---------------------------------------------------------------------------

inline int run_catalog(const RunConfig& cfg, std::ostream& out) {
  const std::vector<CatalogEntry> entries = catalog();
  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    detail::write_meta(w, cfg);
    w.key("results").begin_array();
    for (const CatalogEntry& e : entries) {
      w.begin_object();
      w.key("id").value(e.id);
      w.key("description").value(e.description);
      w.key("n").value(e.n);
      w.key("ambient").value(e.ambient.name());
      w.key("lagrangian").value(e.lagrangian);
      w.key("totally_geodesic").value(e.totally_geodesic);
      w.key("homogeneous").value(e.homogeneous);
      detail::write_optional(w, "expected_h_norm_sq", e.expected_h_norm_sq);
      detail::write_optional(w, "expected_ric", e.expected_ric);
      detail::write_optional(w, "expected_gap21", e.expected_gap21);
      w.end_object();
    }
    w.end_array();
    w.key("summary").begin_object();
    w.key("count").value(static_cast<long>(entries.size()));
    w.end_object();
    w.end_object();
    out << w.str() << "\n";
  } else {
    for (const CatalogEntry& e : entries) {
      out << e.id << "  n=" << e.n << "  ambient=" << e.ambient.name()
          << (e.lagrangian ? "  lagrangian" : "")
          << (e.totally_geodesic ? "  totally-geodesic" : "")
          << (e.homogeneous ? "  homogeneous" : "") << "\n    " << e.description;
      if (e.expected_h_norm_sq) {
        out << "  (expected ||H||^2 = " << format_double(*e.expected_h_norm_sq)
            << ")";
      }
      out << "\n";
    }
  }
  return kOk;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  const detail::Manifold m = detail::make_manifold(cfg);
  const detail::TheoremFilter filter = detail::theorem_filter(cfg.theorem);
  const Tolerances tol = cfg.tolerances();
  const Immersion& imm = m.entry.immersion;
  const int n = m.entry.n;

  std::vector<BoundReport> violations;
  SweepSummary summary;
  if (!cfg.point.empty()) {
    if (static_cast<int>(cfg.point.size()) != n) {
      throw argument_error("--point has wrong dimension for this manifold");
    }
    VectorXd point(n);
    for (int j = 0; j < n; ++j) point(j) = cfg.point[j];
    summary.manifold_id = m.entry.id;
    summary.samples = 1;
    summary.directions_per_point = cfg.directions;
    summary.seed = cfg.seed;
    Rng rng(cfg.seed);
    for (int d = 0; d < cfg.directions; ++d) {
      VectorXd X(n);
      do {
        for (int j = 0; j < n; ++j) X(j) = rng.normal();
      } while (X.norm() < 1e-8);
      BoundReport rep = verify_point(imm, m.entry.ambient, point, X, tol,
                                     cfg.verify_tol, cfg.ric_bias);
      ++summary.reports;
      detail::strip_unselected(rep, filter);
      auto upd = [](std::optional<double>& worst, const std::optional<double>& g) {
        if (g && (!worst || *g < *worst)) worst = *g;
      };
      upd(summary.worst_gap21, rep.gap21);
      upd(summary.worst_gap31, rep.gap31);
      upd(summary.worst_gap32, rep.gap32);
      if (!rep.all_hold()) summary.violations.push_back(rep);
    }
  } else {
    summary = sweep(imm, m.entry.ambient, cfg.samples, cfg.seed, cfg.directions,
                    tol, cfg.verify_tol, m.entry.id, cfg.ric_bias);
    for (BoundReport& rep : summary.violations) {
      detail::strip_unselected(rep, filter);
    }
    std::erase_if(summary.violations,
                  [](const BoundReport& r) { return r.all_hold(); });
    if (!filter.t21) summary.worst_gap21.reset();
    if (!filter.t31) summary.worst_gap31.reset();
    if (!filter.t32) summary.worst_gap32.reset();
  }

  const bool clean = summary.violations.empty();
  auto equality_case = [&](const std::optional<double>& worst) {
    return worst && std::abs(*worst) <= cfg.verify_tol;
  };

  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    detail::write_meta(w, cfg);
    detail::write_manifold_meta(w, m, cfg);
    w.key("theorem").value(cfg.theorem);
    w.key("results").begin_array();
    for (const BoundReport& rep : summary.violations) {
      detail::write_bound_report(w, rep);
    }
    w.end_array();
    w.key("summary").begin_object();
    w.key("samples").value(summary.samples);
    w.key("directions_per_point").value(summary.directions_per_point);
    w.key("seed").value(static_cast<unsigned long long>(summary.seed));
    w.key("reports").value(summary.reports);
    w.key("violations").value(static_cast<long>(summary.violations.size()));
    w.key("skipped").value(static_cast<long>(summary.skipped.size()));
    detail::write_optional(w, "worst_gap21", summary.worst_gap21);
    detail::write_optional(w, "worst_gap31", summary.worst_gap31);
    detail::write_optional(w, "worst_gap32", summary.worst_gap32);
    w.key("equality_case_thm21").value(equality_case(summary.worst_gap21));
    if (summary.lagrangian_residuals) {
      w.key("lagrangian_residuals").begin_object();
      w.key("full_symmetry").value(summary.lagrangian_residuals->full_symmetry_residual);
      w.key("shape_operator").value(summary.lagrangian_residuals->shape_operator_residual);
      w.end_object();
    }
    w.end_object();
    w.end_object();
    out << w.str() << "\n";
  } else {
    out << "manifold: " << m.entry.id << "  n=" << n
        << "  ambient=" << m.entry.ambient.name() << "\n";
    out << "samples=" << summary.samples << " directions=" << summary.directions_per_point
        << " seed=" << summary.seed << " reports=" << summary.reports << "\n";
    auto show = [&](const char* name, const std::optional<double>& g) {
      if (!g) return;
      out << "  worst gap " << name << " = " << format_double(*g);
      if (equality_case(g)) out << "  [equality case]";
      out << "\n";
    };
    show("thm 2.1", summary.worst_gap21);
    show("thm 3.1", summary.worst_gap31);
    show("thm 3.2", summary.worst_gap32);
    if (summary.lagrangian_residuals) {
      out << "  lagrangian identity residuals: full-symmetry="
          << format_double(summary.lagrangian_residuals->full_symmetry_residual)
          << " shape-operator="
          << format_double(summary.lagrangian_residuals->shape_operator_residual)
          << "\n";
    }
    out << "violations: " << summary.violations.size()
        << "  skipped: " << summary.skipped.size() << "\n";
    out << (clean ? "RESULT: all selected bounds hold\n"
                  : "RESULT: VIOLATION detected\n");
  }
  if (summary.reports == 0) {
    throw numerical_error("verify: every sampled point failed to evaluate");
  }
  return clean ? kOk : kViolation;
}

inline int run_quadopt(const RunConfig& cfg, std::ostream& out) {
  Family fam_kind;
  if (cfg.family == "chen") fam_kind = Family::chen;
  else if (cfg.family == "lagr1") fam_kind = Family::lagr1;
  else if (cfg.family == "lagr2") fam_kind = Family::lagr2;
  else throw argument_error("unknown family '" + cfg.family + "'");
  const QuadraticFamily fam(fam_kind, cfg.n);
  const Tolerances tol = cfg.tolerances();

  const KktSolution kkt = kkt_solve(fam, cfg.k);
  const double cf = closed_form_max(fam, cfg.k);
  const MaxCertificate cert = certify_constrained_max(fam, cfg.k, kkt.point, tol);
  const BruteForceResult bf = brute_force_max(fam, cfg.k, cfg.brute_samples, cfg.seed);

  const double scale = std::max(1.0, std::abs(cf));
  const bool kkt_matches = std::abs(kkt.objective_value - cf) <= 1e-10 * scale;
  const bool oracle_ok = bf.empirical_max <= cf + 1e-9;
  const bool ok = kkt_matches && oracle_ok && cert.is_global_max;

  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    detail::write_meta(w, cfg);
    w.key("results").begin_array();
    w.begin_object();
    w.key("family").value(to_string(fam.family));
    w.key("n").value(fam.n);
    w.key("k").value(cfg.k);
    w.key("kkt_point");
    detail::write_vector(w, kkt.point);
    w.key("multiplier").value(kkt.multiplier);
    w.key("kkt_objective").value(kkt.objective_value);
    w.key("closed_form_max").value(cf);
    w.key("flat_directions").value(static_cast<long>(kkt.max_set_directions.size()));
    w.key("brute_samples").value(cfg.brute_samples);
    w.key("empirical_max").value(bf.empirical_max);
    w.key("certificate").begin_object();
    w.key("tangential_gradient_norm").value(cert.tangential_gradient_norm);
    w.key("restricted_hessian_eigenvalues");
    detail::write_vector(w, cert.restricted_hessian_spectrum.eigenvalues);
    w.key("definiteness").value(
        to_string(cert.restricted_hessian_spectrum.definiteness()));
    w.key("is_global_max").value(cert.is_global_max);
    w.end_object();
    w.end_object();
    w.end_array();
    w.key("summary").begin_object();
    w.key("kkt_matches_closed_form").value(kkt_matches);
    w.key("oracle_within_bound").value(oracle_ok);
    w.key("certified").value(cert.is_global_max);
    w.key("ok").value(ok);
    w.end_object();
    w.end_object();
    out << w.str() << "\n";
  } else {
    out << "family=" << to_string(fam.family) << " n=" << fam.n
        << " k=" << format_double(cfg.k) << "\n";
    out << "closed-form max  = " << format_double(cf) << "\n";
    out << "kkt objective    = " << format_double(kkt.objective_value) << "\n";
    out << "empirical max    = " << format_double(bf.empirical_max) << " ("
        << cfg.brute_samples << " samples, seed " << cfg.seed << ")\n";
    out << "certificate      = "
        << to_string(cert.restricted_hessian_spectrum.definiteness())
        << ", tangential gradient "
        << format_double(cert.tangential_gradient_norm)
        << (cert.is_global_max ? " (restriction concave: global max)" : " (FAILED)")
        << "\n";
    out << (ok ? "RESULT: ok\n" : "RESULT: FAILED\n");
  }
  return ok ? kOk : kViolation;
}

inline int run_critplane(const RunConfig& cfg, std::ostream& out) {
  const detail::Manifold m = detail::make_manifold(cfg);
  const Tolerances tol = cfg.tolerances();
  const Immersion& imm = m.entry.immersion;
  const int n = m.entry.n;

  VectorXd point(n);
  if (!cfg.point.empty()) {
    if (static_cast<int>(cfg.point.size()) != n) {
      throw argument_error("--point has wrong dimension for this manifold");
    }
    for (int j = 0; j < n; ++j) point(j) = cfg.point[j];
  } else {
    for (int j = 0; j < n; ++j) {
      point(j) = 0.5 * (imm.domain_box(j, 0) + imm.domain_box(j, 1));
    }
  }

  const AdaptedFrame frame = adapted_frame(imm, m.entry.ambient, point, nullptr, tol);
  const ShapeData shape = second_fundamental_form(imm, m.entry.ambient, frame, tol);
  const CurvatureData curv = gauss_curvature(m.entry.ambient, frame, shape);

  const TangentPlane best = minimize_sectional(curv, cfg.restarts, cfg.seed, tol);
  const double residual = critical_residual(curv, best, tol);
  std::optional<TangentPlane> scan;
  if (n <= 4) scan = plane_scan(curv);

  const bool critical_ok = residual < 1e-4;
  const bool oracle_ok = !scan || std::abs(best.K - scan->K) <= 1e-3;
  const bool ok = critical_ok && oracle_ok;

  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    detail::write_meta(w, cfg);
    detail::write_manifold_meta(w, m, cfg);
    w.key("results").begin_array();
    w.begin_object();
    w.key("point");
    detail::write_vector(w, point);
    w.key("min_sectional").value(best.K);
    w.key("plane_X");
    detail::write_vector(w, best.X);
    w.key("plane_Y");
    detail::write_vector(w, best.Y);
    w.key("critical_residual").value(residual);
    w.key("restarts").value(cfg.restarts);
    w.key("converged").value(best.converged);
    if (scan) {
      w.key("scan_min").value(scan->K);
    } else {
      w.key("scan_min").null_value();
    }
    w.end_object();
    w.end_array();
    w.key("summary").begin_object();
    w.key("critical").value(critical_ok);
    w.key("oracle_agrees").value(oracle_ok);
    w.key("ok").value(ok);
    w.end_object();
    w.end_object();
    out << w.str() << "\n";
  } else {
    out << "manifold: " << m.entry.id << "  point: [";
    for (int j = 0; j < n; ++j) out << (j ? ", " : "") << format_double(point(j));
    out << "]\n";
    out << "min sectional curvature = " << format_double(best.K) << "\n";
    if (scan) out << "grid-scan minimum       = " << format_double(scan->K) << "\n";
    out << "critical-plane residual = " << format_double(residual) << "\n";
    out << (ok ? "RESULT: ok\n" : "RESULT: FAILED\n");
  }
  return ok ? kOk : kViolation;
}

// Dispatch with the exit-code contract. Diagnostics go to `err`, reports to
// `out`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "catalog") return run_catalog(cfg, out);
    if (cfg.command == "verify") return run_verify(cfg, out);
    if (cfg.command == "quadopt") return run_quadopt(cfg, out);
    if (cfg.command == "critplane") return run_critplane(cfg, out);
    throw argument_error("unknown command '" + cfg.command + "'");
  } catch (const argument_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

} // namespace ricci::cli
