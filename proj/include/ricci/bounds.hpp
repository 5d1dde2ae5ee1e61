#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ricci/geometry.hpp"
#include "ricci/rng.hpp"

namespace ricci {

// The three Ricci upper bounds:
//   2.1 -- submanifold of a real space form:        (n-1)c   + n^2/4 ||H||^2
//   3.1 -- totally real in a complex space form:    (n-1)c/4 + n^2/4 ||H||^2
//   3.2 -- Lagrangian (improved):                   (n-1)/4 (c + n ||H||^2)
enum class Theorem { t21, t31, t32 };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::t21: return "2.1";
    case Theorem::t31: return "3.1";
    case Theorem::t32: return "3.2";
  }
  return "?";
}

inline double bound_value(Theorem theorem, int n, double c, double h_norm_sq) {
  if (h_norm_sq < 0.0) throw argument_error("bound_value: ||H||^2 must be >= 0");
  switch (theorem) {
    case Theorem::t21:
      if (n < 2) throw argument_error("bound_value: need n >= 2");
      return (n - 1) * c + n * n / 4.0 * h_norm_sq;
    case Theorem::t31:
      if (n < 2) throw argument_error("bound_value: need n >= 2");
      return (n - 1) * c / 4.0 + n * n / 4.0 * h_norm_sq;
    case Theorem::t32:
      if (n < 2) {
        throw argument_error("bound_value: the Lagrangian bound requires n >= 2");
      }
      return (n - 1) / 4.0 * (c + n * h_norm_sq);
  }
  throw argument_error("bound_value: unknown theorem");
}

struct BoundReport {
  VectorXd point;
  VectorXd direction; // unit tangent, parameter coordinates
  double ric = 0.0;
  double h_norm_sq = 0.0;
  std::optional<double> bound_thm21, bound_thm31, bound_thm32;
  std::optional<double> gap21, gap31, gap32;
  std::optional<bool> holds21, holds31, holds32;
  bool totally_real = false;
  bool lagrangian = false;

  bool all_hold() const {
    return holds21.value_or(true) && holds31.value_or(true) &&
           holds32.value_or(true);
  }
};

// Evaluate Ric(X) via the Gauss equation and every bound whose hypotheses the
// (manifold, ambient) pair satisfies at this point. `ric_bias` is a debugging
// hook that perturbs the computed Ricci value; it is zero in normal use.
inline BoundReport verify_point(const Immersion& imm,
                                const AmbientSpaceForm& ambient,
                                const VectorXd& point, const VectorXd& X,
                                const Tolerances& tol = {},
                                double verify_tol = 1e-6,
                                double ric_bias = 0.0) {
  if (X.size() != imm.dim_domain || X.norm() == 0.0) {
    throw argument_error("verify_point: direction must be a nonzero tangent "
                         "vector in parameter coordinates");
  }
  require_interior(imm, point, tol);

  const AdaptedFrame frame = adapted_frame(imm, ambient, point, &X, tol);
  const ShapeData shape = second_fundamental_form(imm, ambient, frame, tol);
  const CurvatureData curv = gauss_curvature(ambient, frame, shape);

  BoundReport rep;
  rep.point = point;
  rep.direction = X / X.norm();
  rep.ric = ricci_direction(curv) + ric_bias;
  rep.h_norm_sq = shape.H_norm_sq;
  const int n = imm.dim_domain;

  auto apply = [&](Theorem t, double c, std::optional<double>& bound,
                   std::optional<double>& gap, std::optional<bool>& holds) {
    bound = bound_value(t, n, c, shape.H_norm_sq);
    gap = *bound - rep.ric;
    holds = *gap >= -verify_tol;
  };

  if (ambient.is_complex()) {
    // Flat C^n is also a real space form with c = 0.
    apply(Theorem::t21, 0.0, rep.bound_thm21, rep.gap21, rep.holds21);
    const LagrangianCheck lc = lagrangian_check(ambient, frame, tol);
    rep.totally_real = lc.totally_real;
    rep.lagrangian = lc.lagrangian;
    if (lc.totally_real) {
      apply(Theorem::t31, ambient.curvature(), rep.bound_thm31, rep.gap31,
            rep.holds31);
    }
    if (lc.lagrangian) {
      apply(Theorem::t32, ambient.curvature(), rep.bound_thm32, rep.gap32,
            rep.holds32);
    }
  } else {
    apply(Theorem::t21, ambient.curvature(), rep.bound_thm21, rep.gap21,
          rep.holds21);
  }
  return rep;
}

struct LagrangianIdentityResiduals {
  double full_symmetry_residual = 0.0;  // max |h^i_jk - h^j_ik|
  double shape_operator_residual = 0.0; // max ||A_{Je_j} e_i + J h(e_i,e_j)||
};

// Identities specific to Lagrangian submanifolds, checked in the frame whose
// normal part is {J e_1, ..., J e_n}.
inline LagrangianIdentityResiduals lagrangian_identities(
    const Immersion& imm, const AmbientSpaceForm& ambient,
    const AdaptedFrame& frame, const ShapeData& shape,
    const Tolerances& tol = {}) {
  if (!ambient.is_complex()) {
    throw unsupported_error("lagrangian_identities: ambient is not complex");
  }
  const int n = static_cast<int>(frame.tangent.size());
  if (static_cast<int>(frame.normal.size()) != n) {
    throw argument_error("lagrangian_identities: frame is not Lagrangian-adapted");
  }
  const double conv_tol = std::max(tol.eq_tol, 1e-6);
  for (int i = 0; i < n; ++i) {
    if ((frame.normal[i] - ambient.apply_J(frame.tangent[i])).norm() > conv_tol) {
      throw argument_error("lagrangian_identities: normal frame must be "
                           "J(tangent frame)");
    }
  }
  (void)imm;

  LagrangianIdentityResiduals res;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        res.full_symmetry_residual = std::max(
            res.full_symmetry_residual,
            std::abs(shape.h[i](j, k) - shape.h[j](i, k)));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // A_{Je_j} e_i = sum_a h^j_ia e_a ;  h(e_i,e_j) = sum_r h^r_ij Je_r
      VectorXd A = VectorXd::Zero(frame.tangent[0].size());
      for (int a = 0; a < n; ++a) A += shape.h[j](i, a) * frame.tangent[a];
      VectorXd Jh = VectorXd::Zero(frame.tangent[0].size());
      for (int r = 0; r < n; ++r) {
        Jh += shape.h[r](i, j) * ambient.apply_J(frame.normal[r]);
      }
      res.shape_operator_residual =
          std::max(res.shape_operator_residual, (A + Jh).norm());
    }
  }
  return res;
}

struct SweepSummary {
  std::string manifold_id;
  long samples = 0;
  int directions_per_point = 0;
  std::uint64_t seed = 0;
  long reports = 0;
  std::optional<double> worst_gap21, worst_gap31, worst_gap32;
  std::vector<BoundReport> violations;
  std::optional<LagrangianIdentityResiduals> lagrangian_residuals;
  std::vector<std::string> skipped;

  bool clean() const { return violations.empty(); }
};

// Seeded sweep over interior points and unit directions; per-point errors are
// collected into `skipped` rather than aborting.
inline SweepSummary sweep(const Immersion& imm, const AmbientSpaceForm& ambient,
                          long samples, std::uint64_t seed,
                          int directions_per_point, const Tolerances& tol = {},
                          double verify_tol = 1e-6,
                          const std::string& manifold_id = "",
                          double ric_bias = 0.0) {
  if (samples < 1) throw argument_error("sweep: samples must be >= 1");
  if (directions_per_point < 1) {
    throw argument_error("sweep: directions_per_point must be >= 1");
  }
  SweepSummary summary;
  summary.manifold_id = manifold_id;
  summary.samples = samples;
  summary.directions_per_point = directions_per_point;
  summary.seed = seed;

  const int n = imm.dim_domain;
  Rng rng(seed);
  const bool track_lagrangian = ambient.is_complex();

  auto update_worst = [](std::optional<double>& worst,
                         const std::optional<double>& gap) {
    if (!gap) return;
    if (!worst || *gap < *worst) worst = *gap;
  };

  for (long s = 0; s < samples; ++s) {
    VectorXd point(n);
    for (int j = 0; j < n; ++j) {
      const double lo = imm.domain_box(j, 0);
      const double hi = imm.domain_box(j, 1);
      const double margin = 0.05 * (hi - lo);
      point(j) = rng.uniform(lo + margin, hi - margin);
    }
    for (int d = 0; d < directions_per_point; ++d) {
      VectorXd X(n);
      do {
        for (int j = 0; j < n; ++j) X(j) = rng.normal();
      } while (X.norm() < 1e-8);
      try {
        BoundReport rep =
            verify_point(imm, ambient, point, X, tol, verify_tol, ric_bias);
        ++summary.reports;
        update_worst(summary.worst_gap21, rep.gap21);
        update_worst(summary.worst_gap31, rep.gap31);
        update_worst(summary.worst_gap32, rep.gap32);
        if (!rep.all_hold()) summary.violations.push_back(rep);
        if (track_lagrangian && rep.lagrangian && d == 0) {
          const AdaptedFrame lf =
              adapted_frame_lagrangian(imm, ambient, point, nullptr, tol);
          const ShapeData ls = second_fundamental_form(imm, ambient, lf, tol);
          const LagrangianIdentityResiduals r =
              lagrangian_identities(imm, ambient, lf, ls, tol);
          if (!summary.lagrangian_residuals) {
            summary.lagrangian_residuals = r;
          } else {
            summary.lagrangian_residuals->full_symmetry_residual =
                std::max(summary.lagrangian_residuals->full_symmetry_residual,
                         r.full_symmetry_residual);
            summary.lagrangian_residuals->shape_operator_residual =
                std::max(summary.lagrangian_residuals->shape_operator_residual,
                         r.shape_operator_residual);
          }
        }
      } catch (const std::exception& e) {
        summary.skipped.push_back(std::string(e.what()));
      }
    }
  }
  return summary;
}

} // namespace ricci
