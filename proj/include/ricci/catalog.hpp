#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ricci/geometry.hpp"

namespace ricci {

namespace chart {

// Hyperspherical chart of S^n(r) in R^{n+1}:
//   x_1 = r cos t_1,  x_i = r cos t_i prod_{j<i} sin t_j,  x_{n+1} = r prod sin t_j
inline VectorXd sphere_eval(double r, const VectorXd& t) {
  const int n = static_cast<int>(t.size());
  VectorXd x(n + 1);
  double prod = 1.0;
  for (int i = 0; i < n; ++i) {
    x(i) = r * prod * std::cos(t(i));
    prod *= std::sin(t(i));
  }
  x(n) = r * prod;
  return x;
}

inline MatrixXd sphere_jacobian(double r, const VectorXd& t) {
  const int n = static_cast<int>(t.size());
  MatrixXd J = MatrixXd::Zero(n + 1, n);
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i < n && k > i) continue;
      double v = r;
      const int limit = (i < n) ? i : n - 1;
      for (int j = 0; j <= limit; ++j) {
        double factor;
        if (i < n && j == i) {
          factor = (j == k) ? -std::sin(t(j)) : std::cos(t(j));
        } else {
          factor = (j == k) ? std::cos(t(j)) : std::sin(t(j));
        }
        v *= factor;
      }
      J(i, k) = v;
    }
  }
  return J;
}

} // namespace chart

struct CatalogEntry {
  std::string id;
  std::string description;
  int n = 0;
  AmbientSpaceForm ambient = AmbientSpaceForm::euclidean(3);
  Immersion immersion;
  bool lagrangian = false;
  bool totally_geodesic = false;
  bool homogeneous = false;
  std::optional<double> expected_h_norm_sq;
  std::optional<double> expected_ric;
  std::optional<double> expected_gap21;
};

inline CatalogEntry make_sphere(int n, double r) {
  if (n < 2 || n + 1 > 16) throw argument_error("sphere: dimension out of range");
  if (!(r > 0.0)) throw argument_error("sphere: radius must be positive");
  CatalogEntry e;
  e.id = "sphere";
  e.description = "round sphere S^" + std::to_string(n) + "(r=" + std::to_string(r) +
                  ") in Euclidean R^" + std::to_string(n + 1);
  e.n = n;
  e.ambient = AmbientSpaceForm::euclidean(n + 1);
  e.immersion = Immersion::make(
      n, n + 1, [r](const VectorXd& t) { return chart::sphere_eval(r, t); },
      [r](const VectorXd& t) { return chart::sphere_jacobian(r, t); });
  e.immersion.domain_box.col(0).setConstant(0.4);
  e.immersion.domain_box.col(1).setConstant(3.14159265358979323846 - 0.4);
  e.homogeneous = true;
  e.expected_h_norm_sq = 1.0 / (r * r);
  e.expected_ric = (n - 1) / (r * r);
  e.expected_gap21 = (n - 2) * (n - 2) / (4.0 * r * r);
  return e;
}

// Totally geodesic equatorial S^n inside the ambient sphere S^{n+1}(c).
inline CatalogEntry make_equator_sphere(int n, double c) {
  if (n < 2 || n + 2 > 16) throw argument_error("equator-sphere: dimension out of range");
  if (!(c > 0.0)) throw argument_error("equator-sphere: requires c > 0");
  const double R = 1.0 / std::sqrt(c);
  CatalogEntry e;
  e.id = "equator-sphere";
  e.description = "totally geodesic equatorial S^" + std::to_string(n) +
                  " in ambient sphere c=" + std::to_string(c);
  e.n = n;
  e.ambient = AmbientSpaceForm::sphere(n + 1, c);
  e.immersion = Immersion::make(
      n, n + 2,
      [R, n](const VectorXd& t) {
        VectorXd x = VectorXd::Zero(n + 2);
        x.head(n + 1) = chart::sphere_eval(R, t);
        return x;
      },
      [R, n](const VectorXd& t) {
        MatrixXd J = MatrixXd::Zero(n + 2, n);
        J.topRows(n + 1) = chart::sphere_jacobian(R, t);
        return J;
      });
  e.immersion.domain_box.col(0).setConstant(0.4);
  e.immersion.domain_box.col(1).setConstant(3.14159265358979323846 - 0.4);
  e.totally_geodesic = true;
  e.homogeneous = true;
  e.expected_h_norm_sq = 0.0;
  e.expected_ric = (n - 1) * c;
  e.expected_gap21 = 0.0;
  return e;
}

// Small (latitude alpha) n-sphere inside the ambient sphere S^{n+1}(c);
// totally umbilic with ||H||^2 = c cot^2(alpha).
inline CatalogEntry make_small_sphere(int n, double c, double alpha) {
  if (n < 2 || n + 2 > 16) throw argument_error("small-sphere: dimension out of range");
  if (!(c > 0.0)) throw argument_error("small-sphere: requires c > 0");
  if (!(alpha > 0.1 && alpha < 3.0)) {
    throw argument_error("small-sphere: latitude alpha out of range");
  }
  const double R = 1.0 / std::sqrt(c);
  CatalogEntry e;
  e.id = "small-sphere";
  e.description = "totally umbilic small S^" + std::to_string(n) +
                  " (latitude " + std::to_string(alpha) + ") in ambient sphere";
  e.n = n;
  e.ambient = AmbientSpaceForm::sphere(n + 1, c);
  const double s = std::sin(alpha), ca = std::cos(alpha);
  e.immersion = Immersion::make(
      n, n + 2,
      [R, s, ca, n](const VectorXd& t) {
        VectorXd x(n + 2);
        x.head(n + 1) = chart::sphere_eval(R * s, t);
        x(n + 1) = R * ca;
        return x;
      },
      [R, s, n](const VectorXd& t) {
        MatrixXd J = MatrixXd::Zero(n + 2, n);
        J.topRows(n + 1) = chart::sphere_jacobian(R * s, t);
        return J;
      });
  e.immersion.domain_box.col(0).setConstant(0.4);
  e.immersion.domain_box.col(1).setConstant(3.14159265358979323846 - 0.4);
  e.homogeneous = true;
  const double cot = ca / s;
  e.expected_h_norm_sq = c * cot * cot;
  e.expected_ric = (n - 1) * c / (s * s);
  return e;
}

// Flat torus S^1(r_1) x ... x S^1(r_n) in C^n, Lagrangian for the standard J.
inline CatalogEntry make_flat_torus(const std::vector<double>& radii,
                                    const std::string& id = "flat-torus") {
  const int n = static_cast<int>(radii.size());
  if (n < 2 || 2 * n > 16) throw argument_error("flat-torus: dimension out of range");
  for (double r : radii) {
    if (!(r > 0.0)) throw argument_error("flat-torus: radii must be positive");
  }
  CatalogEntry e;
  e.id = id;
  e.description = "flat product of circles in C^" + std::to_string(n) +
                  " (Lagrangian)";
  e.n = n;
  e.ambient = AmbientSpaceForm::complex_euclidean(n);
  e.immersion = Immersion::make(
      n, 2 * n,
      [radii, n](const VectorXd& t) {
        VectorXd x(2 * n);
        for (int i = 0; i < n; ++i) {
          x(i) = radii[i] * std::cos(t(i));
          x(n + i) = radii[i] * std::sin(t(i));
        }
        return x;
      },
      [radii, n](const VectorXd& t) {
        MatrixXd J = MatrixXd::Zero(2 * n, n);
        for (int i = 0; i < n; ++i) {
          J(i, i) = -radii[i] * std::sin(t(i));
          J(n + i, i) = radii[i] * std::cos(t(i));
        }
        return J;
      });
  e.immersion.domain_box.col(0).setConstant(0.0);
  e.immersion.domain_box.col(1).setConstant(6.2832);
  e.lagrangian = true;
  e.homogeneous = true;
  double s = 0.0;
  for (double r : radii) s += 1.0 / (r * r);
  e.expected_h_norm_sq = s / (n * n);
  e.expected_ric = 0.0;
  return e;
}

inline CatalogEntry make_clifford_torus() {
  CatalogEntry e = make_flat_torus({1.0, 1.0}, "clifford-torus");
  e.description = "Clifford torus S^1(1) x S^1(1) in C^2 (Lagrangian)";
  return e;
}

// Standard real subspace R^n in C^n: Lagrangian and totally geodesic.
inline CatalogEntry make_real_subspace(int n) {
  if (n < 2 || 2 * n > 16) throw argument_error("real-subspace: dimension out of range");
  CatalogEntry e;
  e.id = "real-subspace";
  e.description = "standard R^" + std::to_string(n) + " in C^" + std::to_string(n) +
                  " (Lagrangian, totally geodesic)";
  e.n = n;
  e.ambient = AmbientSpaceForm::complex_euclidean(n);
  e.immersion = Immersion::make(
      n, 2 * n,
      [n](const VectorXd& u) {
        VectorXd x = VectorXd::Zero(2 * n);
        x.head(n) = u;
        return x;
      },
      [n](const VectorXd&) {
        MatrixXd J = MatrixXd::Zero(2 * n, n);
        J.topRows(n).setIdentity();
        return J;
      });
  e.lagrangian = true;
  e.totally_geodesic = true;
  e.homogeneous = true;
  e.expected_h_norm_sq = 0.0;
  e.expected_ric = 0.0;
  e.expected_gap21 = 0.0;
  return e;
}

// Product S^2(r_1) x S^2(r_2) in R^6; mixed 2-planes are flat and critical.
inline CatalogEntry make_sphere_product(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw argument_error("sphere-product: radii must be positive");
  }
  CatalogEntry e;
  e.id = "sphere-product";
  e.description = "product S^2(" + std::to_string(r1) + ") x S^2(" +
                  std::to_string(r2) + ") in R^6";
  e.n = 4;
  e.ambient = AmbientSpaceForm::euclidean(6);
  e.immersion = Immersion::make(
      4, 6,
      [r1, r2](const VectorXd& t) {
        VectorXd x(6);
        x.head(3) = chart::sphere_eval(r1, t.head(2));
        x.tail(3) = chart::sphere_eval(r2, t.tail(2));
        return x;
      },
      [r1, r2](const VectorXd& t) {
        MatrixXd J = MatrixXd::Zero(6, 4);
        J.block(0, 0, 3, 2) = chart::sphere_jacobian(r1, t.head(2));
        J.block(3, 2, 3, 2) = chart::sphere_jacobian(r2, t.tail(2));
        return J;
      });
  e.immersion.domain_box.col(0).setConstant(0.4);
  e.immersion.domain_box.col(1).setConstant(3.14159265358979323846 - 0.4);
  e.homogeneous = true;
  // H = -(nu_1/(2 r_1) + nu_2/(2 r_2)) for the two orthogonal factor normals.
  e.expected_h_norm_sq = (4.0 / (r1 * r1) + 4.0 / (r2 * r2)) / 16.0;
  return e;
}

inline CatalogEntry make_cylinder(double r) {
  if (!(r > 0.0)) throw argument_error("cylinder: radius must be positive");
  CatalogEntry e;
  e.id = "cylinder";
  e.description = "cylinder of radius " + std::to_string(r) + " in R^3";
  e.n = 2;
  e.ambient = AmbientSpaceForm::euclidean(3);
  e.immersion = Immersion::make(
      2, 3,
      [r](const VectorXd& u) {
        VectorXd x(3);
        x << r * std::cos(u(0)), r * std::sin(u(0)), u(1);
        return x;
      },
      [r](const VectorXd& u) {
        MatrixXd J(3, 2);
        J << -r * std::sin(u(0)), 0.0, r * std::cos(u(0)), 0.0, 0.0, 1.0;
        return J;
      });
  e.immersion.domain_box(0, 0) = 0.0;
  e.immersion.domain_box(0, 1) = 6.2832;
  e.immersion.domain_box(1, 0) = -1.0;
  e.immersion.domain_box(1, 1) = 1.0;
  e.homogeneous = true;
  e.expected_h_norm_sq = 1.0 / (4.0 * r * r);
  e.expected_ric = 0.0;
  return e;
}

// Graph immersion u -> (u, sum u_i^2): generic nonzero-gap case.
inline CatalogEntry make_graph(int n) {
  if (n < 2 || n + 1 > 16) throw argument_error("graph: dimension out of range");
  CatalogEntry e;
  e.id = "graph";
  e.description = "paraboloid graph u -> (u, |u|^2) in R^" + std::to_string(n + 1);
  e.n = n;
  e.ambient = AmbientSpaceForm::euclidean(n + 1);
  e.immersion = Immersion::make(
      n, n + 1,
      [n](const VectorXd& u) {
        VectorXd x(n + 1);
        x.head(n) = u;
        x(n) = u.squaredNorm();
        return x;
      },
      [n](const VectorXd& u) {
        MatrixXd J = MatrixXd::Zero(n + 1, n);
        J.topRows(n).setIdentity();
        J.row(n) = 2.0 * u.transpose();
        return J;
      });
  return e;
}

inline std::vector<CatalogEntry> catalog() {
  return {
      make_sphere(2, 1.0),
      make_equator_sphere(2, 1.0),
      make_small_sphere(2, 1.0, 0.9),
      make_clifford_torus(),
      make_flat_torus({1.0, 2.0}),
      make_real_subspace(2),
      make_sphere_product(1.0, 0.5),
      make_cylinder(1.0),
      make_graph(2),
  };
}

inline CatalogEntry find_catalog_entry(const std::string& id) {
  std::vector<CatalogEntry> entries = catalog();
  for (CatalogEntry& e : entries) {
    if (e.id == id) return e;
  }
  throw argument_error("unknown catalog manifold '" + id + "'");
}

} // namespace ricci
