#pragma once

#include "pcpn/poisson_structures.hpp"

#include <random>

namespace pcpn {

// Real coordinates on C^n are interleaved: (Re v_1, Im v_1, Re v_2, Im v_2, ...).
RVector realify(const CVector& v);
CVector complexify(const RVector& x);

/// Unit vector in C^n.
class SpherePoint {
 public:
  static SpherePoint from_vector(CVector v, double tol = 1e-12);
  static SpherePoint normalized(const CVector& v);
  static SpherePoint basis_vector(int n, int k);

  int n() const { return static_cast<int>(v_.size()); }
  const CVector& v() const { return v_; }
  RVector real() const { return realify(v_); }

 private:
  explicit SpherePoint(CVector v) : v_(std::move(v)) {}
  CVector v_;
};

/// Uniform point on S^{2n-1} (normalized complex Gaussian).
SpherePoint random_sphere_point(int n, std::mt19937_64& rng);

/// Point of CP^{n-1} in the affine chart {v_chart != 0}, w_j = v_j / v_chart for
/// j != chart (in increasing j). `rep` is the unit representative with
/// rep(chart) real and positive. Canonical points use the chart maximizing |v_k|.
struct CPPoint {
  int n;
  int chart;
  CVector w;
  CVector rep;

  RVector coords() const { return realify(w); }
};

/// Below this |v_chart| the chart is treated as degenerate.
inline constexpr double kChartFloor = 0.1;

CPPoint cp_point(const SpherePoint& v);
CPPoint cp_point_in_chart(const SpherePoint& v, int chart);
CPPoint cp_from_chart(int n, int chart, const CVector& w);
CPPoint cp_from_chart_coords(int n, int chart, const RVector& x);

/// Tangent 2-tensor at a point of S^{2n-1}, in ambient real coordinates of R^{2n}.
struct AmbientBivector {
  SpherePoint base;
  RMatrix m;

  /// Largest component of M along the outward normal direction of the sphere.
  double tangency_residual() const;
};

/// 2-tensor at a point of CP^{n-1} in the real coordinates of the point's chart.
struct ChartBivector {
  CPPoint base;
  RMatrix t;
};

SpherePoint phi1(const GroupElement& u);
SpherePoint psi(const GroupElement& u);
CPPoint phi2(const SpherePoint& v);
/// (v_2, ..., v_n) / sqrt(1 - c) for v with v_1 = sqrt(c).
SpherePoint phi3(const SpherePoint& v, double c, double tol = 1e-12);

/// Deterministic u in SU(n) with first column v. lift(e_1) = identity.
GroupElement lift(const SpherePoint& v);
/// Deterministic u in SU(n) with last column v. lift_last(e_n) = identity.
GroupElement lift_last(const SpherePoint& v);

/// (D phi1)_u applied to L_u Lambda: M = sum_ab Lambda_ab xi_a xi_b^T, xi_a = u X_a e_1.
AmbientBivector push_to_sphere(const GroupElement& u, const Bivector& lambda);
/// Same through the last-column projection psi: xi_a = u X_a e_n.
AmbientBivector push_to_sphere_last(const GroupElement& u, const Bivector& lambda);

/// Which SU(n-1) block the standard sphere is a quotient by:
///   Bottom: S^{2n-1} = SU(n) / ({1} (+) SU(n-1)) via the first column,
///   Top:    S^{2n-1} = SU(n) / (SU(n-1) (+) {1}) via the last column.
enum class Embedding { Bottom, Top };

/// Standard Poisson sphere rho^{(n)} at v in S^{2n-1}, n = v.n(); zero for n = 1.
AmbientBivector rho_sphere(const SpherePoint& v, Embedding embedding);

/// Real Jacobian (2(n-1) x 2n) of v -> (v_j / v_chart)_{j != chart} at v.
RMatrix chart_jacobian(const CVector& v, int chart);

ChartBivector chart_pushforward(const AmbientBivector& b);
ChartBivector chart_pushforward(const AmbientBivector& b, int chart);

/// tau_c at p, computed from lift(p.rep) in p's chart.
ChartBivector tau_c(const AffinePoissonStructure& s, const CPPoint& p);
ChartBivector tau_c(int n, double c, const CPPoint& p);
/// tau_c at [u e_1] from an explicit lift u, expressed in `chart`.
ChartBivector tau_c_from_lift(const AffinePoissonStructure& s, const GroupElement& u, int chart);

inline constexpr double kRankTolerance = 1e-7;

/// Rank of an antisymmetric matrix: singular values come in pairs; a pair counts
/// when its mean exceeds tol * max(largest singular value, 1). Always even.
int rank(const RMatrix& t, double tol = kRankTolerance);
inline int rank(const ChartBivector& t, double tol = kRankTolerance) { return rank(t.t, tol); }

}  // namespace pcpn
