#include "pcpn/quotient_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pcpn {

RVector realify(const CVector& v) {
  RVector x(2 * v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    x(2 * k) = v(k).real();
    x(2 * k + 1) = v(k).imag();
  }
  return x;
}

CVector complexify(const RVector& x) {
  CVector v(x.size() / 2);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(x(2 * k), x(2 * k + 1));
  return v;
}

SpherePoint SpherePoint::from_vector(CVector v, double tol) {
  if (v.size() < 1) throw Error(ErrorKind::InvalidDimension, "sphere point needs n >= 1");
  if (std::abs(v.norm() - 1.0) > tol) throw Error(ErrorKind::InvariantViolation, "sphere point must be a unit vector");
  return SpherePoint(std::move(v));
}

SpherePoint SpherePoint::normalized(const CVector& v) {
  const double len = v.norm();
  if (!(len > 0.0)) throw Error(ErrorKind::InvalidParameter, "cannot normalize the zero vector");
  return SpherePoint(v / len);
}

SpherePoint SpherePoint::basis_vector(int n, int k) {
  CVector v = CVector::Zero(n);
  v(k) = 1.0;
  return SpherePoint(std::move(v));
}

SpherePoint random_sphere_point(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (int k = 0; k < n; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return SpherePoint::normalized(v);
}

namespace {

int best_chart(const CVector& v) {
  int k = 0;
  for (int j = 1; j < v.size(); ++j)
    if (std::abs(v(j)) > std::abs(v(k))) k = j;
  return k;
}

void require_chart(const CVector& v, int chart) {
  if (chart < 0 || chart >= v.size()) throw Error(ErrorKind::InvalidParameter, "chart index out of range");
  if (std::abs(v(chart)) <= kChartFloor) {
    throw Error(ErrorKind::DegenerateChart, "point is too close to the boundary of chart " + std::to_string(chart));
  }
}

// columns [0, n) of a unitary whose first column is v; the complement is the
// standard frame minus the axis most parallel to v, orthonormalized in order
CMatrix complete_unitary(const CVector& v) {
  const int n = static_cast<int>(v.size());
  const int drop = best_chart(v);
  CMatrix u(n, n);
  u.col(0) = v;
  int filled = 1;
  for (int k = 0; k < n && filled < n; ++k) {
    if (k == drop) continue;
    CVector e = CVector::Zero(n);
    e(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (int q = 0; q < filled; ++q) e -= u.col(q) * u.col(q).dot(e);
    u.col(filled++) = e.normalized();
  }
  return u;
}

}  // namespace

CPPoint cp_point_in_chart(const SpherePoint& v, int chart) {
  const CVector& x = v.v();
  require_chart(x, chart);
  const int n = v.n();
  const Complex pivot = x(chart);
  CVector w(n - 1);
  for (int j = 0, p = 0; j < n; ++j)
    if (j != chart) w(p++) = x(j) / pivot;
  const Complex phase = std::conj(pivot) / std::abs(pivot);
  return CPPoint{n, chart, std::move(w), x * phase};
}

CPPoint cp_point(const SpherePoint& v) { return cp_point_in_chart(v, best_chart(v.v())); }

CPPoint cp_from_chart(int n, int chart, const CVector& w) {
  if (w.size() != n - 1) throw Error(ErrorKind::DimensionMismatch, "chart coordinates must have n - 1 entries");
  CVector v(n);
  for (int j = 0, p = 0; j < n; ++j) v(j) = j == chart ? Complex(1.0, 0.0) : w(p++);
  return cp_point_in_chart(SpherePoint::normalized(v), chart);
}

CPPoint cp_from_chart_coords(int n, int chart, const RVector& x) { return cp_from_chart(n, chart, complexify(x)); }

double AmbientBivector::tangency_residual() const {
  const RVector normal = base.real();
  return (m * normal).cwiseAbs().maxCoeff();
}

SpherePoint phi1(const GroupElement& u) { return SpherePoint::from_vector(u.column(0), 1e-10); }

SpherePoint psi(const GroupElement& u) { return SpherePoint::from_vector(u.column(u.n() - 1), 1e-10); }

CPPoint phi2(const SpherePoint& v) { return cp_point(v); }

SpherePoint phi3(const SpherePoint& v, double c, double tol) {
  if (!(c >= 0.0 && c < 1.0)) throw Error(ErrorKind::InvalidParameter, "phi3 requires c in [0, 1)");
  if (v.n() < 2) throw Error(ErrorKind::InvalidDimension, "phi3 requires n >= 2");
  if (std::abs(v.v()(0) - std::sqrt(c)) > tol) throw Error(ErrorKind::NotOnSlice, "point is not on S_c");
  return SpherePoint::normalized(v.v().tail(v.n() - 1) / std::sqrt(1.0 - c));
}

GroupElement lift(const SpherePoint& v) {
  CMatrix u = complete_unitary(v.v());
  const int n = v.n();
  if (n > 1) {
    const Complex det = u.determinant();
    u.col(n - 1) *= std::conj(det) / std::abs(det);
  }
  return GroupElement::unchecked(std::move(u));
}

GroupElement lift_last(const SpherePoint& v) {
  const CMatrix base = complete_unitary(v.v());
  const int n = v.n();
  CMatrix u(n, n);
  for (int k = 1; k < n; ++k) u.col(k - 1) = base.col(k);
  u.col(n - 1) = base.col(0);
  if (n > 1) {
    const Complex det = u.determinant();
    u.col(0) *= std::conj(det) / std::abs(det);
  }
  return GroupElement::unchecked(std::move(u));
}

namespace {

AmbientBivector push_through_column(const GroupElement& u, const Bivector& lambda, int column) {
  if (u.n() != lambda.n()) throw Error(ErrorKind::DimensionMismatch, "push_to_sphere: dimension mismatch");
  const SuBasis& b = basis(u.n());
  RMatrix xi(2 * u.n(), b.dim());
  for (int a = 0; a < b.dim(); ++a) xi.col(a) = realify(u.matrix() * b[a].matrix().col(column));
  return AmbientBivector{SpherePoint::from_vector(u.column(column), 1e-10), xi * lambda.coeffs() * xi.transpose()};
}

}  // namespace

AmbientBivector push_to_sphere(const GroupElement& u, const Bivector& lambda) {
  return push_through_column(u, lambda, 0);
}

AmbientBivector push_to_sphere_last(const GroupElement& u, const Bivector& lambda) {
  return push_through_column(u, lambda, u.n() - 1);
}

AmbientBivector rho_sphere(const SpherePoint& v, Embedding embedding) {
  const int n = v.n();
  if (n == 1) return AmbientBivector{v, RMatrix::Zero(2, 2)};
  if (embedding == Embedding::Bottom) {
    const GroupElement u = lift(v);
    return push_to_sphere(u, left_trivialized_pi(u));
  }
  const GroupElement u = lift_last(v);
  return push_to_sphere_last(u, left_trivialized_pi(u));
}

RMatrix chart_jacobian(const CVector& v, int chart) {
  require_chart(v, chart);
  const int n = static_cast<int>(v.size());
  RMatrix jac = RMatrix::Zero(2 * (n - 1), 2 * n);
  const Complex pivot = v(chart);
  auto put = [&](int row, int col, Complex a) {
    jac(2 * row, 2 * col) += a.real();
    jac(2 * row, 2 * col + 1) += -a.imag();
    jac(2 * row + 1, 2 * col) += a.imag();
    jac(2 * row + 1, 2 * col + 1) += a.real();
  };
  // dw_j = dv_j / v_k - v_j dv_k / v_k^2
  for (int j = 0, p = 0; j < n; ++j) {
    if (j == chart) continue;
    put(p, j, 1.0 / pivot);
    put(p, chart, -v(j) / (pivot * pivot));
    ++p;
  }
  return jac;
}

ChartBivector chart_pushforward(const AmbientBivector& b, int chart) {
  const RMatrix jac = chart_jacobian(b.base.v(), chart);
  RMatrix t = jac * b.m * jac.transpose();
  t = 0.5 * (t - t.transpose()).eval();
  return ChartBivector{cp_point_in_chart(b.base, chart), std::move(t)};
}

ChartBivector chart_pushforward(const AmbientBivector& b) { return chart_pushforward(b, best_chart(b.base.v())); }

ChartBivector tau_c_from_lift(const AffinePoissonStructure& s, const GroupElement& u, int chart) {
  return chart_pushforward(push_to_sphere(u, affine_tensor(s, u)), chart);
}

ChartBivector tau_c(const AffinePoissonStructure& s, const CPPoint& p) {
  if (p.n != s.n()) throw Error(ErrorKind::DimensionMismatch, "tau_c: dimension mismatch");
  return tau_c_from_lift(s, lift(SpherePoint::from_vector(p.rep, 1e-10)), p.chart);
}

ChartBivector tau_c(int n, double c, const CPPoint& p) { return tau_c(AffinePoissonStructure::make(n, c), p); }

int rank(const RMatrix& t, double tol) {
  if (t.size() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(t);
  const RVector& s = svd.singularValues();  // descending
  const double threshold = tol * std::max(s(0), 1.0);
  int r = 0;
  for (Eigen::Index k = 0; k + 1 < s.size(); k += 2)
    if (0.5 * (s(k) + s(k + 1)) > threshold) r += 2;
  return r;
}

}  // namespace pcpn
