#include "doctest.h"

#include "pcpn/quotient_geometry.hpp"

#include <cmath>

using namespace pcpn;

namespace {

const Complex I(0.0, 1.0);

double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

GroupElement bottom_block(const CMatrix& lower) {
  const auto m = lower.rows();
  CMatrix u = CMatrix::Identity(m + 1, m + 1);
  u.bottomRightCorner(m, m) = lower;
  return GroupElement::unchecked(u);
}

SpherePoint slice_point(int n, double c, std::mt19937_64& rng) {
  CVector v(n);
  v(0) = std::sqrt(c);
  v.tail(n - 1) = std::sqrt(1.0 - c) * random_sphere_point(n - 1, rng).v();
  return SpherePoint::normalized(v);
}

}  // namespace

TEST_CASE("quotient maps") {
  CHECK(max_abs(realify(phi1(GroupElement::identity(3)).v() - SpherePoint::basis_vector(3, 0).v())) == 0.0);
  CHECK(max_abs(realify(psi(GroupElement::identity(3)).v() - SpherePoint::basis_vector(3, 2).v())) == 0.0);

  const double c = 0.3;
  const GroupElement s = sigma_c(4, c);
  CVector first = CVector::Zero(4);
  first(0) = std::sqrt(c);
  first(3) = std::sqrt(1 - c);
  CHECK(max_abs(realify(phi1(s).v() - first)) < 1e-15);
  CVector last = CVector::Zero(4);
  last(0) = -std::sqrt(1 - c);
  last(3) = std::sqrt(c);
  CHECK(max_abs(realify(psi(s).v() - last)) < 1e-15);

  const GroupElement lower = haar_sample(3, 2);
  const GroupElement u = bottom_block(lower.matrix());
  CHECK(max_abs(realify(phi1(u).v() - SpherePoint::basis_vector(4, 0).v())) == 0.0);
  CHECK(max_abs(realify(psi(u).v().tail(3) - lower.column(2))) == 0.0);
}

TEST_CASE("phi2 picks the canonical chart and representative") {
  std::mt19937_64 rng(5);
  const SpherePoint v = random_sphere_point(4, rng);
  const CPPoint a = phi2(v);
  const CPPoint b = phi2(SpherePoint::normalized(std::polar(1.0, 2.1) * v.v()));
  CHECK(a.chart == b.chart);
  CHECK(max_abs(realify(a.w - b.w)) < 1e-12);
  CHECK(max_abs(realify(a.rep - b.rep)) < 1e-12);
  CHECK(a.rep(a.chart).imag() == 0.0);
  CHECK(a.rep(a.chart).real() > 0.0);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(v.v()(k)) <= std::abs(v.v()(a.chart)));

  const CPPoint e1 = phi2(SpherePoint::basis_vector(3, 0));
  CHECK(e1.chart == 0);
  CHECK(e1.w.norm() == 0.0);

  CVector v0(2);
  v0 << std::sqrt(0.5), std::sqrt(0.5);
  const CPPoint p0 = phi2(SpherePoint::normalized(v0));
  CHECK(p0.chart == 0);
  CHECK(std::abs(p0.w(0) - 1.0) < 1e-15);

  const CPPoint back = cp_from_chart(4, a.chart, a.w);
  CHECK(max_abs(realify(back.rep - a.rep)) < 1e-12);
  CHECK_THROWS_AS(cp_point_in_chart(SpherePoint::basis_vector(3, 0), 1), Error);
}

TEST_CASE("phi3") {
  std::mt19937_64 rng(8);
  for (double c : {0.0, 0.25, 0.7}) {
    CVector v = CVector::Zero(3);
    v(0) = std::sqrt(c);
    v(1) = std::sqrt(1 - c);
    CHECK(max_abs(realify(phi3(SpherePoint::normalized(v), c).v() - SpherePoint::basis_vector(2, 0).v())) < 1e-15);
    CHECK(std::abs(phi3(slice_point(4, c, rng), c).v().norm() - 1.0) < 1e-12);
  }
  CVector off = CVector::Zero(2);
  off(0) = 0.9;
  off(1) = std::sqrt(1 - 0.81);
  try {
    phi3(SpherePoint::normalized(off), 0.25);
    FAIL("expected NotOnSlice");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOnSlice);
  }
  CHECK_THROWS_AS(phi3(SpherePoint::basis_vector(2, 0), 1.0), Error);
}

TEST_CASE("lift") {
  CHECK((lift(SpherePoint::basis_vector(4, 0)).matrix() - CMatrix::Identity(4, 4)).norm() == 0.0);
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const SpherePoint v = random_sphere_point(n, rng);
    const GroupElement u = lift(v);
    CHECK(max_abs(realify(phi1(u).v() - v.v())) < 1e-12);
    CHECK(std::abs(u.matrix().determinant() - 1.0) < 1e-12);
    CHECK((u.matrix() * u.matrix().adjoint() - CMatrix::Identity(n, n)).norm() < 1e-12);
    const GroupElement w = lift_last(v);
    CHECK(max_abs(realify(psi(w).v() - v.v())) < 1e-12);
    CHECK(std::abs(w.matrix().determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("push_to_sphere") {
  CHECK(max_abs(push_to_sphere(haar_sample(3, 1), Bivector::zero(3)).m) == 0.0);

  // at the identity, X_1j^+ e_1 = -e_j and X_1j^- e_1 = i e_j, so r pushes to -sum_j dx_j ^ dy_j
  for (int n : {2, 3, 5}) {
    const AmbientBivector m = push_to_sphere(GroupElement::identity(n), r_matrix(n));
    RMatrix expected = RMatrix::Zero(2 * n, 2 * n);
    for (int j = 1; j < n; ++j) {
      expected(2 * j, 2 * j + 1) = -1.0;
      expected(2 * j + 1, 2 * j) = 1.0;
    }
    CHECK(max_abs(m.m - expected) == 0.0);
  }

  // block elements fix e_1: the first complex coordinate rows vanish
  const GroupElement u = bottom_block(haar_sample(3, 4).matrix());
  const AmbientBivector m = push_to_sphere(u, left_trivialized_pi(u));
  CHECK(max_abs(m.m.topRows(2)) < 1e-15);
  CHECK(m.tangency_residual() < 1e-14);

  std::mt19937_64 rng(6);
  const GroupElement g = haar_sample(4, rng);
  CHECK(push_to_sphere(g, left_trivialized_pi(g)).tangency_residual() < 1e-13);
}

TEST_CASE("tangency to S_c along the lift (1 + u'') sigma_c") {
  std::mt19937_64 rng(14);
  for (int n : {3, 4, 5})
    for (double c : {0.25, 0.5}) {
      const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
      const SpherePoint v = slice_point(n, c, rng);
      const GroupElement inner = lift_last(phi3(v, c));
      const GroupElement u = bottom_block(inner.matrix()) * s.sigma();
      CHECK(max_abs(realify(phi1(u).v() - v.v())) < 1e-12);
      const AmbientBivector m = push_to_sphere(u, affine_tensor(s, u));
      CHECK(max_abs(m.m.topRows(2)) < 1e-9);
      // (1 - c) times the pushforward of pi(u') through the last column, one sqrt(1 - c) per leg
      const AmbientBivector via_psi = push_to_sphere_last(bottom_block(inner.matrix()),
                                                          left_trivialized_pi(bottom_block(inner.matrix())));
      CHECK(max_abs(m.m - (1 - c) * via_psi.m) < 1e-12);
    }
}

TEST_CASE("rho_sphere") {
  CHECK(max_abs(rho_sphere(SpherePoint::basis_vector(3, 0), Embedding::Bottom).m) == 0.0);
  CHECK(max_abs(rho_sphere(SpherePoint::basis_vector(3, 2), Embedding::Top).m) == 0.0);
  CVector one(1);
  one(0) = std::polar(1.0, 0.3);
  CHECK(max_abs(rho_sphere(SpherePoint::normalized(one), Embedding::Top).m) == 0.0);

  // independence of the lift: u (1 (+) k) with k in SU(n-1)
  std::mt19937_64 rng(3);
  for (int n : {2, 3, 4}) {
    const SpherePoint v = random_sphere_point(n, rng);
    const GroupElement u = lift(v);
    const GroupElement u2 = u * bottom_block(n > 2 ? haar_sample(n - 1, rng).matrix() : CMatrix::Identity(1, 1));
    const RMatrix a = push_to_sphere(u, left_trivialized_pi(u)).m;
    const RMatrix b = push_to_sphere(u2, left_trivialized_pi(u2)).m;
    CHECK(max_abs(a - b) < 1e-8);
    CHECK(max_abs(rho_sphere(v, Embedding::Bottom).m - a) < 1e-12);
  }
}

TEST_CASE("chart Jacobian against finite differences") {
  std::mt19937_64 rng(17);
  const SpherePoint v = random_sphere_point(3, rng);
  const CPPoint p = cp_point(v);
  const RMatrix jac = chart_jacobian(v.v(), p.chart);
  const double h = 1e-6;
  auto chart = [&](const RVector& x) { return cp_point_in_chart(SpherePoint::normalized(complexify(x)), p.chart).coords(); };
  // chart coordinates are homogeneous of degree 0, so differentiate the unnormalized map
  auto raw = [&](const RVector& x) {
    const CVector y = complexify(x);
    CVector w(2);
    for (int j = 0, k = 0; j < 3; ++j)
      if (j != p.chart) w(k++) = y(j) / y(p.chart);
    return realify(w);
  };
  for (int l = 0; l < 6; ++l) {
    RVector xp = v.real();
    RVector xm = v.real();
    xp(l) += h;
    xm(l) -= h;
    CHECK(((raw(xp) - raw(xm)) / (2 * h) - jac.col(l)).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK((chart(v.real()) - p.coords()).norm() < 1e-12);
  CVector bad = CVector::Zero(2);
  bad(0) = 1.0;
  CHECK_THROWS_AS(chart_jacobian(bad, 1), Error);
}

TEST_CASE("chart pushforward") {
  std::mt19937_64 rng(23);
  const SpherePoint v = random_sphere_point(3, rng);
  CHECK(max_abs(chart_pushforward(AmbientBivector{v, RMatrix::Zero(6, 6)}).t) == 0.0);

  const GroupElement u = lift(v);
  const AmbientBivector m = push_to_sphere(u, left_trivialized_pi(u));
  const ChartBivector t = chart_pushforward(m);
  CHECK((t.t + t.t.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // the diagonal phase rotation acts trivially on CP^{n-1}
  const Complex phase = std::polar(1.0, 0.8);
  const RMatrix rot = [&] {
    RMatrix r = RMatrix::Zero(6, 6);
    for (int k = 0; k < 3; ++k) {
      r(2 * k, 2 * k) = phase.real();
      r(2 * k, 2 * k + 1) = -phase.imag();
      r(2 * k + 1, 2 * k) = phase.imag();
      r(2 * k + 1, 2 * k + 1) = phase.real();
    }
    return r;
  }();
  const AmbientBivector turned{SpherePoint::normalized(phase * v.v()), rot * m.m * rot.transpose()};
  CHECK(max_abs(chart_pushforward(turned, t.base.chart).t - t.t) < 1e-10);
}

TEST_CASE("tau_c examples") {
  CVector v0(2);
  v0 << std::sqrt(0.5), std::sqrt(0.5);
  CHECK(max_abs(tau_c(2, 0.5, cp_point(SpherePoint::normalized(v0))).t) < 1e-10);
  CHECK(max_abs(tau_c(3, 1.0, cp_point(SpherePoint::basis_vector(3, 0))).t) == 0.0);

  std::mt19937_64 rng(29);
  const AffinePoissonStructure s = AffinePoissonStructure::make(3, 0.25);
  for (int k = 0; k < 50; ++k) {
    const int r = rank(tau_c(s, cp_point(random_sphere_point(3, rng))));
    CHECK((r == 0 || r == 2 || r == 4));
  }
  CHECK_THROWS_AS(tau_c(s, cp_point(SpherePoint::basis_vector(4, 0))), Error);
}

TEST_CASE("tau_1 and tau_0 are the two standard structures") {
  std::mt19937_64 rng(31);
  for (int n : {2, 3, 4}) {
    const AffinePoissonStructure s0 = AffinePoissonStructure::make(n, 0.0);
    const AffinePoissonStructure s1 = AffinePoissonStructure::make(n, 1.0);
    const CPPoint p = cp_point(random_sphere_point(n, rng));
    const SpherePoint rep = SpherePoint::from_vector(p.rep, 1e-10);
    const GroupElement u = lift(rep);
    CHECK(max_abs(tau_c(s1, p).t - chart_pushforward(push_to_sphere(u, left_trivialized_pi(u)), p.chart).t) < 1e-13);
    const GroupElement w = lift_last(rep);
    const RMatrix swapped = chart_pushforward(push_to_sphere_last(w, left_trivialized_pi(w)), p.chart).t;
    CHECK(max_abs(tau_c(s0, p).t - swapped) < 1e-12);
  }
}

TEST_CASE("rank") {
  CHECK(rank(RMatrix::Zero(4, 4)) == 0);
  RMatrix j = RMatrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  CHECK(rank(j) == 6);
  j(4, 5) = 1e-12;
  j(5, 4) = -1e-12;
  CHECK(rank(j) == 4);

  std::mt19937_64 rng(37);
  const AffinePoissonStructure s = AffinePoissonStructure::make(2, 0.5);
  for (int k = 0; k < 20; ++k) CHECK(rank(tau_c(s, cp_point(random_sphere_point(2, rng)))) == 2);
}
