#include "pcpn/tensor_algebra.hpp"

namespace pcpn {

namespace {

void require_same_n(int a, int b, const char* where) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": dimension mismatch");
}

}  // namespace

Bivector::Bivector(int n, const RMatrix& c) : n_(n), c_(0.5 * (c - c.transpose())) {}

Bivector Bivector::antisymmetrized(int n, const RMatrix& coeffs) {
  const int d = basis(n).dim();
  if (coeffs.rows() != d || coeffs.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "bivector coefficients must be d x d with d = n^2 - 1");
  }
  return Bivector(n, coeffs);
}

Bivector Bivector::zero(int n) {
  const int d = basis(n).dim();
  return Bivector(n, RMatrix::Zero(d, d));
}

Bivector Bivector::from_coefficients(int n, RMatrix coeffs) {
  const int d = basis(n).dim();
  if (coeffs.rows() != d || coeffs.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "bivector coefficients must be d x d with d = n^2 - 1");
  }
  if ((coeffs + coeffs.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorKind::InvariantViolation, "bivector coefficients must be antisymmetric");
  }
  return Bivector(n, coeffs);
}

Bivector Bivector::operator+(const Bivector& o) const {
  require_same_n(n_, o.n_, "Bivector::operator+");
  return Bivector(n_, c_ + o.c_);
}

Bivector Bivector::operator-(const Bivector& o) const {
  require_same_n(n_, o.n_, "Bivector::operator-");
  return Bivector(n_, c_ - o.c_);
}

Bivector Bivector::transformed(const RMatrix& a) const { return Bivector(n_, a * c_ * a.transpose()); }

double Bivector::norm() const {
  const RMatrix& g = basis(n_).gram();
  const double sq = (g * c_ * g * c_.transpose()).trace() / 2.0;
  return std::sqrt(std::max(sq, 0.0));
}

Bivector wedge(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_n(x.n(), y.n(), "wedge");
  const SuBasis& b = basis(x.n());
  const RVector a = b.coordinates(x);
  const RVector c = b.coordinates(y);
  return Bivector::antisymmetrized(x.n(), a * c.transpose() - c * a.transpose());
}

Bivector ad_bivector(const AlgebraElement& h, const Bivector& lambda) {
  require_same_n(h.n(), lambda.n(), "ad_bivector");
  const RMatrix m = basis(h.n()).ad_matrix(h);
  const RMatrix& c = lambda.coeffs();
  return Bivector::antisymmetrized(h.n(), m * c + c * m.transpose());
}

Bivector adjoint_bivector(const GroupElement& g, const Bivector& lambda) {
  require_same_n(g.n(), lambda.n(), "adjoint_bivector");
  return lambda.transformed(basis(g.n()).adjoint_matrix(g));
}

RMatrix orthonormal_coordinates(int n, const std::vector<AlgebraElement>& elements) {
  const SuBasis& b = basis(n);
  const RMatrix& g = b.gram();
  std::vector<RVector> kept;
  for (const auto& x : elements) {
    RVector v = b.coordinates(x);
    // modified Gram-Schmidt in the G metric
    for (const auto& q : kept) v -= (q.transpose() * g * v)(0, 0) * q;
    const double len = std::sqrt(std::max((v.transpose() * g * v)(0, 0), 0.0));
    if (len > 1e-10) kept.push_back(v / len);
  }
  RMatrix q(b.dim(), static_cast<int>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) q.col(static_cast<int>(k)) = kept[k];
  return q;
}

MembershipReport membership_h_wedge_g(const Bivector& lambda, const SubalgebraSpec& h) {
  require_same_n(lambda.n(), h.n, "membership_h_wedge_g");
  const SuBasis& b = basis(h.n);
  const RMatrix q = orthonormal_coordinates(h.n, h.elements);
  // G-orthogonal projector onto m in coordinates: I - Q Q^T G
  const RMatrix proj_m = RMatrix::Identity(b.dim(), b.dim()) - q * q.transpose() * b.gram();
  Bivector witness = lambda.transformed(proj_m);
  const double residual = witness.norm();
  return MembershipReport{residual, std::move(witness)};
}

}  // namespace pcpn
