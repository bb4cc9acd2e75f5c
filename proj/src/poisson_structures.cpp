#include "pcpn/poisson_structures.hpp"

#include <cmath>
#include <limits>

namespace pcpn {

namespace {

std::string pair_label(int i, int j, char sign) {
  return "X_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "^" + sign;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Bivector r_matrix(int n) {
  Bivector r = Bivector::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r = r + wedge(x_plus(n, i, j), x_minus(n, i, j));
  return r;
}

GroupElement sigma_c(int n, double c) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "sigma_c requires n >= 2");
  if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorKind::InvalidParameter, "c must lie in [0, 1]");
  const double sc = std::sqrt(c);
  const double s1c = std::sqrt(1.0 - c);
  CMatrix m = CMatrix::Identity(n, n);
  m(0, 0) = sc;
  m(n - 1, 0) = s1c;
  m(0, n - 1) = -s1c;
  m(n - 1, n - 1) = sc;
  return GroupElement::unchecked(std::move(m));
}

Bivector left_trivialized_pi(const GroupElement& u) {
  const Bivector r = r_matrix(u.n());
  return r - adjoint_bivector(u.inverse(), r);
}

Bivector x_sigma(const GroupElement& sigma) {
  const Bivector r = r_matrix(sigma.n());
  return adjoint_bivector(sigma.inverse(), r) - r;
}

AffinePoissonStructure::AffinePoissonStructure(double c, GroupElement sigma)
    : c_(c),
      sigma_(std::move(sigma)),
      r_(r_matrix(sigma_.n())),
      twisted_r_(adjoint_bivector(sigma_.inverse(), r_)),
      x_sigma_(twisted_r_ - r_) {}

AffinePoissonStructure AffinePoissonStructure::make(int n, double c) { return {c, sigma_c(n, c)}; }

AffinePoissonStructure AffinePoissonStructure::with_sigma(const GroupElement& sigma) {
  return {std::numeric_limits<double>::quiet_NaN(), sigma};
}

Bivector affine_tensor(const AffinePoissonStructure& s, const GroupElement& g) {
  if (g.n() != s.n()) throw Error(ErrorKind::DimensionMismatch, "affine_tensor: dimension mismatch");
  return s.r() - adjoint_bivector(g.inverse(), s.r()) + s.x_sigma();
}

Bivector left_part(const AffinePoissonStructure& s, const GroupElement& g) {
  return affine_tensor(s, g) - s.x_sigma();
}

CoisotropyReport coisotropy_check(const SubalgebraSpec& h, const Bivector& lambda0, double tol) {
  CoisotropyReport report{0.0, tol, true, -1, Bivector::zero(h.n)};
  for (int k = 0; k < h.dim(); ++k) {
    MembershipReport m = membership_h_wedge_g(ad_bivector(h.elements[k], lambda0), h);
    if (report.worst_generator < 0 || m.residual > report.residual) {
      report.residual = m.residual;
      report.worst_generator = k;
      report.witness = std::move(m.witness);
    }
  }
  report.pass = report.residual <= tol;
  return report;
}

std::vector<AdjointTableRow> adjoint_table(int n, double c) {
  const GroupElement s_inv = sigma_c(n, c).inverse();
  const double sc = std::sqrt(c);
  const double s1c = std::sqrt(1.0 - c);
  const int last = n - 1;
  std::vector<AdjointTableRow> rows;
  auto add = [&](std::string family, std::string label, const AlgebraElement& x, const AlgebraElement& expected) {
    const double residual = max_abs(adjoint(s_inv, x).matrix() - expected.matrix());
    rows.push_back({std::move(family), std::move(label), residual});
  };

  for (int i = 1; i < last; ++i)
    for (int j = i + 1; j < last; ++j) add("X_ij^+", pair_label(i, j, '+'), x_plus(n, i, j), x_plus(n, i, j));
  for (int j = 1; j < last; ++j)
    add("X_1j^+", pair_label(0, j, '+'), x_plus(n, 0, j), sc * x_plus(n, 0, j) + s1c * x_plus(n, j, last));
  for (int i = 1; i < last; ++i)
    add("X_in^+", pair_label(i, last, '+'), x_plus(n, i, last), -s1c * x_plus(n, 0, i) + sc * x_plus(n, i, last));
  add("X_1n^+", pair_label(0, last, '+'), x_plus(n, 0, last), x_plus(n, 0, last));

  for (int i = 1; i < last; ++i)
    for (int j = i + 1; j < last; ++j) add("X_ij^-", pair_label(i, j, '-'), x_minus(n, i, j), x_minus(n, i, j));
  for (int j = 1; j < last; ++j)
    add("X_1j^-", pair_label(0, j, '-'), x_minus(n, 0, j), sc * x_minus(n, 0, j) - s1c * x_minus(n, j, last));
  for (int i = 1; i < last; ++i)
    add("X_in^-", pair_label(i, last, '-'), x_minus(n, i, last), s1c * x_minus(n, 0, i) + sc * x_minus(n, i, last));
  add("X_1n^-", pair_label(0, last, '-'), x_minus(n, 0, last),
      (2.0 * c - 1.0) * x_minus(n, 0, last) + (2.0 * sc * s1c) * diag_pair(n, 0, last));
  return rows;
}

Bivector expansion_remainder(int n, double c) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  const int last = n - 1;
  const double cross = 2.0 * std::sqrt(c * (1.0 - c));
  Bivector interior = Bivector::zero(n);
  for (int i = 1; i < last; ++i)
    for (int j = i + 1; j < last; ++j) interior = interior + wedge(x_plus(n, i, j), x_minus(n, i, j));
  Bivector mixed = wedge(x_plus(n, 0, last), diag_pair(n, 0, last));
  for (int i = 1; i < last; ++i) {
    mixed = mixed + wedge(x_plus(n, i, last), x_minus(n, 0, i)) - wedge(x_plus(n, 0, i), x_minus(n, i, last));
  }
  return s.twisted_r() - ((2.0 * c - 1.0) * s.r() + (2.0 * (1.0 - c)) * interior + cross * mixed);
}

RVector realify_matrix(const CMatrix& m) {
  const auto n = m.rows();
  RVector v(2 * m.size());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      v(2 * (i + n * j)) = m(i, j).real();
      v(2 * (i + n * j) + 1) = m(i, j).imag();
    }
  return v;
}

namespace {

template <class Op>
RMatrix realified_operator(int n, Op op) {
  const int dim = 2 * n * n;
  RMatrix a(dim, dim);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int part = 0; part < 2; ++part) {
        CMatrix e = CMatrix::Zero(n, n);
        e(i, j) = part == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
        a.col(2 * (i + n * j) + part) = realify_matrix(op(e));
      }
  return a;
}

RMatrix frame(const std::vector<CMatrix>& vectors) {
  RMatrix f(2 * vectors.front().size(), static_cast<int>(vectors.size()));
  for (std::size_t a = 0; a < vectors.size(); ++a) f.col(static_cast<int>(a)) = realify_matrix(vectors[a]);
  return f;
}

}  // namespace

RMatrix left_multiplication_operator(const GroupElement& g) {
  return realified_operator(g.n(), [&](const CMatrix& x) -> CMatrix { return g.matrix() * x; });
}

RMatrix right_multiplication_operator(const GroupElement& h) {
  return realified_operator(h.n(), [&](const CMatrix& x) -> CMatrix { return x * h.matrix(); });
}

RMatrix push_tensor(const RMatrix& tangent_map, const RMatrix& tensor) {
  return tangent_map * tensor * tangent_map.transpose();
}

RMatrix ambient_multiplicative(const GroupElement& g) {
  const SuBasis& b = basis(g.n());
  std::vector<CMatrix> left;
  std::vector<CMatrix> right;
  for (const auto& x : b.elements()) {
    left.push_back(g.matrix() * x.matrix());
    right.push_back(x.matrix() * g.matrix());
  }
  const RMatrix c = r_matrix(g.n()).coeffs();
  const RMatrix fl = frame(left);
  const RMatrix fr = frame(right);
  return fl * c * fl.transpose() - fr * c * fr.transpose();
}

RMatrix ambient_affine(const GroupElement& sigma, const GroupElement& g) {
  return push_tensor(right_multiplication_operator(sigma), ambient_multiplicative(g * sigma.inverse()));
}

RMatrix ambient_from_left_trivialized(const GroupElement& g, const Bivector& lambda) {
  const SuBasis& b = basis(g.n());
  std::vector<CMatrix> left;
  for (const auto& x : b.elements()) left.push_back(g.matrix() * x.matrix());
  const RMatrix f = frame(left);
  return f * lambda.coeffs() * f.transpose();
}

}  // namespace pcpn
