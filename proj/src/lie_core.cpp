#include "pcpn/lie_core.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace pcpn {

namespace {

const Complex kI(0.0, 1.0);

void require_same_n(int a, int b, const char* where) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(where) + ": dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void require_dimension(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "su(n) requires n >= 2, got " + std::to_string(n));
}

}  // namespace

AlgebraElement AlgebraElement::from_matrix(CMatrix m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvariantViolation, "algebra element must be square");
  if ((m + m.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::InvariantViolation, "algebra element is not anti-hermitian");
  }
  if (std::abs(m.trace()) > tol) throw Error(ErrorKind::InvariantViolation, "algebra element is not traceless");
  return AlgebraElement(std::move(m));
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same_n(n(), o.n(), "AlgebraElement::operator+");
  return AlgebraElement(m_ + o.m_);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same_n(n(), o.n(), "AlgebraElement::operator-");
  return AlgebraElement(m_ - o.m_);
}

GroupElement GroupElement::from_matrix(CMatrix m, double tol, bool unitary_only) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvariantViolation, "group element must be square");
  const auto n = m.rows();
  if ((m * m.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::InvariantViolation, "group element is not unitary");
  }
  if (!unitary_only && std::abs(m.determinant() - 1.0) > tol) {
    throw Error(ErrorKind::InvariantViolation, "group element does not have determinant 1");
  }
  return GroupElement(std::move(m));
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  require_same_n(n(), o.n(), "GroupElement::operator*");
  return GroupElement(m_ * o.m_);
}

CMatrix matrix_unit(int n, int i, int j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

AlgebraElement x_plus(int n, int i, int j) {
  return AlgebraElement::unchecked(matrix_unit(n, i, j) - matrix_unit(n, j, i));
}

AlgebraElement x_minus(int n, int i, int j) {
  return AlgebraElement::unchecked(kI * (matrix_unit(n, i, j) + matrix_unit(n, j, i)));
}

AlgebraElement h_diag(int n, int k) { return diag_pair(n, k, k + 1); }

AlgebraElement diag_pair(int n, int a, int b) {
  return AlgebraElement::unchecked(kI * (matrix_unit(n, a, a) - matrix_unit(n, b, b)));
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_n(x.n(), y.n(), "bracket");
  const CMatrix& a = x.matrix();
  const CMatrix& b = y.matrix();
  return AlgebraElement::unchecked(a * b - b * a);
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  require_same_n(g.n(), x.n(), "adjoint");
  return AlgebraElement::unchecked(g.matrix() * x.matrix() * g.matrix().adjoint());
}

double frobenius(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

SuBasis::SuBasis(int n) : n_(n), pairs_(n * (n - 1) / 2) {
  require_dimension(n);
  elements_.reserve(n * n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) elements_.push_back(x_plus(n, i, j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) elements_.push_back(x_minus(n, i, j));
  for (int k = 0; k + 1 < n; ++k) elements_.push_back(h_diag(n, k));

  const int d = dim();
  gram_.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gram_(a, b) = frobenius(elements_[a].matrix(), elements_[b].matrix());
  gram_solver_.compute(gram_);
}

int SuBasis::plus_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // position of (i, j) in the lexicographic list of pairs i < j
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

int SuBasis::minus_index(int i, int j) const { return pairs_ + plus_index(i, j); }

RVector SuBasis::coordinates(const CMatrix& x) const {
  require_same_n(n_, static_cast<int>(x.rows()), "SuBasis::coordinates");
  RVector rhs(dim());
  for (int a = 0; a < dim(); ++a) rhs(a) = frobenius(elements_[a].matrix(), x);
  return gram_solver_.solve(rhs);
}

RVector SuBasis::coordinates(const AlgebraElement& x) const { return coordinates(x.matrix()); }

AlgebraElement SuBasis::element(const RVector& coords) const {
  if (coords.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "SuBasis::element: coordinate length");
  CMatrix m = CMatrix::Zero(n_, n_);
  for (int a = 0; a < dim(); ++a) m += coords(a) * elements_[a].matrix();
  return AlgebraElement::unchecked(std::move(m));
}

double SuBasis::expansion_residual(const CMatrix& x) const {
  return (element(coordinates(x)).matrix() - x).cwiseAbs().maxCoeff();
}

RMatrix SuBasis::ad_matrix(const AlgebraElement& x) const {
  RMatrix m(dim(), dim());
  for (int a = 0; a < dim(); ++a) m.col(a) = coordinates(bracket(x, elements_[a]));
  return m;
}

RMatrix SuBasis::adjoint_matrix(const GroupElement& g) const {
  RMatrix m(dim(), dim());
  for (int a = 0; a < dim(); ++a) m.col(a) = coordinates(adjoint(g, elements_[a]));
  return m;
}

const SuBasis& basis(int n) {
  require_dimension(n);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<SuBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SuBasis>(n);
  return *slot;
}

namespace {

CMatrix gaussian_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = Complex(re, im);
    }
  return a;
}

CMatrix haar_u(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

}  // namespace

GroupElement haar_sample(int n, std::mt19937_64& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "haar_sample requires n >= 1");
  CMatrix q = haar_u(n, rng);
  const Complex det = q.determinant();
  q.col(n - 1) *= std::conj(det) / std::abs(det);
  return GroupElement::unchecked(std::move(q));
}

GroupElement haar_sample(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_sample(n, rng);
}

GroupElement haar_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "haar_unitary requires n >= 1");
  return GroupElement::unchecked(haar_u(n, rng));
}

AlgebraElement random_algebra_element(int n, std::mt19937_64& rng) {
  const SuBasis& b = basis(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  RVector coords(b.dim());
  for (int a = 0; a < b.dim(); ++a) coords(a) = normal(rng);
  return b.element(coords);
}

SubalgebraSpec subalgebra(int n, SubalgebraKind kind) {
  require_dimension(n);
  SubalgebraSpec spec{n, kind, {}};
  // index window [lo, hi] of the embedded su(n-1) block
  const int lo = kind == SubalgebraKind::SuTop ? 0 : 1;
  const int hi = kind == SubalgebraKind::SuTop ? n - 2 : n - 1;
  for (int i = lo; i <= hi; ++i)
    for (int j = i + 1; j <= hi; ++j) spec.elements.push_back(x_plus(n, i, j));
  for (int i = lo; i <= hi; ++i)
    for (int j = i + 1; j <= hi; ++j) spec.elements.push_back(x_minus(n, i, j));
  for (int k = lo; k < hi; ++k) spec.elements.push_back(h_diag(n, k));
  if (kind == SubalgebraKind::UBottom) spec.elements.push_back(diag_pair(n, 0, n - 1));
  return spec;
}

SubalgebraKind parse_subalgebra_kind(const std::string& name) {
  if (name == "u" || name == "u-bottom") return SubalgebraKind::UBottom;
  if (name == "su-bottom") return SubalgebraKind::SuBottom;
  if (name == "su-top") return SubalgebraKind::SuTop;
  throw Error(ErrorKind::InvalidParameter, "unknown subalgebra kind '" + name + "'");
}

std::string to_string(SubalgebraKind kind) {
  switch (kind) {
    case SubalgebraKind::UBottom: return "u";
    case SubalgebraKind::SuBottom: return "su-bottom";
    case SubalgebraKind::SuTop: return "su-top";
  }
  return "?";
}

}  // namespace pcpn
