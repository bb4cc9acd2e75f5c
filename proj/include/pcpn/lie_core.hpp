#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcpn {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class ErrorKind {
  InvalidDimension,
  DimensionMismatch,
  InvalidParameter,
  InvariantViolation,
  NotOnSlice,
  DegenerateChart,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Traceless anti-hermitian n x n matrix, an element of su(n).
class AlgebraElement {
 public:
  /// Validates anti-hermiticity and tracelessness to `tol`.
  static AlgebraElement from_matrix(CMatrix m, double tol = 1e-12);
  /// No validation; for results of closed operations.
  static AlgebraElement unchecked(CMatrix m) { return AlgebraElement(std::move(m)); }
  static AlgebraElement zero(int n) { return AlgebraElement(CMatrix::Zero(n, n)); }

  int n() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const { return AlgebraElement(-m_); }
  friend AlgebraElement operator*(double s, const AlgebraElement& x) { return AlgebraElement(s * x.m_); }

 private:
  explicit AlgebraElement(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Element of U(n) or SU(n). Most of the library works in SU(n); `unitary_only`
/// relaxes the determinant check for the U(n) actions used by the invariance tests.
class GroupElement {
 public:
  static GroupElement from_matrix(CMatrix m, double tol = 1e-12, bool unitary_only = false);
  static GroupElement unchecked(CMatrix m) { return GroupElement(std::move(m)); }
  static GroupElement identity(int n) { return GroupElement(CMatrix::Identity(n, n)); }

  int n() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  GroupElement inverse() const { return GroupElement(m_.adjoint()); }
  GroupElement operator*(const GroupElement& o) const;
  CVector column(int k) const { return m_.col(k); }

 private:
  explicit GroupElement(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Matrix unit e_ij (0-based).
CMatrix matrix_unit(int n, int i, int j);
/// X_ij^+ = e_ij - e_ji (0-based, i < j).
AlgebraElement x_plus(int n, int i, int j);
/// X_ij^- = i(e_ij + e_ji) (0-based, i < j).
AlgebraElement x_minus(int n, int i, int j);
/// H_k = i(e_kk - e_{k+1,k+1}) (0-based k in [0, n-2]).
AlgebraElement h_diag(int n, int k);
/// i(e_ab - e_cc) for arbitrary diagonal positions; i(e_11 - e_nn) is diag_pair(n, 0, n-1).
AlgebraElement diag_pair(int n, int a, int b);

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
/// Ad_g(X) = g X g^{-1}.
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);

/// Frobenius inner product Re tr(A^* B).
double frobenius(const CMatrix& a, const CMatrix& b);

/// Ordered basis of su(n): all X_ij^+ (i<j, lexicographic), then all X_ij^-
/// (same order), then H_1..H_{n-1}. Indices are 0-based throughout.
class SuBasis {
 public:
  explicit SuBasis(int n);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(elements_.size()); }
  const std::vector<AlgebraElement>& elements() const { return elements_; }
  const AlgebraElement& operator[](int a) const { return elements_[a]; }

  int plus_index(int i, int j) const;
  int minus_index(int i, int j) const;
  int h_index(int k) const { return 2 * pairs_ + k; }

  /// Frobenius Gram matrix of the basis.
  const RMatrix& gram() const { return gram_; }

  /// Coordinates of X in this basis (Gram solve).
  RVector coordinates(const AlgebraElement& x) const;
  RVector coordinates(const CMatrix& x) const;
  AlgebraElement element(const RVector& coords) const;
  /// Residual of re-expanding X from its coordinates; nonzero when X is not in su(n).
  double expansion_residual(const CMatrix& x) const;

  /// Matrix of ad_X in this basis (column a = coordinates of [X, b_a]).
  RMatrix ad_matrix(const AlgebraElement& x) const;
  /// Matrix of Ad_g in this basis.
  RMatrix adjoint_matrix(const GroupElement& g) const;

 private:
  int n_;
  int pairs_;
  std::vector<AlgebraElement> elements_;
  RMatrix gram_;
  Eigen::LDLT<RMatrix> gram_solver_;
};

/// Shared, lazily built basis for dimension n.
const SuBasis& basis(int n);

/// Haar-distributed element of SU(n): QR of a complex Gaussian matrix, column
/// phases fixed from R, determinant corrected on the last column.
GroupElement haar_sample(int n, std::uint64_t seed);
GroupElement haar_sample(int n, std::mt19937_64& rng);
/// Haar-distributed element of U(n) (no determinant correction).
GroupElement haar_unitary(int n, std::mt19937_64& rng);
/// Random element of su(n) with standard normal coordinates.
AlgebraElement random_algebra_element(int n, std::mt19937_64& rng);

enum class SubalgebraKind { UBottom, SuBottom, SuTop };

/// Embedded subalgebra of su(n):
///   UBottom  -> Lie algebra of {det(u)^{-1} (+) u : u in U(n-1)}
///   SuBottom -> {0} (+) su(n-1)
///   SuTop    -> su(n-1) (+) {0}
/// SU kinds at n = 2 are the zero algebra (empty basis).
struct SubalgebraSpec {
  int n;
  SubalgebraKind kind;
  std::vector<AlgebraElement> elements;

  int dim() const { return static_cast<int>(elements.size()); }
};

SubalgebraSpec subalgebra(int n, SubalgebraKind kind);
SubalgebraKind parse_subalgebra_kind(const std::string& name);
std::string to_string(SubalgebraKind kind);

}  // namespace pcpn
