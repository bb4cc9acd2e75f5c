#pragma once

// Exact rational arithmetic for su(n) computations at parameters c whose
// square roots sqrt(c) and sqrt(1-c) are both rational (c = 9/25 and friends).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pcpn::exact {

using Rational = boost::multiprecision::cpp_rational;

struct Complex {
  Rational re;
  Rational im;

  Complex() = default;
  Complex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Complex conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const Complex& o) const { return re == o.re && im == o.im; }
};

/// Dense square matrix over Q(i).
class Matrix {
 public:
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n)) {}

  static Matrix identity(int n);
  static Matrix unit(int n, int i, int j);

  int n() const { return n_; }
  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Complex& s) const;
  Matrix adjoint() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  /// Re tr(A^* B)
  friend Rational frobenius(const Matrix& a, const Matrix& b);

 private:
  int n_;
  std::vector<Complex> a_;
};

Matrix x_plus(int n, int i, int j);
Matrix x_minus(int n, int i, int j);
Matrix diag_pair(int n, int a, int b);

/// Basis of su(n) in the same order as pcpn::SuBasis.
std::vector<Matrix> su_basis(int n);
/// Exact coordinates of X in su_basis(n); Gram system solved by elimination over Q.
std::vector<Rational> coordinates(const Matrix& x);

/// Antisymmetric coefficient matrix over su_basis(n).
class Bivector {
 public:
  explicit Bivector(int n);

  static Bivector wedge(const Matrix& x, const Matrix& y);

  int n() const { return n_; }
  int dim() const { return d_; }
  const Rational& operator()(int a, int b) const { return c_[static_cast<std::size_t>(a * d_ + b)]; }

  Bivector operator+(const Bivector& o) const;
  Bivector operator-(const Bivector& o) const;
  Bivector scaled(const Rational& s) const;
  bool is_zero() const;
  /// Number of nonzero coefficients above the diagonal.
  int nonzero_pairs() const;

  /// Ad_g applied to both legs: A C A^T with A the matrix of Ad_g.
  Bivector transformed(const Matrix& g) const;

 private:
  Rational& at(int a, int b) { return c_[static_cast<std::size_t>(a * d_ + b)]; }
  int n_;
  int d_;
  std::vector<Rational> c_;
};

struct RootPair {
  Rational sqrt_c;
  Rational sqrt_one_minus_c;
};

/// Exact rational from "p/q", an integer, or a finite decimal like "0.36".
Rational parse_rational(const std::string& text);
/// sqrt(c) and sqrt(1-c) if both are rational and c in [0,1].
std::optional<RootPair> rational_roots(const Rational& c);
std::string to_string(const Rational& q);

/// sigma_c with the given square roots.
Matrix sigma(int n, const RootPair& roots);
/// Ad_{sigma^{-1}}(X) = sigma^* X sigma.
Matrix adjoint_inverse(const Matrix& sigma, const Matrix& x);

Bivector r_matrix(int n);

/// One instance of the closed-form Ad_{sigma_c^{-1}} table.
struct TableRow {
  std::string family;  // e.g. "X_1j^+"
  std::string label;   // e.g. "X_1,3^+" (1-based indices)
  Matrix computed;
  Matrix expected;
  bool holds() const { return computed == expected; }
};

/// All instances of the 8 families for dimension n. Families that are empty at
/// n = 2 contribute no rows.
std::vector<TableRow> adjoint_table(int n, const RootPair& roots);

/// Ad_{sigma^{-1}}(r) minus the closed-form expansion in terms of r, the
/// interior pairs and the i(e_11 - e_nn) / cross terms. Zero when the expansion holds.
Bivector expansion_remainder(int n, const RootPair& roots);

}  // namespace pcpn::exact
