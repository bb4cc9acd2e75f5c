#include "pcpn/exact.hpp"

#include "pcpn/lie_core.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>

namespace pcpn::exact {

namespace {

const Complex kI(0, 1);

using Int = boost::multiprecision::cpp_int;

std::optional<Int> exact_isqrt(const Int& v) {
  if (v < 0) return std::nullopt;
  Int r = boost::multiprecision::sqrt(v);
  if (r * r != v) return std::nullopt;
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  auto num = exact_isqrt(boost::multiprecision::numerator(q));
  auto den = exact_isqrt(boost::multiprecision::denominator(q));
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

}  // namespace

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = Complex(1);
  return m;
}

Matrix Matrix::unit(int n, int i, int j) {
  Matrix m(n);
  m(i, j) = Complex(1);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Complex& lhs = (*this)(i, k);
      if (lhs.is_zero()) continue;
      for (int j = 0; j < n_; ++j) r(i, j) = r(i, j) + lhs * o(k, j);
    }
  return r;
}

Matrix Matrix::scaled(const Complex& s) const {
  Matrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = s * a_[k];
  return r;
}

Matrix Matrix::adjoint() const {
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i).conj();
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& z : a_)
    if (!z.is_zero()) return false;
  return true;
}

Rational frobenius(const Matrix& a, const Matrix& b) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.a_.size(); ++k)
    if (!a.a_[k].is_zero() && !b.a_[k].is_zero()) s += a.a_[k].re * b.a_[k].re + a.a_[k].im * b.a_[k].im;
  return s;
}

Matrix x_plus(int n, int i, int j) { return Matrix::unit(n, i, j) - Matrix::unit(n, j, i); }

Matrix x_minus(int n, int i, int j) { return (Matrix::unit(n, i, j) + Matrix::unit(n, j, i)).scaled(kI); }

Matrix diag_pair(int n, int a, int b) { return (Matrix::unit(n, a, a) - Matrix::unit(n, b, b)).scaled(kI); }

std::vector<Matrix> su_basis(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "su(n) requires n >= 2");
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(x_plus(n, i, j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(x_minus(n, i, j));
  for (int k = 0; k + 1 < n; ++k) out.push_back(diag_pair(n, k, k + 1));
  return out;
}

namespace {

struct GramData {
  std::vector<Matrix> basis;
  std::vector<std::vector<Rational>> inverse;  // G^{-1}, G_ab = <b_a, b_b>
};

GramData make_gram(int n) {
  GramData g{su_basis(n), {}};
  const int d = static_cast<int>(g.basis.size());
  // Gauss-Jordan on [G | I]
  std::vector<std::vector<Rational>> sys(d, std::vector<Rational>(2 * d));
  for (int a = 0; a < d; ++a) {
    for (int c = 0; c < d; ++c) sys[a][c] = frobenius(g.basis[a], g.basis[c]);
    sys[a][d + a] = 1;
  }
  for (int col = 0; col < d; ++col) {
    int piv = col;
    while (piv < d && sys[piv][col] == 0) ++piv;
    if (piv == d) throw Error(ErrorKind::InvariantViolation, "singular Gram matrix");
    std::swap(sys[piv], sys[col]);
    const Rational lead = sys[col][col];
    for (auto& entry : sys[col]) entry /= lead;
    for (int row = 0; row < d; ++row) {
      if (row == col || sys[row][col] == 0) continue;
      const Rational f = sys[row][col];
      for (int k = col; k < 2 * d; ++k)
        if (sys[col][k] != 0) sys[row][k] -= f * sys[col][k];
    }
  }
  g.inverse.assign(d, std::vector<Rational>(d));
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) g.inverse[a][c] = sys[a][d + c];
  return g;
}

const GramData& gram(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GramData>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GramData>(make_gram(n));
  return *slot;
}

}  // namespace

std::vector<Rational> coordinates(const Matrix& x) {
  const GramData& g = gram(x.n());
  const int d = static_cast<int>(g.basis.size());
  std::vector<Rational> rhs(d);
  for (int a = 0; a < d; ++a) rhs[a] = frobenius(g.basis[a], x);
  std::vector<Rational> out(d);
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c)
      if (rhs[c] != 0 && g.inverse[a][c] != 0) out[a] += g.inverse[a][c] * rhs[c];

  Matrix back(x.n());
  for (int a = 0; a < d; ++a)
    if (out[a] != 0) back = back + g.basis[a].scaled(Complex(out[a]));
  if (!(back == x)) throw Error(ErrorKind::InvariantViolation, "matrix is not in su(n)");
  return out;
}

Bivector::Bivector(int n) : n_(n), d_(n * n - 1), c_(static_cast<std::size_t>(d_ * d_)) {}

Bivector Bivector::wedge(const Matrix& x, const Matrix& y) {
  const auto a = coordinates(x);
  const auto b = coordinates(y);
  Bivector out(x.n());
  for (int p = 0; p < out.d_; ++p)
    for (int q = 0; q < out.d_; ++q) out.at(p, q) = a[p] * b[q] - b[p] * a[q];
  return out;
}

Bivector Bivector::operator+(const Bivector& o) const {
  Bivector r(n_);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
  return r;
}

Bivector Bivector::operator-(const Bivector& o) const {
  Bivector r(n_);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
  return r;
}

Bivector Bivector::scaled(const Rational& s) const {
  Bivector r(n_);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = s * c_[k];
  return r;
}

bool Bivector::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

int Bivector::nonzero_pairs() const {
  int count = 0;
  for (int a = 0; a < d_; ++a)
    for (int b = a + 1; b < d_; ++b)
      if ((*this)(a, b) != 0) ++count;
  return count;
}

Bivector Bivector::transformed(const Matrix& g) const {
  const auto& b = gram(n_).basis;
  // A(:, a) = coordinates of g b_a g^*
  std::vector<std::vector<Rational>> adj(d_);
  const Matrix gi = g.adjoint();
  for (int a = 0; a < d_; ++a) adj[a] = coordinates(g * b[a] * gi);
  // out = A C A^T, out(p,q) = sum_ab A(p,a) C(a,b) A(q,b)
  Bivector out(n_);
  std::vector<Rational> tmp(static_cast<std::size_t>(d_ * d_));
  for (int p = 0; p < d_; ++p)
    for (int bb = 0; bb < d_; ++bb) {
      Rational s = 0;
      for (int a = 0; a < d_; ++a)
        if (adj[a][p] != 0 && (*this)(a, bb) != 0) s += adj[a][p] * (*this)(a, bb);
      tmp[static_cast<std::size_t>(p * d_ + bb)] = s;
    }
  for (int p = 0; p < d_; ++p)
    for (int q = 0; q < d_; ++q) {
      Rational s = 0;
      for (int bb = 0; bb < d_; ++bb) {
        const Rational& t = tmp[static_cast<std::size_t>(p * d_ + bb)];
        if (t != 0 && adj[bb][q] != 0) s += t * adj[bb][q];
      }
      out.at(p, q) = s;
    }
  return out;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::InvalidParameter, "empty rational");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const auto integer = [&](const std::string& part) {
      if (part.empty() || part.find_first_not_of("-0123456789") != std::string::npos) {
        throw Error(ErrorKind::InvalidParameter, "not a finite decimal or p/q: '" + text + "'");
      }
      return Int(parse_rational(part));
    };
    const Int num = integer(text.substr(0, slash));
    const Int den = integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::InvalidParameter, "zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  std::string digits;
  Int den = 1;
  bool seen_point = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char ch = text[k];
    if (ch == '-' && k == 0) {
      digits += ch;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      if (seen_point) den *= 10;
    } else {
      throw Error(ErrorKind::InvalidParameter, "not a finite decimal or p/q: '" + text + "'");
    }
  }
  if (digits.empty() || digits == "-") throw Error(ErrorKind::InvalidParameter, "not a number: '" + text + "'");
  // cpp_int reads a leading 0 as octal
  const bool negative = digits[0] == '-';
  std::string magnitude = digits.substr(negative ? 1 : 0);
  magnitude.erase(0, std::min(magnitude.find_first_not_of('0'), magnitude.size() - 1));
  const Int value(magnitude);
  return Rational(negative ? Int(-value) : value, den);
}

std::optional<RootPair> rational_roots(const Rational& c) {
  if (c < 0 || c > 1) return std::nullopt;
  auto sc = rational_sqrt(c);
  auto s1c = rational_sqrt(Rational(1) - c);
  if (!sc || !s1c) return std::nullopt;
  return RootPair{*sc, *s1c};
}

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Matrix sigma(int n, const RootPair& roots) {
  if (roots.sqrt_c * roots.sqrt_c + roots.sqrt_one_minus_c * roots.sqrt_one_minus_c != 1) {
    throw Error(ErrorKind::InvalidParameter, "root pair does not satisfy c + (1 - c) = 1");
  }
  Matrix s = Matrix::identity(n);
  s(0, 0) = Complex(roots.sqrt_c);
  s(n - 1, 0) = Complex(roots.sqrt_one_minus_c);
  s(0, n - 1) = Complex(-roots.sqrt_one_minus_c);
  s(n - 1, n - 1) = Complex(roots.sqrt_c);
  return s;
}

Matrix adjoint_inverse(const Matrix& sigma, const Matrix& x) { return sigma.adjoint() * x * sigma; }

Bivector r_matrix(int n) {
  Bivector r(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r = r + Bivector::wedge(x_plus(n, i, j), x_minus(n, i, j));
  return r;
}

namespace {

std::string pair_label(int i, int j, char sign) {
  return "X_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "^" + sign;
}

}  // namespace

std::vector<TableRow> adjoint_table(int n, const RootPair& roots) {
  const Matrix s = sigma(n, roots);
  const Complex sc(roots.sqrt_c);
  const Complex s1c(roots.sqrt_one_minus_c);
  const Complex neg_s1c(-roots.sqrt_one_minus_c);
  const int last = n - 1;
  std::vector<TableRow> rows;
  auto add = [&](std::string family, std::string label, const Matrix& x, Matrix expected) {
    rows.push_back(TableRow{std::move(family), std::move(label), adjoint_inverse(s, x), std::move(expected)});
  };

  for (int i = 1; i < last; ++i)
    for (int j = i + 1; j < last; ++j) add("X_ij^+", pair_label(i, j, '+'), x_plus(n, i, j), x_plus(n, i, j));
  for (int j = 1; j < last; ++j)
    add("X_1j^+", pair_label(0, j, '+'), x_plus(n, 0, j),
        x_plus(n, 0, j).scaled(sc) + x_plus(n, j, last).scaled(s1c));
  for (int i = 1; i < last; ++i)
    add("X_in^+", pair_label(i, last, '+'), x_plus(n, i, last),
        x_plus(n, 0, i).scaled(neg_s1c) + x_plus(n, i, last).scaled(sc));
  add("X_1n^+", pair_label(0, last, '+'), x_plus(n, 0, last), x_plus(n, 0, last));

  for (int i = 1; i < last; ++i)
    for (int j = i + 1; j < last; ++j) add("X_ij^-", pair_label(i, j, '-'), x_minus(n, i, j), x_minus(n, i, j));
  for (int j = 1; j < last; ++j)
    add("X_1j^-", pair_label(0, j, '-'), x_minus(n, 0, j),
        x_minus(n, 0, j).scaled(sc) + x_minus(n, j, last).scaled(neg_s1c));
  for (int i = 1; i < last; ++i)
    add("X_in^-", pair_label(i, last, '-'), x_minus(n, i, last),
        x_minus(n, 0, i).scaled(s1c) + x_minus(n, i, last).scaled(sc));
  const Rational c = roots.sqrt_c * roots.sqrt_c;
  const Rational cross = 2 * roots.sqrt_c * roots.sqrt_one_minus_c;
  add("X_1n^-", pair_label(0, last, '-'), x_minus(n, 0, last),
      x_minus(n, 0, last).scaled(Complex(2 * c - 1)) + diag_pair(n, 0, last).scaled(Complex(cross)));
  return rows;
}

Bivector expansion_remainder(int n, const RootPair& roots) {
  const Matrix s = sigma(n, roots);
  const int last = n - 1;
  const Rational c = roots.sqrt_c * roots.sqrt_c;
  const Rational cross = 2 * roots.sqrt_c * roots.sqrt_one_minus_c;

  const Bivector r = r_matrix(n);
  Bivector interior(n);
  for (int i = 1; i < last; ++i)
    for (int j = i + 1; j < last; ++j) interior = interior + Bivector::wedge(x_plus(n, i, j), x_minus(n, i, j));
  Bivector mixed = Bivector::wedge(x_plus(n, 0, last), diag_pair(n, 0, last));
  for (int i = 1; i < last; ++i) {
    mixed = mixed + Bivector::wedge(x_plus(n, i, last), x_minus(n, 0, i)) -
            Bivector::wedge(x_plus(n, 0, i), x_minus(n, i, last));
  }
  const Bivector expected = r.scaled(2 * c - 1) + interior.scaled(2 * (1 - c)) + mixed.scaled(cross);
  // Ad_{sigma^{-1}} = conjugation by sigma^*
  return r.transformed(s.adjoint()) - expected;
}

}  // namespace pcpn::exact
