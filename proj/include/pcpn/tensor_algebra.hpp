#pragma once

#include "pcpn/lie_core.hpp"

namespace pcpn {

/// Element of su(n) ^ su(n): antisymmetric coefficient matrix over SuBasis(n).
/// Entry (a, b) is the coefficient of b_a ^ b_b, and x ^ y has coefficients
/// x y^T - y x^T. Antisymmetry is exact: every constructor re-antisymmetrizes.
class Bivector {
 public:
  static Bivector zero(int n);
  /// Throws InvariantViolation unless coeffs is exactly antisymmetric.
  static Bivector from_coefficients(int n, RMatrix coeffs);
  /// Antisymmetric part (C - C^T) / 2 of an arbitrary d x d matrix.
  static Bivector antisymmetrized(int n, const RMatrix& coeffs);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(c_.rows()); }
  const RMatrix& coeffs() const { return c_; }
  double operator()(int a, int b) const { return c_(a, b); }

  Bivector operator+(const Bivector& o) const;
  Bivector operator-(const Bivector& o) const;
  Bivector operator-() const { return Bivector(n_, -c_); }
  friend Bivector operator*(double s, const Bivector& b) { return Bivector(b.n_, s * b.c_); }

  /// Applies a linear map A of su(n) to both legs: A C A^T.
  Bivector transformed(const RMatrix& a) const;

  /// Norm induced by the Frobenius metric, normalized so that x ^ y has norm 1
  /// for Frobenius-orthonormal x, y: sqrt(tr(G C G C^T) / 2).
  double norm() const;
  double max_abs() const { return c_.cwiseAbs().maxCoeff(); }

 private:
  Bivector(int n, const RMatrix& c);
  int n_;
  RMatrix c_;
};

Bivector wedge(const AlgebraElement& x, const AlgebraElement& y);
/// ad_H extended as a derivation: ad_H(X ^ Y) = [H,X] ^ Y + X ^ [H,Y].
Bivector ad_bivector(const AlgebraElement& h, const Bivector& lambda);
/// Ad_g on both legs.
Bivector adjoint_bivector(const GroupElement& g, const Bivector& lambda);

struct MembershipReport {
  double residual;   // norm of the witness
  Bivector witness;  // m ^ m component, m the Frobenius complement of h
  bool within(double tol) const { return residual <= tol; }
};

inline constexpr double kMembershipTolerance = 1e-9;

/// Splits su(n) = h (+) m orthogonally and reports the m ^ m block of lambda,
/// which vanishes exactly when lambda lies in h ^ su(n).
MembershipReport membership_h_wedge_g(const Bivector& lambda, const SubalgebraSpec& h);

/// Frobenius-orthonormal coordinate basis (columns) of the span of `elements`.
RMatrix orthonormal_coordinates(int n, const std::vector<AlgebraElement>& elements);

}  // namespace pcpn
