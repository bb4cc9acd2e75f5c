#pragma once

#include "pcpn/tensor_algebra.hpp"

#include <string>
#include <vector>

namespace pcpn {

/// r = sum_{i<j} X_ij^+ ^ X_ij^-, taken exactly as written (no rescaling).
Bivector r_matrix(int n);

/// sigma_c = sqrt(c) e_11 + sqrt(1-c) e_n1 - sqrt(1-c) e_1n + sqrt(c) e_nn + sum_{1<i<n} e_ii.
GroupElement sigma_c(int n, double c);

/// Left trivialization of the multiplicative tensor pi(u) = L_u r - R_u r,
/// i.e. Lambda(u) = r - Ad_{u^{-1}}(r) with pi(u) = L_u Lambda(u).
Bivector left_trivialized_pi(const GroupElement& u);

/// X_sigma = Ad_{sigma^{-1}}(r) - r, the value of pi_sigma at the identity.
Bivector x_sigma(const GroupElement& sigma);

/// The right translate pi_sigma(g) = R_sigma pi(g sigma^{-1}) of the standard
/// multiplicative structure, for sigma = sigma_c. Immutable.
class AffinePoissonStructure {
 public:
  static AffinePoissonStructure make(int n, double c);
  /// Arbitrary sigma; c() is then NaN.
  static AffinePoissonStructure with_sigma(const GroupElement& sigma);

  int n() const { return sigma_.n(); }
  double c() const { return c_; }
  const GroupElement& sigma() const { return sigma_; }
  const Bivector& r() const { return r_; }
  const Bivector& x_sigma() const { return x_sigma_; }
  /// Ad_{sigma^{-1}}(r)
  const Bivector& twisted_r() const { return twisted_r_; }

 private:
  AffinePoissonStructure(double c, GroupElement sigma);
  double c_;
  GroupElement sigma_;
  Bivector r_;
  Bivector twisted_r_;
  Bivector x_sigma_;
};

/// Left-trivialized pi_sigma(g): r - Ad_{g^{-1}}(r) + X_sigma.
Bivector affine_tensor(const AffinePoissonStructure& s, const GroupElement& g);

/// Left-trivialized pi_l(g) = pi_sigma(g) - L_g pi_sigma(e).
Bivector left_part(const AffinePoissonStructure& s, const GroupElement& g);

struct CoisotropyReport {
  double residual;       // max over generators H of the m ^ m norm of ad_H(lambda0)
  double tolerance;
  bool pass;
  int worst_generator;   // index into SubalgebraSpec::elements, -1 for the zero algebra
  Bivector witness;      // m ^ m component at the worst generator
};

inline constexpr double kCoisotropyTolerance = 1e-9;
/// Failures above this are structural rather than numerical.
inline constexpr double kStructuralFailure = 1e-3;

/// Infinitesimal coisotropy test ad_h(lambda0) in h ^ su(n).
CoisotropyReport coisotropy_check(const SubalgebraSpec& h, const Bivector& lambda0,
                                  double tol = kCoisotropyTolerance);

/// Floating-point evaluation of the closed-form Ad_{sigma_c^{-1}} table.
struct AdjointTableRow {
  std::string family;
  std::string label;
  double residual;  // max-abs entry of computed - closed form
};
std::vector<AdjointTableRow> adjoint_table(int n, double c);

/// Ad_{sigma_c^{-1}}(r) minus its closed-form expansion.
Bivector expansion_remainder(int n, double c);

// Group-level realization. A tangent vector at g in SU(n) is an n x n complex
// matrix; it is realified column-major with (re, im) interleaved, giving R^{2n^2}.
// A 2-tensor at g is a 2n^2 x 2n^2 antisymmetric matrix.

RVector realify_matrix(const CMatrix& m);
/// Linear operator X -> g X on realified tangent vectors.
RMatrix left_multiplication_operator(const GroupElement& g);
/// Linear operator X -> X h on realified tangent vectors.
RMatrix right_multiplication_operator(const GroupElement& h);
/// T -> A T A^T for a tangent map A.
RMatrix push_tensor(const RMatrix& tangent_map, const RMatrix& tensor);

/// pi(g) = L_g r - R_g r built directly from r and the translated basis.
RMatrix ambient_multiplicative(const GroupElement& g);
/// pi_sigma(g) = R_sigma pi(g sigma^{-1}) built directly from the definition.
RMatrix ambient_affine(const GroupElement& sigma, const GroupElement& g);
/// L_g Lambda for a left-trivialized bivector.
RMatrix ambient_from_left_trivialized(const GroupElement& g, const Bivector& lambda);

}  // namespace pcpn
