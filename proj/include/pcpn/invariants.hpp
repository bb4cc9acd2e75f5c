#pragma once

#include "pcpn/quotient_geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcpn {

/// Contact data at p in S^{2n-1}: the Reeb direction ip and an orthonormal real
/// basis of E_p = {p, ip}^perp ordered in complex-structure pairs (xi_k, i xi_k).
struct ContactFrame {
  SpherePoint base;
  RVector reeb;     // realified i p
  RMatrix e_basis;  // 2n x 2(n-1)

  /// omega_p as a covector: omega_p(ip) = 1, omega_p(E_p) = 0.
  const RVector& contact_form() const { return reeb; }
};

ContactFrame contact_frame(const SpherePoint& p);

/// U(n)-invariant tensor sum_k xi_k ^ (i xi_k) over any unitary frame of E_p.
AmbientBivector canonical_tensor(const SpherePoint& p);

/// Standard complex structure on R^{2m}: +1 at (2k, 2k+1), -1 at (2k+1, 2k).
RMatrix standard_complex_structure(int m);

/// Realification of a complex m x m matrix in the interleaved convention.
RMatrix realify_operator(const CMatrix& a);

/// Value of an invariant 2-tensor at e_1 restricted to E_{e_1} = 0 (+) C^{n-1}.
struct InvariantBlock {
  int n;
  RMatrix b;               // 2(n-1) x 2(n-1)
  double kernel_residual;  // size of the row/column paired with i e_1 (and the normal)
};

/// Reads off B from an ambient tensor based at e_1 (up to phase).
InvariantBlock block_at_basepoint(const AmbientBivector& field);
/// Same for a chart tensor at [e_1], via the pullback through (D phi)|_E.
InvariantBlock block_at_basepoint(const ChartBivector& field);

enum class InvarianceMode { SuInvariant, UInvariant };
enum class Verdict { Proportional, NotInvariant, Inconclusive };

std::string to_string(Verdict v);
InvarianceMode parse_invariance_mode(const std::string& name);

struct ClassificationStep {
  std::string name;  // kernel, commutation, conformality, complex_linearity, square, proportionality
  double residual;   // relative to the scale of B
  bool passed;
  bool skipped;
};

struct ClassificationResult {
  Verdict verdict;
  double lambda;                     // meaningful for Proportional
  std::vector<ClassificationStep> details;
  std::vector<std::string> witness;  // names of failed steps for NotInvariant

  const ClassificationStep* step(const std::string& name) const;
};

inline constexpr double kClassificationTolerance = 1e-8;
inline constexpr int kDefaultInvarianceSamples = 64;

/// Runs kernel -> commutation with SU(n-1) or U(n-1) -> conformality ->
/// complex-linearity against torus witnesses -> (B/|B|)^2 = -1, and reports
/// lambda = <B, J>/<J, J>. In SU mode with n = 3 complex-linearity is not
/// implied and is skipped; a candidate that is not a multiple of J is then
/// Inconclusive rather than Proportional.
ClassificationResult classify_block(const InvariantBlock& block, InvarianceMode mode,
                                    int samples = kDefaultInvarianceSamples, std::uint64_t seed = 0,
                                    double tol = kClassificationTolerance);

/// The unique E-supported ambient bivector at t.base.rep whose chart pushforward is t.
AmbientBivector pullback_cp_tensor(const ChartBivector& t);

}  // namespace pcpn
