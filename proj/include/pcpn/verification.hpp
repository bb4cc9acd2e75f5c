#pragma once

#include "pcpn/invariants.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pcpn {

struct Witness {
  std::string where;
  double residual;
};

/// Result of a verification check. pass <=> max_residual < tolerance.
struct VerificationReport {
  std::string name;
  nlohmann::ordered_json params;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<Witness> witnesses;  // worst points, descending residual
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

/// Independent RNG stream for sample `index` of a run seeded with `seed`.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

/// Worker count: POISSON_CPN_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();
/// Runs body(i) for i in [0, count) across worker_count() threads.
void parallel_for(int count, const std::function<void(int)>& body);

using ChartField = std::function<RMatrix(const RVector&)>;

/// max_{i,j,k} |sum_l T^{li} d_l T^{jk} + T^{lj} d_l T^{ki} + T^{lk} d_l T^{ij}| at x,
/// with central differences of width `step`.
double jacobi_residual_at(const ChartField& field, const RVector& x, double step);

inline constexpr double kJacobiTolerance = 1e-5;
inline constexpr double kEmbeddingTolerance = 1e-8;
inline constexpr double kVanishingTolerance = 1e-10;
inline constexpr double kCovarianceTolerance = 1e-5;
inline constexpr double kAffineTolerance = 1e-10;
inline constexpr double kProportionalityTolerance = 1e-6;
inline constexpr double kWellDefinedTolerance = 1e-8;
inline constexpr double kInvarianceTolerance = 1e-8;
inline constexpr double kZeroLocusBand = 1e-4;

/// Jacobi identity of tau_c in charts. `corruption` adds corruption * Re(w_1) * J
/// to the field (negative control; only meaningful for n >= 3, every 2-tensor
/// on a surface is Poisson).
VerificationReport jacobi_residual(int n, double c, int points, double step, std::uint64_t seed,
                                   double tol = kJacobiTolerance, double corruption = 0.0);

/// tau_c on phi2(S_c) against the standard sphere rho^{(n-1)} o phi3 (last-column
/// convention); for n = 2, vanishing of tau_c on phi2(S_c).
VerificationReport embedding_check(int n, double c, int points, std::uint64_t seed);

struct LeafCensus {
  std::map<int, int> histogram;  // rank -> count over random samples
  int rank_zero = 0;
  int rank_zero_outside_band = 0;  // rank-0 samples with ||v_1| - sqrt(c)| >= band
  int circle_points = 0;           // points sampled exactly on |v_1| = sqrt(c) (n = 2)
  int circle_points_nonzero = 0;   // of those, rank > 0
  int components = -1;             // rank-2 components of the CP^1 grid (n = 2)
  int expected_components = -1;
  VerificationReport report;
};

LeafCensus leaf_census(int n, double c, int samples, double tol, std::uint64_t seed, int grid = 64);

/// Covariance of the action SU(n) x CP^{n-1} -> CP^{n-1}: tau_c(u p) against
/// u_* tau_c(p) + (h -> h p)_* pi(u), both pushforwards by central differences.
VerificationReport covariance_check(int n, double c, int group_samples, int point_samples, std::uint64_t seed,
                                    double step = 1e-6, double tol = kCovarianceTolerance);

/// pi_sigma(gh) = L_g pi_sigma(h) + R_h pi_sigma(g) - L_g R_h pi_sigma(e), the
/// multiplicativity of pi_l, and agreement of the left-trivialized formula with
/// the direct right translate, all as ambient tensors on SU(n).
VerificationReport affine_identity_check(int n, double c, int pairs, std::uint64_t seed,
                                         double tol = kAffineTolerance);

/// tau_1 - tau_c against the chart pushforward of the canonical tensor.
VerificationReport proportionality_check(int n, double c, int points, std::uint64_t seed,
                                         double tol = kProportionalityTolerance);

/// tau_c from lift(p) and from lift(p) * h, h random in U(n-1).
VerificationReport well_definedness_check(int n, double c, int points, std::uint64_t seed,
                                          double tol = kWellDefinedTolerance);

/// U(n)-invariance of the canonical tensor on S^{2n-1}.
VerificationReport canonical_invariance_check(int n, int samples, std::uint64_t seed,
                                              double tol = kInvarianceTolerance);

/// Infinitesimal coisotropy of h with respect to pi_{sigma_c}: ad_h(Ad_{sigma^{-1}} r).
VerificationReport coisotropy_report(int n, double c, SubalgebraKind kind, double tol = 1e-9);

/// Floating-point Ad_{sigma_c^{-1}} table and expansion residuals.
VerificationReport adjoint_table_check(int n, double c, double tol = 1e-12);

}  // namespace pcpn
