// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "pcpn/exact.hpp"
#include "pcpn/verification.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace pcpn;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0) {
    std::ostringstream what;
    what << "runtime " << seconds << " s >= " << budget_seconds << " s";
    out.require(seconds < budget_seconds, what.str());
  }
  if (!out.pass) ++failures;
  std::printf("criterion %2d [PRIMARY] %s  %s (%.3f s)%s\n", id, out.pass ? "PASS" : "FAIL", title, seconds,
              out.note.str().c_str());
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// z -> eps conj(z) on C^2, eps = [[0, -1], [1, 0]]
RMatrix quaternionic_block() {
  RMatrix b(4, 4);
  for (int col = 0; col < 4; ++col) {
    RVector e = RVector::Zero(4);
    e(col) = 1.0;
    const CVector z = complexify(e);
    CVector image(2);
    image(0) = -std::conj(z(1));
    image(1) = std::conj(z(0));
    b.col(col) = realify(image);
  }
  return b;
}

}  // namespace

int main() {
  const auto roots = exact::rational_roots(exact::parse_rational("9/25"));
  if (!roots) {
    std::printf("9/25 has no rational roots\n");
    return 1;
  }

  criterion(1, "exact Ad_{sigma^-1} table, c = 9/25, n = 2..5; float c in {0.1, 0.5, 0.9}", 1.0, [&](Outcome& o) {
    std::set<std::string> families;
    int rows = 0;
    for (int n = 2; n <= 5; ++n)
      for (const auto& row : exact::adjoint_table(n, *roots)) {
        ++rows;
        families.insert(row.family);
        o.require(row.holds(), "exact row " + row.label + " at n = " + std::to_string(n));
      }
    o.require(families.size() == 8, std::to_string(families.size()) + " families");
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n)
      for (double c : {0.1, 0.5, 0.9})
        for (const auto& row : adjoint_table(n, c)) worst = std::max(worst, row.residual);
    o.require(worst < 1e-12, "float residual " + sci(worst));
    o.note << " rows=" << rows << " families=" << families.size() << " float_residual=" << sci(worst);
  });

  criterion(2, "exact expansion of Ad_{sigma^-1}(r), c = 9/25, n = 2..5", 1.0, [&](Outcome& o) {
    int nonzero = 0;
    for (int n = 2; n <= 5; ++n) {
      const exact::Bivector rem = exact::expansion_remainder(n, *roots);
      nonzero += rem.nonzero_pairs();
      o.require(rem.is_zero(), "remainder at n = " + std::to_string(n));
    }
    o.note << " nonzero_remainder_pairs=" << nonzero;
  });

  criterion(3, "coisotropy verdicts", 5.0, [&](Outcome& o) {
    double worst_pass = 0.0;
    double weakest_fail = 1e300;
    for (int n = 2; n <= 5; ++n)
      for (double c : {0.0, 0.25, 0.36, 0.75, 1.0}) {
        const VerificationReport r = coisotropy_report(n, c, SubalgebraKind::UBottom);
        worst_pass = std::max(worst_pass, r.max_residual);
        o.require(r.max_residual < 1e-9, "u(n-1) at n = " + std::to_string(n));
      }
    for (int n = 3; n <= 5; ++n)
      for (double c : {0.25, 0.5}) {
        const VerificationReport r = coisotropy_report(n, c, SubalgebraKind::SuBottom);
        weakest_fail = std::min(weakest_fail, r.max_residual);
        o.require(r.max_residual > 1e-3 && !r.pass, "1+su(n-1) did not fail at n = " + std::to_string(n));
      }
    for (int n = 2; n <= 5; ++n)
      for (double c : {0.0, 1.0})
        for (SubalgebraKind kind : {SubalgebraKind::SuBottom, SubalgebraKind::SuTop}) {
          const VerificationReport r = coisotropy_report(n, c, kind);
          worst_pass = std::max(worst_pass, r.max_residual);
          o.require(r.max_residual < 1e-9, to_string(kind) + " at c in {0,1}, n = " + std::to_string(n));
        }
    o.note << " max_passing_residual=" << sci(worst_pass) << " min_failing_residual=" << sci(weakest_fail);
  });

  criterion(4, "affine identity and multiplicativity, 200 pairs, n = 3, c = 0.3", 0.0, [&](Outcome& o) {
    const VerificationReport r = affine_identity_check(3, 0.3, 200, 42, 1e-10);
    o.require(r.pass, "residual " + sci(r.max_residual));
    o.note << " residual=" << sci(r.max_residual)
           << " multiplicativity=" << sci(r.data["multiplicativity"].get<double>());
  });

  criterion(5, "well-definedness of tau_c, 100 points, n = 2..4, c = 0.5", 0.0, [&](Outcome& o) {
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
      const VerificationReport r = well_definedness_check(n, 0.5, 100, 42, 1e-8);
      worst = std::max(worst, r.max_residual);
      o.require(r.pass, "n = " + std::to_string(n));
    }
    o.note << " residual=" << sci(worst);
  });

  criterion(6, "Jacobi identity, 100 points, step 1e-5, n in {2,3}, c in {0.25,0.5,0.75}; corrupted control", 0.0,
            [&](Outcome& o) {
              double worst = 0.0;
              for (int n : {2, 3})
                for (double c : {0.25, 0.5, 0.75}) {
                  const VerificationReport r = jacobi_residual(n, c, 100, 1e-5, 42, 1e-5);
                  worst = std::max(worst, r.max_residual);
                  o.require(r.pass, "n = " + std::to_string(n) + " c = " + std::to_string(c));
                }
              const VerificationReport bad = jacobi_residual(3, 0.5, 100, 1e-5, 42, 1e-5, 0.1);
              o.require(bad.max_residual > 1e-3, "corrupted control only " + sci(bad.max_residual));
              o.note << " residual=" << sci(worst) << " corrupted=" << sci(bad.max_residual);
            });

  criterion(7, "embedding of the standard sphere, 100 points", 0.0, [&](Outcome& o) {
    double worst = 0.0;
    for (int n : {3, 4})
      for (double c : {0.25, 0.5}) {
        const VerificationReport r = embedding_check(n, c, 100, 42);
        worst = std::max(worst, r.max_residual);
        o.require(r.max_residual < 1e-8, "n = " + std::to_string(n));
      }
    double flat = 0.0;
    for (double c : {0.25, 0.5}) {
      const VerificationReport r = embedding_check(2, c, 100, 42);
      flat = std::max(flat, r.max_residual);
      o.require(r.max_residual < 1e-10, "n = 2 vanishing");
    }
    o.note << " deviation=" << sci(worst) << " n2_norm=" << sci(flat);
  });

  criterion(8, "covariance, n = 3, c = 0.5, 20 x 20 samples", 0.0, [&](Outcome& o) {
    const VerificationReport r = covariance_check(3, 0.5, 20, 20, 42, 1e-6, 1e-5);
    o.require(r.pass, "residual " + sci(r.max_residual));
    o.note << " residual=" << sci(r.max_residual);
  });

  criterion(9, "leaf census on CP^1, c = 0.5, 10^4 samples", 0.0, [&](Outcome& o) {
    const LeafCensus census = leaf_census(2, 0.5, 10000, kRankTolerance, 42);
    for (const auto& [r, count] : census.histogram) o.require(r == 0 || r == 2, "rank " + std::to_string(r));
    o.require(census.rank_zero_outside_band == 0, "rank 0 outside the band");
    o.require(census.circle_points_nonzero == 0, "nonzero rank on |v_1| = sqrt(c)");
    o.require(census.components == 2, std::to_string(census.components) + " components");
    o.require(census.report.pass, "census report");
    o.note << " rank0=" << census.rank_zero << " circle=" << census.circle_points
           << " components=" << census.components;
  });

  criterion(10, "invariant tensor uniqueness", 0.0, [&](Outcome& o) {
    double invariance = 0.0;
    double spread = 0.0;
    for (int n = 2; n <= 4; ++n) {
      const VerificationReport inv = canonical_invariance_check(n, 100, 42, 1e-8);
      invariance = std::max(invariance, inv.max_residual);
      o.require(inv.pass, "canonical tensor invariance at n = " + std::to_string(n));
      const VerificationReport prop = proportionality_check(n, 0.5, 100, 42, 1e-6);
      spread = std::max(spread, prop.data["lambda_spread"].get<double>());
      o.require(prop.pass && prop.data["lambda_spread"].get<double>() < 1e-6,
                "proportionality at n = " + std::to_string(n));
    }
    const RMatrix j = standard_complex_structure(3);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (InvarianceMode mode : {InvarianceMode::SuInvariant, InvarianceMode::UInvariant}) {
      o.require(classify_block(InvariantBlock{4, -0.7 * j, 0.0}, mode).verdict == Verdict::Proportional,
                "lambda J not PROPORTIONAL");
      for (int trial = 0; trial < 5; ++trial) {
        RMatrix noise(6, 6);
        for (Eigen::Index k = 0; k < noise.size(); ++k) noise.data()[k] = normal(rng);
        const RMatrix skew = 0.1 * (noise - noise.transpose());
        o.require(classify_block(InvariantBlock{4, -0.7 * j + skew, 0.0}, mode).verdict == Verdict::NotInvariant,
                  "perturbation not NOT_INVARIANT");
      }
    }
    const ClassificationResult q =
        classify_block(InvariantBlock{3, quaternionic_block(), 0.0}, InvarianceMode::SuInvariant);
    o.require(q.verdict == Verdict::Inconclusive, "quaternionic candidate gave " + to_string(q.verdict));
    o.note << " invariance=" << sci(invariance) << " lambda_spread=" << sci(spread)
           << " quaternionic=" << to_string(q.verdict);
  });

  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
