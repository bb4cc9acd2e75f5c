#include "doctest.h"

#include "pcpn/verification.hpp"

#include <cmath>
#include <cstdlib>

using namespace pcpn;

namespace {

struct ThreadCap {
  explicit ThreadCap(const char* value) { setenv("POISSON_CPN_THREADS", value, 1); }
  ~ThreadCap() { unsetenv("POISSON_CPN_THREADS"); }
};

}  // namespace

TEST_CASE("report json layout") {
  const VerificationReport r = embedding_check(3, 0.25, 5, 1);
  const auto j = r.to_json();
  CHECK(j["check"] == "embedding");
  CHECK(j["params"]["n"] == 3);
  CHECK(j["params"]["seed"] == 1);
  CHECK(j.contains("max_residual"));
  CHECK(j["pass"] == r.pass);
  CHECK(j["witnesses"].size() == 3);
  CHECK(r.pass == (r.max_residual < r.tolerance));
  for (std::size_t k = 1; k < r.witnesses.size(); ++k) CHECK(r.witnesses[k - 1].residual >= r.witnesses[k].residual);
}

TEST_CASE("reports are deterministic and thread-count independent") {
  std::string one;
  {
    ThreadCap cap("1");
    CHECK(worker_count() == 1);
    one = jacobi_residual(3, 0.5, 12, 1e-5, 9).to_json().dump();
  }
  {
    ThreadCap cap("4");
    CHECK(jacobi_residual(3, 0.5, 12, 1e-5, 9).to_json().dump() == one);
  }
  CHECK(jacobi_residual(3, 0.5, 12, 1e-5, 9).to_json().dump() == one);
  CHECK(jacobi_residual(3, 0.5, 12, 1e-5, 10).to_json().dump() != one);
}

TEST_CASE("sample streams") {
  auto a = sample_rng(1, 0);
  auto b = sample_rng(1, 0);
  auto c = sample_rng(1, 1);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}

TEST_CASE("parallel_for covers every index and forwards exceptions") {
  ThreadCap cap("3");
  std::vector<int> hits(100, 0);
  parallel_for(100, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](int i) {
                    if (i == 7) throw Error(ErrorKind::InvalidParameter, "boom");
                  }),
                  Error);
}

TEST_CASE("jacobi residual stencil") {
  const RMatrix constant = standard_complex_structure(2);
  const ChartField field = [&](const RVector&) { return constant; };
  CHECK(jacobi_residual_at(field, RVector::Zero(4), 1e-5) == 0.0);

  // a linear Poisson structure (su(2)*), x ^ y = z etc., passes; a twisted one fails
  const ChartField lie = [](const RVector& x) {
    RMatrix t = RMatrix::Zero(3, 3);
    t(0, 1) = x(2);
    t(1, 2) = x(0);
    t(2, 0) = x(1);
    return RMatrix(t - t.transpose());
  };
  RVector at(3);
  at << 0.3, -0.2, 0.9;
  CHECK(jacobi_residual_at(lie, at, 1e-4) < 1e-10);
  const ChartField twisted = [&](const RVector& x) {
    RMatrix t = lie(x);
    t(0, 1) += x(0);
    t(1, 0) -= x(0);
    return t;
  };
  CHECK(jacobi_residual_at(twisted, at, 1e-4) > 0.1);
}

TEST_CASE("jacobi residual of tau_c") {
  const VerificationReport two = jacobi_residual(2, 0.5, 100, 1e-5, 42);
  CHECK(two.pass);
  CHECK(two.max_residual < 1e-5);
  const VerificationReport three = jacobi_residual(3, 0.25, 30, 1e-5, 42);
  CHECK(three.pass);

  const VerificationReport broken = jacobi_residual(3, 0.5, 30, 1e-5, 42, kJacobiTolerance, 0.1);
  CHECK_FALSE(broken.pass);
  CHECK(broken.max_residual > 1e-3);
  CHECK(broken.params["corruption"] == 0.1);

  CHECK_THROWS_AS(jacobi_residual(3, 0.5, 3, 0.0, 42), Error);
}

TEST_CASE("jacobi stencil error is quadratic in the step") {
  const double coarse = jacobi_residual(3, 0.5, 20, 1e-3, 5).max_residual;
  const double fine = jacobi_residual(3, 0.5, 20, 5e-4, 5).max_residual;
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("embedding of the standard sphere") {
  for (int n : {3, 4})
    for (double c : {0.25, 0.5}) {
      const VerificationReport r = embedding_check(n, c, 40, 3);
      CHECK(r.pass);
      CHECK(r.max_residual < kEmbeddingTolerance);
    }
  const VerificationReport flat = embedding_check(2, 0.5, 100, 3);
  CHECK(flat.pass);
  CHECK(flat.max_residual < kVanishingTolerance);
  CHECK_THROWS_AS(embedding_check(3, 1.0, 5, 3), Error);
  CHECK_THROWS_AS(embedding_check(3, 0.0, 5, 3), Error);

  // pi_sigma vanishes at sigma, so tau_c vanishes at [sigma_c e_1] = [(sqrt c, 0, sqrt(1-c))]
  const SpherePoint p = SpherePoint::normalized(sigma_c(3, 0.25).column(0));
  CHECK(tau_c(3, 0.25, cp_point(p)).t.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("leaf census on CP^1") {
  const LeafCensus census = leaf_census(2, 0.5, 2000, kRankTolerance, 42, 32);
  CHECK(census.report.pass);
  for (const auto& [r, count] : census.histogram) CHECK((r == 0 || r == 2));
  CHECK(census.rank_zero_outside_band == 0);
  CHECK(census.circle_points > 0);
  CHECK(census.circle_points_nonzero == 0);
  CHECK(census.components == 2);

  const LeafCensus standard = leaf_census(2, 1.0, 500, kRankTolerance, 42, 32);
  CHECK(standard.components == 1);
  CHECK(standard.report.pass);
  // the zero-dimensional leaf of the standard CP^1 is the single point [e_1]
  CHECK(rank(tau_c(2, 1.0, cp_point(SpherePoint::basis_vector(2, 0)))) == 0);
  CHECK(rank(tau_c(2, 1.0, cp_point(SpherePoint::basis_vector(2, 1)))) == 2);

  const LeafCensus higher = leaf_census(3, 0.25, 300, kRankTolerance, 42);
  for (const auto& [r, count] : higher.histogram) CHECK(r % 2 == 0);
  CHECK(higher.report.pass);
}

TEST_CASE("covariance") {
  const VerificationReport half = covariance_check(3, 0.5, 6, 6, 42);
  CHECK(half.pass);
  CHECK(half.max_residual < kCovarianceTolerance);
  CHECK(covariance_check(3, 1.0, 6, 6, 42).pass);
  CHECK(covariance_check(2, 0.3, 6, 6, 42).pass);
}

TEST_CASE("affine identity") {
  const VerificationReport r = affine_identity_check(3, 0.3, 40, 42);
  CHECK(r.pass);
  CHECK(r.max_residual < kAffineTolerance);
  CHECK(r.data["multiplicativity"].get<double>() < kAffineTolerance);
  CHECK(affine_identity_check(3, 1.0, 10, 42).pass);
  CHECK(affine_identity_check(2, 0.5, 10, 42).pass);
}

TEST_CASE("proportionality of tau_1 - tau_c to the canonical tensor") {
  const VerificationReport one = proportionality_check(3, 1.0, 20, 42);
  CHECK(one.pass);
  CHECK(one.data["lambda"].get<double>() == 0.0);
  for (int n : {2, 3, 4}) {
    const VerificationReport r = proportionality_check(n, 0.5, 50, 42);
    CHECK(r.pass);
    CHECK(r.data["lambda_spread"].get<double>() < 1e-6);
    CHECK(r.data["lambda"].get<double>() == doctest::Approx(-1.0));
  }
  CHECK(proportionality_check(3, 0.2, 20, 42).data["lambda"].get<double>() == doctest::Approx(-1.6));
}

TEST_CASE("well-definedness of tau_c") {
  for (int n : {2, 3, 4}) {
    const VerificationReport r = well_definedness_check(n, 0.5, 50, 42);
    CHECK(r.pass);
    CHECK(r.max_residual < kWellDefinedTolerance);
  }
}

TEST_CASE("coisotropy and table reports") {
  CHECK(coisotropy_report(4, 0.36, SubalgebraKind::UBottom).pass);
  const VerificationReport bad = coisotropy_report(3, 0.5, SubalgebraKind::SuBottom);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_residual > kStructuralFailure);
  CHECK(coisotropy_report(3, 1.0, SubalgebraKind::SuTop).pass);
  CHECK(coisotropy_report(3, 0.0, SubalgebraKind::SuTop).pass);

  const VerificationReport table = adjoint_table_check(4, 0.9);
  CHECK(table.pass);
  CHECK(table.data["rows"].size() == 12);
}
