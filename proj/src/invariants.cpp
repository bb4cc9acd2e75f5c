#include "pcpn/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pcpn {

namespace {

const Complex kI(0.0, 1.0);

double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

ContactFrame contact_frame(const SpherePoint& p) {
  const int n = p.n();
  const GroupElement u = lift(p);
  RMatrix e(2 * n, 2 * (n - 1));
  for (int k = 1; k < n; ++k) {
    const CVector xi = u.column(k);
    e.col(2 * (k - 1)) = realify(xi);
    e.col(2 * (k - 1) + 1) = realify(kI * xi);
  }
  return ContactFrame{p, realify(kI * p.v()), std::move(e)};
}

AmbientBivector canonical_tensor(const SpherePoint& p) {
  const ContactFrame frame = contact_frame(p);
  RMatrix m = RMatrix::Zero(2 * p.n(), 2 * p.n());
  for (int k = 0; k + 1 < frame.e_basis.cols(); k += 2) {
    const RVector a = frame.e_basis.col(k);
    const RVector b = frame.e_basis.col(k + 1);
    m += a * b.transpose() - b * a.transpose();
  }
  return AmbientBivector{p, std::move(m)};
}

RMatrix standard_complex_structure(int m) {
  RMatrix j = RMatrix::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

RMatrix realify_operator(const CMatrix& a) {
  RMatrix r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex z = a(i, j);
      r(2 * i, 2 * j) = z.real();
      r(2 * i, 2 * j + 1) = -z.imag();
      r(2 * i + 1, 2 * j) = z.imag();
      r(2 * i + 1, 2 * j + 1) = z.real();
    }
  return r;
}

InvariantBlock block_at_basepoint(const AmbientBivector& field) {
  const int n = field.base.n();
  const CVector& v = field.base.v();
  if (std::abs(std::abs(v(0)) - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidParameter, "block_at_basepoint expects a tensor based at e_1");
  }
  // rotate away the phase of the base point so the frame is exactly 0 (+) C^{n-1}
  CMatrix phase = CMatrix::Identity(n, n);
  phase(0, 0) = std::conj(v(0));
  const RMatrix rot = realify_operator(phase);
  const RMatrix m = rot * field.m * rot.transpose();
  const double kernel = std::max(max_abs(m.topRows(2)), max_abs(m.leftCols(2)));
  RMatrix b = m.bottomRightCorner(2 * (n - 1), 2 * (n - 1));
  return InvariantBlock{n, std::move(b), kernel};
}

InvariantBlock block_at_basepoint(const ChartBivector& field) { return block_at_basepoint(pullback_cp_tensor(field)); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Proportional: return "PROPORTIONAL";
    case Verdict::NotInvariant: return "NOT_INVARIANT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

InvarianceMode parse_invariance_mode(const std::string& name) {
  if (name == "su") return InvarianceMode::SuInvariant;
  if (name == "u") return InvarianceMode::UInvariant;
  throw Error(ErrorKind::InvalidParameter, "unknown invariance mode '" + name + "'");
}

const ClassificationStep* ClassificationResult::step(const std::string& name) const {
  for (const auto& s : details)
    if (s.name == name) return &s;
  return nullptr;
}

ClassificationResult classify_block(const InvariantBlock& block, InvarianceMode mode, int samples,
                                    std::uint64_t seed, double tol) {
  const RMatrix& b = block.b;
  const int m = block.n - 1;
  if (b.rows() != 2 * m || b.cols() != 2 * m) throw Error(ErrorKind::DimensionMismatch, "block must be 2(n-1) square");
  const double op_norm = m == 0 ? 0.0 : Eigen::JacobiSVD<RMatrix>(b).singularValues()(0);
  if (max_abs(b + b.transpose()) > tol * std::max(op_norm, 1.0)) {
    throw Error(ErrorKind::InvariantViolation, "block is not antisymmetric");
  }

  const RMatrix j_std = standard_complex_structure(m);
  const double lambda = m == 0 ? 0.0 : (b.array() * j_std.array()).sum() / (2.0 * m);
  const double scale = std::max(op_norm, block.kernel_residual);

  ClassificationResult result{Verdict::Proportional, lambda, {}, {}};
  auto record = [&](std::string name, double residual, bool skipped = false) {
    const bool passed = skipped || residual <= tol;
    result.details.push_back({name, residual, passed, skipped});
    if (!passed) result.witness.push_back(std::move(name));
  };

  if (scale < 1e-14) {
    // the zero tensor is 0 * J
    for (const char* name : {"kernel", "commutation", "conformality", "complex_linearity", "square", "proportionality"})
      record(name, 0.0);
    result.lambda = 0.0;
    return result;
  }

  std::mt19937_64 rng(seed);
  record("kernel", block.kernel_residual / scale);

  double commutation = 0.0;
  for (int s = 0; s < samples && m > 0; ++s) {
    const GroupElement u = mode == InvarianceMode::SuInvariant ? haar_sample(m, rng) : haar_unitary(m, rng);
    const RMatrix r = realify_operator(u.matrix());
    commutation = std::max(commutation, max_abs(r * b * r.transpose() - b));
  }
  record("commutation", commutation / scale);

  double lo = op_norm;
  double hi = 0.0;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    RVector x(2 * m);
    for (int k = 0; k < 2 * m; ++k) x(k) = normal(rng);
    const double len = (b * x.normalized()).norm();
    lo = std::min(lo, len);
    hi = std::max(hi, len);
  }
  record("conformality", (hi - lo) / scale);

  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const bool skip_linearity = mode == InvarianceMode::SuInvariant && m == 2;
  double linearity = 0.0;
  if (!skip_linearity) {
    auto witness = [&](const CMatrix& t) {
      const RMatrix r = realify_operator(t);
      linearity = std::max(linearity, max_abs(r * b * r.transpose() - b));
    };
    for (int s = 0; s < samples; ++s) {
      const double theta = angle(rng);
      if (mode == InvarianceMode::SuInvariant) {
        for (int j = 0; j < m; ++j)
          for (int k = j + 1; k < m; ++k) {
            CMatrix t = CMatrix::Identity(m, m);
            t(j, j) = std::exp(kI * theta);
            t(k, k) = std::exp(-kI * theta);
            witness(t);
          }
      } else {
        for (int k = 0; k < m; ++k) {
          CMatrix t = CMatrix::Identity(m, m);
          t(k, k) = std::exp(kI * theta);
          witness(t);
        }
      }
    }
  }
  record("complex_linearity", linearity / scale, skip_linearity);

  const RMatrix unit = b / op_norm;
  record("square", max_abs(unit * unit + RMatrix::Identity(2 * m, 2 * m)));

  const double proportionality = max_abs(b - lambda * j_std) / scale;
  if (!result.witness.empty()) {
    result.verdict = Verdict::NotInvariant;
    result.details.push_back({"proportionality", proportionality, proportionality <= tol, false});
    return result;
  }
  if (proportionality <= tol) {
    result.details.push_back({"proportionality", proportionality, true, false});
    return result;
  }
  // only reachable when complex-linearity was skipped (SU mode, n = 3)
  result.details.push_back({"proportionality", proportionality, false, false});
  result.verdict = Verdict::Inconclusive;
  return result;
}

AmbientBivector pullback_cp_tensor(const ChartBivector& t) {
  const SpherePoint p = SpherePoint::from_vector(t.base.rep, 1e-10);
  const ContactFrame frame = contact_frame(p);
  const RMatrix jac_e = chart_jacobian(p.v(), t.base.chart) * frame.e_basis;
  const Eigen::PartialPivLU<RMatrix> lu(jac_e);
  if (std::abs(lu.determinant()) < 1e-12) throw Error(ErrorKind::DegenerateChart, "singular frame in pullback");
  const RMatrix inv = lu.inverse();
  const RMatrix s = inv * t.t * inv.transpose();
  RMatrix m = frame.e_basis * s * frame.e_basis.transpose();
  m = 0.5 * (m - m.transpose()).eval();
  return AmbientBivector{p, std::move(m)};
}

}  // namespace pcpn
