#include "pcpn/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

namespace pcpn {

namespace {

double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string describe(const CVector& v) {
  std::ostringstream out;
  out.precision(17);
  out << "v=(";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) out << ", ";
    out << v(k).real() << (v(k).imag() < 0 ? "-" : "+") << std::abs(v(k).imag()) << "i";
  }
  out << ")";
  return out.str();
}

// per-task residuals -> report fields; keeps the three worst
void finish(VerificationReport& report, std::vector<Witness> results, double tol) {
  report.tolerance = tol;
  report.max_residual = 0.0;
  for (const auto& w : results) report.max_residual = std::max(report.max_residual, w.residual);
  std::stable_sort(results.begin(), results.end(), [](const Witness& a, const Witness& b) {
    return a.residual > b.residual;
  });
  if (results.size() > 3) results.resize(3);
  report.witnesses = std::move(results);
  report.pass = report.max_residual < tol;
}

SpherePoint slice_point(int n, double c, std::mt19937_64& rng) {
  CVector v(n);
  v(0) = std::sqrt(c);
  const SpherePoint tail = random_sphere_point(n - 1, rng);
  v.tail(n - 1) = std::sqrt(1.0 - c) * tail.v();
  return SpherePoint::from_vector(v, 1e-12);
}

// element det(k)^{-1} (+) k of U(n-1) inside SU(n)
GroupElement random_u_block(int n, std::mt19937_64& rng) {
  const GroupElement k = haar_unitary(n - 1, rng);
  CMatrix h = CMatrix::Zero(n, n);
  h(0, 0) = 1.0 / k.matrix().determinant();
  h.bottomRightCorner(n - 1, n - 1) = k.matrix();
  return GroupElement::unchecked(std::move(h));
}

}  // namespace

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = name;
  j["params"] = params;
  j["max_residual"] = max_residual;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : witnesses) j["witnesses"].push_back({{"where", w.where}, {"residual", w.residual}});
  if (!data.empty()) j["data"] = data;
  return j;
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("POISSON_CPN_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) return std::min(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max(count, 1)));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (int i = static_cast<int>(w); i < count; i += static_cast<int>(workers)) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double jacobi_residual_at(const ChartField& field, const RVector& x, double step) {
  const RMatrix t = field(x);
  const int dim = static_cast<int>(t.rows());
  std::vector<RMatrix> grad(dim);
  for (int l = 0; l < dim; ++l) {
    RVector xp = x;
    RVector xm = x;
    xp(l) += step;
    xm(l) -= step;
    grad[l] = (field(xp) - field(xm)) / (2.0 * step);
  }
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double s = 0.0;
        for (int l = 0; l < dim; ++l)
          s += t(l, i) * grad[l](j, k) + t(l, j) * grad[l](k, i) + t(l, k) * grad[l](i, j);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

VerificationReport jacobi_residual(int n, double c, int points, double step, std::uint64_t seed, double tol,
                                   double corruption) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidParameter, "step must be positive");
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  VerificationReport report;
  report.name = "jacobi";
  report.params = {{"n", n}, {"c", c}, {"points", points}, {"step", step}, {"seed", seed}};
  if (corruption != 0.0) report.params["corruption"] = corruption;
  const RMatrix j_std = standard_complex_structure(n - 1);

  std::vector<Witness> results(points);
  parallel_for(points, [&](int i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    const CPPoint p = cp_point(random_sphere_point(n, rng));
    const int chart = p.chart;
    const ChartField field = [&](const RVector& x) -> RMatrix {
      RMatrix t = tau_c(s, cp_from_chart_coords(n, chart, x)).t;
      if (corruption != 0.0) t += corruption * x(0) * j_std;
      return t;
    };
    results[i] = {describe(p.rep) + " chart=" + std::to_string(chart), jacobi_residual_at(field, p.coords(), step)};
  });
  finish(report, std::move(results), tol);
  return report;
}

VerificationReport embedding_check(int n, double c, int points, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "embedding_check requires n >= 2");
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorKind::InvalidParameter, "embedding_check requires c in (0, 1)");
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  VerificationReport report;
  report.name = "embedding";
  report.params = {{"n", n}, {"c", c}, {"points", points}, {"seed", seed}};
  // chart w = (v_2..v_n)/sqrt(c) = kappa * phi3(v), so tensors scale by kappa^2
  const double kappa_sq = (1.0 - c) / c;

  std::vector<Witness> results(points);
  parallel_for(points, [&](int i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    const SpherePoint v = slice_point(n, c, rng);
    const ChartBivector tau = tau_c(s, cp_point_in_chart(v, 0));
    double deviation;
    if (n == 2) {
      deviation = max_abs(tau.t);
    } else {
      const AmbientBivector rho = rho_sphere(phi3(v, c), Embedding::Top);
      deviation = max_abs(tau.t - kappa_sq * rho.m);
    }
    results[i] = {describe(v.v()), deviation};
  });
  finish(report, std::move(results), n == 2 ? kVanishingTolerance : kEmbeddingTolerance);
  report.data["comparison"] = n == 2 ? "tau_c vanishes on phi2(S_c)" : "tau_c vs rho^(n-1) o phi3 (last-column sphere)";
  return report;
}

namespace {

// rank-2 components of tau_c on CP^1 over a (theta, phi) grid of the Hopf
// parametrization v = (cos(theta/2), sin(theta/2) e^{i phi}); each pole row is one point
int cp1_components(const AffinePoissonStructure& s, double tol, int grid, double c) {
  std::vector<double> thetas;
  for (int i = 0; i <= grid; ++i) thetas.push_back(std::numbers::pi * i / grid);
  thetas.push_back(2.0 * std::acos(std::sqrt(c)));
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               thetas.end());
  const int rows = static_cast<int>(thetas.size());
  const int cols = grid;
  std::vector<int> rank_grid(rows * cols);
  parallel_for(rows * cols, [&](int idx) {
    const int i = idx / cols;
    const int j = idx % cols;
    const double phi = 2.0 * std::numbers::pi * j / cols;
    CVector v(2);
    v(0) = std::cos(thetas[i] / 2.0);
    v(1) = std::sin(thetas[i] / 2.0) * std::exp(Complex(0.0, phi));
    rank_grid[idx] = rank(tau_c(s, cp_point(SpherePoint::normalized(v))), tol);
  });

  std::vector<int> parent(rows * cols);
  for (int k = 0; k < rows * cols; ++k) parent[k] = k;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    if (rank_grid[a] == 0 || rank_grid[b] == 0) return;
    parent[find(a)] = find(b);
  };
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int here = i * cols + j;
      unite(here, i * cols + (j + 1) % cols);
      if (i + 1 < rows) unite(here, (i + 1) * cols + j);
    }
  for (int j = 1; j < cols; ++j) {
    unite(0, j);
    unite((rows - 1) * cols, (rows - 1) * cols + j);
  }
  std::vector<int> roots;
  for (int k = 0; k < rows * cols; ++k)
    if (rank_grid[k] != 0) roots.push_back(find(k));
  std::sort(roots.begin(), roots.end());
  return static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
}

}  // namespace

LeafCensus leaf_census(int n, double c, int samples, double tol, std::uint64_t seed, int grid) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  LeafCensus census;
  census.report.name = "leaf_census";
  census.report.params = {{"n", n}, {"c", c}, {"samples", samples}, {"tol", tol}, {"seed", seed}};

  std::vector<int> ranks(samples);
  std::vector<double> band_distance(samples);
  parallel_for(samples, [&](int i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    const SpherePoint v = random_sphere_point(n, rng);
    const CPPoint p = cp_point(v);
    ranks[i] = rank(tau_c(s, p), tol);
    band_distance[i] = std::abs(std::abs(v.v()(0)) - std::sqrt(c));
  });

  std::vector<Witness> problems;
  for (int i = 0; i < samples; ++i) {
    census.histogram[ranks[i]]++;
    if (ranks[i] % 2 != 0) problems.push_back({"odd rank at sample " + std::to_string(i), 1.0});
    if (ranks[i] == 0) {
      census.rank_zero++;
      if (n == 2 && band_distance[i] >= kZeroLocusBand) {
        census.rank_zero_outside_band++;
        problems.push_back({"rank 0 off the circle at sample " + std::to_string(i), band_distance[i]});
      }
    }
  }

  if (n == 2) {
    // the circle |v_1| = sqrt(c) itself
    census.circle_points = std::max(16, samples / 100);
    std::vector<int> circle_ranks(census.circle_points);
    parallel_for(census.circle_points, [&](int i) {
      const double phi = 2.0 * std::numbers::pi * i / census.circle_points;
      CVector v(2);
      v(0) = std::sqrt(c);
      v(1) = std::sqrt(1.0 - c) * std::exp(Complex(0.0, phi));
      circle_ranks[i] = rank(tau_c(s, cp_point(SpherePoint::normalized(v))), tol);
    });
    for (int i = 0; i < census.circle_points; ++i)
      if (circle_ranks[i] != 0) {
        census.circle_points_nonzero++;
        problems.push_back({"nonzero rank on the circle at phi index " + std::to_string(i), 1.0});
      }
    census.components = cp1_components(s, tol, grid, c);
    census.expected_components = (c > 0.0 && c < 1.0) ? 2 : 1;
    if (census.components != census.expected_components) {
      problems.push_back({"rank-2 components: " + std::to_string(census.components), 1.0});
    }
  }

  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [r, count] : census.histogram) hist[std::to_string(r)] = count;
  census.report.data["histogram"] = hist;
  census.report.data["rank_zero"] = census.rank_zero;
  if (n == 2) {
    census.report.data["rank_zero_outside_band"] = census.rank_zero_outside_band;
    census.report.data["band"] = kZeroLocusBand;
    census.report.data["circle_points"] = census.circle_points;
    census.report.data["circle_points_nonzero"] = census.circle_points_nonzero;
    census.report.data["components"] = census.components;
    census.report.data["expected_components"] = census.expected_components;
  }
  // structural check: any problem is a failure
  finish(census.report, std::move(problems), 0.5);
  return census;
}

VerificationReport covariance_check(int n, double c, int group_samples, int point_samples, std::uint64_t seed,
                                    double step, double tol) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  VerificationReport report;
  report.name = "covariance";
  report.params = {{"n", n},           {"c", c},       {"group_samples", group_samples},
                   {"point_samples", point_samples}, {"seed", seed}, {"step", step}};

  std::vector<GroupElement> group;
  for (int i = 0; i < group_samples; ++i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    group.push_back(haar_sample(n, rng));
  }
  std::vector<CPPoint> points;
  for (int j = 0; j < point_samples; ++j) {
    auto rng = sample_rng(seed ^ 0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(j));
    points.push_back(cp_point(random_sphere_point(n, rng)));
  }

  std::vector<Witness> results(group_samples * point_samples);
  parallel_for(group_samples * point_samples, [&](int task) {
    const GroupElement& g = group[task / point_samples];
    const CPPoint& p = points[task % point_samples];
    const CPPoint q = cp_point(SpherePoint::normalized(g.matrix() * p.rep));
    const CVector& v = p.rep;
    // chart coordinates of [x] in the chart of q
    auto in_chart_q = [&](const CVector& x) {
      CVector out(n - 1);
      for (int j = 0, k = 0; j < n; ++j)
        if (j != q.chart) out(k++) = x(j) / x(q.chart);
      return realify(out);
    };
    // the action in charts: x -> chart_q(g * chart_p^{-1}(x))
    auto action = [&](const RVector& x) {
      const CVector w = complexify(x);
      CVector y(n);
      for (int j = 0, k = 0; j < n; ++j) y(j) = j == p.chart ? Complex(1.0, 0.0) : w(k++);
      return in_chart_q(g.matrix() * y);
    };
    const RVector x = p.coords();
    const int dim = static_cast<int>(x.size());
    RMatrix jac(dim, dim);
    for (int l = 0; l < dim; ++l) {
      RVector xp = x;
      RVector xm = x;
      xp(l) += step;
      xm(l) -= step;
      jac.col(l) = (action(xp) - action(xm)) / (2.0 * step);
    }
    // orbit map h -> [h v] at h = g, along the left-translated basis g X_a
    const SuBasis& b = basis(n);
    RMatrix orbit(dim, b.dim());
    for (int a = 0; a < b.dim(); ++a) {
      const CVector dv = g.matrix() * (b[a].matrix() * v);
      const CVector gv = g.matrix() * v;
      orbit.col(a) = (in_chart_q(gv + step * dv) - in_chart_q(gv - step * dv)) / (2.0 * step);
    }
    const RMatrix pushed = jac * tau_c(s, p).t * jac.transpose() +
                           orbit * left_trivialized_pi(g).coeffs() * orbit.transpose();
    results[task] = {describe(p.rep) + " group_sample=" + std::to_string(task / point_samples),
                     max_abs(tau_c(s, q).t - pushed)};
  });
  finish(report, std::move(results), tol);
  return report;
}

VerificationReport affine_identity_check(int n, double c, int pairs, std::uint64_t seed, double tol) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  const GroupElement& sigma = s.sigma();
  const GroupElement e = GroupElement::identity(n);
  VerificationReport report;
  report.name = "affine";
  report.params = {{"n", n}, {"c", c}, {"pairs", pairs}, {"seed", seed}};
  const RMatrix at_identity = ambient_affine(sigma, e);

  std::vector<Witness> results(pairs);
  std::vector<double> affine_part(pairs), multiplicative_part(pairs), trivialized_part(pairs);
  parallel_for(pairs, [&](int i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    const GroupElement g = haar_sample(n, rng);
    const GroupElement h = haar_sample(n, rng);
    const GroupElement gh = g * h;
    const RMatrix lg = left_multiplication_operator(g);
    const RMatrix rh = right_multiplication_operator(h);

    const RMatrix pi_g = ambient_affine(sigma, g);
    const RMatrix pi_h = ambient_affine(sigma, h);
    const RMatrix pi_gh = ambient_affine(sigma, gh);
    const RMatrix rhs = push_tensor(lg, pi_h) + push_tensor(rh, pi_g) - push_tensor(lg * rh, at_identity);
    affine_part[i] = max_abs(pi_gh - rhs);

    auto pi_l = [&](const GroupElement& x, const RMatrix& pi_x) {
      return RMatrix(pi_x - push_tensor(left_multiplication_operator(x), at_identity));
    };
    const RMatrix l_gh = pi_l(gh, pi_gh);
    multiplicative_part[i] = max_abs(l_gh - push_tensor(lg, pi_l(h, pi_h)) - push_tensor(rh, pi_l(g, pi_g)));

    trivialized_part[i] = std::max(max_abs(ambient_from_left_trivialized(g, affine_tensor(s, g)) - pi_g),
                                   max_abs(ambient_from_left_trivialized(g, left_part(s, g)) - pi_l(g, pi_g)));
    results[i] = {"pair " + std::to_string(i),
                  std::max({affine_part[i], multiplicative_part[i], trivialized_part[i]})};
  });
  report.data["affine_identity"] = *std::max_element(affine_part.begin(), affine_part.end());
  report.data["multiplicativity"] = *std::max_element(multiplicative_part.begin(), multiplicative_part.end());
  report.data["left_trivialized_agreement"] = *std::max_element(trivialized_part.begin(), trivialized_part.end());
  finish(report, std::move(results), tol);
  return report;
}

VerificationReport proportionality_check(int n, double c, int points, std::uint64_t seed, double tol) {
  const AffinePoissonStructure standard = AffinePoissonStructure::make(n, 1.0);
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  VerificationReport report;
  report.name = "proportionality";
  report.params = {{"n", n}, {"c", c}, {"points", points}, {"seed", seed}};

  std::vector<double> lambdas(points);
  std::vector<Witness> results(points);
  parallel_for(points, [&](int i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    const CPPoint p = cp_point(random_sphere_point(n, rng));
    const RMatrix d = tau_c(standard, p).t - tau_c(s, p).t;
    const RMatrix canon =
        chart_pushforward(canonical_tensor(SpherePoint::from_vector(p.rep, 1e-10)), p.chart).t;
    const double cc = canon.squaredNorm();
    lambdas[i] = (d.array() * canon.array()).sum() / cc;
    results[i] = {describe(p.rep), (d - lambdas[i] * canon).norm() / std::sqrt(cc)};
  });
  const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
  const double spread = points > 0 ? *hi - *lo : 0.0;
  double mean = 0.0;
  for (double l : lambdas) mean += l;
  if (points > 0) mean /= points;
  report.data["lambda"] = mean;
  report.data["lambda_spread"] = spread;
  double fit = 0.0;
  for (const auto& w : results) fit = std::max(fit, w.residual);
  report.data["max_fit_residual"] = fit;
  results.push_back({"lambda spread", spread});
  finish(report, std::move(results), tol);
  return report;
}

VerificationReport well_definedness_check(int n, double c, int points, std::uint64_t seed, double tol) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  VerificationReport report;
  report.name = "well_definedness";
  report.params = {{"n", n}, {"c", c}, {"points", points}, {"seed", seed}};
  std::vector<Witness> results(points);
  parallel_for(points, [&](int i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    const CPPoint p = cp_point(random_sphere_point(n, rng));
    const GroupElement u1 = lift(SpherePoint::from_vector(p.rep, 1e-10));
    const GroupElement u2 = u1 * random_u_block(n, rng);
    const RMatrix t1 = tau_c_from_lift(s, u1, p.chart).t;
    const RMatrix t2 = tau_c_from_lift(s, u2, p.chart).t;
    results[i] = {describe(p.rep), max_abs(t1 - t2)};
  });
  finish(report, std::move(results), tol);
  return report;
}

VerificationReport canonical_invariance_check(int n, int samples, std::uint64_t seed, double tol) {
  VerificationReport report;
  report.name = "canonical_invariance";
  report.params = {{"n", n}, {"samples", samples}, {"seed", seed}};
  std::vector<Witness> results(samples);
  parallel_for(samples, [&](int i) {
    auto rng = sample_rng(seed, static_cast<std::uint64_t>(i));
    const GroupElement u = haar_unitary(n, rng);
    const SpherePoint p = random_sphere_point(n, rng);
    const RMatrix action = realify_operator(u.matrix());
    const RMatrix pushed = action * canonical_tensor(p).m * action.transpose();
    const RMatrix direct = canonical_tensor(SpherePoint::normalized(u.matrix() * p.v())).m;
    results[i] = {describe(p.v()), max_abs(pushed - direct)};
  });
  finish(report, std::move(results), tol);
  return report;
}

VerificationReport coisotropy_report(int n, double c, SubalgebraKind kind, double tol) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(n, c);
  const SubalgebraSpec h = subalgebra(n, kind);
  VerificationReport report;
  report.name = "coisotropy";
  report.params = {{"n", n}, {"c", c}, {"subgroup", to_string(kind)}};
  const CoisotropyReport twisted = coisotropy_check(h, s.twisted_r(), tol);
  const CoisotropyReport via_x = coisotropy_check(h, s.x_sigma(), tol);
  const CoisotropyReport plain = coisotropy_check(h, s.r(), tol);
  report.data["residual_twisted_r"] = twisted.residual;
  report.data["residual_x_sigma"] = via_x.residual;
  report.data["residual_r"] = plain.residual;
  report.data["subalgebra_dim"] = h.dim();
  std::vector<Witness> results;
  if (twisted.worst_generator >= 0) {
    results.push_back({"generator " + std::to_string(twisted.worst_generator) + " of ad_h(Ad_{sigma^-1} r)",
                       twisted.residual});
    results.push_back({"generator " + std::to_string(via_x.worst_generator) + " of ad_h(X_sigma)", via_x.residual});
  }
  finish(report, std::move(results), tol);
  report.pass = report.max_residual <= tol;
  return report;
}

VerificationReport adjoint_table_check(int n, double c, double tol) {
  VerificationReport report;
  report.name = "adjoint_table";
  report.params = {{"n", n}, {"c", c}, {"exact", false}};
  std::vector<Witness> results;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : adjoint_table(n, c)) {
    results.push_back({row.label, row.residual});
    rows.push_back({{"family", row.family}, {"label", row.label}, {"residual", row.residual}});
  }
  const double remainder = expansion_remainder(n, c).max_abs();
  results.push_back({"expansion remainder", remainder});
  report.data["rows"] = rows;
  report.data["expansion_remainder"] = remainder;
  finish(report, std::move(results), tol);
  return report;
}

}  // namespace pcpn
