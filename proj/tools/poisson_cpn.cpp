// poisson-cpn: build the affine Poisson family on SU(n) and the induced tensors
// tau_c on CP^{n-1}, and run the checks from the command line.
//
// exit codes: 0 pass, 1 a check failed, 2 usage error.

#include "pcpn/exact.hpp"
#include "pcpn/verification.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace pcpn;

namespace {

struct RunConfig {
  int n = 3;
  std::string c_text = "0.5";
  double c = 0.5;
  std::uint64_t seed = 42;
  int samples = 100;
  int group_samples = 20;
  std::optional<double> tol;
  std::optional<double> step;
  std::string subgroup = "u";
  std::string mode = "su";
  std::string format = "json";
  std::string out;
  bool exact = false;
  std::string check;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json matrix_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json complex_matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
  return out;
}

json base_params(const RunConfig& cfg) {
  return {{"n", cfg.n}, {"c", cfg.c}, {"seed", cfg.seed}, {"samples", cfg.samples}};
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + cfg.out);
  file << text << '\n';
}

int emit_report(const RunConfig& cfg, VerificationReport report) {
  if (cfg.tol) {
    report.tolerance = *cfg.tol;
    report.pass = report.max_residual < *cfg.tol;
  }
  if (cfg.format != "json") throw UsageError("only --format json is available for this subcommand");
  emit(cfg, report.to_json().dump(2));
  return report.pass ? 0 : 1;
}

int run_coisotropy(const RunConfig& cfg) {
  const SubalgebraKind kind = parse_subalgebra_kind(cfg.subgroup);
  VerificationReport report = coisotropy_report(cfg.n, cfg.c, kind, cfg.tol.value_or(kCoisotropyTolerance));
  report.params["seed"] = cfg.seed;
  return emit_report(cfg, std::move(report));
}

int run_tensor(const RunConfig& cfg) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(cfg.n, cfg.c);
  VerificationReport report;
  report.name = "tensor";
  report.params = base_params(cfg);
  report.tolerance = cfg.tol.value_or(1e-12);
  report.data["sigma"] = complex_matrix_json(s.sigma().matrix());
  report.data["r"] = matrix_json(s.r().coeffs());
  report.data["x_sigma"] = matrix_json(s.x_sigma().coeffs());

  std::vector<json> points(cfg.samples);
  std::vector<double> asym(cfg.samples);
  parallel_for(cfg.samples, [&](int i) {
    auto rng = sample_rng(cfg.seed, static_cast<std::uint64_t>(i));
    const CPPoint p = cp_point(random_sphere_point(cfg.n, rng));
    const ChartBivector t = tau_c(s, p);
    asym[i] = (t.t + t.t.transpose()).cwiseAbs().maxCoeff();
    points[i] = {{"rep", vector_json(p.rep)}, {"chart", p.chart + 1}, {"w", vector_json(p.w)},
                 {"rank", rank(t)}, {"tau", matrix_json(t.t)}};
  });
  report.data["points"] = points;
  for (int i = 0; i < cfg.samples; ++i) {
    report.max_residual = std::max(report.max_residual, asym[i]);
  }
  report.pass = report.max_residual < report.tolerance;
  return emit_report(cfg, std::move(report));
}

int run_rank_map(const RunConfig& cfg) {
  const AffinePoissonStructure s = AffinePoissonStructure::make(cfg.n, cfg.c);
  const double tol = cfg.tol.value_or(kRankTolerance);
  // chart 1 coordinates, so the map is a single picture of the big cell
  std::vector<CVector> coords(cfg.samples);
  std::vector<int> ranks(cfg.samples);
  parallel_for(cfg.samples, [&](int i) {
    auto rng = sample_rng(cfg.seed, static_cast<std::uint64_t>(i));
    const SpherePoint v = random_sphere_point(cfg.n, rng);
    const CPPoint p = cp_point(v);
    ranks[i] = rank(tau_c(s, p), tol);
    CVector w(cfg.n - 1);
    for (int j = 1; j < cfg.n; ++j) w(j - 1) = v.v()(j) / v.v()(0);
    coords[i] = w;
  });
  bool even = true;
  for (int r : ranks) even = even && r % 2 == 0;

  if (cfg.format == "csv") {
    std::ostringstream out;
    out.precision(17);
    if (cfg.n == 2) {
      out << "chart_re,chart_im,rank\n";
    } else {
      for (int j = 1; j < cfg.n; ++j) out << "chart_re_" << j << ",chart_im_" << j << ",";
      out << "rank\n";
    }
    for (int i = 0; i < cfg.samples; ++i) {
      for (Eigen::Index j = 0; j < coords[i].size(); ++j) out << coords[i](j).real() << ',' << coords[i](j).imag() << ',';
      out << ranks[i] << '\n';
    }
    std::string text = out.str();
    text.pop_back();
    emit(cfg, text);
    return even ? 0 : 1;
  }
  if (cfg.format != "json") throw UsageError("--format must be json or csv");
  VerificationReport report;
  report.name = "rank_map";
  report.params = base_params(cfg);
  report.params["tol"] = tol;
  report.tolerance = 0.5;
  std::map<int, int> histogram;
  json rows = json::array();
  for (int i = 0; i < cfg.samples; ++i) {
    histogram[ranks[i]]++;
    rows.push_back({{"w", vector_json(coords[i])}, {"rank", ranks[i]}});
  }
  json hist = json::object();
  for (const auto& [r, count] : histogram) hist[std::to_string(r)] = count;
  report.data["histogram"] = hist;
  report.data["points"] = rows;
  report.max_residual = even ? 0.0 : 1.0;
  report.pass = even;
  emit(cfg, report.to_json().dump(2));
  return even ? 0 : 1;
}

int run_verify(const RunConfig& cfg) {
  const std::string& check = cfg.check;
  if (check == "jacobi") {
    VerificationReport report = jacobi_residual(cfg.n, cfg.c, cfg.samples, cfg.step.value_or(1e-5), cfg.seed);
    return emit_report(cfg, std::move(report));
  }
  if (check == "embedding") return emit_report(cfg, embedding_check(cfg.n, cfg.c, cfg.samples, cfg.seed));
  if (check == "covariance") {
    return emit_report(cfg, covariance_check(cfg.n, cfg.c, cfg.group_samples, cfg.samples, cfg.seed,
                                             cfg.step.value_or(1e-6)));
  }
  if (check == "affine") return emit_report(cfg, affine_identity_check(cfg.n, cfg.c, cfg.samples, cfg.seed));
  if (check == "proportionality") return emit_report(cfg, proportionality_check(cfg.n, cfg.c, cfg.samples, cfg.seed));
  if (check == "well-definedness") return emit_report(cfg, well_definedness_check(cfg.n, cfg.c, cfg.samples, cfg.seed));
  if (check == "leaf-census") {
    LeafCensus census = leaf_census(cfg.n, cfg.c, cfg.samples, kRankTolerance, cfg.seed);
    return emit_report(cfg, std::move(census.report));
  }
  throw UsageError("unknown check '" + check + "'");
}

int run_classify(const RunConfig& cfg) {
  const InvarianceMode mode = parse_invariance_mode(cfg.mode);
  const AffinePoissonStructure standard = AffinePoissonStructure::make(cfg.n, 1.0);
  const AffinePoissonStructure s = AffinePoissonStructure::make(cfg.n, cfg.c);
  const CPPoint base = cp_point(SpherePoint::basis_vector(cfg.n, 0));
  const ChartBivector t1 = tau_c(standard, base);
  const ChartBivector tc = tau_c(s, base);
  const InvariantBlock block = block_at_basepoint(ChartBivector{base, t1.t - tc.t});
  const double tol = cfg.tol.value_or(kClassificationTolerance);
  const ClassificationResult result = classify_block(block, mode, kDefaultInvarianceSamples, cfg.seed, tol);

  VerificationReport report;
  report.name = "classify_invariant";
  report.params = {{"n", cfg.n}, {"c", cfg.c}, {"mode", cfg.mode}, {"seed", cfg.seed}};
  report.tolerance = tol;
  for (const auto& step : result.details) {
    if (!step.skipped) report.max_residual = std::max(report.max_residual, step.residual);
    report.data["steps"].push_back(
        {{"name", step.name}, {"residual", step.residual}, {"passed", step.passed}, {"skipped", step.skipped}});
    if (!step.passed) report.witnesses.push_back({step.name, step.residual});
  }
  report.data["verdict"] = to_string(result.verdict);
  report.data["lambda"] = result.lambda;
  report.data["block"] = matrix_json(block.b);
  report.pass = result.verdict == Verdict::Proportional;
  emit(cfg, report.to_json().dump(2));
  return report.pass ? 0 : 1;
}

int run_adjoint_table(const RunConfig& cfg) {
  if (!cfg.exact) return emit_report(cfg, adjoint_table_check(cfg.n, cfg.c, cfg.tol.value_or(1e-12)));

  const exact::Rational c = exact::parse_rational(cfg.c_text);
  const auto roots = exact::rational_roots(c);
  if (!roots) throw UsageError("--exact needs c = p^2/q^2 with sqrt(1 - c) rational as well; got " + cfg.c_text);
  VerificationReport report;
  report.name = "adjoint_table";
  report.params = {{"n", cfg.n}, {"c", exact::to_string(c)}, {"exact", true}};
  report.data["sqrt_c"] = exact::to_string(roots->sqrt_c);
  report.data["sqrt_one_minus_c"] = exact::to_string(roots->sqrt_one_minus_c);
  json rows = json::array();
  bool all = true;
  for (const auto& row : exact::adjoint_table(cfg.n, *roots)) {
    rows.push_back({{"family", row.family}, {"label", row.label}, {"holds", row.holds()}});
    if (!row.holds()) {
      all = false;
      report.witnesses.push_back({row.label, 1.0});
    }
  }
  const exact::Bivector remainder = exact::expansion_remainder(cfg.n, *roots);
  report.data["rows"] = rows;
  report.data["expansion_remainder_nonzero_pairs"] = remainder.nonzero_pairs();
  if (!remainder.is_zero()) report.witnesses.push_back({"expansion remainder", 1.0});
  report.pass = all && remainder.is_zero();
  report.max_residual = report.pass ? 0.0 : 1.0;
  report.tolerance = 0.0;
  emit(cfg, report.to_json().dump(2));
  return report.pass ? 0 : 1;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--n", cfg.n, "dimension n >= 2")->capture_default_str();
  cmd->add_option("--c", cfg.c_text, "parameter c in [0, 1]")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--samples", cfg.samples, "number of sample points")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--tol", cfg.tol, "override the pass tolerance");
  cmd->add_option("--step", cfg.step, "finite-difference step");
  cmd->add_option("--format", cfg.format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.out, "write output to PATH instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariant Poisson structures on SU(n), S^{2n-1} and CP^{n-1}"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* coisotropy = app.add_subcommand("coisotropy", "infinitesimal coisotropy of a subgroup w.r.t. pi_sigma_c");
  add_common(coisotropy, cfg);
  coisotropy->add_option("--subgroup", cfg.subgroup, "u, su-bottom or su-top")
      ->capture_default_str()
      ->check(CLI::IsMember({"u", "u-bottom", "su-bottom", "su-top"}));

  auto* tensor = app.add_subcommand("tensor", "sigma_c, r, X_sigma and tau_c at sample points");
  add_common(tensor, cfg);

  auto* rank_map = app.add_subcommand("rank-map", "rank of tau_c at random points of CP^{n-1}");
  add_common(rank_map, cfg);

  auto* verify = app.add_subcommand("verify", "numerical checks of the geometric statements");
  add_common(verify, cfg);
  verify->add_option("check", cfg.check, "check to run")
      ->required()
      ->check(CLI::IsMember(
          {"jacobi", "embedding", "covariance", "affine", "proportionality", "well-definedness", "leaf-census"}));
  verify->add_option("--group-samples", cfg.group_samples, "group elements for covariance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify-invariant", "classify tau_1 - tau_c at [e_1]");
  add_common(classify, cfg);
  classify->add_option("--mode", cfg.mode, "su or u")->capture_default_str()->check(CLI::IsMember({"su", "u"}));

  auto* table = app.add_subcommand("adjoint-table", "Ad_{sigma_c^{-1}} table and expansion of Ad_{sigma_c^{-1}}(r)");
  add_common(table, cfg);
  table->add_flag("--exact", cfg.exact, "rational arithmetic (needs rational sqrt(c) and sqrt(1-c))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (cfg.n < 2) throw UsageError("--n must be at least 2");
    try {
      std::size_t used = 0;
      cfg.c = std::stod(cfg.c_text, &used);
      if (used != cfg.c_text.size()) {
        // allow p/q
        cfg.c = static_cast<double>(exact::parse_rational(cfg.c_text));
      }
    } catch (const std::invalid_argument&) {
      throw UsageError("--c must be a number");
    }
    if (!(cfg.c >= 0.0 && cfg.c <= 1.0)) throw UsageError("--c must lie in [0, 1]");

    if (coisotropy->parsed()) return run_coisotropy(cfg);
    if (tensor->parsed()) return run_tensor(cfg);
    if (rank_map->parsed()) return run_rank_map(cfg);
    if (verify->parsed()) return run_verify(cfg);
    if (classify->parsed()) return run_classify(cfg);
    if (table->parsed()) return run_adjoint_table(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidParameter || e.kind() == ErrorKind::InvalidDimension) {
      std::cerr << "error: " << e.what() << "\n\n" << app.help();
      return 2;
    }
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
