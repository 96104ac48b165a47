#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "charvar/abelian_rh.hpp"
#include "charvar/acceptance.hpp"
#include "charvar/errors.hpp"
#include "charvar/goldman_form.hpp"
#include "charvar/json_io.hpp"
#include "charvar/rep_variety.hpp"
#include "charvar/simplicial_oracle.hpp"
#include "charvar/twisted_cohomology.hpp"

namespace charvar::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string group = "SL";
  int n = 2;
  int genus = 2;
  std::uint64_t seed = 1;
  double scale = 0.5;
  double flat_tol = 1e-10;
  double rank_tol = 1e-8;
  double pairing_tol = 1e-8;
  int quadrature_order = 32;
  std::vector<double> branch_points{-5, -3, -1, 1, 3, 5};
  int pairs = 100;
  std::string rep_path;
  std::string out_path;
};

// Bounds that are fixed rather than configurable.
constexpr double kCompositionTol = 1e-10;  // ||delta1 delta0||
constexpr double kDescentTol = 1e-10;
constexpr double kNondegeneracyTol = 1e-6;
constexpr double kClosednessTol = 1e-4;
constexpr double kClosednessOrder = 1.5;
constexpr double kRelationOneTol = 1e-6;
constexpr double kDriftTol = 1e-8;
constexpr double kPullbackTol = 1e-6;
constexpr double kPureTypeTol = 1e-10;

class Report {
 public:
  explicit Report(const RunConfig& c) : config_(c) {
    body_["schema"] = kSchemaVersion;
    body_["command"] = c.command;
    body_["config"] = {{"group", c.group},
                       {"n", c.n},
                       {"genus", c.genus},
                       {"seed", c.seed},
                       {"scale", c.scale},
                       {"quadrature_order", c.quadrature_order},
                       {"tolerances", {{"flat_tol", c.flat_tol}, {"rank_tol", c.rank_tol}, {"pairing_tol", c.pairing_tol}}}};
    body_["checks"] = Json::array();
    body_["result"] = Json::object();
  }

  Json& result() { return body_["result"]; }

  void check(const std::string& name, double value, const std::string& relation, double bound) {
    Measurement m{name, value, relation, bound};
    body_["checks"].push_back(
        {{"name", name}, {"value", value}, {"relation", relation}, {"bound", bound}, {"passed", m.ok()}});
    if (!m.ok() && first_failure_.empty()) first_failure_ = name;
  }

  void check_flag(const std::string& name, bool ok) { check(name, ok ? 1.0 : 0.0, "==", 1.0); }

  bool passed() const { return first_failure_.empty(); }

  Json finish(double seconds) {
    body_["passed"] = passed();
    body_["first_failure"] = first_failure_.empty() ? Json(nullptr) : Json(first_failure_);
    body_["timing"] = {{"seconds", seconds}};
    return body_;
  }

 private:
  const RunConfig& config_;
  Json body_;
  std::string first_failure_;
};

Representation load_or_generate(const RunConfig& c, Json& result) {
  if (!c.rep_path.empty()) {
    std::ifstream in(c.rep_path);
    if (!in) throw InvalidInput("cannot read representation file " + c.rep_path);
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw InvalidInput(std::string("representation file is not JSON: ") + e.what());
    }
    Representation rep = representation_from_json(j);
    result["source"] = c.rep_path;
    return rep;
  }
  RefinementOptions opts;
  opts.flat_tol = c.flat_tol;
  const RefinementResult r =
      random_flat_representation_with_stats(parse_group_spec(c.group, c.n), c.genus, c.seed, c.scale, opts);
  result["iterations"] = r.iterations;
  result["draws"] = r.draws;
  return r.rep;
}

std::mt19937_64 sampling_rng(const RunConfig& c) { return std::mt19937_64(c.seed ^ 0x9e3779b97f4a7c15ULL); }

Vector gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

Cochain1 random_cocycle(std::mt19937_64& rng, const CohomologySpaces& sp) {
  return {sp.cocycle_basis * gaussian(rng, sp.cocycle_basis.cols()), sp.dim_g};
}

RankOptions rank_options(const RunConfig& c) {
  RankOptions r;
  r.rank_tol = c.rank_tol;
  return r;
}

IrreducibilityOptions irreducibility_options(const RunConfig& c) {
  IrreducibilityOptions o;
  o.rank_tol = c.rank_tol;
  return o;
}

std::string verdict_name(Irreducibility v) {
  switch (v) {
    case Irreducibility::Irreducible: return "irreducible";
    case Irreducibility::Reducible: return "reducible";
    case Irreducibility::Indeterminate: return "indeterminate";
  }
  return "?";
}

void cmd_gen(const RunConfig& c, Report& rep_out) {
  Json& res = rep_out.result();
  const Representation rep = load_or_generate(c, res);
  const LieAlgebra alg(rep.spec);
  res["representation"] = representation_to_json(rep);
  res["rep_hash"] = hex64(representation_hash(rep));
  double det = 0.0;
  for (const auto& g : rep.generators) det = std::max(det, alg.constraint_violation(g));
  rep_out.check("residual", rep.residual, "<=", c.flat_tol);
  if (rep.spec.kind == GroupKind::SL) rep_out.check("max_det_deviation", det, "<=", c.flat_tol);
}

void cmd_cohom(const RunConfig& c, Report& out) {
  Json& res = out.result();
  const Representation rep = load_or_generate(c, res);
  const CohomologySpaces sp = cohomology(rep, rank_options(c), c.flat_tol);
  const IrreducibilityReport irr = irreducibility(rep, irreducibility_options(c));
  res["rep_hash"] = hex64(representation_hash(rep));
  res["residual"] = rep.residual;
  res["irreducibility"] = verdict_name(irr.verdict);
  res["cohomology"] = cohomology_to_json(sp);
  out.check("delta1_delta0_norm", (sp.delta1 * sp.delta0).norm(), "<=", kCompositionTol);
  out.check("euler_characteristic", sp.euler_characteristic(), "==", (2 - 2 * rep.genus) * sp.dim_g);
  out.check("h0_minus_h2", sp.h0 - sp.h2, "==", 0.0);
  if (irr.verdict == Irreducibility::Irreducible)
    out.check("h1_dimension_formula", sp.h1, "==",
              2 * rep.spec.dim_g() * (rep.genus - 1) + 2 * rep.spec.dim_center());
}

void cmd_goldman(const RunConfig& c, Report& out) {
  Json& res = out.result();
  const Representation rep = load_or_generate(c, res);
  const CohomologySpaces sp = cohomology(rep, rank_options(c), c.flat_tol);
  const IrreducibilityReport irr = irreducibility(rep, irreducibility_options(c));
  const BarTwoChain cycle = fundamental_cycle(SurfaceGroupPresentation(rep.genus));
  const GoldmanMatrix gm = goldman_matrix(rep, sp, cycle);
  res["irreducibility"] = verdict_name(irr.verdict);
  res["goldman"] = goldman_matrix_to_json(gm, {representation_hash(rep), c.seed, c.rank_tol});

  const LieAlgebra alg(rep.spec);
  auto rng = sampling_rng(c);
  double descent = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Cochain1 u = random_cocycle(rng, sp), v = random_cocycle(rng, sp);
    Cochain1 shifted = u;
    shifted.coords += coboundary(rep, alg, gaussian(rng, alg.dim())).coords;
    const PairingValue a = goldman_pairing_detail(rep, u, v, cycle);
    const PairingValue b = goldman_pairing_detail(rep, shifted, v, cycle);
    descent = std::max(descent, std::abs(a.value - b.value) / std::max({a.magnitude, b.magnitude, 1e-300}));
  }
  res["descent_samples"] = 50;
  out.check("antisymmetry", gm.antisymmetry, "<=", c.pairing_tol);
  out.check("descent", descent, "<=", kDescentTol);
  if (irr.verdict == Irreducibility::Irreducible) out.check("sigma_ratio", gm.conditioning, ">=", kNondegeneracyTol);
}

void cmd_oracle(const RunConfig& c, Report& out) {
  Json& res = out.result();
  const Representation rep = load_or_generate(c, res);
  const CohomologySpaces sp = cohomology(rep, rank_options(c), c.flat_tol);
  const BarTwoChain cycle = fundamental_cycle(SurfaceGroupPresentation(rep.genus));
  const TriangulatedSurfaceComplex c0 = build_complex(rep.genus, 0), c1 = build_complex(rep.genus, 1);
  auto rng = sampling_rng(c);
  double worst = 0.0, worst_refine = 0.0;
  Json samples = Json::array();
  for (int trial = 0; trial < c.pairs; ++trial) {
    const Cochain1 u = random_cocycle(rng, sp), v = random_cocycle(rng, sp);
    const Complex bar = goldman_pairing(rep, u, v, cycle);
    const Complex s0 = simplicial_pairing(c0, rep, transport_cocycle(rep, u, c0), transport_cocycle(rep, v, c0));
    const Complex s1 = simplicial_pairing(c1, rep, transport_cocycle(rep, u, c1), transport_cocycle(rep, v, c1));
    auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
    worst = std::max(worst, rel(bar, s0));
    worst_refine = std::max(worst_refine, rel(s0, s1));
    if (trial < 5) samples.push_back({{"index", trial}, {"bar", {bar.real(), bar.imag()}}, {"simplicial", {s0.real(), s0.imag()}}});
  }
  res["pairs"] = c.pairs;
  res["first_samples"] = samples;
  res["max_relative_disagreement"] = worst;
  res["max_refinement_disagreement"] = worst_refine;
  out.check("bar_vs_simplicial", worst, "<=", c.pairing_tol);
  out.check("refinement_0_vs_1", worst_refine, "<=", c.pairing_tol);
}

void cmd_closedness(const RunConfig& c, Report& out) {
  Json& res = out.result();
  const Representation rep = load_or_generate(c, res);
  const CohomologySpaces sp = cohomology(rep, rank_options(c), c.flat_tol);
  if (sp.h1 < 3) throw InvalidInput("closedness needs at least three H^1 directions");
  const BarTwoChain cycle = fundamental_cycle(SurfaceGroupPresentation(rep.genus));
  const std::array<Cochain1, 3> dirs{sp.representative(0), sp.representative(1), sp.representative(2)};
  ClosednessOptions opts;
  opts.flat_tol = c.flat_tol;
  const ClosednessResult coarse = closedness_residual(rep, dirs, 2e-3, cycle, opts);
  const ClosednessResult fine = closedness_residual(rep, dirs, 1e-3, cycle, opts);
  const double order = fine.residual <= 1e-9 ? 2.0 : std::log2(coarse.residual / fine.residual);
  res["steps"] = {2e-3, 1e-3};
  res["residuals"] = {coarse.residual, fine.residual};
  res["derivative_scale"] = fine.derivative_scale;
  res["worst_stencil_residual"] = std::max(coarse.worst_stencil_residual, fine.worst_stencil_residual);
  res["observed_order"] = order;
  out.check("residual_h_1e-3", fine.residual, "<=", kClosednessTol);
  out.check("observed_order", order, ">=", kClosednessOrder);
}

void cmd_abelian(const RunConfig& c, Report& out) {
  Json& res = out.result();
  const HyperellipticCurve curve(c.branch_points);
  PeriodOptions popts;
  popts.convergence_tol = kDriftTol;
  const PeriodData p = periods(curve, c.quadrature_order, popts);
  res["curve"] = curve_to_json(curve);
  res["periods"] = period_data_to_json(p);
  out.check("relation_one_residual", p.relation_one_residual, "<=", kRelationOneTol);
  out.check_flag("relation_two_definite", p.relation_two_definite);
  out.check("quadrature_drift", p.quadrature_drift, "<=", kDriftTol);
  if (!p.relation_two_definite || !(p.relation_one_residual <= kRelationOneTol)) return;

  const int g = curve.genus();
  const Matrix gram = serre_gram(p);
  const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(gram).singularValues();
  res["serre_gram"] = matrix_to_json(gram);
  out.check("serre_antisymmetry", (gram + gram.transpose()).norm() / gram.norm(), "<=", c.pairing_tol);
  out.check("serre_sigma_ratio", s(s.size() - 1) / s(0), ">=", kNondegeneracyTol);

  auto rng = sampling_rng(c);
  double worst = 0.0, mean = 0.0, pure = 0.0;
  for (int trial = 0; trial < c.pairs; ++trial) {
    const TangentVector v{gaussian(rng, g), gaussian(rng, g)}, w{gaussian(rng, g), gaussian(rng, g)};
    const double e = rh_pullback_check(curve, p, v, w).relative_error;
    worst = std::max(worst, e);
    mean += e / c.pairs;
  }
  double pure_lhs = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const TangentVector v{gaussian(rng, g), Vector::Zero(g)}, w{gaussian(rng, g), Vector::Zero(g)};
    const PullbackCheck r = rh_pullback_check(curve, p, v, w);
    pure_lhs = std::max(pure_lhs, std::abs(r.lhs));
    pure = std::max(pure, std::abs(r.rhs) / r.magnitude);
  }
  res["pullback"] = {{"pairs", c.pairs}, {"max_relative_error", worst}, {"mean_relative_error", mean}};
  out.check("pullback_max_relative_error", worst, "<=", kPullbackTol);
  out.check("pure_type_serre", pure_lhs, "==", 0.0);
  out.check("pure_type_goldman", pure, "<=", kPureTypeTol);
}

void cmd_report(const RunConfig&, Report& out) {
  Json table = Json::array();
  for (const auto& run : acceptance_suite()) {
    const CriterionResult r = run();
    Json ms = Json::array();
    for (const auto& m : r.measurements)
      ms.push_back({{"name", m.name}, {"value", m.value}, {"relation", m.relation}, {"bound", m.bound}, {"passed", m.ok()}});
    table.push_back({{"criterion", r.id},
                     {"title", r.title},
                     {"passed", r.passed()},
                     {"measurements", ms},
                     {"time_limit_seconds", r.time_limit},
                     {"failure", r.passed() ? Json(nullptr) : Json(r.first_failure())}});
    out.check_flag("criterion_" + std::to_string(r.id), r.passed());
  }
  out.result()["criteria"] = table;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"charvar_lab: character varieties, Goldman form and abelian periods"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with flag values");

  struct Command {
    const char* name;
    const char* help;
    void (*fn)(const RunConfig&, Report&);
  };
  const std::vector<Command> commands = {
      {"gen", "random flat representation", cmd_gen},
      {"cohom", "twisted cohomology dimensions and representatives", cmd_cohom},
      {"goldman", "Goldman matrix with antisymmetry, descent and nondegeneracy checks", cmd_goldman},
      {"oracle-check", "bar complex vs simplicial cup product on random pairs", cmd_oracle},
      {"closedness", "finite-difference d omega at two step sizes", cmd_closedness},
      {"abelian", "periods, Riemann relations, Serre pairing and pullback check", cmd_abelian},
      {"report", "acceptance criteria table", cmd_report},
  };
  std::vector<CLI::App*> subs;
  for (const auto& cmd : commands) {
    CLI::App* s = app.add_subcommand(cmd.name, cmd.help);
    s->add_option("--group", cfg.group, "GL, SL or TORUS")->check(CLI::IsMember({"GL", "SL", "TORUS"}, CLI::ignore_case));
    s->add_option("--n", cfg.n, "matrix size")->check(CLI::Range(1, 8));
    s->add_option("--genus", cfg.genus, "surface genus (>= 2)")->check(CLI::Range(2, 64));
    s->add_option("--seed", cfg.seed, "64-bit seed");
    s->add_option("--scale", cfg.scale, "distance of the random draw from the identity")->check(CLI::NonNegativeNumber);
    s->add_option("--flat-tol", cfg.flat_tol)->check(CLI::PositiveNumber);
    s->add_option("--rank-tol", cfg.rank_tol)->check(CLI::PositiveNumber);
    s->add_option("--pairing-tol", cfg.pairing_tol)->check(CLI::PositiveNumber);
    s->add_option("--quadrature-order", cfg.quadrature_order)->check(CLI::Range(16, 1 << 16));
    s->add_option("--branch-points", cfg.branch_points, "comma-separated real branch points")->delimiter(',');
    s->add_option("--pairs", cfg.pairs, "random pairs for oracle-check / abelian")->check(CLI::Range(1, 100000));
    s->add_option("--rep", cfg.rep_path, "representation JSON instead of a random draw");
    s->add_option("--out", cfg.out_path, "also write the report here");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  const Command* chosen = nullptr;
  for (std::size_t i = 0; i < commands.size(); ++i)
    if (subs[i]->parsed()) chosen = &commands[i];
  cfg.command = chosen->name;

  Report report(cfg);
  const auto start = std::chrono::steady_clock::now();
  int code = kPass;
  try {
    chosen->fn(cfg, report);
    code = report.passed() ? kPass : kCheckFailed;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericFault& e) {
    err << "numeric failure: " << e.what() << "\n";
    report.result()["error"] = e.what();
    code = kNumeric;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json j = report.finish(seconds);
  if (code == kNumeric) j["passed"] = false;
  const std::string text = j.dump(2);
  out << text << "\n";
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "cannot write " << cfg.out_path << "\n";
      return kUsage;
    }
    f << text << "\n";
  }
  if (code == kCheckFailed) err << "check failed: " << j["first_failure"].get<std::string>() << "\n";
  return code;
}

}  // namespace charvar::cli
