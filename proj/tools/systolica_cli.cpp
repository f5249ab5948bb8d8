// systolica: extremal solves, verification sweeps, classification and
// polygon round trips with JSON reports.
//
// Exit codes: 0 pass, 1 usage or input error, 2 mathematically infeasible
// input, 3 a check exceeded its tolerance.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "systolica/errors.hpp"
#include "systolica/extremal.hpp"
#include "systolica/io.hpp"
#include "systolica/polygon_space.hpp"
#include "systolica/trigonometry.hpp"
#include "systolica/variational.hpp"
#include "systolica/verify.hpp"

namespace {

using systolica::io::Json;
namespace ex = systolica::extremal;
namespace vf = systolica::verify;

enum Exit { kPass = 0, kUsage = 1, kInfeasible = 2, kCheckFailed = 3 };

struct Common {
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string csv;
  std::string output;
};

struct OracleSummary {
  int checks_run = 0;
  double max_rel_err = 0.0;

  void record(double err) {
    ++checks_run;
    max_rel_err = std::max(max_rel_err, std::isfinite(err) ? err : HUGE_VAL);
  }
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw systolica::InvalidArgument("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw systolica::InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

int emit(const std::string& command, const Json& inputs, const Json& outputs,
         const OracleSummary& oracle, const Common& c) {
  Json canonical{{"command", command}, {"inputs", systolica::io::rounded(inputs)}, {"seed", c.seed}};
  Json report{{"command", command},
              {"inputs", inputs},
              {"inputs_digest", systolica::io::digest(canonical)},
              {"outputs", outputs},
              {"oracle_summary",
               {{"checks_run", oracle.checks_run}, {"max_rel_err", oracle.max_rel_err}}},
              {"seed", c.seed},
              {"timestamp", utc_timestamp()}};
  const std::string text = systolica::io::rounded(report).dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output);
    if (!out) throw systolica::InvalidArgument("cannot write '" + c.output + "'");
    out << text;
  }
  return kPass;
}

void write_csv(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw systolica::InvalidArgument("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------- extremal

struct ExtremalArgs {
  std::string input;
  std::string problem;
  std::optional<int> chi;
  std::vector<double> boundary;
  std::vector<int> B;
  std::optional<double> LB;
  std::string convention = "half";
  std::string method = "bisection";
  bool gap = false;
};

int run_extremal(const ExtremalArgs& a, const Common& c) {
  ex::SurfaceSignature sig;
  std::string problem = a.problem;
  if (!a.input.empty()) {
    const Json j = read_json(a.input);
    sig = systolica::io::signature_from_json(j);
    if (problem.empty() && j.contains("problem")) problem = j["problem"].get<std::string>();
  } else {
    if (!a.chi) throw systolica::InvalidArgument("--chi is required without --input");
    sig.chi = *a.chi;
    sig.boundary = a.boundary;
    sig.B = a.B;
    if (a.LB) sig.L_B = *a.LB;
  }
  if (problem != "arcs" && problem != "loops") {
    throw systolica::InvalidArgument("--problem must be arcs or loops");
  }
  const auto kind = problem == "arcs" ? ex::Problem::arcs : ex::Problem::loops;
  if (kind == ex::Problem::arcs && a.input.empty() && !a.LB) {
    throw systolica::InvalidArgument("--LB is required for arc problems");
  }
  const auto conv =
      a.convention == "printed" ? ex::ArcConvention::as_printed : ex::ArcConvention::half_argument;
  const auto method = a.method == "newton" ? ex::RootMethod::newton : ex::RootMethod::bisection;

  ex::validate(sig, kind);
  const ex::ExtremeReport r = kind == ex::Problem::arcs ? ex::solve_arc_extreme(sig, conv, method)
                                                        : ex::solve_loop_extreme(sig, method);
  const double tol = c.tol.value_or(1e-10);
  OracleSummary oracle;
  oracle.record(std::abs(r.residual));

  Json out = systolica::io::to_json(r);
  const bool euler = ex::euler_certificate(sig, kind);
  out["euler_certificate"] = euler;
  oracle.record(euler ? 0.0 : HUGE_VAL);

  // Root uniqueness: the other method from a different start.
  const ex::ExtremeReport other =
      kind == ex::Problem::arcs
          ? ex::solve_arc_extreme(sig, conv,
                                  method == ex::RootMethod::newton ? ex::RootMethod::bisection
                                                                   : ex::RootMethod::newton)
          : ex::solve_loop_extreme(sig, method == ex::RootMethod::newton
                                            ? ex::RootMethod::bisection
                                            : ex::RootMethod::newton);
  out["method_agreement"] = std::abs(other.x - r.x);
  oracle.record(std::abs(other.x - r.x) / std::max(1.0, std::abs(r.x)));

  bool pass = std::abs(r.residual) < tol && euler && std::abs(other.x - r.x) < 1e-10;
  if (r.bavard_equality_defect && r.counts.special == 0 && conv == ex::ArcConvention::half_argument) {
    oracle.record(std::abs(*r.bavard_equality_defect));
    pass = pass && std::abs(*r.bavard_equality_defect) < 1e-9;
  }
  if (kind == ex::Problem::loops) {
    out["equilateral_angle"] = systolica::trig::equilateral_angle(r.x);
  }
  if (a.gap) {
    if (kind != ex::Problem::arcs || r.counts.special != 0) {
      throw systolica::InvalidArgument("--gap needs an arc problem with B the full boundary");
    }
    const auto g = ex::systolic_gap_certificate(sig, r.x);
    out["gap"] = systolica::io::to_json(g);
    oracle.record(g.side_formula_error);
    pass = pass && g.min_ratio > 1.0 && g.side_formula_error < 1e-12;
  }

  Json inputs = systolica::io::to_json(sig);
  inputs["problem"] = problem;
  inputs["convention"] = a.convention;
  inputs["method"] = a.method;
  emit("extremal", inputs, out, oracle, c);
  return pass ? kPass : kCheckFailed;
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& suite, int samples, const Common& c) {
  const vf::Options opts{samples, c.seed, c.tol};
  const vf::SuiteResult r = vf::run_suite(suite, opts);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";

  std::map<std::string, std::pair<int, double>> per_check;
  for (const auto& rec : r.records) {
    auto& [count, worst] = per_check[rec.name];
    ++count;
    worst = std::max(worst, rec.rel_err);
  }
  Json checks = Json::object();
  for (const auto& [name, v] : per_check) {
    checks[name] = {{"count", v.first}, {"max_rel_err", v.second}};
  }
  Json out{{"suite", suite}, {"passed", r.passed()}, {"checks", checks}, {"warnings", r.warnings}};
  if (const auto* w = r.worst()) {
    out["worst"] = {{"check", w->name},    {"sample", w->sample}, {"analytic", w->analytic},
                    {"oracle", w->oracle}, {"rel_err", w->rel_err}, {"tol", w->tol}};
  }
  if (!c.csv.empty()) write_csv(c.csv, vf::csv_header() + vf::csv_rows(r));

  OracleSummary oracle{r.checks_run(), r.max_rel_err()};
  Json inputs{{"suite", suite}, {"samples", samples}};
  if (c.tol) inputs["tol"] = *c.tol;
  emit("verify", inputs, out, oracle, c);
  return r.passed() ? kPass : kCheckFailed;
}

// ---------------------------------------------------------------- classify

int run_classify(const std::string& path, const Common& c) {
  const auto family = systolica::io::family_from_json(read_json(path));
  const auto cls = systolica::variational::classify(family);
  OracleSummary oracle;
  bool pass = true;
  if (cls.eutactic) {
    Eigen::VectorXd comb = Eigen::VectorXd::Zero(family.dim);
    for (std::size_t k = 0; k < family.vectors.size(); ++k) {
      comb += cls.certificate.lambda[k] * family.vectors[k];
    }
    const double tol = c.tol.value_or(1e-9);
    oracle.record(comb.norm());
    pass = comb.norm() <= tol;
  }
  Json out = systolica::io::to_json(cls);
  if (family.dim <= 3) {
    const bool agree = vf::brute_force_eutactic(family) == cls.eutactic;
    out["hull_oracle_agrees"] = agree;
    oracle.record(agree ? 0.0 : HUGE_VAL);
    pass = pass && agree;
  }
  emit("classify", systolica::io::to_json(family), out, oracle, c);
  return pass ? kPass : kCheckFailed;
}

// ----------------------------------------------------------------- polygon

int run_polygon(const std::string& input, const std::vector<double>& sides_arg,
                const std::vector<double>& coords_arg, const Common& c) {
  std::optional<std::vector<double>> sides;
  std::optional<systolica::polygon::PentagonCoords> coords;
  if (!input.empty()) {
    const Json j = read_json(input);
    if (j.contains("coords")) {
      coords = systolica::io::coords_from_json(j);
    } else {
      sides = systolica::io::sides_from_json(j);
    }
  } else if (!coords_arg.empty()) {
    coords = systolica::io::coords_from_json(Json{{"coords", coords_arg}});
  } else if (!sides_arg.empty()) {
    sides = systolica::io::sides_from_json(Json{{"sides", sides_arg}});
  } else {
    throw systolica::InvalidArgument("one of --sides, --coords or --input is required");
  }

  const double tol = c.tol.value_or(1e-8);
  OracleSummary oracle;
  Json inputs;
  systolica::polygon::MarkedRightPolygon poly;
  if (coords) {
    inputs = systolica::io::to_json(*coords);
    poly = systolica::polygon::sides_from_pentagon_coords(*coords);
  } else {
    inputs = {{"n", sides->size()}, {"sides", *sides}};
    poly = systolica::polygon::realize(*sides);
  }
  Json out{{"n", poly.n}, {"sides", poly.sides}, {"closure_defect", poly.closure_defect}};
  oracle.record(poly.closure_defect);
  if (poly.closure_defect > tol) {
    out["closed"] = false;
    emit("polygon", inputs, out, oracle, c);
    std::cerr << "error: sides do not close up into a right-angled polygon\n";
    return kInfeasible;
  }
  out["closed"] = true;
  double angle_err = 0.0;
  for (int i = 1; i <= poly.n; ++i) {
    angle_err = std::max(angle_err, std::abs(systolica::polygon::interior_angle(poly, i) - M_PI / 2));
  }
  out["interior_angle_error"] = angle_err;
  oracle.record(angle_err);

  const auto back = systolica::polygon::pentagon_coords(poly);
  out["coords"] = back.values;
  double round_trip = 0.0;
  if (coords) {
    for (int k = 0; k < poly.n - 3; ++k) {
      round_trip = std::max(round_trip, std::abs(back.values[k] - coords->values[k]));
    }
  } else {
    const auto again = systolica::polygon::sides_from_pentagon_coords(back);
    for (int k = 0; k < poly.n; ++k) {
      round_trip = std::max(round_trip, std::abs(again.sides[k] - poly.sides[k]));
    }
  }
  out["round_trip_error"] = round_trip;
  oracle.record(round_trip);
  emit("polygon", inputs, out, oracle, c);
  return angle_err <= tol && round_trip <= 1e-10 * std::max(1.0, poly.n * 1.0) ? kPass
                                                                                : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"systolica: systoles, shear Hessians and polygon spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  double tol = 0.0;
  app.add_option("--seed", common.seed, "Seed for sweeps (SYSTOLICA_SEED overrides)");
  auto* tol_opt = app.add_option("--tol", tol, "Override the per-check tolerance");
  app.add_option("--csv", common.csv, "Write sweep rows as CSV");
  app.add_option("-o,--output", common.output, "Write the report here instead of stdout");

  ExtremalArgs ea;
  auto* extremal = app.add_subcommand("extremal", "Solve an extreme-systole equation");
  extremal->add_option("--input", ea.input, "Signature JSON file ('-' for stdin)");
  extremal->add_option("--problem", ea.problem, "arcs or loops")
      ->check(CLI::IsMember({"arcs", "loops"}));
  extremal->add_option("--chi", ea.chi, "Euler characteristic (< 0)");
  extremal->add_option("--boundary", ea.boundary, "Boundary lengths, 0 for a cusp")->delimiter(',');
  extremal->add_option("--B", ea.B, "1-based indices of the boundary set B")->delimiter(',');
  extremal->add_option("--LB", ea.LB, "Total length of B (arc problems)");
  extremal->add_option("--convention", ea.convention, "half or printed")
      ->check(CLI::IsMember({"half", "printed"}));
  extremal->add_option("--method", ea.method, "bisection or newton")
      ->check(CLI::IsMember({"bisection", "newton"}));
  extremal->add_flag("--gap", ea.gap, "Add the diagonal-to-side certificate");

  std::string suite;
  int samples = 100;
  auto* verify = app.add_subcommand("verify", "Run an oracle sweep");
  verify->add_option("--suite", suite, "hessian, trig, polygon or variational")->required();
  verify->add_option("--samples", samples, "Number of seeded samples")->check(CLI::NonNegativeNumber);

  std::string family_path;
  auto* classify = app.add_subcommand("classify", "Classify a family of differentials");
  classify->add_option("family", family_path, "VectorFamily JSON file ('-' for stdin)")->required();

  std::string poly_input;
  std::vector<double> sides;
  std::vector<double> coords;
  auto* polygon = app.add_subcommand("polygon", "Realize sides or pentagon coordinates");
  polygon->add_option("--input", poly_input, "JSON with sides[] or coords[]");
  polygon->add_option("--sides", sides, "Side lengths")->delimiter(',');
  polygon->add_option("--coords", coords, "Pentagon coordinates")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*tol_opt) common.tol = tol;
  if (const char* env = std::getenv("SYSTOLICA_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: SYSTOLICA_SEED must be an unsigned integer\n";
      return kUsage;
    }
  }

  try {
    if (*extremal) return run_extremal(ea, common);
    if (*verify) return run_verify(suite, samples, common);
    if (*classify) return run_classify(family_path, common);
    if (*polygon) return run_polygon(poly_input, sides, coords, common);
  } catch (const systolica::InfeasibleSignature& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const systolica::NoPolygon& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const systolica::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
