// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "systolica/errors.hpp"
#include "systolica/extremal.hpp"
#include "systolica/trigonometry.hpp"
#include "systolica/verify.hpp"

namespace {

using namespace systolica;
namespace ex = systolica::extremal;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int id, const char* title, const Outcome& o) {
  std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome suite_outcome(const verify::SuiteResult& r) {
  Outcome o{r.passed() && r.checks_run() > 0, ""};
  o.detail = std::to_string(r.checks_run()) + " checks, max rel err " + fmt("%.3g", r.max_rel_err());
  if (!r.passed()) o.detail += ", worst " + r.worst()->name + " sample " + std::to_string(r.worst()->sample);
  return o;
}

Outcome criterion_hessian() {
  const auto all = verify::hessian({500, 7, std::nullopt});
  verify::SuiteResult r{all.suite, all.samples, all.seed, {}, {}};
  for (const char* p : {"endpoint_block", "first", "second", "mixed", "positive_definite", "isotropic",
                        "endpoint_forms"}) {
    r.append(all.filtered(p));
  }
  return suite_outcome(r);
}

Outcome criterion_kinematics() { return suite_outcome(verify::kinematics({200, 7, std::nullopt})); }

Outcome criterion_polygons() { return suite_outcome(verify::polygon({100, 1, std::nullopt})); }

Outcome criterion_trig() {
  Outcome o = suite_outcome(verify::trig({200, 1, std::nullopt}));
  // Deterministic chain-bound sweep over the semi-regular families.
  double worst = HUGE_VAL;
  int count = 0;
  for (int n = 3; n <= 8; ++n) {
    for (double l1 = 0.02; l1 < 8.0; l1 *= 1.1) {
      const double l2 = trig::semiregular_partner(l1, n);
      const double h1 = trig::trirectangle_center(0.5 * l2, n);
      const double h2 = trig::trirectangle_center(0.5 * l1, n);
      const double bound = 2.0 * std::cosh(0.5 * l1) * std::cosh(0.5 * l2);
      for (int k = 3; k <= 2 * n - 3; k += 2) {
        worst = std::min(worst, trig::mixed_diagonal_value(h1, h2, k, n) / bound - 1.0);
        ++count;
      }
    }
  }
  const bool chain = worst >= -1e-12;
  o.pass = o.pass && chain;
  o.detail += ", chain bound on " + std::to_string(count) + " diagonals, min margin " + fmt("%.3g", worst);
  return o;
}

// Random valid signature with at least one hexagon or triangle.
ex::SurfaceSignature random_signature(verify::Rng& rng, ex::Problem problem) {
  for (;;) {
    ex::SurfaceSignature sig;
    sig.chi = -rng.integer(1, 4);
    const int k = rng.integer(problem == ex::Problem::arcs ? 1 : 0, 4);
    for (int i = 0; i < k; ++i) sig.boundary.push_back(rng.integer(0, 3) == 0 ? 0.0 : rng.uniform(0.1, 1.5));
    if (problem == ex::Problem::arcs) {
      const int l = rng.integer(1, k);
      for (int i = 1; i <= l; ++i) sig.B.push_back(i);
      sig.L_B = rng.uniform(0.5, 20.0);
    }
    try {
      ex::validate(sig, problem);
      if (ex::counts(sig, problem).cells > 0) return sig;
    } catch (const InvalidSignature&) {
    }
  }
}

Outcome criterion_extremal() {
  Outcome o;
  const auto g2 = ex::solve_loop_extreme({-2, {}, {}, 0.0});
  const double g2_err = std::abs(g2.x - 2.0 * std::acosh(1.0 / (2.0 * std::sin(M_PI / 18))));
  const double L = 12.0 * std::asinh(0.5);
  const auto t = ex::solve_arc_extreme({-1, {0.0}, {1}, L});
  const double t_err = std::abs(t.x - 2.0 * std::asinh(1.0 / (2.0 * std::sinh(L / 12))));
  o.pass = g2_err < 1e-10 && t_err < 1e-10;

  verify::Rng rng(5);
  int euler = 0, bavard = 0;
  double bavard_worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto problem = s % 2 ? ex::Problem::arcs : ex::Problem::loops;
    const auto sig = random_signature(rng, problem);
    if (ex::euler_certificate(sig, problem)) ++euler;
  }
  for (int s = 0; s < 50; ++s) {
    auto sig = random_signature(rng, ex::Problem::arcs);
    sig.B.clear();
    for (int i = 1; i <= sig.k(); ++i) sig.B.push_back(i);
    try {
      const auto r = ex::solve_arc_extreme(sig);
      if (r.bavard_equality_defect && r.counts.special == 0) {
        bavard_worst = std::max(bavard_worst, std::abs(*r.bavard_equality_defect));
        ++bavard;
      }
    } catch (const InfeasibleSignature&) {
    }
  }
  o.pass = o.pass && euler == 50 && bavard > 0 && bavard_worst < 1e-9;
  o.detail = fmt("genus 2 err %.2g, one-holed torus err %.2g", g2_err, t_err) + ", Euler " +
             std::to_string(euler) + "/50, Bavard defect " + fmt("%.2g", bavard_worst) + " over " +
             std::to_string(bavard) + " roots";
  return o;
}

Outcome criterion_variational() { return suite_outcome(verify::variational({500, 1, std::nullopt})); }

Outcome criterion_gap() {
  Outcome o;
  verify::Rng rng(9);
  double min_ratio = HUGE_VAL;
  bool side_exact = true;
  int roots = 0;
  for (int s = 0; s < 40; ++s) {
    auto sig = random_signature(rng, ex::Problem::arcs);
    sig.B.clear();
    for (int i = 1; i <= sig.k(); ++i) sig.B.push_back(i);
    const auto r = ex::solve_arc_extreme(sig);
    const auto g = ex::systolic_gap_certificate(sig, r.x);
    min_ratio = std::min(min_ratio, g.min_ratio);
    side_exact = side_exact && g.side_ratio == 1.0 && g.side_formula_error < 1e-12;
    ++roots;
  }
  o.pass = roots > 0 && min_ratio > 1.0 && side_exact;
  o.detail = std::to_string(roots) + " decompositions, min ratio " + fmt("%.6f", min_ratio) +
             (side_exact ? ", k = 1 ratio exactly 1" : ", k = 1 ratio off");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"hessian certification", criterion_hessian}, {"kinematics", criterion_kinematics},
      {"polygon spaces", criterion_polygons},       {"trig identities", criterion_trig},
      {"extremal solvers", criterion_extremal},     {"variational", criterion_variational},
      {"systolic gap", criterion_gap}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(static_cast<int>(i + 1), criteria[i].first, o);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
