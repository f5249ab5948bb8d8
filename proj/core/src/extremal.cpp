#include "systolica/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "systolica/errors.hpp"
#include "systolica/trigonometry.hpp"

namespace systolica::extremal {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double max_boundary(const SurfaceSignature& sig) {
  double m = 0.0;
  for (double b : sig.boundary) m = std::max(m, b);
  return m;
}

}  // namespace

std::string to_string(Problem p) { return p == Problem::arcs ? "arcs" : "loops"; }

bool SurfaceSignature::in_B(int index) const {
  return std::find(B.begin(), B.end(), index) != B.end();
}

void validate(const SurfaceSignature& sig, Problem problem) {
  if (sig.chi >= 0) throw InvalidSignature("Euler characteristic must be negative");
  for (double b : sig.boundary) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw InvalidSignature("boundary lengths must be finite and >= 0");
    }
  }
  std::set<int> seen;
  for (int i : sig.B) {
    if (i < 1 || i > sig.k()) throw InvalidSignature("B index out of range");
    if (!seen.insert(i).second) throw InvalidSignature("B index repeated");
  }
  if (problem == Problem::arcs) {
    if (sig.l() < 1) throw InvalidSignature("arc problems need a nonempty B");
    if (!(sig.L_B > 0.0) || !std::isfinite(sig.L_B)) {
      throw InvalidSignature("arc problems need L_B > 0");
    }
  }
  const int k = sig.k();
  const int l = sig.l();
  const bool negative =
      problem == Problem::arcs
          ? (-3 * sig.chi - (k - l) < 0 || -2 * sig.chi - (k - l) < 0)
          : (-3 * sig.chi + 3 - k < 0 || -2 * sig.chi + 2 - k < 0);
  if (negative) throw InvalidSignature("negative count for this problem");
}

Counts counts(const SurfaceSignature& sig, Problem problem) {
  validate(sig, problem);
  const int k = sig.k();
  const int l = sig.l();
  if (problem == Problem::arcs) {
    return {-3 * sig.chi - (k - l), -2 * sig.chi - (k - l), k - l};
  }
  return {-3 * sig.chi + 3 - k, -2 * sig.chi + 2 - k, k};
}

bool euler_certificate(const SurfaceSignature& sig, Problem problem) {
  const Counts c = counts(sig, problem);
  if (problem == Problem::arcs) {
    return -2 * sig.chi == c.cells + c.special && 2 * c.curves == 3 * c.cells + c.special;
  }
  return 1 - c.curves + c.cells == sig.chi && 2 * c.curves == 3 * c.cells + c.special;
}

double arc_residual(const SurfaceSignature& sig, double x, ArcConvention conv) {
  const Counts c = counts(sig, Problem::arcs);
  const double sh = std::sinh(0.5 * x);
  const double hex_arg = conv == ArcConvention::half_argument ? 1.0 / (2.0 * sh)
                                                              : 1.0 / (2.0 * std::sinh(x));
  double r = 6.0 * c.cells * std::asinh(hex_arg) - sig.L_B;
  for (int i = 1; i <= sig.k(); ++i) {
    if (!sig.in_B(i)) r += 2.0 * std::asinh(std::cosh(0.5 * sig.boundary[i - 1]) / sh);
  }
  return r;
}

double arc_residual_derivative(const SurfaceSignature& sig, double x, ArcConvention conv) {
  const Counts c = counts(sig, Problem::arcs);
  const double sh = std::sinh(0.5 * x);
  const double ch = std::cosh(0.5 * x);
  double g, dg;
  if (conv == ArcConvention::half_argument) {
    g = 1.0 / (2.0 * sh);
    dg = -ch / (4.0 * sh * sh);
  } else {
    g = 1.0 / (2.0 * std::sinh(x));
    dg = -std::cosh(x) / (2.0 * std::sinh(x) * std::sinh(x));
  }
  double d = 6.0 * c.cells * dg / std::sqrt(1.0 + g * g);
  for (int i = 1; i <= sig.k(); ++i) {
    if (sig.in_B(i)) continue;
    const double cb = std::cosh(0.5 * sig.boundary[i - 1]);
    const double gb = cb / sh;
    const double dgb = -cb * ch / (2.0 * sh * sh);
    d += 2.0 * dgb / std::sqrt(1.0 + gb * gb);
  }
  return d;
}

double loop_residual(const SurfaceSignature& sig, double x) {
  const Counts c = counts(sig, Problem::loops);
  const double ch = std::cosh(0.5 * x);
  double r = 6.0 * c.cells * std::asin(1.0 / (2.0 * ch)) - 2.0 * kPi;
  for (double b : sig.boundary) r += 2.0 * std::asin(std::min(1.0, std::cosh(0.5 * b) / ch));
  return r;
}

double loop_residual_derivative(const SurfaceSignature& sig, double x) {
  const Counts c = counts(sig, Problem::loops);
  const double ch = std::cosh(0.5 * x);
  const double sh = std::sinh(0.5 * x);
  const double g = 1.0 / (2.0 * ch);
  double d = 6.0 * c.cells * (-sh / (4.0 * ch * ch)) / std::sqrt(1.0 - g * g);
  for (double b : sig.boundary) {
    const double cb = std::cosh(0.5 * b);
    const double gb = cb / ch;
    const double rest = 1.0 - gb * gb;
    if (rest <= 0.0) return -kInf;
    d += 2.0 * (-cb * sh / (2.0 * ch * ch)) / std::sqrt(rest);
  }
  return d;
}

Bracket find_bracket(const std::function<double(double)>& f, double lo) {
  const double flo = f(lo);
  if (!(flo > 0.0)) {
    throw InfeasibleSignature("residual is not positive at the lower end of the feasible ray");
  }
  double hi = std::max(1.0, 2.0 * lo);
  while (!(f(hi) < 0.0)) {
    if (hi >= 1024.0) throw InfeasibleSignature("no sign change below x = 2^10");
    hi = std::min(2.0 * hi, 1024.0);
  }
  return {lo, hi};
}

double bisect(const std::function<double(double)>& f, Bracket b, int* iterations) {
  double lo = b.lo;
  double hi = b.hi;
  int it = 0;
  while (it < 400) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    (fm > 0.0 ? lo : hi) = mid;
    ++it;
  }
  if (iterations) *iterations = it;
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

double newton(const std::function<double(double)>& f, const std::function<double(double)>& df,
              Bracket b, double x0, int* iterations) {
  double lo = b.lo;
  double hi = b.hi;
  double x = std::clamp(x0, lo, hi);
  int it = 0;
  for (; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) break;
    (fx > 0.0 ? lo : hi) = x;
    const double d = df(x);
    double next = (std::isfinite(d) && d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  if (iterations) *iterations = it;
  return x;
}

bool strictly_decreasing(const std::function<double(double)>& f, Bracket b, int n) {
  double prev = f(b.lo);
  for (int i = 1; i < n; ++i) {
    const double x = b.lo + (b.hi - b.lo) * i / (n - 1);
    const double v = f(x);
    if (!(v < prev)) return false;
    prev = v;
  }
  return true;
}

ExtremeReport solve_arc_extreme(const SurfaceSignature& sig, ArcConvention conv,
                                RootMethod method) {
  ExtremeReport r;
  r.problem = Problem::arcs;
  r.counts = counts(sig, Problem::arcs);
  auto f = [&](double x) { return arc_residual(sig, x, conv); };
  auto df = [&](double x) { return arc_residual_derivative(sig, x, conv); };
  r.bracket = find_bracket(f, 1e-12);
  r.x = method == RootMethod::bisection
            ? bisect(f, r.bracket, &r.iterations)
            : newton(f, df, r.bracket, 0.5 * (r.bracket.lo + r.bracket.hi), &r.iterations);
  r.residual = f(r.x);
  if (sig.B_full()) r.bavard_equality_defect = bavard_bound(r.x, sig);
  return r;
}

ExtremeReport solve_loop_extreme(const SurfaceSignature& sig, RootMethod method) {
  ExtremeReport r;
  r.problem = Problem::loops;
  r.counts = counts(sig, Problem::loops);
  auto f = [&](double x) { return loop_residual(sig, x); };
  auto df = [&](double x) { return loop_residual_derivative(sig, x); };
  r.bracket = find_bracket(f, max_boundary(sig) + 1e-12);
  r.x = method == RootMethod::bisection
            ? bisect(f, r.bracket, &r.iterations)
            : newton(f, df, r.bracket, 0.5 * (r.bracket.lo + r.bracket.hi), &r.iterations);
  r.residual = f(r.x);
  return r;
}

double bavard_bound(double x, const SurfaceSignature& sig) {
  if (sig.chi >= 0) throw InvalidSignature("Euler characteristic must be negative");
  if (!sig.B_full()) throw InvalidSignature("Bavard bound needs B to be the full boundary");
  return 2.0 * std::sinh(0.5 * x) * std::sinh(-sig.L_B / (12.0 * sig.chi)) - 1.0;
}

GapReport systolic_gap_certificate(double x, std::span<const int> degrees) {
  GapReport g;
  g.min_ratio = kInf;
  g.min_same_type_ratio = kInf;
  g.min_mixed_ratio = kInf;
  g.min_chain_bound_margin = kInf;
  for (int n : degrees) {
    const double l2 = x;
    const double l1 = trig::semiregular_partner(x, n);
    const double h1 = trig::trirectangle_center(0.5 * l2, n);
    const double h2 = trig::trirectangle_center(0.5 * l1, n);
    // Sides of type 1 are k steps apart among themselves; k = 1 and k = n-1
    // are separated by a single side of the other type.
    const double sides[2] = {l2, l1};
    const double hs[2] = {h1, h2};
    for (int type = 0; type < 2; ++type) {
      for (int k = 1; k <= n - 1; ++k) {
        const double delta = trig::diagonal_same_type(hs[type], k, n);
        const double ratio = delta / sides[type];
        ++g.diagonals;
        if (k == 1 || k == n - 1) {
          g.side_formula_error = std::max(g.side_formula_error, std::abs(ratio - 1.0));
          continue;
        }
        g.min_same_type_ratio = std::min(g.min_same_type_ratio, ratio);
      }
    }
    const double bound = 2.0 * std::cosh(0.5 * l1) * std::cosh(0.5 * l2);
    for (int k = 3; k <= 2 * n - 3; k += 2) {
      const double value = trig::mixed_diagonal_value(h1, h2, k, n);
      const double delta = trig::safe_acosh(value);
      ++g.diagonals;
      g.min_mixed_ratio = std::min(g.min_mixed_ratio, delta / (0.5 * (l1 + l2)));
      g.min_chain_bound_margin = std::min(g.min_chain_bound_margin, value / bound - 1.0);
    }
  }
  g.min_ratio = std::min(g.min_same_type_ratio, g.min_mixed_ratio);
  return g;
}

GapReport systolic_gap_certificate(const SurfaceSignature& sig, double x) {
  const Counts c = counts(sig, Problem::arcs);
  if (c.special != 0) {
    throw InvalidSignature("gap certificate needs a hexagon-only decomposition (k = l)");
  }
  const std::vector<int> degrees(c.cells, 3);
  return systolic_gap_certificate(x, degrees);
}

}  // namespace systolica::extremal
