#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace systolica::extremal {

enum class Problem { arcs, loops };
std::string to_string(Problem p);

// arcsinh(1 / (2 sinh(x/2))) in the hexagon term, or the printed
// arcsinh(1 / (2 sinh x)).
enum class ArcConvention { half_argument, as_printed };
enum class RootMethod { bisection, newton };

struct SurfaceSignature {
  int chi = -1;
  std::vector<double> boundary;  // b_1 .. b_k, 0 for a cusp
  std::vector<int> B;            // 1-based indices into boundary
  double L_B = 0.0;

  int k() const { return static_cast<int>(boundary.size()); }
  int l() const { return static_cast<int>(B.size()); }
  bool in_B(int index) const;  // 1-based
  bool B_full() const { return l() == k(); }
};

// arcs: (arcs, hexagons, bigons); loops: (loops, triangles, monogons).
struct Counts {
  int curves = 0;
  int cells = 0;
  int special = 0;
};

// Throws InvalidSignature when the signature is malformed or a count is
// negative.
void validate(const SurfaceSignature& sig, Problem problem);
Counts counts(const SurfaceSignature& sig, Problem problem);

// arcs: -2 chi = t + (k - l) and 2e = 3t + (k - l).
// loops: 1 - e + t = chi and 2e = 3t + k.
bool euler_certificate(const SurfaceSignature& sig, Problem problem);

double arc_residual(const SurfaceSignature& sig, double x,
                    ArcConvention conv = ArcConvention::half_argument);
double arc_residual_derivative(const SurfaceSignature& sig, double x,
                               ArcConvention conv = ArcConvention::half_argument);
double loop_residual(const SurfaceSignature& sig, double x);
double loop_residual_derivative(const SurfaceSignature& sig, double x);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Sign-change bracket with hi doubled from max(1, 2 lo) up to 2^10; throws
// InfeasibleSignature if none exists.
Bracket find_bracket(const std::function<double(double)>& f, double lo);

double bisect(const std::function<double(double)>& f, Bracket b, int* iterations = nullptr);
// Safeguarded Newton started at x0 inside the bracket.
double newton(const std::function<double(double)>& f, const std::function<double(double)>& df,
              Bracket b, double x0, int* iterations = nullptr);

// Decrease check on n evenly spaced points of [lo, hi].
bool strictly_decreasing(const std::function<double(double)>& f, Bracket b, int n = 1000);

struct ExtremeReport {
  Problem problem = Problem::arcs;
  double x = 0.0;
  double residual = 0.0;
  Counts counts;
  std::optional<double> bavard_equality_defect;
  Bracket bracket;
  int iterations = 0;
};

ExtremeReport solve_arc_extreme(const SurfaceSignature& sig,
                                ArcConvention conv = ArcConvention::half_argument,
                                RootMethod method = RootMethod::bisection);
ExtremeReport solve_loop_extreme(const SurfaceSignature& sig,
                                 RootMethod method = RootMethod::bisection);

// 2 sinh(x/2) sinh(-L_B / (12 chi)) - 1; requires B to be the full boundary.
double bavard_bound(double x, const SurfaceSignature& sig);

// Diagonal-to-side ratios over semi-regular 2n_i-gons with even sides x and
// odd sides semiregular_partner(x, n_i). Same-type diagonals are compared to
// the side they generalize (k = 1 is that side, ratio exactly 1); mixed
// diagonals to the mean of the two sides they join.
struct GapReport {
  double min_ratio = 0.0;            // over non-side diagonals
  double min_same_type_ratio = 0.0;  // +inf when there are none
  double min_mixed_ratio = 0.0;
  double side_ratio = 1.0;
  double side_formula_error = 0.0;   // |formula(k = 1) / side - 1|
  double min_chain_bound_margin = 0.0;  // min of mixed value / (2 cosh cosh) - 1
  int diagonals = 0;
};

GapReport systolic_gap_certificate(double x, std::span<const int> degrees);
// Hexagon decomposition from the arc counts of a full-B signature.
GapReport systolic_gap_certificate(const SurfaceSignature& sig, double x);

}  // namespace systolica::extremal
