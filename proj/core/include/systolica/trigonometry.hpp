#pragma once

namespace systolica::trig {

// arccosh with a touching tolerance: arguments in [1 - 1e-10, 1 + 1e-14) map
// to 0, anything lower throws DegenerateConfiguration.
double safe_acosh(double arg);

// Side f opposite the right angle between sides a and b of a right-angled
// pentagon: cosh f = sinh a sinh b.
double pentagon_perpendicular(double a, double b);

// Side of the regular right-angled pentagon, cosh s = golden ratio.
double regular_pentagon_side();

struct TrirectangleData {
  double half_side;
  double vertex_angle;
  double center_distance;

  static TrirectangleData make(double half_side, int n);
  double residual() const;
};

// Center-to-side distance h with cosh h = cosh(h_side) / sin(pi/n).
double trirectangle_center(double h_side, int n);
// h_j from the adjacent quantities: sinh h_j = sinh(half_side_next) cosh h_next.
double trirectangle_link(double half_side_next, double h_next);

// Distance between two sides of the same type k steps apart.
double diagonal_same_type(double h1, int k, int n);

// Right-hand side -cosh h1 cosh h2 cos(k pi/n) + sinh h1 sinh h2. This is
// cosh of the distance between the two sides.
double mixed_diagonal_value(double h1, double h2, int k, int n);
double diagonal_mixed_type(double h1, double h2, int k, int n);

// l2 with sinh(l1/2) sinh(l2/2) = cos(pi/n).
double semiregular_partner(double l1, int n);

// Vertex angle of the equilateral triangle with side x.
double equilateral_angle(double x);

}  // namespace systolica::trig
