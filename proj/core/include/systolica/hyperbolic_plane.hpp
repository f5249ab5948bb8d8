#pragma once

#include <complex>
#include <optional>
#include <utility>

namespace systolica {

using Complex = std::complex<double>;

// Points with y below this are rejected as ill-conditioned.
inline constexpr double kMinHeight = 1e-12;

class HPoint {
 public:
  HPoint(double x, double y);
  static HPoint from_complex(Complex z) { return HPoint(z.real(), z.imag()); }

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  Complex z() const noexcept { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

// Tangent vector with Euclidean components in the model. The hyperbolic norm
// is |(dx, dy)| / y(base).
struct HTangent {
  HPoint base;
  double dx = 0.0;
  double dy = 0.0;

  Complex w() const noexcept { return {dx, dy}; }
};

double inner(const HTangent& a, const HTangent& b);
double norm(const HTangent& v);
HTangent scaled(const HTangent& v, double s);
HTangent sum(const HTangent& a, const HTangent& b);
// Counterclockwise rotation by a quarter turn.
HTangent rotate_quarter(const HTangent& v);
// Unit tangent at p of the geodesic running to q.
HTangent unit_toward(const HPoint& p, const HPoint& q);
// Counterclockwise angle from a to b in [0, 2pi); same base point required.
double oriented_angle(const HTangent& a, const HTangent& b);

double dist(const HPoint& p, const HPoint& q);

struct AngleData {
  double psi;       // in [0, pi]
  int orientation;  // +1 when u lies counterclockwise from the direction to q
};
AngleData angle_data(const HPoint& p, const HPoint& q, const HTangent& u);

// Oriented complete geodesic, stored by its ideal endpoints. An endpoint at
// infinity is +inf.
class HGeodesic {
 public:
  enum class Kind { vertical, arc };

  static HGeodesic vertical(double x0, bool upward = true);
  // toward_right: travels from center - radius to center + radius.
  static HGeodesic arc(double center, double radius, bool toward_right = true);
  static HGeodesic from_endpoints(double from, double to);
  static HGeodesic through(const HPoint& p, const HPoint& q);
  static HGeodesic through(const HTangent& v);

  Kind kind() const noexcept;
  double from() const noexcept { return from_; }
  double to() const noexcept { return to_; }
  double x0() const;
  double center() const;
  double radius() const;
  HGeodesic reversed() const { return HGeodesic(to_, from_); }

 private:
  HGeodesic(double from, double to) : from_(from), to_(to) {}
  double from_;
  double to_;
};

bool is_infinite(double ideal) noexcept;

class HIsometry {
 public:
  // Coefficients are rescaled to determinant one; det <= 0 is rejected.
  HIsometry(double a, double b, double c, double d);
  static HIsometry identity() { return HIsometry(1, 0, 0, 1); }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

  HPoint apply(const HPoint& p) const;
  HTangent apply(const HTangent& v) const;
  double apply_ideal(double x) const;
  HGeodesic apply(const HGeodesic& g) const;

  HIsometry inverse() const;
  HIsometry operator*(const HIsometry& rhs) const;  // this after rhs

 private:
  double a_, b_, c_, d_;
};

// Maps the imaginary axis, oriented upward, onto g.
HIsometry axis_map(const HGeodesic& g);
HIsometry translate_along(const HGeodesic& g, double t);
// Counterclockwise rotation by phi about p.
HIsometry rotation_about(const HPoint& p, double phi);
// Sends i to p and the upward direction at i to the direction of Euclidean
// angle `angle` at p.
HIsometry frame(const HPoint& p, double angle);

// Point reached from v.base after hyperbolic length |v| along v.
HPoint exp_map(const HTangent& v);
// Point at signed distance t along g, measured from axis_map(g)(i).
HPoint point_along(const HGeodesic& g, double t);
// Unit tangent of g at the orthogonal projection of p onto g, attached at p.
// Meaningful for p on g.
HTangent direction_at(const HGeodesic& g, const HPoint& p);
// Arc-length coordinate of the projection of p onto g (origin fixed by g's
// axis map).
double geodesic_coordinate(const HGeodesic& g, const HPoint& p);
// Positive on the left of g.
double signed_distance(const HGeodesic& g, const HPoint& p);

// Velocity at p of the flow t -> translate_along(g, t).
HTangent killing_field(const HGeodesic& g, const HPoint& p);

std::optional<HPoint> intersect(const HGeodesic& g, const HGeodesic& h);

struct PerpendicularSegment {
  HPoint on_g;
  HPoint on_h;
  double length;
};
PerpendicularSegment common_perpendicular(const HGeodesic& g, const HGeodesic& h);

}  // namespace systolica
