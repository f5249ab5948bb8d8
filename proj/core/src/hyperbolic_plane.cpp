#include "systolica/hyperbolic_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "systolica/errors.hpp"

namespace systolica {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_base(const HTangent& a, const HTangent& b) {
  const double scale = std::max({1.0, std::abs(a.base.x()), a.base.y()});
  if (std::abs(a.base.x() - b.base.x()) > 1e-9 * scale ||
      std::abs(a.base.y() - b.base.y()) > 1e-9 * scale) {
    throw InvalidArgument("tangent vectors based at different points");
  }
}

Complex mobius(const HIsometry& m, Complex z) {
  return (m.a() * z + m.b()) / (m.c() * z + m.d());
}

}  // namespace

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw InvalidArgument("non-finite point coordinate");
  }
  if (y < kMinHeight) {
    throw InvalidArgument("point below the conditioning threshold y < 1e-12");
  }
}

double inner(const HTangent& a, const HTangent& b) {
  require_same_base(a, b);
  const double y = a.base.y();
  return (a.dx * b.dx + a.dy * b.dy) / (y * y);
}

double norm(const HTangent& v) { return std::hypot(v.dx, v.dy) / v.base.y(); }

HTangent scaled(const HTangent& v, double s) { return {v.base, v.dx * s, v.dy * s}; }

HTangent sum(const HTangent& a, const HTangent& b) {
  require_same_base(a, b);
  return {a.base, a.dx + b.dx, a.dy + b.dy};
}

HTangent rotate_quarter(const HTangent& v) { return {v.base, -v.dy, v.dx}; }

HTangent unit_toward(const HPoint& p, const HPoint& q) {
  const Complex dir = Complex(0, 1) * (q.z() - p.z()) / (q.z() - std::conj(p.z()));
  const double len = std::abs(dir);
  if (len == 0.0) {
    throw DegenerateConfiguration("unit_toward: coincident points");
  }
  const Complex w = dir / len * p.y();
  return {p, w.real(), w.imag()};
}

double oriented_angle(const HTangent& a, const HTangent& b) {
  require_same_base(a, b);
  double ang = std::atan2(a.dx * b.dy - a.dy * b.dx, a.dx * b.dx + a.dy * b.dy);
  if (ang < 0) ang += kTwoPi;
  if (ang >= kTwoPi) ang -= kTwoPi;
  return ang;
}

double dist(const HPoint& p, const HPoint& q) {
  const double chord = std::abs(p.z() - q.z());
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y() * q.y())));
}

AngleData angle_data(const HPoint& p, const HPoint& q, const HTangent& u) {
  if (p.x() == q.x() && p.y() == q.y()) {
    throw DegenerateConfiguration("angle_data: p = q");
  }
  if (u.dx == 0.0 && u.dy == 0.0) {
    throw InvalidArgument("angle_data: zero tangent");
  }
  const HTangent t = unit_toward(p, q);
  const double cross = t.dx * u.dy - t.dy * u.dx;
  const double dot = t.dx * u.dx + t.dy * u.dy;
  const double signed_angle = std::atan2(cross, dot);
  const int orientation = signed_angle > 0 ? 1 : (signed_angle < 0 ? -1 : 0);
  return {std::abs(signed_angle), orientation};
}

bool is_infinite(double ideal) noexcept { return std::isinf(ideal); }

HGeodesic HGeodesic::vertical(double x0, bool upward) {
  if (!std::isfinite(x0)) throw InvalidArgument("vertical geodesic: x0 not finite");
  return upward ? HGeodesic(x0, kInf) : HGeodesic(kInf, x0);
}

HGeodesic HGeodesic::arc(double center, double radius, bool toward_right) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center)) {
    throw InvalidArgument("arc geodesic: radius must be positive");
  }
  const double l = center - radius;
  const double r = center + radius;
  return toward_right ? HGeodesic(l, r) : HGeodesic(r, l);
}

HGeodesic HGeodesic::from_endpoints(double from, double to) {
  if (std::isnan(from) || std::isnan(to)) throw InvalidArgument("geodesic: NaN endpoint");
  if (from == to || (is_infinite(from) && is_infinite(to))) {
    throw InvalidArgument("geodesic: coincident endpoints");
  }
  if (from == -kInf) from = kInf;
  if (to == -kInf) to = kInf;
  return HGeodesic(from, to);
}

HGeodesic HGeodesic::through(const HPoint& p, const HPoint& q) {
  return through(unit_toward(p, q));
}

HGeodesic HGeodesic::through(const HTangent& v) {
  if (v.dx == 0.0 && v.dy == 0.0) throw InvalidArgument("geodesic through zero tangent");
  const HIsometry f = frame(v.base, std::atan2(v.dy, v.dx));
  // Endpoints this far out are the vertical line up to rounding.
  const double far = 1e12 * (std::abs(v.base.x()) + v.base.y());
  auto clip = [&](double e) { return std::abs(e) > far ? kInf : e; };
  return from_endpoints(clip(f.apply_ideal(0.0)), clip(f.apply_ideal(kInf)));
}

HGeodesic::Kind HGeodesic::kind() const noexcept {
  return (is_infinite(from_) || is_infinite(to_)) ? Kind::vertical : Kind::arc;
}

double HGeodesic::x0() const {
  if (kind() != Kind::vertical) throw InvalidArgument("x0 of an arc geodesic");
  return is_infinite(from_) ? to_ : from_;
}

double HGeodesic::center() const {
  if (kind() != Kind::arc) throw InvalidArgument("center of a vertical geodesic");
  return 0.5 * (from_ + to_);
}

double HGeodesic::radius() const {
  if (kind() != Kind::arc) throw InvalidArgument("radius of a vertical geodesic");
  return 0.5 * std::abs(to_ - from_);
}

HIsometry::HIsometry(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw InvalidArgument("isometry: determinant must be positive");
  }
  const double s = 1.0 / std::sqrt(det);
  a_ = a * s;
  b_ = b * s;
  c_ = c * s;
  d_ = d * s;
}

HPoint HIsometry::apply(const HPoint& p) const { return HPoint::from_complex(mobius(*this, p.z())); }

HTangent HIsometry::apply(const HTangent& v) const {
  const Complex den = c_ * v.base.z() + d_;
  const Complex w = v.w() / (den * den);
  return {apply(v.base), w.real(), w.imag()};
}

double HIsometry::apply_ideal(double x) const {
  if (is_infinite(x)) return c_ == 0.0 ? kInf : a_ / c_;
  const double den = c_ * x + d_;
  if (den == 0.0) return kInf;
  return (a_ * x + b_) / den;
}

HGeodesic HIsometry::apply(const HGeodesic& g) const {
  return HGeodesic::from_endpoints(apply_ideal(g.from()), apply_ideal(g.to()));
}

HIsometry HIsometry::inverse() const { return HIsometry(d_, -b_, -c_, a_); }

HIsometry HIsometry::operator*(const HIsometry& r) const {
  return HIsometry(a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_,
                   c_ * r.b_ + d_ * r.d_);
}

HIsometry axis_map(const HGeodesic& g) {
  const double a = g.from();
  const double b = g.to();
  if (is_infinite(b)) return HIsometry(1, a, 0, 1);
  if (is_infinite(a)) return HIsometry(b, -1, 1, 0);
  const double s = b > a ? 1.0 : -1.0;
  return HIsometry(s * b, a, s, 1);
}

HIsometry translate_along(const HGeodesic& g, double t) {
  const HIsometry m = axis_map(g);
  const double e = std::exp(0.5 * t);
  return m * HIsometry(e, 0, 0, 1.0 / e) * m.inverse();
}

HIsometry rotation_about(const HPoint& p, double phi) {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const double r = std::sqrt(p.y());
  const HIsometry to_p(r, p.x() / r, 0, 1.0 / r);
  return to_p * HIsometry(c, s, -s, c) * to_p.inverse();
}

HIsometry frame(const HPoint& p, double angle) {
  const double phi = angle - 0.5 * std::numbers::pi;
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const double r = std::sqrt(p.y());
  return HIsometry(r, p.x() / r, 0, 1.0 / r) * HIsometry(c, s, -s, c);
}

HPoint exp_map(const HTangent& v) {
  const double len = norm(v);
  if (len == 0.0) return v.base;
  return frame(v.base, std::atan2(v.dy, v.dx)).apply(HPoint(0.0, std::exp(len)));
}

HPoint point_along(const HGeodesic& g, double t) {
  return axis_map(g).apply(HPoint(0.0, std::exp(t)));
}

HTangent direction_at(const HGeodesic& g, const HPoint& p) {
  const HIsometry m = axis_map(g);
  const HPoint foot(0.0, std::abs(mobius(m.inverse(), p.z())));
  const HTangent t = m.apply(HTangent{foot, 0.0, foot.y()});
  const double s = p.y() / std::hypot(t.dx, t.dy);
  return {p, t.dx * s, t.dy * s};
}

double geodesic_coordinate(const HGeodesic& g, const HPoint& p) {
  return std::log(std::abs(mobius(axis_map(g).inverse(), p.z())));
}

double signed_distance(const HGeodesic& g, const HPoint& p) {
  const Complex w = mobius(axis_map(g).inverse(), p.z());
  return -std::asinh(w.real() / w.imag());
}

HTangent killing_field(const HGeodesic& g, const HPoint& p) {
  const HIsometry m = axis_map(g);
  const HIsometry n = m.inverse();
  // Generator m * diag(1/2, -1/2) * m^{-1}, written [[al, be], [ga, -al]].
  const double al = 0.5 * (m.a() * n.a() - m.b() * n.c());
  const double be = 0.5 * (m.a() * n.b() - m.b() * n.d());
  const double ga = 0.5 * (m.c() * n.a() - m.d() * n.c());
  const Complex z = p.z();
  const Complex w = be + 2.0 * al * z - ga * z * z;
  return {p, w.real(), w.imag()};
}

std::optional<HPoint> intersect(const HGeodesic& g, const HGeodesic& h) {
  const HIsometry m = axis_map(g);
  const HIsometry n = m.inverse();
  const double a = n.apply_ideal(h.from());
  const double b = n.apply_ideal(h.to());
  if (is_infinite(a) || is_infinite(b) || !(a * b < 0.0)) return std::nullopt;
  return m.apply(HPoint(0.0, std::sqrt(-a * b)));
}

PerpendicularSegment common_perpendicular(const HGeodesic& g, const HGeodesic& h) {
  const HIsometry m = axis_map(g);
  const HIsometry n = m.inverse();
  const double a = n.apply_ideal(h.from());
  const double b = n.apply_ideal(h.to());
  if (is_infinite(a) || is_infinite(b) || a == 0.0 || b == 0.0) {
    throw NoPerpendicular("common_perpendicular: geodesics share an ideal endpoint");
  }
  const double scale = std::max(std::abs(a), std::abs(b));
  if (std::abs(a) < 1e-14 * scale || std::abs(b) < 1e-14 * scale ||
      std::abs(a - b) < 1e-14 * scale) {
    throw NoPerpendicular("common_perpendicular: asymptotic geodesics");
  }
  if (!(a * b > 0.0)) {
    throw NoPerpendicular("common_perpendicular: geodesics intersect");
  }
  const double r2 = a * b;
  const double fx = 2.0 * r2 / (a + b);
  const double fy = std::sqrt(r2) * std::abs(a - b) / std::abs(a + b);
  const double ra = std::sqrt(std::abs(a));
  const double rb = std::sqrt(std::abs(b));
  // Distance from the axis to the semicircle over [a, b], same-sign endpoints.
  const double length = std::abs(std::log((rb + ra) / std::abs(rb - ra)));
  const HPoint on_g = m.apply(HPoint(0.0, std::sqrt(r2)));
  const HPoint on_h = m.apply(HPoint(fx, fy));
  return {on_g, on_h, length};
}

}  // namespace systolica
