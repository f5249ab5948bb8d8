#include "systolica/trigonometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "systolica/errors.hpp"

namespace systolica::trig {

namespace {

constexpr double kPi = std::numbers::pi;

void require_polygon_order(int n) {
  if (n < 3) throw InvalidArgument("polygon order n must be at least 3");
}

}  // namespace

double safe_acosh(double arg) {
  if (std::isnan(arg) || arg < 1.0 - 1e-10) {
    throw DegenerateConfiguration("arccosh argument below 1: " + std::to_string(arg));
  }
  if (arg < 1.0 + 1e-14) return 0.0;
  return std::acosh(arg);
}

double pentagon_perpendicular(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("pentagon sides must be positive");
  const double prod = std::sinh(a) * std::sinh(b);
  if (!(prod >= 1.0 + 1e-14) || !std::isfinite(prod)) {
    throw NoPentagon("sinh a sinh b <= 1: no right-angled pentagon");
  }
  return std::acosh(prod);
}

double regular_pentagon_side() { return std::acosh(0.5 * (1.0 + std::sqrt(5.0))); }

TrirectangleData TrirectangleData::make(double half_side, int n) {
  return {half_side, kPi / n, trirectangle_center(half_side, n)};
}

double TrirectangleData::residual() const {
  return std::cosh(center_distance) * std::sin(vertex_angle) - std::cosh(half_side);
}

double trirectangle_center(double h_side, int n) {
  require_polygon_order(n);
  if (!(h_side > 0.0)) throw InvalidArgument("trirectangle half side must be positive");
  return std::acosh(std::cosh(h_side) / std::sin(kPi / n));
}

double trirectangle_link(double half_side_next, double h_next) {
  return std::asinh(std::sinh(half_side_next) * std::cosh(h_next));
}

double diagonal_same_type(double h1, int k, int n) {
  require_polygon_order(n);
  if (k < 1 || k > n - 1) throw InvalidArgument("diagonal_same_type: need 1 <= k <= n-1");
  return 2.0 * safe_acosh(std::cosh(h1) * std::sin(k * kPi / n));
}

double mixed_diagonal_value(double h1, double h2, int k, int n) {
  require_polygon_order(n);
  if (k % 2 == 0 || k < 3 || k > 2 * n - 3) {
    throw InvalidArgument("diagonal_mixed_type: need odd k with 3 <= k <= 2n-3");
  }
  return -std::cosh(h1) * std::cosh(h2) * std::cos(k * kPi / n) +
         std::sinh(h1) * std::sinh(h2);
}

double diagonal_mixed_type(double h1, double h2, int k, int n) {
  return safe_acosh(mixed_diagonal_value(h1, h2, k, n));
}

double semiregular_partner(double l1, int n) {
  require_polygon_order(n);
  if (!(l1 > 0.0)) throw InvalidArgument("semiregular_partner: l1 must be positive");
  return 2.0 * std::asinh(std::cos(kPi / n) / std::sinh(0.5 * l1));
}

double equilateral_angle(double x) {
  if (!(x > 0.0)) throw InvalidArgument("equilateral_angle: x must be positive");
  return 2.0 * std::asin(1.0 / (2.0 * std::cosh(0.5 * x)));
}

}  // namespace systolica::trig
