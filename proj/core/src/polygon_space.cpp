#include "systolica/polygon_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "systolica/errors.hpp"
#include "systolica/trigonometry.hpp"

namespace systolica::polygon {

namespace {

constexpr double kPi = std::numbers::pi;

int wrap_index(int i, int n) { return ((i - 1) % n + n) % n; }

double coth(double x) { return 1.0 / std::tanh(x); }

double acosh_checked(double arg, int index) {
  if (!(arg > 1.0) || !std::isfinite(arg)) {
    throw NoPolygon("inadmissible pentagon at coordinate index " + std::to_string(index), index);
  }
  return std::acosh(arg);
}

void require_sides(std::span<const double> sides, std::size_t minimum = 5) {
  if (sides.size() < minimum) {
    throw InvalidArgument("right-angled polygon needs at least " + std::to_string(minimum) +
                          " sides");
  }
  for (double s : sides) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("side lengths must be positive");
  }
}

double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  return a - kPi;
}

}  // namespace

double MarkedRightPolygon::side(int i) const { return sides.at(wrap_index(i, n)); }

const HPoint& MarkedRightPolygon::vertex(int i) const {
  if (!vertices) throw PreconditionError("polygon has no realization");
  return vertices->at(wrap_index(i, n));
}

PolygonChain::PolygonChain(std::vector<HPoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) throw InvalidArgument("polygon chain needs at least 3 vertices");
  for (std::size_t a = 0; a < vertices_.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices_.size(); ++b) {
      if (vertices_[a].x() == vertices_[b].x() && vertices_[a].y() == vertices_[b].y()) {
        throw DegenerateConfiguration("polygon chain: coincident vertices");
      }
    }
  }
}

const HPoint& PolygonChain::vertex(int i) const {
  return vertices_[wrap_index(i, size())];
}

SemiRegularPoint SemiRegularPoint::from_l1(double l1, int n) {
  return {n, l1, trig::semiregular_partner(l1, n)};
}

double SemiRegularPoint::defect() const {
  return std::sinh(0.5 * l1) * std::sinh(0.5 * l2) - std::cos(kPi / n);
}

MarkedRightPolygon SemiRegularPoint::expand() const {
  std::vector<double> sides(2 * n);
  for (int j = 0; j < 2 * n; ++j) sides[j] = (j % 2 == 0) ? l1 : l2;
  return realize(sides);
}

MarkedRightPolygon sides_from_pentagon_coords(const PentagonCoords& c) {
  const int n = c.n;
  if (n < 5) throw InvalidArgument("pentagon coordinates need n >= 5");
  if (static_cast<int>(c.values.size()) != n - 3) {
    throw InvalidArgument("pentagon coordinates: expected n - 3 values");
  }
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    if (!(c.values[k] > 0.0) || !std::isfinite(c.values[k])) {
      throw NoPolygon("non-positive pentagon coordinate at index " + std::to_string(k + 1),
                      static_cast<int>(k + 1));
    }
  }

  std::vector<double> l(n + 1, 0.0);  // 1-based
  if (n == 5) {
    l[3] = c.values[0];
    l[4] = c.values[1];
    l[1] = acosh_checked(std::sinh(l[3]) * std::sinh(l[4]), 1);
    l[2] = std::acosh(coth(l[1]) * coth(l[3]));
    l[5] = std::acosh(coth(l[4]) * coth(l[1]));
  } else {
    const double l3 = c.values[0];
    const double ln1 = c.values.back();
    auto h = [&](int i) { return c.values[i - 3]; };  // h_4 .. h_{n-2}

    l[3] = l3;
    l[n - 1] = ln1;
    double side1 = 0.0;

    // First pentagon: [x1, l2, l3, y4, h4].
    const double y4 = std::acosh(coth(l3) * coth(h(4)));
    l[2] = std::acosh(std::sinh(y4) * std::sinh(h(4)));
    side1 += std::acosh(std::sinh(l3) * std::sinh(y4));
    double head = y4;  // part of side i between vertex (i-1,i) and the foot of h_i

    // Middle pentagons: [x, h_i, z_i, w_{i+1}, h_{i+1}].
    for (int i = 4; i < n - 2; ++i) {
      const double x = std::acosh(coth(h(i)) * coth(h(i + 1)));
      const double z = std::acosh(std::sinh(h(i + 1)) * std::sinh(x));
      const double w = std::acosh(std::sinh(x) * std::sinh(h(i)));
      l[i] = head + z;
      side1 += x;
      head = w;
    }

    // Last pentagon: [x, h_{n-2}, z, l_{n-1}, l_n].
    const double hl = h(n - 2);
    const double z = std::acosh(coth(hl) * coth(ln1));
    l[n - 2] = head + z;
    l[n] = std::acosh(std::sinh(hl) * std::sinh(z));
    side1 += std::acosh(std::sinh(z) * std::sinh(ln1));
    l[1] = side1;
  }
  std::vector<double> sides(l.begin() + 1, l.end());
  return realize(sides);
}

PentagonCoords pentagon_coords(const MarkedRightPolygon& p) {
  const int n = p.n;
  require_sides(p.sides);
  PentagonCoords c{n, {}};
  if (n == 5) {
    c.values = {p.side(3), p.side(4)};
    return c;
  }
  c.values.push_back(p.side(3));
  double h = acosh_checked(std::sinh(p.side(2)) * std::sinh(p.side(3)), 2);
  double w = std::acosh(coth(p.side(3)) * coth(h));
  c.values.push_back(h);
  for (int i = 4; i < n - 2; ++i) {
    const double z = p.side(i) - w;
    if (!(z > 0.0)) {
      throw NoPolygon("side lengths do not bound a right-angled polygon at side " +
                          std::to_string(i), i);
    }
    const double next = acosh_checked(std::sinh(h) * std::sinh(z), i + 1);
    w = std::acosh(coth(z) * coth(next));
    h = next;
    c.values.push_back(h);
  }
  c.values.push_back(p.side(n - 1));
  return c;
}

MarkedRightPolygon realize(std::span<const double> sides) {
  require_sides(sides, 3);
  const int n = static_cast<int>(sides.size());
  const HPoint origin(0.0, 1.0);
  const HIsometry quarter = rotation_about(origin, 0.5 * kPi);

  HIsometry f = HIsometry::identity();
  std::vector<HPoint> vertices;
  vertices.reserve(n);
  for (double s : sides) {
    vertices.push_back(f.apply(origin));
    const double e = std::exp(0.5 * s);
    f = f * HIsometry(e, 0, 0, 1.0 / e) * quarter;
  }

  const HTangent up{origin, 0.0, 1.0};
  const HTangent moved = f.apply(up);
  const double turn = wrap_angle(std::atan2(moved.dy, moved.dx) - 0.5 * kPi);
  MarkedRightPolygon p;
  p.n = n;
  p.sides.assign(sides.begin(), sides.end());
  p.vertices = std::move(vertices);
  p.closure_defect = dist(f.apply(origin), origin) + std::abs(turn);
  return p;
}

double interior_angle(const MarkedRightPolygon& p, int i) {
  const HPoint& v = p.vertex(i);
  return oriented_angle(unit_toward(v, p.vertex(i + 1)), unit_toward(v, p.vertex(i - 1)));
}

std::vector<double> tangent_u(const MarkedRightPolygon& p, int i) {
  const int n = p.n;
  if (n < 5 || static_cast<int>(p.sides.size()) != n) {
    throw InvalidArgument("tangent_u: polygon needs n >= 5 sides");
  }
  const double li = p.side(i);
  const double lj = p.side(i + 1);
  std::vector<double> u(n, 0.0);
  u[wrap_index(i - 1, n)] = -std::tanh(lj) / std::sinh(li);
  u[wrap_index(i, n)] = 1.0;
  u[wrap_index(i + 1, n)] = -std::tanh(lj) / std::tanh(li);
  u[wrap_index(i + 2, n)] = 1.0 / std::cosh(lj);
  return u;
}

ChainDifferentials::ChainDifferentials(const PolygonChain& chain) {
  const int l = chain.size();
  lengths_.resize(l);
  angles_.resize(l);
  U_.reserve(l);
  V_.reserve(l);
  for (int i = 1; i <= l; ++i) {
    const HPoint& x = chain.vertex(i);
    lengths_[i - 1] = dist(x, chain.vertex(i + 1));
    U_.push_back(scaled(unit_toward(x, chain.vertex(i - 1)), -1.0));
    V_.push_back(scaled(unit_toward(x, chain.vertex(i + 1)), -1.0));
    angles_[i - 1] = oriented_angle(U_.back(), V_.back());
  }
}

int ChainDifferentials::wrap(int i) const { return wrap_index(i, size()); }
double ChainDifferentials::length(int i) const { return lengths_[wrap(i)]; }
double ChainDifferentials::angle(int i) const { return angles_[wrap(i)]; }
const HTangent& ChainDifferentials::U(int i) const { return U_[wrap(i)]; }
const HTangent& ChainDifferentials::V(int i) const { return V_[wrap(i)]; }
HTangent ChainDifferentials::U_perp(int i) const { return rotate_quarter(U(i)); }
HTangent ChainDifferentials::V_perp(int i) const { return scaled(rotate_quarter(V(i)), -1.0); }

double ChainDifferentials::d_length(int i, std::span<const HTangent> u) const {
  if (static_cast<int>(u.size()) != size()) throw InvalidArgument("d_length: one tangent per vertex");
  return inner(u[wrap(i)], V(i)) + inner(u[wrap(i + 1)], U(i + 1));
}

double ChainDifferentials::d_angle(int i, std::span<const HTangent> u) const {
  if (static_cast<int>(u.size()) != size()) throw InvalidArgument("d_angle: one tangent per vertex");
  const double lp = length(i - 1);
  const double ln = length(i);
  return inner(u[wrap(i - 1)], V_perp(i - 1)) / std::sinh(lp) -
         coth(lp) * inner(u[wrap(i)], U_perp(i)) - coth(ln) * inner(u[wrap(i)], V_perp(i)) +
         inner(u[wrap(i + 1)], U_perp(i + 1)) / std::sinh(ln);
}

Eigen::MatrixXd ChainDifferentials::length_jacobian() const {
  const int l = size();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(l, 2 * l);
  std::vector<HTangent> u;
  for (int k = 0; k < l; ++k) u.push_back({U_[k].base, 0.0, 0.0});
  for (int k = 0; k < l; ++k) {
    const double y = U_[k].base.y();
    for (int c = 0; c < 2; ++c) {
      u[k] = {U_[k].base, c == 0 ? y : 0.0, c == 1 ? y : 0.0};
      for (int i = 1; i <= l; ++i) jac(i - 1, 2 * k + c) = d_length(i, u);
    }
    u[k] = {U_[k].base, 0.0, 0.0};
  }
  return jac;
}

double proportionality_check(const SemiRegularPoint& p) {
  if (p.n < 3) throw InvalidArgument("semi-regular point needs n >= 3");
  if (std::abs(p.defect()) > 1e-9) {
    throw PreconditionError("proportionality_check: point is off the semi-regular locus");
  }
  std::vector<double> sides(2 * p.n);
  for (int j = 0; j < 2 * p.n; ++j) sides[j] = (j % 2 == 0) ? p.l1 : p.l2;
  MarkedRightPolygon poly{2 * p.n, sides, std::nullopt, 0.0};
  const double even_coef = -(1.0 + std::cosh(p.l2)) / std::sinh(p.l2);
  const double odd_coef = (1.0 + std::cosh(p.l1)) / std::sinh(p.l1);
  double worst = 0.0;
  for (int i = 1; i <= 2 * p.n; ++i) {
    const std::vector<double> u = tangent_u(poly, i);
    double even = 0.0;
    double odd = 0.0;
    for (int j = 1; j <= 2 * p.n; ++j) (j % 2 == 0 ? even : odd) += u[j - 1];
    worst = std::max(worst, std::abs(even_coef * even - odd_coef * odd));
  }
  return worst;
}

BoundaryDecomposition boundary_functional(std::span<const MarkedRightPolygon> ps) {
  BoundaryDecomposition out;
  for (const auto& p : ps) {
    for (int j = 1; j <= p.n; j += 2) out.value += p.side(j);
    const double l1 = p.side(1);
    const double l2 = p.side(2);
    out.coefficients.push_back(-((1.0 + std::cosh(l2)) / (1.0 + std::cosh(l1))) *
                               (std::sinh(l1) / std::sinh(l2)));
  }
  return out;
}

}  // namespace systolica::polygon
