#include "systolica/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "systolica/errors.hpp"
#include "systolica/hyperbolic_plane.hpp"
#include "systolica/polygon_space.hpp"
#include "systolica/scene.hpp"
#include "systolica/shear_hessian.hpp"
#include "systolica/trigonometry.hpp"

namespace systolica::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

namespace vr = systolica::variational;

// floor turns the relative error into an absolute one for small values.
void add(SuiteResult& r, const Options& o, std::string name, int sample, double analytic,
         double oracle, double tol, double floor) {
  CheckRecord c{std::move(name), sample, analytic, oracle, 0.0, o.tol.value_or(tol)};
  const double err = std::abs(analytic - oracle);
  c.rel_err = std::isfinite(err) ? err / std::max(std::abs(analytic), floor) : kInf;
  r.records.push_back(std::move(c));
}

void add_condition(SuiteResult& r, std::string name, int sample, double value, bool ok) {
  r.records.push_back({std::move(name), sample, value, 0.0, ok ? 0.0 : kInf, 0.0});
}

// Fourth-order central differences.
double d1(const std::function<double(double)>& f, double h) {
  return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
}

shear::ChordConfig random_config(Rng& rng, int n) {
  const double L = rng.uniform(0.3, 3.5);
  std::vector<double> s(n);
  for (double& x : s) x = L * rng.uniform(0.05, 0.95);
  std::sort(s.begin(), s.end());
  std::vector<shear::LeafCrossing> cs;
  for (double x : s) cs.push_back({x, rng.uniform(0.3, kPi - 0.3)});
  return shear::ChordConfig(L, cs);
}

shear::TransverseWeights random_weights(Rng& rng, int n) {
  shear::TransverseWeights w;
  for (int i = 0; i < n; ++i) w.a.push_back(rng.uniform(-1, 1));
  return w;
}

shear::EndpointVariation random_endpoint(Rng& rng) {
  return {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
}

double bilinear(const shear::ChordConfig& cfg, const shear::TransverseWeights& w1,
                const shear::EndpointVariation& e1, const shear::TransverseWeights& w2,
                const shear::EndpointVariation& e2) {
  const Eigen::VectorXd x = shear::hessian_variables(cfg, w1, e1);
  const Eigen::VectorXd y = shear::hessian_variables(cfg, w2, e2);
  return x.dot(shear::hessian_matrix(cfg) * y) / std::sinh(cfg.length());
}

HGeodesic side_line(const polygon::MarkedRightPolygon& p, int k) {
  return HGeodesic::through(p.vertex(k), p.vertex(k + 1));
}

HPoint midpoint(const HPoint& a, const HPoint& b) {
  return exp_map(scaled(unit_toward(a, b), 0.5 * dist(a, b)));
}

// Geodesic through p orthogonal to the geodesic through p and q.
HGeodesic orthogonal_at(const HPoint& p, const HPoint& q) {
  return HGeodesic::through(rotate_quarter(unit_toward(p, q)));
}

double unsigned_angle(const HTangent& a, const HTangent& b) {
  const double t = oriented_angle(a, b);
  return std::min(t, 2 * kPi - t);
}

// Sides after moving along the flow that lengthens side i while the common
// perpendicular f of sides i-1 and i+2, and everything beyond it, stay fixed.
std::vector<double> flexed_sides(const std::vector<double>& sides, int i, double t) {
  const int n = static_cast<int>(sides.size());
  auto at = [&](int k) { return ((k - 1) % n + n) % n; };
  const double li = sides[at(i)];
  const double lj = sides[at(i + 1)];
  const double cf = std::sinh(li) * std::sinh(lj);
  const double sf = std::sqrt(cf * cf - 1.0);
  const double li_t = li + t;
  const double lj_t = std::asinh(cf / std::sinh(li_t));
  // The pieces of sides i-1 and i+2 cut off by the perpendicular f.
  const double beta0 = std::asinh(std::cosh(lj) / sf);
  const double beta_t = std::asinh(std::cosh(lj_t) / sf);
  const double delta0 = std::asinh(std::cosh(li) / sf);
  const double delta_t = std::asinh(std::cosh(li_t) / sf);
  std::vector<double> out = sides;
  out[at(i)] = li_t;
  out[at(i + 1)] = lj_t;
  out[at(i - 1)] += beta_t - beta0;
  out[at(i + 2)] += delta_t - delta0;
  return out;
}

polygon::PentagonCoords random_coords(Rng& rng, int n) {
  polygon::PentagonCoords c{n, {}};
  if (n == 5) {
    const double a = rng.uniform(0.4, 2.5);
    c.values = {a, std::asinh(rng.uniform(1.1, 6.0) / std::sinh(a))};
  } else {
    for (int k = 0; k < n - 3; ++k) c.values.push_back(rng.uniform(0.3, 2.5));
  }
  return c;
}

double boundary_closed_form(double l, const std::vector<int>& degrees) {
  double b = 0.0;
  for (int n : degrees) b += 2.0 * n * std::asinh(std::cos(kPi / n) / std::sinh(0.5 * l));
  return b;
}

vr::VectorFamily random_family(Rng& rng, int dim) {
  const int m = rng.integer(1, 6);
  const int type = rng.integer(0, 4);
  vr::VectorFamily f{dim, {}};
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(dim, dim);
  if (type == 2 || type == 3) {
    const int r = rng.integer(1, dim);
    basis.resize(dim, r);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < r; ++j) basis(i, j) = rng.uniform(-1, 1);
    }
  }
  auto draw = [&]() {
    Eigen::VectorXd c(basis.cols());
    for (int j = 0; j < c.size(); ++j) c(j) = rng.uniform(-1, 1);
    return Eigen::VectorXd(basis * c);
  };
  if (type == 4 && dim >= 2) {
    // origin on a proper face: v, -v and extra vectors on one side
    const Eigen::VectorXd v = draw();
    f.vectors = {v, -v};
    Eigen::VectorXd w = draw();
    w -= w.dot(v) / v.squaredNorm() * v;
    for (int k = 0; k < std::max(1, m - 2); ++k) f.vectors.push_back(rng.uniform(0.2, 1.0) * w + rng.uniform(-1, 1) * v);
    return f;
  }
  for (int k = 0; k < m; ++k) f.vectors.push_back(draw());
  if ((type == 1 || type == 3) && m >= 2) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
    for (int k = 0; k < m - 1; ++k) sum += rng.uniform(0.1, 1.0) * f.vectors[k];
    f.vectors.back() = -sum;
  }
  return f;
}

Eigen::MatrixXd random_invertible(Rng& rng, int dim) {
  Eigen::MatrixXd m(dim, dim);
  do {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) m(i, j) = rng.uniform(-2, 2);
    }
  } while (std::abs(m.determinant()) < 0.2);
  return m;
}

double system_min(const vr::SystemOfLengths& sys, const Eigen::VectorXd& x) {
  double m = kInf;
  for (const auto& f : sys.functions) m = std::min(m, f.value(x));
  return m;
}

}  // namespace

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

double SuiteResult::max_rel_err() const {
  double m = 0.0;
  for (const auto& c : records) m = std::max(m, c.rel_err);
  return m;
}

bool SuiteResult::passed() const {
  return std::all_of(records.begin(), records.end(), [](const auto& c) { return c.passed(); });
}

const CheckRecord* SuiteResult::worst() const {
  const CheckRecord* w = nullptr;
  double score = -1.0;
  for (const auto& c : records) {
    const double s = c.tol > 0 ? c.rel_err / c.tol : (c.rel_err > 0 ? kInf : 0.0);
    if (s > score) {
      score = s;
      w = &c;
    }
  }
  return w;
}

SuiteResult SuiteResult::filtered(const std::string& prefix) const {
  SuiteResult out{suite, samples, seed, {}, warnings};
  for (const auto& c : records) {
    if (c.name.rfind(prefix, 0) == 0) out.records.push_back(c);
  }
  return out;
}

void SuiteResult::append(const SuiteResult& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

SuiteResult hessian(const Options& opts) {
  SuiteResult r{"hessian", opts.samples, opts.seed, {}, {}};
  Rng rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    if (s == 0) {
      const double d = std::acosh(2.0);
      const shear::ChordConfig bare(d, {});
      const Eigen::MatrixXd h = shear::hessian_matrix(bare) / std::sinh(d);
      Eigen::Matrix2d expected;
      expected << std::cosh(d), -1.0, -1.0, std::cosh(d);
      expected /= std::sinh(d);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) add(r, opts, "endpoint_block", s, h(i, j), expected(i, j), 1e-9, 1.0);
      }
      const shear::FdOracle fd(shear::realize_scene(bare), bare);
      const shear::EndpointVariation eu{1, 0, 0, 0};
      const shear::EndpointVariation ev{0, 0, 1, 0};
      add(r, opts, "endpoint_block.fd", s, expected(0, 0), fd.second({}, eu), 1e-6, 1e-2);
      add(r, opts, "endpoint_block.fd", s, expected(1, 1), fd.second({}, ev), 1e-6, 1e-2);
      add(r, opts, "endpoint_block.fd", s, expected(0, 1), fd.mixed({}, eu, {}, ev), 1e-6, 1e-2);
    }
    const int n = s % 7;
    const shear::ChordConfig cfg = random_config(rng, n);
    const shear::FdOracle fd(shear::realize_scene(cfg), cfg);
    const auto w1 = random_weights(rng, n);
    const auto e1 = random_endpoint(rng);
    const auto w2 = random_weights(rng, n);
    const auto e2 = random_endpoint(rng);

    const auto f1 = shear::first_derivatives(cfg, w1, e1);
    add(r, opts, "first", s, f1.d_metric + f1.d_endpoints, fd.first(w1, e1), 1e-6, 1e-2);
    add(r, opts, "second", s, shear::hessian_form(cfg, w1, e1), fd.second(w1, e1), 1e-6, 1e-2);
    add(r, opts, "mixed", s, bilinear(cfg, w1, e1, w2, e2), fd.mixed(w1, e1, w2, e2), 1e-6, 1e-2);

    const Eigen::MatrixXd h = shear::hessian_matrix(cfg);
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues()(0);
    add_condition(r, "positive_definite", s, min_eig, min_eig > 0.0);

    const shear::TransverseWeights zero{std::vector<double>(n, 0.0)};
    const shear::EndpointVariation along{0, rng.uniform(-1, 1), 0, rng.uniform(-1, 1)};
    add(r, opts, "isotropic", s, shear::hessian_form(cfg, zero, along), 0.0, 1e-10, 1.0);
    add(r, opts, "isotropic.fd", s, 0.0, fd.second(zero, along), 1e-6, 1e-2);

    const double a = rng.uniform(-1, 1);
    const double b = rng.uniform(-1, 1);
    add(r, opts, "endpoint_forms", s, shear::endpoint_form(cfg.length(), a, b),
        shear::endpoint_form_rewritten(cfg.length(), a, b), 1e-12, 1.0);
  }
  return r;
}

SuiteResult kinematics(const Options& opts) {
  SuiteResult r{"kinematics", opts.samples, opts.seed, {}, {}};
  Rng rng(opts.seed ^ 0x6b696eull);
  for (int s = 0; s < opts.samples; ++s) {
    const int n = 1 + s % 6;
    const shear::ChordConfig cfg = random_config(rng, n);
    const shear::Scene scene = shear::realize_scene(cfg);
    const int h = rng.integer(0, n - 1);
    const auto an = shear::shear_kinematics(cfg, h);
    const auto fd = shear::fd_kinematics(scene, h);
    add(r, opts, "kinematics.rho_prime", s, an.rho_prime, fd.rho_prime, 1e-6, 1e-2);
    for (int l = 0; l < h; ++l) {
      add(r, opts, "kinematics.f_prime", s, an.f_prime[l], fd.f_prime[l], 1e-6, 1e-2);
      add(r, opts, "kinematics.dcos_theta", s, an.dcos_theta[l], fd.dcos_theta[l], 1e-6, 1e-2);
    }
  }
  return r;
}

SuiteResult trig(const Options& opts) {
  SuiteResult r{"trig", opts.samples, opts.seed, {}, {}};
  Rng rng(opts.seed ^ 0x74726967ull);
  for (int s = 0; s < opts.samples; ++s) {
    // Right-angled pentagon with the right angle at i between the imaginary
    // axis and the unit circle.
    {
      const double a = rng.uniform(0.3, 2.5);
      const double b = std::asinh(rng.uniform(1.05, 6.0) / std::sinh(a));
      const HPoint v(0.0, 1.0);
      const HPoint pb = exp_map(HTangent{v, b, 0.0});
      const HGeodesic ga = HGeodesic::arc(0.0, std::exp(a));
      const HGeodesic gb = orthogonal_at(pb, v);
      add(r, opts, "pentagon_perpendicular", s, trig::pentagon_perpendicular(a, b),
          common_perpendicular(ga, gb).length, 1e-9, 1.0);
    }

    // Semi-regular 2n-gon: center, trirectangles and diagonals.
    {
      const int n = 3 + s % 6;
      const double l1 = rng.uniform(0.3, 3.0);
      const auto pt = polygon::SemiRegularPoint::from_l1(l1, n);
      const double l2 = pt.l2;
      add(r, opts, "semiregular_partner.involution", s, trig::semiregular_partner(l2, n), l1,
          1e-12, 1.0);
      const auto poly = pt.expand();
      add(r, opts, "semiregular_partner.closure", s, poly.closure_defect, 0.0, 1e-9, 1.0);

      const HPoint m1 = midpoint(poly.vertex(1), poly.vertex(2));
      const HPoint m2 = midpoint(poly.vertex(2), poly.vertex(3));
      const auto center =
          intersect(orthogonal_at(m1, poly.vertex(2)), orthogonal_at(m2, poly.vertex(3)));
      if (!center) {
        add_condition(r, "trirectangle.center", s, 0.0, false);
        continue;
      }
      const double h1g = dist(*center, m1);
      const double h2g = dist(*center, m2);
      const double h1 = trig::trirectangle_center(0.5 * l2, n);
      const double h2 = trig::trirectangle_center(0.5 * l1, n);
      add(r, opts, "trirectangle_center", s, h1, h1g, 1e-9, 1.0);
      add(r, opts, "trirectangle_center", s, h2, h2g, 1e-9, 1.0);
      add(r, opts, "trirectangle_link", s, trig::trirectangle_link(0.5 * l2, h2g), h1g, 1e-9, 1.0);
      add(r, opts, "trirectangle_link", s, trig::trirectangle_link(0.5 * l1, h1g), h2g, 1e-9, 1.0);
      add(r, opts, "trirectangle.vertex_angle", s, kPi / n,
          unsigned_angle(unit_toward(*center, m1), unit_toward(*center, m2)), 1e-9, 1.0);
      add(r, opts, "trirectangle.residual", s, trig::TrirectangleData::make(0.5 * l2, n).residual(),
          0.0, 1e-12, 1.0);

      const double hs[2] = {h1, h2};
      for (int type = 0; type < 2; ++type) {
        for (int k = 1; k <= n - 1; ++k) {
          const double geo =
              common_perpendicular(side_line(poly, 1 + type), side_line(poly, 1 + type + 2 * k))
                  .length;
          add(r, opts, "diagonal_same_type", s, trig::diagonal_same_type(hs[type], k, n), geo, 1e-9,
              1.0);
        }
      }
      const double bound = 2.0 * std::cosh(0.5 * l1) * std::cosh(0.5 * l2);
      for (int k = 3; k <= 2 * n - 3; k += 2) {
        const double value = trig::mixed_diagonal_value(h1, h2, k, n);
        const double geo = common_perpendicular(side_line(poly, 1), side_line(poly, 1 + k)).length;
        add(r, opts, "diagonal_mixed_type", s, value, std::cosh(geo), 1e-9, 1.0);
        add(r, opts, "diagonal_mixed_type.factored", s, value,
            std::cosh(h1) * std::cosh(h2) * (std::cos(kPi / n) - std::cos(k * kPi / n)), 1e-10, 1.0);
        add_condition(r, "diagonal_mixed_type.chain_bound", s, value / bound - 1.0,
                      value >= bound * (1.0 - 1e-12));
      }
    }

    // Equilateral triangle with apex found on the perpendicular bisector.
    {
      const double x = rng.uniform(0.1, 4.0);
      const HPoint a(0.0, 1.0);
      const HPoint b(0.0, std::exp(x));
      const HGeodesic bisector = HGeodesic::arc(0.0, std::exp(0.5 * x));
      double lo = 0.0;
      double hi = 1.0;
      while (dist(a, point_along(bisector, hi)) < x) hi *= 2.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dist(a, point_along(bisector, mid)) < x ? lo : hi) = mid;
      }
      const HPoint c = point_along(bisector, 0.5 * (lo + hi));
      add(r, opts, "equilateral_angle", s, trig::equilateral_angle(x),
          unsigned_angle(unit_toward(a, b), unit_toward(a, c)), 1e-9, 1.0);
    }
  }
  return r;
}

SuiteResult polygon(const Options& opts) {
  SuiteResult r{"polygon", opts.samples, opts.seed, {}, {}};
  Rng rng(opts.seed ^ 0x706f6c79ull);
  for (int s = 0; s < opts.samples; ++s) {
    const int n = 5 + s % 6;
    const auto coords = random_coords(rng, n);
    std::optional<polygon::MarkedRightPolygon> poly;
    try {
      poly = polygon::sides_from_pentagon_coords(coords);
    } catch (const NoPolygon&) {
      add_condition(r, "coords.admissible", s, 0.0, false);
    }
    if (poly) {
      const auto back = polygon::pentagon_coords(*poly);
      for (int k = 0; k < n - 3; ++k) {
        add(r, opts, "coords.round_trip", s, back.values[k], coords.values[k], 1e-10, 1.0);
      }
      add(r, opts, "realize.closure", s, poly->closure_defect, 0.0, 1e-8, 1.0);
      double worst = 0.0;
      for (int i = 1; i <= n; ++i) {
        worst = std::max(worst, std::abs(polygon::interior_angle(*poly, i) - 0.5 * kPi));
      }
      add(r, opts, "realize.right_angles", s, worst, 0.0, 1e-8, 1.0);

      const int offset = rng.integer(0, n - 1);
      int i = 0;
      for (int k = 0; k < n && i == 0; ++k) {
        const int c = 1 + (offset + k) % n;
        if (std::sinh(poly->side(c)) * std::sinh(poly->side(c + 1)) > 1.0 + 1e-6) i = c;
      }
      if (i == 0) {
        r.warnings.push_back("sample " + std::to_string(s) + ": no flexible side pair");
      } else {
        const auto u = polygon::tangent_u(*poly, i);
        for (int j = 0; j < n; ++j) {
          const double fd = d1([&](double t) { return flexed_sides(poly->sides, i, t)[j]; }, 1e-4);
          add(r, opts, "tangent_u", s, u[j], fd, 1e-6, 1.0);
        }
        const auto moved = flexed_sides(poly->sides, i, 1e-2);
        add(r, opts, "tangent_u.flex_closure", s, polygon::realize(moved).closure_defect, 0.0, 1e-8,
            1.0);
      }
    }

    // Semi-regular locus.
    {
      const int m = 3 + s % 3;
      const auto pt = polygon::SemiRegularPoint::from_l1(rng.uniform(0.3, 3.0), m);
      add(r, opts, "proportionality", s, polygon::proportionality_check(pt), 0.0, 1e-8, 1.0);

      std::vector<int> degrees(1 + s % 3);
      for (int& d : degrees) d = rng.integer(3, 6);
      const double l = rng.uniform(0.3, 2.5);
      std::vector<polygon::MarkedRightPolygon> ps;
      for (int d : degrees) ps.push_back(polygon::SemiRegularPoint{d, trig::semiregular_partner(l, d), l}.expand());
      const auto bd = polygon::boundary_functional(ps);
      add(r, opts, "boundary.value", s, bd.value, boundary_closed_form(l, degrees), 1e-10, 1.0);
      double slope = 0.0;
      for (std::size_t k = 0; k < degrees.size(); ++k) slope += bd.coefficients[k] * degrees[k];
      const double fd =
          d1([&](double t) { return boundary_closed_form(l + t, degrees); }, 1e-3);
      add(r, opts, "boundary.differential", s, slope, fd, 1e-6, 1e-2);
    }

    // Random chains.
    {
      const int l = 3 + s % 4;
      std::vector<HPoint> vs;
      auto separated = [&](const HPoint& p) {
        return std::all_of(vs.begin(), vs.end(), [&](const HPoint& v) { return dist(p, v) > 0.2; });
      };
      while (static_cast<int>(vs.size()) < l) {
        const HPoint p(rng.uniform(-2, 2), rng.uniform(0.3, 2.3));
        if (separated(p)) vs.push_back(p);
      }
      const polygon::ChainDifferentials cd{polygon::PolygonChain(vs)};
      std::vector<HTangent> u;
      for (const auto& p : vs) u.push_back({p, rng.uniform(-1, 1) * p.y(), rng.uniform(-1, 1) * p.y()});
      auto moved = [&](double e) {
        std::vector<HPoint> w;
        for (const auto& t : u) w.push_back(exp_map(scaled(t, e)));
        return polygon::ChainDifferentials{polygon::PolygonChain(w)};
      };
      for (int i = 1; i <= l; ++i) {
        const double fl = d1([&](double e) { return moved(e).length(i); }, 1e-4);
        const double fa = d1(
            [&](double e) { return std::remainder(moved(e).angle(i) - cd.angle(i), 2 * kPi); }, 1e-4);
        add(r, opts, "chain.d_length", s, cd.d_length(i, u), fl, 1e-6, 1e-2);
        add(r, opts, "chain.d_angle", s, cd.d_angle(i, u), fa, 1e-6, 1e-2);
      }
      const Eigen::MatrixXd jac = cd.length_jacobian();
      const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues().minCoeff();
      add_condition(r, "chain.independent_lengths", s, smin, smin > 1e-8);
    }

    // Length-regular chain: vertices of a regular l-gon.
    {
      const int l = 3 + s % 4;
      const double rad = rng.uniform(0.3, 2.0);
      const double phase = rng.uniform(0, 2 * kPi);
      const HPoint c(0.0, 1.0);
      std::vector<HPoint> vs;
      for (int k = 0; k < l; ++k) {
        const double phi = phase + 2 * kPi * k / l;
        vs.push_back(exp_map(HTangent{c, rad * std::cos(phi), rad * std::sin(phi)}));
      }
      const polygon::ChainDifferentials cd{polygon::PolygonChain(vs)};
      std::vector<HTangent> u;
      for (const auto& p : vs) u.push_back({p, rng.uniform(-1, 1) * p.y(), rng.uniform(-1, 1) * p.y()});
      double sum_angle = 0.0;
      double sum_perp = 0.0;
      double sum_length = 0.0;
      for (int i = 1; i <= l; ++i) {
        sum_angle += cd.d_angle(i, u);
        sum_perp += inner(u[i - 1], sum(cd.U_perp(i), cd.V_perp(i)));
        sum_length += cd.d_length(i, u);
      }
      const double th = std::tanh(0.5 * cd.length(1));
      add(r, opts, "chain.angle_sum", s, sum_angle, -th * sum_perp, 1e-8, 1.0);
      add(r, opts, "chain.angle_sum_lengths", s, sum_angle,
          -th * std::tan(0.5 * cd.angle(1)) * sum_length, 1e-8, 1.0);
    }
  }
  return r;
}

SuiteResult variational(const Options& opts) {
  SuiteResult r{"variational", opts.samples, opts.seed, {}, {}};
  Rng rng(opts.seed ^ 0x76617269ull);
  for (int s = 0; s < opts.samples; ++s) {
    if (s == 0) {
      vr::SystemOfLengths one{1, {}, 1e-9};
      one.functions.push_back({[](const Eigen::VectorXd& x) { return std::cosh(x(0)); },
                               [](const Eigen::VectorXd& x) {
                                 return Eigen::VectorXd::Constant(1, std::sinh(x(0)));
                               }});
      one.functions.push_back({[](const Eigen::VectorXd& x) { return std::cosh(x(0) - 1.0); },
                               [](const Eigen::VectorXd& x) {
                                 return Eigen::VectorXd::Constant(1, std::sinh(x(0) - 1.0));
                               }});
      const Eigen::VectorXd t = Eigen::VectorXd::Constant(1, 0.5);
      const auto c = vr::classify_point(one, t);
      add_condition(r, "toy.verdict", s, c.index, c.verdict == vr::Verdict::extreme && c.index == 1);
      const double mu = system_min(one, t);
      for (double d : {-1e-3, 1e-3}) {
        const double nearby = system_min(one, t + Eigen::VectorXd::Constant(1, d));
        add_condition(r, "toy.local_max", s, mu - nearby, mu > nearby);
      }
    }
    const int dim = 1 + s % 3;
    const auto f = random_family(rng, dim);
    const auto c = vr::classify(f);
    const bool oracle = brute_force_eutactic(f);
    add_condition(r, "eutaxy.hull_oracle", s, c.certificate.margin, c.eutactic == oracle);
    if (c.eutactic) {
      Eigen::VectorXd comb = Eigen::VectorXd::Zero(dim);
      double total = 0.0;
      double lmin = kInf;
      for (std::size_t k = 0; k < f.vectors.size(); ++k) {
        comb += c.certificate.lambda[k] * f.vectors[k];
        total += c.certificate.lambda[k];
        lmin = std::min(lmin, c.certificate.lambda[k]);
      }
      add(r, opts, "eutaxy.certificate", s, comb.norm(), 0.0, 1e-9, 1.0);
      add(r, opts, "eutaxy.certificate_sum", s, total, 1.0, 1e-9, 1.0);
      add_condition(r, "eutaxy.certificate_positive", s, lmin, lmin > 0.0);
    } else if (!c.certificate.separator.empty()) {
      const Eigen::Map<const Eigen::VectorXd> w(c.certificate.separator.data(), dim);
      double worst = -kInf;
      for (const auto& v : f.vectors) worst = std::max(worst, w.dot(v));
      add_condition(r, "eutaxy.separator", s, worst, worst <= 1e-9);
    }

    const Eigen::MatrixXd m = random_invertible(rng, dim);
    vr::VectorFamily g{dim, {}};
    for (const auto& v : f.vectors) g.vectors.push_back(m * v);
    const auto cg = vr::classify(g);
    add_condition(r, "classify.linear_invariance", s, cg.certificate.margin,
                  cg.perfect == c.perfect && cg.eutactic == c.eutactic && cg.rank == c.rank &&
                      cg.verdict == c.verdict);
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hessian", "trig", "polygon", "variational"};
  return names;
}

SuiteResult run_suite(const std::string& name, const Options& opts) {
  if (opts.samples < 0) throw InvalidArgument("samples must be >= 0");
  SuiteResult r;
  if (name == "hessian") {
    r = hessian(opts);
    r.append(kinematics(opts));
  } else if (name == "trig") {
    r = trig(opts);
  } else if (name == "polygon") {
    r = polygon(opts);
  } else if (name == "variational") {
    r = variational(opts);
  } else {
    throw InvalidArgument("unknown suite '" + name + "'");
  }
  r.suite = name;
  if (opts.samples == 0) r.warnings.push_back("samples = 0: no checks run, vacuous pass");
  return r;
}

std::string csv_header() { return "suite,check,sample,analytic,oracle,rel_err,tol,passed\n"; }

std::string csv_rows(const SuiteResult& r) {
  std::ostringstream out;
  char buf[256];
  for (const auto& c : r.records) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%.12g,%.12g,%.12g,%.12g,%d\n", r.suite.c_str(),
                  c.name.c_str(), c.sample, c.analytic, c.oracle, c.rel_err, c.tol,
                  c.passed() ? 1 : 0);
    out << buf;
  }
  return out.str();
}

bool brute_force_eutactic(const vr::VectorFamily& f, double tol) {
  f.validate();
  if (f.dim > 3) throw InvalidArgument("brute-force hull oracle supports dim <= 3");
  const int m = static_cast<int>(f.vectors.size());
  double scale = 0.0;
  for (const auto& v : f.vectors) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  if (scale == 0.0) return true;

  std::vector<Eigen::VectorXd> v;
  for (const auto& x : f.vectors) v.push_back(x / scale);
  Eigen::MatrixXd d(f.dim, std::max(1, m - 1));
  d.setZero();
  for (int i = 1; i < m; ++i) d.col(i - 1) = v[i] - v[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(0) > 0 && sv(i) > 1e-9 * sv(0)) ++k;
  }
  const Eigen::MatrixXd q = svd.matrixU().leftCols(k);
  const Eigen::VectorXd o = -v[0];
  if ((o - q * (q.transpose() * o)).norm() > tol) return false;
  if (k == 0) return true;

  std::vector<Eigen::VectorXd> p;
  for (const auto& x : v) p.push_back(q.transpose() * (x - v[0]));
  const Eigen::VectorXd c = q.transpose() * o;

  if (k == 1) {
    double lo = kInf;
    double hi = -kInf;
    for (const auto& x : p) {
      lo = std::min(lo, x(0));
      hi = std::max(hi, x(0));
    }
    return lo < c(0) - tol && c(0) + tol < hi;
  }

  // Every facet is spanned by k of the points; the origin must lie strictly
  // inside each supporting hyperplane found this way.
  auto inside = [&](const Eigen::VectorXd& normal, const Eigen::VectorXd& base) {
    double lo = kInf;
    double hi = -kInf;
    for (const auto& x : p) {
      const double t = normal.dot(x - base);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    const double oc = normal.dot(c - base);
    if (lo >= -tol) return oc > tol;
    if (hi <= tol) return oc < -tol;
    return true;
  };
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (k == 2) {
        const Eigen::Vector2d e = p[b] - p[a];
        if (e.norm() < tol) continue;
        if (!inside(Eigen::Vector2d(-e(1), e(0)) / e.norm(), p[a])) return false;
        continue;
      }
      for (int g = b + 1; g < m; ++g) {
        const Eigen::Vector3d e1 = p[b] - p[a];
        const Eigen::Vector3d e2 = p[g] - p[a];
        const Eigen::Vector3d nrm = e1.cross(e2);
        if (nrm.norm() < tol) continue;
        if (!inside(nrm / nrm.norm(), p[a])) return false;
      }
    }
  }
  return true;
}

}  // namespace systolica::verify
