#include "systolica/scene.hpp"

#include <cmath>
#include <functional>

#include "systolica/errors.hpp"

namespace systolica::shear {

namespace {

double d1(const std::function<double(double)>& f, double h) {
  return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

// Sixth order.
double d2(const std::function<double(double)>& f, double h) {
  return (2 * (f(3 * h) + f(-3 * h)) - 27 * (f(2 * h) + f(-2 * h)) + 270 * (f(h) + f(-h)) -
          490 * f(0.0)) /
         (180 * h * h);
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

TransverseWeights combine(const TransverseWeights& a, const TransverseWeights& b, double sb) {
  TransverseWeights out = a;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += sb * b.a[i];
  return out;
}

EndpointVariation combine(const EndpointVariation& a, const EndpointVariation& b, double sb) {
  return {a.u_perp + sb * b.u_perp, a.u_par + sb * b.u_par, a.v_perp + sb * b.v_perp,
          a.v_par + sb * b.v_par};
}

}  // namespace

Scene realize_scene(const ChordConfig& cfg) {
  Scene scene{HPoint(0.0, 1.0), HPoint(0.0, std::exp(cfg.length())), {}};
  for (const auto& c : cfg.crossings()) {
    const double y = std::exp(c.s);
    const HTangent dir{HPoint(0.0, y), -y * std::sin(c.theta), y * std::cos(c.theta)};
    scene.leaves.push_back(HGeodesic::through(dir));
  }
  return scene;
}

ChordConfig measure_scene(const Scene& scene) {
  const HGeodesic chord = HGeodesic::through(scene.p, scene.q);
  const double L = dist(scene.p, scene.q);
  std::vector<LeafCrossing> crossings;
  for (const auto& leaf : scene.leaves) {
    const auto c = intersect(chord, leaf);
    if (!c) throw InconsistentScene("leaf does not cross the chord geodesic");
    const double s = dist(scene.p, *c);
    if (std::abs(s + dist(*c, scene.q) - L) > 1e-9 * std::max(1.0, L)) {
      throw InconsistentScene("leaf crosses the chord geodesic outside [p, q]");
    }
    const double theta = oriented_angle(unit_toward(*c, scene.q), direction_at(leaf, *c));
    crossings.push_back({s, theta});
  }
  return ChordConfig(L, std::move(crossings));
}

void check_scene(const Scene& scene, const ChordConfig& cfg, double tol) {
  const ChordConfig got = measure_scene(scene);
  if (got.size() != cfg.size() || !close(got.length(), cfg.length(), tol)) {
    throw InconsistentScene("scene chord does not match the configuration");
  }
  for (int i = 0; i < cfg.size(); ++i) {
    if (!close(got.crossing(i).s, cfg.crossing(i).s, tol) ||
        !close(got.crossing(i).theta, cfg.crossing(i).theta, tol)) {
      throw InconsistentScene("scene crossing does not match the configuration");
    }
  }
  // Leaves must be listed in chord order.
  const HGeodesic chord = HGeodesic::through(scene.p, scene.q);
  double last = -1.0;
  for (const auto& leaf : scene.leaves) {
    const double s = dist(scene.p, *intersect(chord, leaf));
    if (!(s > last)) throw InconsistentScene("scene leaves are not ordered from p to q");
    last = s;
  }
}

HTangent endpoint_tangent_p(const Scene& scene, double perp, double par) {
  const HTangent t = unit_toward(scene.p, scene.q);
  return sum(scaled(rotate_quarter(t), perp), scaled(t, par));
}

HTangent endpoint_tangent_q(const Scene& scene, double perp, double par) {
  const HTangent t = unit_toward(scene.q, scene.p);
  return sum(scaled(rotate_quarter(t), -perp), scaled(t, par));
}

HIsometry shear_map(const Scene& scene, const std::vector<double>& a) {
  if (a.size() != scene.leaves.size()) throw InvalidArgument("shear_map: one weight per leaf");
  HIsometry e = HIsometry::identity();
  for (std::size_t i = 0; i < a.size(); ++i) e = e * translate_along(scene.leaves[i], a[i]);
  return e;
}

double shear_distance(const Scene& scene, const TransverseWeights& w,
                      const EndpointVariation& ev, double t) {
  const HPoint p = exp_map(endpoint_tangent_p(scene, t * ev.u_perp, t * ev.u_par));
  const HPoint q = exp_map(endpoint_tangent_q(scene, t * ev.v_perp, t * ev.v_par));
  std::vector<double> a = w.a;
  for (double& x : a) x *= t;
  return dist(p, shear_map(scene, a).apply(q));
}

FdOracle::FdOracle(Scene scene, const ChordConfig& cfg, FdOptions opts)
    : scene_(std::move(scene)), opts_(opts) {
  check_scene(scene_, cfg);
}

double FdOracle::first(const TransverseWeights& w, const EndpointVariation& ev) const {
  return d1([&](double t) { return shear_distance(scene_, w, ev, t); }, opts_.h_first);
}

double FdOracle::second(const TransverseWeights& w, const EndpointVariation& ev) const {
  return d2([&](double t) { return shear_distance(scene_, w, ev, t); }, opts_.h_second);
}

double FdOracle::mixed(const TransverseWeights& w1, const EndpointVariation& e1,
                       const TransverseWeights& w2, const EndpointVariation& e2) const {
  const double plus = second(combine(w1, w2, 1.0), combine(e1, e2, 1.0));
  const double minus = second(combine(w1, w2, -1.0), combine(e1, e2, -1.0));
  return 0.25 * (plus - minus);
}

KinematicsProbe fd_kinematics(const Scene& scene, int h_index, double h) {
  if (h_index < 0 || h_index >= static_cast<int>(scene.leaves.size())) {
    throw InvalidArgument("fd_kinematics: leaf index out of range");
  }
  const HGeodesic& leaf_h = scene.leaves[h_index];
  auto moved_q = [&](double t) { return translate_along(leaf_h, t).apply(scene.q); };
  const HTangent base = unit_toward(scene.p, scene.q);
  const double base_angle = std::atan2(base.dy, base.dx);

  KinematicsProbe out{};
  out.rho_prime = d1(
      [&](double t) {
        const HTangent d = unit_toward(scene.p, moved_q(t));
        return std::remainder(std::atan2(d.dy, d.dx) - base_angle, 2.0 * M_PI);
      },
      h);
  for (int l = 0; l < h_index; ++l) {
    const HGeodesic& leaf = scene.leaves[l];
    auto crossing = [&](double t) {
      const auto c = intersect(leaf, HGeodesic::through(scene.p, moved_q(t)));
      if (!c) throw InconsistentScene("sheared chord lost its crossing with an earlier leaf");
      return *c;
    };
    out.f_prime.push_back(d1([&](double t) { return geodesic_coordinate(leaf, crossing(t)); }, h));
    out.dcos_theta.push_back(d1(
        [&](double t) {
          const HPoint c = crossing(t);
          return std::cos(oriented_angle(unit_toward(c, moved_q(t)), direction_at(leaf, c)));
        },
        h));
  }
  return out;
}

}  // namespace systolica::shear
