#pragma once

#include <vector>

#include "systolica/hyperbolic_plane.hpp"
#include "systolica/shear_hessian.hpp"

namespace systolica::shear {

// Explicit configuration in the half-plane: chord from p to q and one
// geodesic per leaf, ordered from p to q.
struct Scene {
  HPoint p{0.0, 1.0};
  HPoint q{0.0, 1.0};
  std::vector<HGeodesic> leaves;
};

// p = i, q = i e^L, leaves through i e^{s_k}.
Scene realize_scene(const ChordConfig& cfg);

// Reads s and theta back off the geometry.
ChordConfig measure_scene(const Scene& scene);

// Throws InconsistentScene when the scene disagrees with cfg beyond tol.
void check_scene(const Scene& scene, const ChordConfig& cfg, double tol = 1e-10);

// Unit tangents at p and q used to interpret EndpointVariation.
HTangent endpoint_tangent_p(const Scene& scene, double perp, double par);
HTangent endpoint_tangent_q(const Scene& scene, double perp, double par);

// The point q' = E_a(q) with E_a = T_1^{a_1} o ... o T_n^{a_n}.
HIsometry shear_map(const Scene& scene, const std::vector<double>& a);

// D(t) = d(exp_p(t u), E_{t a}(exp_q(t v))).
double shear_distance(const Scene& scene, const TransverseWeights& w,
                      const EndpointVariation& ev, double t);

struct FdOptions {
  double h_first = 1e-3;
  double h_second = 2e-3;
};

// Central differences of D along straight lines in (alpha, u, v): fourth
// order for first derivatives, sixth order for second derivatives.
class FdOracle {
 public:
  FdOracle(Scene scene, const ChordConfig& cfg, FdOptions opts = {});

  double first(const TransverseWeights& w, const EndpointVariation& ev) const;
  double second(const TransverseWeights& w, const EndpointVariation& ev) const;
  // Polarized mixed second derivative.
  double mixed(const TransverseWeights& w1, const EndpointVariation& e1,
               const TransverseWeights& w2, const EndpointVariation& e2) const;

  const Scene& scene() const noexcept { return scene_; }

 private:
  Scene scene_;
  FdOptions opts_;
};

// Derivatives at t = 0 of the motion induced by shearing along leaf h.
struct KinematicsProbe {
  double rho_prime;
  std::vector<double> f_prime;
  std::vector<double> dcos_theta;
};

KinematicsProbe fd_kinematics(const Scene& scene, int h_index, double h = 1e-3);

}  // namespace systolica::shear
