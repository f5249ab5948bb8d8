#pragma once

#include <vector>

#include <Eigen/Dense>

namespace systolica::shear {

// Leaf crossing the chord [p, q] at distance s from p. The leaf direction is
// the chord direction (toward q) rotated counterclockwise by theta.
struct LeafCrossing {
  double s = 0.0;
  double theta = 0.0;
};

class ChordConfig {
 public:
  // Crossings are sorted by s; equal s, s outside (0, length) or theta
  // outside (0, pi) are rejected.
  ChordConfig(double length, std::vector<LeafCrossing> crossings);

  double length() const noexcept { return length_; }
  int size() const noexcept { return static_cast<int>(crossings_.size()); }
  const std::vector<LeafCrossing>& crossings() const noexcept { return crossings_; }
  const LeafCrossing& crossing(int i) const { return crossings_.at(i); }

  // Gap from crossing i to its nearest neighbour on [p, q], endpoints
  // included.
  double margin(int i) const { return margins_.at(i); }
  double margin_p() const noexcept { return margin_p_; }
  double margin_q() const noexcept { return margin_q_; }

 private:
  double length_;
  std::vector<LeafCrossing> crossings_;
  std::vector<double> margins_;
  double margin_p_;
  double margin_q_;
};

struct TransverseWeights {
  std::vector<double> a;
};

// Components of u at p and v at q. perp is along the left unit normal of the
// chord oriented from p to q; par is along the unit tangent pointing to the
// other endpoint.
struct EndpointVariation {
  double u_perp = 0.0;
  double u_par = 0.0;
  double v_perp = 0.0;
  double v_par = 0.0;
};

struct FirstDerivatives {
  double d_metric = 0.0;     // sum a_i cos theta_i
  double d_endpoints = 0.0;  // -(u_par + v_par)
};

FirstDerivatives first_derivatives(const ChordConfig& cfg, const TransverseWeights& w,
                                   const EndpointVariation& ev);

// validated: the matrix whose form, scaled by 1/sinh(length), is the Hessian
// of D in the variables (sin theta_i a_i, u_perp, v_perp).
// as_printed: entries cosh s_min cosh(L - s_max), u column cosh s_i, v column
// cosh(L - s_i), endpoint block [[cosh L, -1], [-1, cosh L]].
enum class HessianLayout { validated, as_printed };

Eigen::MatrixXd hessian_matrix(const ChordConfig& cfg,
                               HessianLayout layout = HessianLayout::validated);

// (sin theta_i a_i, u_perp, v_perp)
Eigen::VectorXd hessian_variables(const ChordConfig& cfg, const TransverseWeights& w,
                                  const EndpointVariation& ev);

struct SecondDerivatives {
  double metric_metric = 0.0;
  double metric_endpoint = 0.0;  // mixed term; enters the form twice
  double endpoint_endpoint = 0.0;
  double total() const { return metric_metric + 2.0 * metric_endpoint + endpoint_endpoint; }
};

SecondDerivatives second_derivatives(const ChordConfig& cfg, const TransverseWeights& w,
                                     const EndpointVariation& ev);

// Second derivative of D along (alpha, u, v); equals x^T H x / sinh(length).
double hessian_form(const ChordConfig& cfg, const TransverseWeights& w,
                    const EndpointVariation& ev);

// Endpoint block in its two equivalent shapes.
double endpoint_form(double length, double u_perp, double v_perp);
double endpoint_form_rewritten(double length, double u_perp, double v_perp);

struct MarginReport {
  // Lower bounds for diag(H - H'), ordered like hessian_variables.
  std::vector<double> bounds;
  std::vector<double> diagonal_gap;
  Eigen::MatrixXd margin_matrix;  // H'
  double margin_matrix_min_eig = 0.0;
  bool margin_matrix_psd = false;
  // Smallest eigenvalue of H - diag(bounds); certified when >= 0, in which
  // case x^T H x >= sum bounds_k x_k^2 for all x.
  double certificate_min_eig = 0.0;
  bool certified = false;
};

MarginReport hessian_margin(const ChordConfig& cfg,
                            HessianLayout layout = HessianLayout::validated);

// Shear along the leaf at h_index (0-based) with p fixed. Entries of f_prime
// and dcos_theta refer to crossings 0 .. h_index-1.
struct Kinematics {
  double rho_prime = 0.0;
  std::vector<double> f_prime;
  std::vector<double> dcos_theta;
};

Kinematics shear_kinematics(const ChordConfig& cfg, int h_index);

struct CrossingKinematics {
  double f_prime = 0.0;
  double dcos_theta = 0.0;
};

// Single earlier crossing; l_index must lie strictly between p and h.
CrossingKinematics shear_kinematics(const ChordConfig& cfg, int h_index, int l_index);

}  // namespace systolica::shear
