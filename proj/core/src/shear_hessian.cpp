#include "systolica/shear_hessian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "systolica/errors.hpp"

namespace systolica::shear {

namespace {

void require_weights(const ChordConfig& cfg, const TransverseWeights& w) {
  if (static_cast<int>(w.a.size()) != cfg.size()) {
    throw InvalidArgument("transverse weights: one weight per crossing required");
  }
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

ChordConfig::ChordConfig(double length, std::vector<LeafCrossing> crossings)
    : length_(length), crossings_(std::move(crossings)) {
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw InvalidArgument("chord length must be positive");
  }
  std::sort(crossings_.begin(), crossings_.end(),
            [](const LeafCrossing& a, const LeafCrossing& b) { return a.s < b.s; });
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& c = crossings_[i];
    if (!(c.s > 0.0 && c.s < length_)) throw InvalidArgument("crossing outside the chord");
    if (!(c.theta > 0.0 && c.theta < std::numbers::pi)) {
      throw InvalidArgument("crossing angle outside (0, pi)");
    }
    if (i > 0 && !(c.s > crossings_[i - 1].s)) {
      throw InvalidArgument("crossings must have distinct positions");
    }
  }
  const int n = size();
  margins_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double prev = i == 0 ? 0.0 : crossings_[i - 1].s;
    const double next = i == n - 1 ? length_ : crossings_[i + 1].s;
    margins_[i] = std::min(crossings_[i].s - prev, next - crossings_[i].s);
  }
  margin_p_ = n == 0 ? length_ : crossings_.front().s;
  margin_q_ = n == 0 ? length_ : length_ - crossings_.back().s;
}

FirstDerivatives first_derivatives(const ChordConfig& cfg, const TransverseWeights& w,
                                   const EndpointVariation& ev) {
  require_weights(cfg, w);
  FirstDerivatives d;
  for (int i = 0; i < cfg.size(); ++i) d.d_metric += w.a[i] * std::cos(cfg.crossing(i).theta);
  d.d_endpoints = -(ev.u_par + ev.v_par);
  return d;
}

Eigen::MatrixXd hessian_matrix(const ChordConfig& cfg, HessianLayout layout) {
  const int n = cfg.size();
  const double L = cfg.length();
  Eigen::MatrixXd h(n + 2, n + 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double lo = std::min(cfg.crossing(i).s, cfg.crossing(j).s);
      const double hi = std::max(cfg.crossing(i).s, cfg.crossing(j).s);
      h(i, j) = std::cosh(lo) * std::cosh(L - hi);
    }
    const double s = cfg.crossing(i).s;
    if (layout == HessianLayout::validated) {
      h(i, n) = -std::cosh(L - s);
      h(i, n + 1) = std::cosh(s);
    } else {
      h(i, n) = std::cosh(s);
      h(i, n + 1) = std::cosh(L - s);
    }
    h(n, i) = h(i, n);
    h(n + 1, i) = h(i, n + 1);
  }
  h(n, n) = h(n + 1, n + 1) = std::cosh(L);
  h(n, n + 1) = h(n + 1, n) = -1.0;
  return h;
}

Eigen::VectorXd hessian_variables(const ChordConfig& cfg, const TransverseWeights& w,
                                  const EndpointVariation& ev) {
  require_weights(cfg, w);
  const int n = cfg.size();
  Eigen::VectorXd x(n + 2);
  for (int i = 0; i < n; ++i) x(i) = std::sin(cfg.crossing(i).theta) * w.a[i];
  x(n) = ev.u_perp;
  x(n + 1) = ev.v_perp;
  return x;
}

SecondDerivatives second_derivatives(const ChordConfig& cfg, const TransverseWeights& w,
                                     const EndpointVariation& ev) {
  const Eigen::VectorXd x = hessian_variables(cfg, w, ev);
  const int n = cfg.size();
  const double L = cfg.length();
  const double inv = 1.0 / std::sinh(L);
  SecondDerivatives d;
  for (int i = 0; i < n; ++i) {
    const double si = cfg.crossing(i).s;
    for (int j = 0; j < n; ++j) {
      const double sj = cfg.crossing(j).s;
      d.metric_metric += x(i) * x(j) * std::cosh(std::min(si, sj)) * std::cosh(L - std::max(si, sj));
    }
    d.metric_endpoint += x(i) * (-ev.u_perp * std::cosh(L - si) + ev.v_perp * std::cosh(si));
  }
  d.metric_metric *= inv;
  d.metric_endpoint *= inv;
  d.endpoint_endpoint = endpoint_form(L, ev.u_perp, ev.v_perp);
  return d;
}

double hessian_form(const ChordConfig& cfg, const TransverseWeights& w,
                    const EndpointVariation& ev) {
  const Eigen::VectorXd x = hessian_variables(cfg, w, ev);
  return x.dot(hessian_matrix(cfg) * x) / std::sinh(cfg.length());
}

double endpoint_form(double length, double u_perp, double v_perp) {
  return (std::cosh(length) * (u_perp * u_perp + v_perp * v_perp) - 2.0 * u_perp * v_perp) /
         std::sinh(length);
}

double endpoint_form_rewritten(double length, double u_perp, double v_perp) {
  const double diff = u_perp - v_perp;
  return diff * diff / std::sinh(length) +
         std::tanh(0.5 * length) * (u_perp * u_perp + v_perp * v_perp);
}

MarginReport hessian_margin(const ChordConfig& cfg, HessianLayout layout) {
  const int n = cfg.size();
  const double L = cfg.length();
  const Eigen::MatrixXd h = hessian_matrix(cfg, layout);
  MarginReport r;
  r.margin_matrix = h;
  r.bounds.resize(n + 2);
  r.diagonal_gap.resize(n + 2);
  for (int i = 0; i < n; ++i) {
    const double s = cfg.crossing(i).s;
    const double eps = cfg.margin(i);
    const double to_q = L - s;
    if (eps > to_q + 1e-12) {
      throw DegenerateConfiguration("margin exceeds the distance to q");
    }
    const double room = std::max(to_q - eps, 0.0);
    r.margin_matrix(i, i) = std::cosh(s) * std::cosh(room);
    r.bounds[i] = std::cosh(s) * std::sinh(room) * eps;
  }
  const double eps_p = cfg.margin_p();
  const double eps_q = cfg.margin_q();
  r.margin_matrix(n, n) = std::cosh(L - eps_p);
  r.margin_matrix(n + 1, n + 1) = std::cosh(L - eps_q);
  r.bounds[n] = std::sinh(L - eps_p) * eps_p;
  r.bounds[n + 1] = std::sinh(L - eps_q) * eps_q;
  for (int k = 0; k < n + 2; ++k) r.diagonal_gap[k] = h(k, k) - r.margin_matrix(k, k);

  r.margin_matrix_min_eig = min_eigenvalue(r.margin_matrix);
  r.margin_matrix_psd = r.margin_matrix_min_eig >= -1e-12 * r.margin_matrix.norm();
  Eigen::MatrixXd cert = h;
  for (int k = 0; k < n + 2; ++k) cert(k, k) -= r.bounds[k];
  r.certificate_min_eig = min_eigenvalue(cert);
  r.certified = r.certificate_min_eig >= -1e-12 * h.norm();
  return r;
}

CrossingKinematics shear_kinematics(const ChordConfig& cfg, int h_index, int l_index) {
  if (h_index < 0 || h_index >= cfg.size()) throw InvalidArgument("crossing index out of range");
  if (l_index < 0 || l_index >= h_index) {
    throw UnsupportedOrder("crossing l must lie strictly between p and h");
  }
  const double L = cfg.length();
  const auto& h = cfg.crossing(h_index);
  const auto& l = cfg.crossing(l_index);
  const double chq = std::cosh(L - h.s);
  CrossingKinematics k;
  k.f_prime = chq * std::sinh(l.s) * std::sin(h.theta) / (std::sinh(L) * std::sin(l.theta));
  k.dcos_theta = std::cosh(l.s) * chq * std::sin(l.theta) * std::sin(h.theta) / std::sinh(L);
  return k;
}

Kinematics shear_kinematics(const ChordConfig& cfg, int h_index) {
  if (h_index < 0 || h_index >= cfg.size()) throw InvalidArgument("crossing index out of range");
  const double L = cfg.length();
  const auto& h = cfg.crossing(h_index);
  Kinematics k;
  k.rho_prime = std::cosh(L - h.s) * std::sin(h.theta) / std::sinh(L);
  for (int l = 0; l < h_index; ++l) {
    const CrossingKinematics c = shear_kinematics(cfg, h_index, l);
    k.f_prime.push_back(c.f_prime);
    k.dcos_theta.push_back(c.dcos_theta);
  }
  return k;
}

}  // namespace systolica::shear
