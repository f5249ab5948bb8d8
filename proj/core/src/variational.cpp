#include "systolica/variational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "systolica/errors.hpp"
#include "systolica/linear_program.hpp"

namespace systolica::variational {

namespace {

Eigen::MatrixXd as_columns(const VectorFamily& f) {
  Eigen::MatrixXd m(f.dim, f.vectors.size());
  for (std::size_t i = 0; i < f.vectors.size(); ++i) m.col(i) = f.vectors[i];
  return m;
}

}  // namespace

void VectorFamily::validate() const {
  if (dim < 1) throw InvalidArgument("vector family: dim must be at least 1");
  if (vectors.empty()) throw InvalidArgument("vector family: empty");
  for (const auto& v : vectors) {
    if (v.size() != dim) throw InvalidArgument("vector family: dimension mismatch");
    if (!v.allFinite()) throw InvalidArgument("vector family: non-finite entry");
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::regular: return "regular";
    case Verdict::critical: return "critical";
    case Verdict::extreme: return "extreme";
  }
  return "regular";
}

int numerical_rank(const Eigen::MatrixXd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > threshold * s(0)) ++r;
  }
  return r;
}

int linear_rank(const VectorFamily& f) {
  f.validate();
  return numerical_rank(as_columns(f));
}

int affine_rank(const VectorFamily& f) {
  f.validate();
  Eigen::MatrixXd d(f.dim, f.vectors.size() - 1);
  for (std::size_t i = 1; i < f.vectors.size(); ++i) d.col(i - 1) = f.vectors[i] - f.vectors[0];
  return numerical_rank(d);
}

bool is_perfect(const VectorFamily& f) { return affine_rank(f) == f.dim; }

EutaxyResult is_eutactic(const VectorFamily& f) {
  f.validate();
  const int m = static_cast<int>(f.vectors.size());
  const int d = f.dim;
  Eigen::MatrixXd v = as_columns(f);
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale > 0) v /= scale;

  // lambda_i = mu_i + t with mu, t >= 0: maximize t.
  lp::Problem pr;
  pr.c = Eigen::VectorXd::Zero(m + 1);
  pr.c(m) = 1.0;
  pr.A_eq = Eigen::MatrixXd::Zero(1 + d, m + 1);
  pr.b_eq = Eigen::VectorXd::Zero(1 + d);
  pr.A_eq.row(0).head(m).setOnes();
  pr.A_eq(0, m) = m;
  pr.b_eq(0) = 1.0;
  pr.A_eq.block(1, 0, d, m) = v;
  pr.A_eq.block(1, m, d, 1) = v.rowwise().sum();
  pr.A_le = Eigen::MatrixXd::Zero(0, m + 1);
  pr.b_le = Eigen::VectorXd::Zero(0);
  const lp::Solution sol = lp::maximize(pr);

  EutaxyResult out;
  if (sol.status == lp::Status::optimal) {
    out.margin = sol.x(m);
    out.lambda.resize(m);
    for (int i = 0; i < m; ++i) out.lambda[i] = sol.x(i) + sol.x(m);
  }
  out.eutactic = sol.status == lp::Status::optimal && out.margin > kEutaxyThreshold;
  if (out.eutactic) return out;

  // Separator: maximize -<w, sum v_i> with <w, v_i> <= 0 and |w|_inf <= 1.
  lp::Problem sep;
  sep.c = Eigen::VectorXd::Zero(2 * d);
  const Eigen::VectorXd total = v.rowwise().sum();
  sep.c.head(d) = -total;
  sep.c.tail(d) = total;
  sep.A_eq = Eigen::MatrixXd::Zero(0, 2 * d);
  sep.b_eq = Eigen::VectorXd::Zero(0);
  sep.A_le = Eigen::MatrixXd::Zero(m + 2 * d, 2 * d);
  sep.b_le = Eigen::VectorXd::Zero(m + 2 * d);
  sep.A_le.block(0, 0, m, d) = v.transpose();
  sep.A_le.block(0, d, m, d) = -v.transpose();
  sep.A_le.block(m, 0, 2 * d, 2 * d).setIdentity();
  sep.b_le.tail(2 * d).setOnes();
  const lp::Solution ws = lp::maximize(sep);
  if (ws.status == lp::Status::optimal) {
    Eigen::VectorXd w = ws.x.head(d) - ws.x.tail(d);
    const double wmax = w.cwiseAbs().maxCoeff();
    if (wmax > 0) w /= wmax;
    out.separator.assign(w.data(), w.data() + d);
  }
  return out;
}

Classification classify(const VectorFamily& f) {
  Classification c;
  c.perfect = is_perfect(f);
  c.certificate = is_eutactic(f);
  c.eutactic = c.certificate.eutactic;
  c.rank = linear_rank(f);
  if (c.eutactic && c.perfect) {
    c.verdict = Verdict::extreme;
  } else if (c.eutactic) {
    c.verdict = Verdict::critical;
  } else {
    c.verdict = Verdict::regular;
  }
  c.index = c.eutactic ? c.rank : 0;
  return c;
}

ActiveSet active_set(const SystemOfLengths& sys, const Eigen::VectorXd& point, double tol) {
  if (sys.functions.empty()) throw InvalidArgument("active_set: empty system of lengths");
  if (point.size() != sys.dim) throw InvalidArgument("active_set: point dimension mismatch");
  std::vector<double> values;
  for (const auto& f : sys.functions) values.push_back(f.value(point));
  ActiveSet out;
  out.mu = *std::min_element(values.begin(), values.end());
  const double band = tol * std::max(1.0, std::abs(out.mu));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] - out.mu <= band) out.indices.push_back(static_cast<int>(i));
  }
  return out;
}

VectorFamily active_gradients(const SystemOfLengths& sys, const Eigen::VectorXd& point,
                              const ActiveSet& active) {
  VectorFamily fam{sys.dim, {}};
  for (int i : active.indices) fam.vectors.push_back(sys.functions.at(i).gradient(point));
  return fam;
}

Classification classify_point(const SystemOfLengths& sys, const Eigen::VectorXd& point) {
  const ActiveSet a = active_set(sys, point, sys.tol);
  return classify(active_gradients(sys, point, a));
}

}  // namespace systolica::variational
