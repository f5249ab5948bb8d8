#include "systolica/linear_program.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "systolica/errors.hpp"

namespace systolica::lp {

namespace {

struct Tableau {
  Eigen::MatrixXd t;  // rows x (cols + 1), last column is the right-hand side
  std::vector<int> basis;
  std::vector<bool> allowed;

  int rows() const { return static_cast<int>(t.rows()); }
  int cols() const { return static_cast<int>(t.cols()) - 1; }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    }
    basis[r] = c;
  }

  // Returns false when unbounded.
  bool run(const Eigen::VectorXd& cost, double tol) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < cols() && enter < 0; ++j) {
        if (!allowed[j]) continue;
        double reduced = cost(j);
        for (int i = 0; i < rows(); ++i) reduced -= cost(basis[i]) * t(i, j);
        if (reduced > tol) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (t(i, enter) > tol) {
          const double ratio = t(i, cols()) / t(i, enter);
          if (ratio < best - tol || (std::abs(ratio - best) <= tol && basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw Error("simplex iteration limit reached");
  }
};

}  // namespace

Solution maximize(const Problem& pr, double tol) {
  const int n = static_cast<int>(pr.c.size());
  const int me = static_cast<int>(pr.A_eq.rows());
  const int ml = static_cast<int>(pr.A_le.rows());
  if ((me > 0 && pr.A_eq.cols() != n) || (ml > 0 && pr.A_le.cols() != n) ||
      pr.b_eq.size() != me || pr.b_le.size() != ml) {
    throw InvalidArgument("linear program: inconsistent dimensions");
  }
  const int m = me + ml;
  const int art0 = n + ml;
  const int cols = art0 + m;

  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m, cols + 1);
  for (int i = 0; i < me; ++i) {
    tab.t.row(i).head(n) = pr.A_eq.row(i);
    tab.t(i, cols) = pr.b_eq(i);
  }
  for (int i = 0; i < ml; ++i) {
    tab.t.row(me + i).head(n) = pr.A_le.row(i);
    tab.t(me + i, n + i) = 1.0;
    tab.t(me + i, cols) = pr.b_le(i);
  }
  for (int i = 0; i < m; ++i) {
    if (tab.t(i, cols) < 0) tab.t.row(i) *= -1.0;
    tab.t(i, art0 + i) = 1.0;
    tab.basis.push_back(art0 + i);
  }
  tab.allowed.assign(cols, true);

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
  phase1.tail(m).setConstant(-1.0);
  tab.run(phase1, tol);

  const double scale = 1.0 + (m > 0 ? tab.t.col(cols).cwiseAbs().maxCoeff() : 0.0);
  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= art0) infeas += tab.t(i, cols);
  }
  Solution sol;
  if (infeas > 1e-9 * scale) {
    sol.status = Status::infeasible;
    return sol;
  }

  // Pivot remaining artificials out; drop rows that are redundant.
  std::vector<int> keep;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= art0) {
      int c = -1;
      for (int j = 0; j < art0 && c < 0; ++j) {
        if (std::abs(tab.t(i, j)) > 1e-9) c = j;
      }
      if (c < 0) continue;
      tab.pivot(i, c);
    }
    keep.push_back(i);
  }
  if (static_cast<int>(keep.size()) < m) {
    Eigen::MatrixXd reduced(keep.size(), cols + 1);
    std::vector<int> basis;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      reduced.row(k) = tab.t.row(keep[k]);
      basis.push_back(tab.basis[keep[k]]);
    }
    tab.t = reduced;
    tab.basis = basis;
  }
  for (int j = art0; j < cols; ++j) tab.allowed[j] = false;

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  cost.head(n) = pr.c;
  if (!tab.run(cost, tol)) {
    sol.status = Status::unbounded;
    return sol;
  }
  sol.status = Status::optimal;
  sol.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < tab.rows(); ++i) {
    if (tab.basis[i] < n) sol.x(tab.basis[i]) = tab.t(i, cols);
  }
  sol.value = pr.c.dot(sol.x);
  return sol;
}

}  // namespace systolica::lp
