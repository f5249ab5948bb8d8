#pragma once

#include <Eigen/Dense>

namespace systolica::lp {

// maximize c^T x  subject to  A_eq x = b_eq,  A_le x <= b_le,  x >= 0.
struct Problem {
  Eigen::VectorXd c;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd A_le;
  Eigen::VectorXd b_le;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
};

// Dense two-phase simplex with Bland's rule.
Solution maximize(const Problem& problem, double tol = 1e-11);

}  // namespace systolica::lp
