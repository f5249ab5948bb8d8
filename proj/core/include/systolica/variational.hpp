#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace systolica::variational {

struct VectorFamily {
  int dim = 0;
  std::vector<Eigen::VectorXd> vectors;

  // Throws InvalidArgument on an empty family, a dimension mismatch or
  // non-finite entries.
  void validate() const;
};

enum class Verdict { regular, critical, extreme };
std::string to_string(Verdict v);

struct EutaxyResult {
  bool eutactic = false;
  double margin = 0.0;         // optimum t* of the max-min-coefficient program
  std::vector<double> lambda;  // convex weights with sum lambda_i v_i = 0
  std::vector<double> separator;  // <w, v_i> <= 0 for all i, < 0 for some i
};

struct Classification {
  bool perfect = false;
  bool eutactic = false;
  int rank = 0;
  Verdict verdict = Verdict::regular;
  int index = 0;  // meaningful for critical and extreme verdicts
  EutaxyResult certificate;
};

inline constexpr double kEutaxyThreshold = 1e-9;
inline constexpr double kRankThreshold = 1e-9;

// Numerical rank by singular values above threshold * largest.
int numerical_rank(const Eigen::MatrixXd& m, double threshold = kRankThreshold);
int linear_rank(const VectorFamily& f);
int affine_rank(const VectorFamily& f);

bool is_perfect(const VectorFamily& f);
EutaxyResult is_eutactic(const VectorFamily& f);
Classification classify(const VectorFamily& f);

struct LengthFunction {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

struct SystemOfLengths {
  int dim = 0;
  std::vector<LengthFunction> functions;
  double tol = 1e-9;
};

struct ActiveSet {
  std::vector<int> indices;
  double mu = 0.0;
};

// Indices with f_s(x) - mu <= tol * max(1, |mu|).
ActiveSet active_set(const SystemOfLengths& sys, const Eigen::VectorXd& point, double tol);
VectorFamily active_gradients(const SystemOfLengths& sys, const Eigen::VectorXd& point,
                              const ActiveSet& active);
Classification classify_point(const SystemOfLengths& sys, const Eigen::VectorXd& point);

}  // namespace systolica::variational
