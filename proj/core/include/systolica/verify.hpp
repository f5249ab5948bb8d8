#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "systolica/variational.hpp"

namespace systolica::verify {

// SplitMix64; identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive

 private:
  std::uint64_t state_;
};

struct CheckRecord {
  std::string name;
  int sample = 0;
  double analytic = 0.0;
  double oracle = 0.0;
  double rel_err = 0.0;  // |analytic - oracle| / max(|analytic|, floor)
  double tol = 0.0;
  bool passed() const { return rel_err <= tol; }
};

struct SuiteResult {
  std::string suite;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;
  std::vector<std::string> warnings;

  int checks_run() const { return static_cast<int>(records.size()); }
  double max_rel_err() const;
  bool passed() const;
  // Largest rel_err / tol; nullptr when empty.
  const CheckRecord* worst() const;
  // Records matching a name prefix.
  SuiteResult filtered(const std::string& prefix) const;
  void append(const SuiteResult& other);
};

struct Options {
  int samples = 100;
  std::uint64_t seed = 1;
  std::optional<double> tol;  // replaces every per-check tolerance
};

// Shear Hessian against finite differences, the closed-form endpoint block and the
// isotropic cone.
SuiteResult hessian(const Options& opts);
// Shear kinematics against finite differences.
SuiteResult kinematics(const Options& opts);
// Closed-form trigonometry against constructions in the model.
SuiteResult trig(const Options& opts);
// Polygon-space coordinates, realization, tangent fields and differentials.
SuiteResult polygon(const Options& opts);
// Eutaxy against the brute-force hull oracle, linear invariance and the toy
// systems.
SuiteResult variational(const Options& opts);

// hessian merges hessian and kinematics. Throws InvalidArgument on an unknown
// name.
SuiteResult run_suite(const std::string& name, const Options& opts);
const std::vector<std::string>& suite_names();

std::string csv_header();
std::string csv_rows(const SuiteResult& r);

// Relative-interior test by affine projection and facet enumeration; dim <= 3.
bool brute_force_eutactic(const systolica::variational::VectorFamily& f, double tol = 1e-9);

}  // namespace systolica::verify
