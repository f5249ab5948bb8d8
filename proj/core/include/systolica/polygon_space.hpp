#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "systolica/hyperbolic_plane.hpp"

// Side and vertex indices are 1-based and cyclic modulo n throughout.
namespace systolica::polygon {

// (l3, h4, ..., h_{n-2}, l_{n-1}) where h_i is the length of the common
// perpendicular between side 1 and side i.
struct PentagonCoords {
  int n = 0;
  std::vector<double> values;
};

struct MarkedRightPolygon {
  int n = 0;
  std::vector<double> sides;
  // vertices[k-1] is the start of side k.
  std::optional<std::vector<HPoint>> vertices;
  double closure_defect = 0.0;

  double side(int i) const;
  const HPoint& vertex(int i) const;
};

class PolygonChain {
 public:
  explicit PolygonChain(std::vector<HPoint> vertices);
  int size() const noexcept { return static_cast<int>(vertices_.size()); }
  const HPoint& vertex(int i) const;
  const std::vector<HPoint>& vertices() const noexcept { return vertices_; }

 private:
  std::vector<HPoint> vertices_;
};

struct SemiRegularPoint {
  int n = 0;
  double l1 = 0.0;  // odd sides
  double l2 = 0.0;  // even sides

  static SemiRegularPoint from_l1(double l1, int n);
  double defect() const;
  // Sides l1, l2, l1, l2, ... of the 2n-gon.
  MarkedRightPolygon expand() const;
};

MarkedRightPolygon sides_from_pentagon_coords(const PentagonCoords& c);
PentagonCoords pentagon_coords(const MarkedRightPolygon& p);

// Walks the boundary counterclockwise with a left quarter turn after each
// side; the defect is the distance between start and end plus the residual
// rotation of the final frame. Accepts any n >= 3; only n >= 5 can close.
MarkedRightPolygon realize(std::span<const double> sides);

// Interior angle at vertex i of a realized polygon.
double interior_angle(const MarkedRightPolygon& p, int i);

// Derivatives of all side lengths along the flow u_i, normalized so that
// component i equals 1.
std::vector<double> tangent_u(const MarkedRightPolygon& p, int i);

// dl_i and dtheta_i of a closed chain x_1..x_l. U_i points away from x_{i-1},
// V_i away from x_{i+1}; theta_i is the counterclockwise angle from U_i to V_i.
class ChainDifferentials {
 public:
  explicit ChainDifferentials(const PolygonChain& chain);

  int size() const noexcept { return static_cast<int>(lengths_.size()); }
  double length(int i) const;
  double angle(int i) const;
  const HTangent& U(int i) const;
  const HTangent& V(int i) const;
  HTangent U_perp(int i) const;  // U rotated by +pi/2
  HTangent V_perp(int i) const;  // V rotated by -pi/2

  // u holds one tangent per vertex, u[k-1] based at x_k.
  double d_length(int i, std::span<const HTangent> u) const;
  double d_angle(int i, std::span<const HTangent> u) const;

  // Rows dl_i in orthonormal frames (y e_x, y e_y) at each vertex; l x 2l.
  Eigen::MatrixXd length_jacobian() const;

 private:
  int wrap(int i) const;
  std::vector<double> lengths_;
  std::vector<double> angles_;
  std::vector<HTangent> U_;
  std::vector<HTangent> V_;
};

// Max discrepancy of the two proportional 1-forms on the basis u_1..u_2n.
double proportionality_check(const SemiRegularPoint& p);

struct BoundaryDecomposition {
  double value = 0.0;
  // dB = sum_i coefficients[i] * (sum of d l_even over polygon i).
  std::vector<double> coefficients;
};

// Sum of odd-indexed sides; the coefficients require each polygon to be
// semi-regular.
BoundaryDecomposition boundary_functional(std::span<const MarkedRightPolygon> ps);

}  // namespace systolica::polygon
