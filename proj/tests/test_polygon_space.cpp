#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "systolica/errors.hpp"
#include "systolica/polygon_space.hpp"
#include "systolica/trigonometry.hpp"

using namespace systolica;
using namespace systolica::polygon;

TEST(PentagonCoords, RegularPentagon) {
  const double s = trig::regular_pentagon_side();
  const auto p = sides_from_pentagon_coords({5, {s, s}});
  ASSERT_EQ(p.n, 5);
  for (double side : p.sides) EXPECT_NEAR(side, s, 1e-12);
  EXPECT_LT(p.closure_defect, 1e-10);
}

TEST(PentagonCoords, UnitCoordinates) {
  const auto p = sides_from_pentagon_coords({5, {1.0, 1.0}});
  EXPECT_NEAR(p.side(1), trig::pentagon_perpendicular(1.0, 1.0), 1e-12);
  EXPECT_NEAR(p.side(3), 1.0, 1e-14);
  EXPECT_NEAR(p.side(4), 1.0, 1e-14);
  EXPECT_NEAR(p.side(2), p.side(5), 1e-12);
}

TEST(PentagonCoords, RoundTrip) {
  for (int n = 5; n <= 10; ++n) {
    PentagonCoords c{n, {}};
    for (int k = 0; k < n - 3; ++k) c.values.push_back(0.9 + 0.17 * k);
    const auto back = pentagon_coords(sides_from_pentagon_coords(c));
    ASSERT_EQ(back.values.size(), c.values.size());
    for (int k = 0; k < n - 3; ++k) EXPECT_NEAR(back.values[k], c.values[k], 1e-10) << n;
  }
}

TEST(PentagonCoords, RejectsWrongCount) {
  EXPECT_THROW(sides_from_pentagon_coords({6, {1.0, 1.0}}), InvalidArgument);
}

TEST(PentagonCoords, SmallCoordinatesHaveNoPentagon) {
  EXPECT_THROW(sides_from_pentagon_coords({5, {0.3, 0.3}}), Error);
}

TEST(Realize, ClosesRegularPentagon) {
  const double s = trig::regular_pentagon_side();
  const std::vector<double> sides(5, s);
  const auto p = realize(sides);
  EXPECT_LT(p.closure_defect, 1e-8);
  for (int i = 1; i <= 5; ++i) EXPECT_NEAR(interior_angle(p, i), M_PI / 2, 1e-9);
}

TEST(Realize, QuadrilateralNeverCloses) {
  const std::vector<double> sides{1.0, 1.0, 1.0, 1.0};
  EXPECT_GT(realize(sides).closure_defect, 1e-3);
}

TEST(Realize, RejectsShortAndNonPositive) {
  EXPECT_THROW(realize(std::vector<double>{1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(realize(std::vector<double>{1.0, 1.0, -1.0, 1.0, 1.0}), InvalidArgument);
}

TEST(SemiRegular, HexagonOfEqualSides) {
  const double l = 2.0 * std::asinh(std::sqrt(0.5));
  const auto p = SemiRegularPoint::from_l1(l, 3);
  EXPECT_NEAR(p.l2, l, 1e-13);
  EXPECT_NEAR(p.defect(), 0.0, 1e-13);
  const auto hex = p.expand();
  EXPECT_EQ(hex.n, 6);
  EXPECT_LT(realize(hex.sides).closure_defect, 1e-8);
}

TEST(SemiRegular, ProportionalityOnFamily) {
  for (int n = 3; n <= 5; ++n) {
    for (double l1 : {0.5, 1.0, 2.0}) {
      EXPECT_LT(proportionality_check(SemiRegularPoint::from_l1(l1, n)), 1e-8) << n << " " << l1;
    }
  }
}

TEST(TangentU, NormalizedAtIndex) {
  const auto p = sides_from_pentagon_coords({6, {1.1, 0.9, 1.3}});
  const auto d = tangent_u(p, 2);
  ASSERT_EQ(static_cast<int>(d.size()), 6);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
}

TEST(TangentU, FlexKeepsPolygonClosed) {
  const auto p = sides_from_pentagon_coords({7, {1.1, 0.9, 1.3, 1.0}});
  const auto d = tangent_u(p, 3);
  const double t = 1e-4;
  std::vector<double> moved(p.sides);
  for (int k = 0; k < p.n; ++k) moved[k] += t * d[k];
  // First-order motion: defect is O(t^2).
  EXPECT_LT(realize(moved).closure_defect, 1e-6);
}

TEST(Boundary, ValueIsOddSideSum) {
  const auto a = SemiRegularPoint::from_l1(0.7, 3).expand();
  const auto b = SemiRegularPoint::from_l1(1.2, 4).expand();
  const std::vector<MarkedRightPolygon> ps{a, b};
  const auto bd = boundary_functional(ps);
  EXPECT_NEAR(bd.value, 3 * 0.7 + 4 * 1.2, 1e-12);
  EXPECT_EQ(bd.coefficients.size(), 2u);
}

namespace {

// Regular l-gon of radius r about i.
PolygonChain regular_chain(int l, double r) {
  std::vector<HPoint> v;
  for (int k = 0; k < l; ++k) {
    const HTangent dir{HPoint(0, 1), std::cos(2 * M_PI * k / l), std::sin(2 * M_PI * k / l)};
    v.push_back(exp_map(scaled(dir, r)));
  }
  return PolygonChain(v);
}

}  // namespace

TEST(Chain, RegularChainHasEqualLengthsAndAngles) {
  const ChainDifferentials cd(regular_chain(5, 1.0));
  for (int i = 1; i <= 5; ++i) {
    EXPECT_NEAR(cd.length(i), cd.length(1), 1e-12);
    EXPECT_NEAR(cd.angle(i), cd.angle(1), 1e-12);
  }
}

TEST(Chain, LengthJacobianHasFullRank) {
  const ChainDifferentials cd(regular_chain(6, 0.8));
  const Eigen::MatrixXd J = cd.length_jacobian();
  EXPECT_EQ(J.rows(), 6);
  EXPECT_EQ(J.cols(), 12);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  EXPECT_GT(svd.singularValues().minCoeff(), 1e-6);
}

TEST(Chain, DLengthMatchesMovingOneVertex) {
  const PolygonChain chain = regular_chain(5, 1.0);
  const ChainDifferentials cd(chain);
  std::vector<HTangent> u;
  for (const auto& v : chain.vertices()) u.push_back(HTangent{v, 0.0, 0.0});
  u[1] = HTangent{chain.vertex(2), 0.2, -0.1};

  const double h = 1e-5;
  auto length_after = [&](double t) {
    std::vector<HPoint> v = chain.vertices();
    v[1] = HPoint(v[1].x() + t * 0.2, v[1].y() - t * 0.1);
    return ChainDifferentials(PolygonChain(v)).length(1);
  };
  const double fd = (length_after(h) - length_after(-h)) / (2 * h);
  EXPECT_NEAR(cd.d_length(1, u), fd, 1e-8);
}
