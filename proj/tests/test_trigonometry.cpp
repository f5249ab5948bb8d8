#include <cmath>

#include <gtest/gtest.h>

#include "systolica/errors.hpp"
#include "systolica/trigonometry.hpp"

using namespace systolica::trig;

namespace {
const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;
}

TEST(Pentagon, RegularSide) {
  EXPECT_NEAR(regular_pentagon_side(), 1.0612750619050357, 1e-14);
  EXPECT_NEAR(std::cosh(regular_pentagon_side()), kGolden, 1e-14);
  const double s = regular_pentagon_side();
  EXPECT_NEAR(pentagon_perpendicular(s, s), s, 1e-13);
}

TEST(Pentagon, UnitSides) {
  EXPECT_NEAR(pentagon_perpendicular(1.0, 1.0), 0.8474505812958514, 1e-14);
}

TEST(Pentagon, NoPentagonWhenProductTooSmall) {
  EXPECT_THROW(pentagon_perpendicular(0.3, 0.3), systolica::NoPentagon);
  EXPECT_THROW(pentagon_perpendicular(-1.0, 2.0), systolica::InvalidArgument);
}

TEST(SafeAcosh, TouchingTolerance) {
  EXPECT_EQ(safe_acosh(1.0 - 1e-12), 0.0);
  EXPECT_NEAR(safe_acosh(std::sqrt(2.0)), 0.881373587019543, 1e-14);
  EXPECT_THROW(safe_acosh(0.9), systolica::DegenerateConfiguration);
}

TEST(SemiRegular, PartnerFixedPointAtHexagon) {
  // sinh^2(l/2) = cos(pi/3)
  const double l = 2.0 * std::asinh(std::sqrt(0.5));
  EXPECT_NEAR(l, 1.3169578969248166, 1e-14);
  EXPECT_NEAR(semiregular_partner(l, 3), l, 1e-13);
}

TEST(SemiRegular, PartnerIsAnInvolution) {
  for (int n = 3; n <= 8; ++n) {
    for (double l1 : {0.1, 0.7, 2.0, 5.0}) {
      EXPECT_NEAR(semiregular_partner(semiregular_partner(l1, n), n), l1, 1e-11 * l1);
    }
  }
}

TEST(SemiRegular, PartnerOfSquareGivesZeroAngle) {
  EXPECT_THROW(semiregular_partner(1.0, 2), systolica::InvalidArgument);
}

TEST(Trirectangle, CenterDistance) {
  const double half = 0.4;
  const double h = trirectangle_center(half, 5);
  EXPECT_NEAR(std::cosh(h), std::cosh(half) / std::sin(M_PI / 5), 1e-14);
  const auto t = TrirectangleData::make(half, 5);
  EXPECT_NEAR(t.residual(), 0.0, 1e-13);
  EXPECT_NEAR(t.center_distance, h, 1e-14);
}

TEST(Trirectangle, LinkRecoversOtherCenterDistance) {
  const int n = 4;
  const double l1 = 1.1;
  const double l2 = semiregular_partner(l1, n);
  const double h1 = trirectangle_center(l2 / 2, n);
  const double h2 = trirectangle_center(l1 / 2, n);
  EXPECT_NEAR(trirectangle_link(l2 / 2, h2), h1, 1e-12);
}

TEST(Diagonals, SameTypeWithKOneIsASide) {
  const int n = 5;
  const double l1 = 0.9;
  const double l2 = semiregular_partner(l1, n);
  const double h1 = trirectangle_center(l2 / 2, n);
  EXPECT_NEAR(diagonal_same_type(h1, 1, n), l2, 1e-12);
}

TEST(Diagonals, MixedValueFactors) {
  const int n = 6, k = 5;
  const double l1 = 0.8;
  const double l2 = semiregular_partner(l1, n);
  const double h1 = trirectangle_center(l2 / 2, n);
  const double h2 = trirectangle_center(l1 / 2, n);
  const double factored =
      std::cosh(h1) * std::cosh(h2) * (std::cos(M_PI / n) - std::cos(k * M_PI / n));
  EXPECT_NEAR(mixed_diagonal_value(h1, h2, k, n), factored, 1e-12 * factored);
  EXPECT_NEAR(std::cosh(diagonal_mixed_type(h1, h2, k, n)), factored, 1e-11 * factored);
}

TEST(Diagonals, MixedChainBoundOnSweep) {
  for (int n = 3; n <= 8; ++n) {
    for (double l1 = 0.05; l1 < 6.0; l1 *= 1.3) {
      const double l2 = semiregular_partner(l1, n);
      const double h1 = trirectangle_center(l2 / 2, n);
      const double h2 = trirectangle_center(l1 / 2, n);
      const double bound = 2.0 * std::cosh(l1 / 2) * std::cosh(l2 / 2);
      for (int k = 3; k <= 2 * n - 3; k += 2) {
        EXPECT_GE(mixed_diagonal_value(h1, h2, k, n), bound * (1 - 1e-12)) << n << " " << k;
      }
    }
  }
}

TEST(Equilateral, GenusTwoAngle) {
  const double x = 2.0 * std::acosh(1.0 / (2.0 * std::sin(M_PI / 18)));
  EXPECT_NEAR(equilateral_angle(x), M_PI / 9, 1e-13);
}

TEST(Equilateral, SmallTrianglesAreNearlyEuclidean) {
  EXPECT_NEAR(equilateral_angle(1e-4), M_PI / 3, 1e-8);
}
