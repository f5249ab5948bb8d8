#include <cmath>

#include <gtest/gtest.h>

#include "systolica/errors.hpp"
#include "systolica/hyperbolic_plane.hpp"

using namespace systolica;

TEST(HPoint, RejectsPointsOffTheModel) {
  EXPECT_THROW(HPoint(0.0, 0.0), InvalidArgument);
  EXPECT_THROW(HPoint(0.0, -1.0), InvalidArgument);
  EXPECT_THROW(HPoint(NAN, 1.0), InvalidArgument);
}

TEST(Distance, VerticalPoints) {
  EXPECT_NEAR(dist(HPoint(0, 1), HPoint(0, std::exp(2.0))), 2.0, 1e-14);
  EXPECT_NEAR(dist(HPoint(3, 2), HPoint(3, 2)), 0.0, 1e-15);
}

TEST(Distance, HorizontalPoints) {
  // cosh d = 1 + |p - q|^2 / (2 y_p y_q)
  EXPECT_NEAR(dist(HPoint(-1, 1), HPoint(1, 1)), std::acosh(3.0), 1e-14);
}

TEST(Distance, InvariantUnderIsometry) {
  const HIsometry g(2.0, 1.0, 1.0, 3.0);
  const HPoint p(0.3, 0.7), q(-1.2, 2.5);
  EXPECT_NEAR(dist(g.apply(p), g.apply(q)), dist(p, q), 1e-12);
}

TEST(Tangent, NormAndRotation) {
  const HTangent v{HPoint(1, 2), 2.0, 0.0};
  EXPECT_DOUBLE_EQ(norm(v), 1.0);
  const HTangent r = rotate_quarter(v);
  EXPECT_NEAR(r.dx, 0.0, 1e-15);
  EXPECT_NEAR(r.dy, 2.0, 1e-15);
  EXPECT_NEAR(oriented_angle(v, r), M_PI / 2, 1e-14);
}

TEST(Tangent, UnitTowardPointsAlongGeodesic) {
  const HPoint p(0, 1), q(0, 5);
  const HTangent u = unit_toward(p, q);
  EXPECT_NEAR(norm(u), 1.0, 1e-14);
  const HPoint moved = exp_map(scaled(u, dist(p, q)));
  EXPECT_NEAR(moved.x(), q.x(), 1e-12);
  EXPECT_NEAR(moved.y(), q.y(), 1e-12);
}

TEST(Geodesic, ThroughVerticalPoints) {
  const HGeodesic g = HGeodesic::through(HPoint(2, 1), HPoint(2, 3));
  EXPECT_EQ(g.kind(), HGeodesic::Kind::vertical);
  EXPECT_DOUBLE_EQ(g.x0(), 2.0);
}

TEST(Geodesic, ThroughTwoPointsOnUnitCircle) {
  const HGeodesic g =
      HGeodesic::through(HPoint(std::cos(1.0), std::sin(1.0)), HPoint(std::cos(2.0), std::sin(2.0)));
  ASSERT_EQ(g.kind(), HGeodesic::Kind::arc);
  EXPECT_NEAR(g.center(), 0.0, 1e-14);
  EXPECT_NEAR(g.radius(), 1.0, 1e-14);
}

TEST(Geodesic, AxisMapSendsEndpoints) {
  const HGeodesic g = HGeodesic::from_endpoints(-2.0, 5.0);
  const HIsometry m = axis_map(g);
  EXPECT_NEAR(m.apply_ideal(0.0), -2.0, 1e-13);
  EXPECT_NEAR(m.apply_ideal(INFINITY), 5.0, 1e-13);
}

TEST(Geodesic, PointAlongIsArcLength) {
  const HGeodesic g = HGeodesic::arc(1.0, 2.0);
  EXPECT_NEAR(dist(point_along(g, -0.4), point_along(g, 1.1)), 1.5, 1e-12);
  EXPECT_NEAR(signed_distance(g, point_along(g, 0.7)), 0.0, 1e-12);
}

TEST(Geodesic, IntersectionOfUnitCircleAndAxis) {
  const auto x = intersect(HGeodesic::vertical(0.0), HGeodesic::arc(0.0, 1.0));
  ASSERT_TRUE(x.has_value());
  EXPECT_NEAR(x->x(), 0.0, 1e-14);
  EXPECT_NEAR(x->y(), 1.0, 1e-14);
  EXPECT_FALSE(intersect(HGeodesic::vertical(0.0), HGeodesic::vertical(1.0)).has_value());
}

TEST(Geodesic, CommonPerpendicularOfNestedArcs) {
  // Circles |z| = 1 and |z| = e^2 share the perpendicular x = 0.
  const auto seg = common_perpendicular(HGeodesic::arc(0.0, 1.0), HGeodesic::arc(0.0, std::exp(2.0)));
  EXPECT_NEAR(seg.length, 2.0, 1e-12);
  EXPECT_NEAR(seg.on_g.x(), 0.0, 1e-12);
}

TEST(Geodesic, CommonPerpendicularNeedsDisjointGeodesics) {
  EXPECT_THROW(common_perpendicular(HGeodesic::vertical(0.0), HGeodesic::arc(0.0, 1.0)),
               NoPerpendicular);
  // Shared ideal endpoint at infinity.
  EXPECT_THROW(common_perpendicular(HGeodesic::vertical(0.0), HGeodesic::vertical(1.0)),
               NoPerpendicular);
}

TEST(Isometry, ComposeAndInvert) {
  const HIsometry g(1.0, 2.0, 0.5, 3.0);
  const HIsometry e = g * g.inverse();
  const HPoint p(0.4, 1.3);
  EXPECT_NEAR(e.apply(p).x(), p.x(), 1e-13);
  EXPECT_NEAR(e.apply(p).y(), p.y(), 1e-13);
  EXPECT_THROW(HIsometry(1.0, 0.0, 0.0, -1.0), InvalidArgument);
}

TEST(Isometry, RotationFixesCentre) {
  const HPoint c(0.5, 2.0);
  const HIsometry r = rotation_about(c, 1.2);
  EXPECT_NEAR(r.apply(c).x(), c.x(), 1e-13);
  EXPECT_NEAR(r.apply(c).y(), c.y(), 1e-13);
  const HTangent v{c, 1.0, 0.0};
  EXPECT_NEAR(oriented_angle(v, r.apply(v)), 1.2, 1e-12);
}

TEST(Isometry, TranslationMovesAlongGeodesic) {
  const HGeodesic g = HGeodesic::from_endpoints(-1.0, 3.0);
  const HPoint p = point_along(g, 0.0);
  EXPECT_NEAR(dist(p, translate_along(g, 0.8).apply(p)), 0.8, 1e-12);
}

TEST(KillingField, MatchesTranslationDerivative) {
  const HGeodesic g = HGeodesic::from_endpoints(-1.0, 2.0);
  const HPoint p(0.3, 0.9);
  const HTangent k = killing_field(g, p);
  const double h = 1e-5;
  const HPoint a = translate_along(g, h).apply(p), b = translate_along(g, -h).apply(p);
  EXPECT_NEAR(k.dx, (a.x() - b.x()) / (2 * h), 1e-8);
  EXPECT_NEAR(k.dy, (a.y() - b.y()) / (2 * h), 1e-8);
}

TEST(AngleData, OrientationSign) {
  const HPoint p(0, 1), q(0, 3);
  const auto left = angle_data(p, q, HTangent{p, -1.0, 0.0});
  EXPECT_NEAR(left.psi, M_PI / 2, 1e-14);
  EXPECT_EQ(left.orientation, 1);
  EXPECT_EQ(angle_data(p, q, HTangent{p, 1.0, 0.0}).orientation, -1);
}
