#include <cmath>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "systolica/errors.hpp"
#include "systolica/io.hpp"
#include "systolica/verify.hpp"

using namespace systolica;
using io::Json;

TEST(Io, RoundsToTwelveDigits) {
  EXPECT_EQ(io::round12(M_PI), 3.14159265359);
  const Json j = io::rounded(Json{{"a", 1.0 / 3.0}, {"b", {NAN, 2}}, {"c", "text"}});
  EXPECT_EQ(j["a"].get<double>(), 0.333333333333);
  EXPECT_TRUE(j["b"][0].is_null());
  EXPECT_EQ(j["b"][1], 2);
  EXPECT_EQ(j["c"], "text");
}

TEST(Io, DigestIsStable) {
  // FNV-1a reference values.
  EXPECT_EQ(io::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(io::hex64(io::fnv1a64("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(io::digest(Json{{"x", 1}}), io::digest(Json::parse(R"({"x":1})")));
}

TEST(Io, SignatureRoundTrip) {
  const Json j = Json::parse(R"({"chi": -1, "boundary": [0, 1.5], "B": [1], "L_B": 3})");
  const auto sig = io::signature_from_json(j);
  EXPECT_EQ(sig.chi, -1);
  EXPECT_EQ(sig.B.size(), 1u);
  EXPECT_EQ(io::signature_from_json(io::to_json(sig)).L_B, 3.0);
}

TEST(Io, ReadersRejectMalformedInput) {
  EXPECT_THROW(io::signature_from_json(Json::parse(R"({"boundary": []})")), InvalidArgument);
  EXPECT_THROW(io::family_from_json(Json::parse(R"({"dim": 2, "vectors": [[1]]})")), InvalidArgument);
  EXPECT_THROW(io::coords_from_json(Json::parse(R"({"n": 6, "coords": [1, 1]})")), InvalidArgument);
  EXPECT_THROW(io::sides_from_json(Json::parse(R"({"sides": "no"})")), InvalidArgument);
}

TEST(Io, SceneReader) {
  const auto s = io::scene_from_json(Json::parse(R"({
    "chord_length": 2.0,
    "crossings": [{"s": 0.5, "theta": 1.0}],
    "weights": [0.3],
    "endpoint": {"u_perp": 0.1, "u_par": 0.0, "v_perp": 0.2, "v_par": 0.0}})"));
  EXPECT_EQ(s.config.size(), 1);
  EXPECT_DOUBLE_EQ(s.endpoint.v_perp, 0.2);
  EXPECT_DOUBLE_EQ(io::scene_from_json(io::to_json(s)).config.length(), 2.0);
}

TEST(Rng, ReproducibleStreams) {
  verify::Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next(), b.next());
  verify::Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform(-1.0, 2.0);
    ASSERT_GE(u, -1.0);
    ASSERT_LT(u, 2.0);
    const int k = c.integer(3, 5);
    ASSERT_GE(k, 3);
    ASSERT_LE(k, 5);
  }
}

TEST(Suites, AllPassAtSmallSize) {
  for (const auto& name : verify::suite_names()) {
    const auto r = verify::run_suite(name, {30, 5, std::nullopt});
    EXPECT_TRUE(r.passed()) << name << " worst " << (r.worst() ? r.worst()->name : "");
    EXPECT_GT(r.checks_run(), 0);
  }
}

TEST(Suites, ZeroSamplesIsVacuousWithWarning) {
  const auto r = verify::run_suite("trig", {0, 1, std::nullopt});
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks_run(), 0);
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(Suites, UnknownNameThrows) {
  EXPECT_THROW(verify::run_suite("nope", {}), InvalidArgument);
  EXPECT_THROW(verify::run_suite("trig", {-1, 1, std::nullopt}), InvalidArgument);
}

TEST(Suites, DeterministicPerSeed) {
  const auto a = verify::run_suite("polygon", {10, 3, std::nullopt});
  const auto b = verify::run_suite("polygon", {10, 3, std::nullopt});
  EXPECT_EQ(verify::csv_rows(a), verify::csv_rows(b));
  const auto c = verify::run_suite("polygon", {10, 4, std::nullopt});
  EXPECT_NE(verify::csv_rows(a), verify::csv_rows(c));
}

TEST(Suites, TightToleranceFails) {
  const auto r = verify::run_suite("hessian", {5, 1, 1e-30});
  EXPECT_FALSE(r.passed());
}

TEST(Suites, HessianCoversKinematics) {
  const auto r = verify::run_suite("hessian", {5, 1, std::nullopt});
  EXPECT_GT(r.filtered("kinematics").checks_run(), 0);
  EXPECT_GT(r.filtered("endpoint_block").checks_run(), 0);
}

TEST(Csv, HeaderAndRowCount) {
  const auto r = verify::run_suite("variational", {3, 1, std::nullopt});
  EXPECT_EQ(verify::csv_header(), "suite,check,sample,analytic,oracle,rel_err,tol,passed\n");
  const std::string rows = verify::csv_rows(r);
  EXPECT_EQ(static_cast<int>(std::count(rows.begin(), rows.end(), '\n')), r.checks_run());
}
