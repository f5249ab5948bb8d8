#include "systolica/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "systolica/errors.hpp"

namespace systolica::io {

namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InvalidArgument(std::string("expected a number for ") + what);
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidArgument(std::string("expected an integer for ") + what);
  return j.get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidArgument("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string("expected an array for ") + what);
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json rounded(const Json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    return std::isfinite(v) ? Json(round12(v)) : Json(nullptr);
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(rounded(v));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string digest(const Json& j) { return hex64(fnv1a64(j.dump())); }

Json to_json(const polygon::MarkedRightPolygon& p) {
  Json j{{"n", p.n}, {"sides", p.sides}, {"closure_defect", p.closure_defect}};
  if (p.vertices) {
    Json vs = Json::array();
    for (const auto& v : *p.vertices) vs.push_back({v.x(), v.y()});
    j["vertices"] = vs;
  }
  return j;
}

Json to_json(const polygon::PentagonCoords& c) { return {{"n", c.n}, {"coords", c.values}}; }

polygon::PentagonCoords coords_from_json(const Json& j) {
  polygon::PentagonCoords c;
  c.values = numbers(field(j, "coords"), "coords");
  c.n = j.contains("n") ? integer(j["n"], "n") : static_cast<int>(c.values.size()) + 3;
  if (c.n < 5 || static_cast<int>(c.values.size()) != c.n - 3) {
    throw InvalidArgument("coords must hold n - 3 values with n >= 5");
  }
  return c;
}

std::vector<double> sides_from_json(const Json& j) {
  auto sides = numbers(field(j, "sides"), "sides");
  if (j.contains("n") && integer(j["n"], "n") != static_cast<int>(sides.size())) {
    throw InvalidArgument("n does not match the number of sides");
  }
  for (double s : sides) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("sides must be finite and > 0");
  }
  return sides;
}

SceneInput scene_from_json(const Json& j) {
  const double length = number(field(j, "chord_length"), "chord_length");
  std::vector<shear::LeafCrossing> crossings;
  const Json& cs = field(j, "crossings");
  if (!cs.is_array()) throw InvalidArgument("crossings must be an array");
  for (const auto& c : cs) {
    crossings.push_back({number(field(c, "s"), "s"), number(field(c, "theta"), "theta")});
  }
  SceneInput in{shear::ChordConfig(length, crossings), {}, {}};
  if (j.contains("weights")) in.weights.a = numbers(j["weights"], "weights");
  if (in.weights.a.empty()) in.weights.a.assign(crossings.size(), 0.0);
  if (in.weights.a.size() != crossings.size()) {
    throw InvalidArgument("weights must have one entry per crossing");
  }
  if (j.contains("endpoint")) {
    const Json& e = j["endpoint"];
    auto get = [&](const char* k) { return e.contains(k) ? number(e[k], k) : 0.0; };
    in.endpoint = {get("u_perp"), get("u_par"), get("v_perp"), get("v_par")};
  }
  return in;
}

Json to_json(const SceneInput& s) {
  Json cs = Json::array();
  for (const auto& c : s.config.crossings()) cs.push_back({{"s", c.s}, {"theta", c.theta}});
  return {{"chord_length", s.config.length()},
          {"crossings", cs},
          {"weights", s.weights.a},
          {"endpoint",
           {{"u_perp", s.endpoint.u_perp},
            {"u_par", s.endpoint.u_par},
            {"v_perp", s.endpoint.v_perp},
            {"v_par", s.endpoint.v_par}}}};
}

variational::VectorFamily family_from_json(const Json& j) {
  variational::VectorFamily f;
  f.dim = integer(field(j, "dim"), "dim");
  const Json& vs = field(j, "vectors");
  if (!vs.is_array()) throw InvalidArgument("vectors must be an array");
  for (const auto& v : vs) {
    const auto xs = numbers(v, "vectors");
    f.vectors.push_back(Eigen::Map<const Eigen::VectorXd>(xs.data(), xs.size()));
  }
  f.validate();
  return f;
}

Json to_json(const variational::VectorFamily& f) {
  Json vs = Json::array();
  for (const auto& v : f.vectors) vs.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return {{"dim", f.dim}, {"vectors", vs}};
}

Json to_json(const variational::Classification& c) {
  Json cert{{"margin", c.certificate.margin}};
  if (c.eutactic) {
    cert["lambda"] = c.certificate.lambda;
  } else {
    cert["separator"] = c.certificate.separator;
  }
  return {{"perfect", c.perfect},
          {"eutactic", c.eutactic},
          {"rank", c.rank},
          {"verdict", variational::to_string(c.verdict)},
          {"index", c.index},
          {"certificate", cert}};
}

extremal::SurfaceSignature signature_from_json(const Json& j) {
  extremal::SurfaceSignature s;
  s.chi = integer(field(j, "chi"), "chi");
  if (j.contains("boundary")) s.boundary = numbers(j["boundary"], "boundary");
  if (j.contains("B")) {
    if (!j["B"].is_array()) throw InvalidArgument("B must be an array");
    for (const auto& b : j["B"]) s.B.push_back(integer(b, "B"));
  }
  if (j.contains("L_B")) s.L_B = number(j["L_B"], "L_B");
  return s;
}

Json to_json(const extremal::SurfaceSignature& s) {
  return {{"chi", s.chi}, {"boundary", s.boundary}, {"B", s.B}, {"L_B", s.L_B}};
}

Json to_json(const extremal::ExtremeReport& r) {
  Json counts;
  if (r.problem == extremal::Problem::arcs) {
    counts = {{"arcs", r.counts.curves}, {"hexagons", r.counts.cells}, {"bigons", r.counts.special}};
  } else {
    counts = {{"loops", r.counts.curves},
              {"triangles", r.counts.cells},
              {"monogons", r.counts.special}};
  }
  Json j{{"problem", extremal::to_string(r.problem)},
         {"x", r.x},
         {"residual", r.residual},
         {"counts", counts},
         {"bracket", {r.bracket.lo, r.bracket.hi}},
         {"iterations", r.iterations}};
  j["bavard_equality_defect"] =
      r.bavard_equality_defect ? Json(*r.bavard_equality_defect) : Json(nullptr);
  return j;
}

Json to_json(const extremal::GapReport& g) {
  return {{"min_ratio", finite_or_null(g.min_ratio)},
          {"min_same_type_ratio", finite_or_null(g.min_same_type_ratio)},
          {"min_mixed_ratio", finite_or_null(g.min_mixed_ratio)},
          {"side_ratio", g.side_ratio},
          {"side_formula_error", g.side_formula_error},
          {"min_chain_bound_margin", finite_or_null(g.min_chain_bound_margin)},
          {"diagonals", g.diagonals}};
}

}  // namespace systolica::io
