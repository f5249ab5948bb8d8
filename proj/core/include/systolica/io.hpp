#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "systolica/extremal.hpp"
#include "systolica/polygon_space.hpp"
#include "systolica/shear_hessian.hpp"
#include "systolica/variational.hpp"

namespace systolica::io {

using Json = nlohmann::json;

// Rounds to 12 significant digits through the %.12g text form.
double round12(double v);
// Rounds every number in the tree; non-finite values become null.
Json rounded(const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);
// Digest of the compact dump of j.
std::string digest(const Json& j);

// All readers throw InvalidArgument on malformed input.
Json to_json(const polygon::MarkedRightPolygon& p);
Json to_json(const polygon::PentagonCoords& c);
polygon::PentagonCoords coords_from_json(const Json& j);
std::vector<double> sides_from_json(const Json& j);

struct SceneInput {
  shear::ChordConfig config;
  shear::TransverseWeights weights;
  shear::EndpointVariation endpoint;
};
SceneInput scene_from_json(const Json& j);
Json to_json(const SceneInput& s);

variational::VectorFamily family_from_json(const Json& j);
Json to_json(const variational::VectorFamily& f);
Json to_json(const variational::Classification& c);

extremal::SurfaceSignature signature_from_json(const Json& j);
Json to_json(const extremal::SurfaceSignature& s);
Json to_json(const extremal::ExtremeReport& r);
Json to_json(const extremal::GapReport& g);

}  // namespace systolica::io
