#pragma once

// JSON encodings for reports. Objects use insertion-ordered keys so output is
// byte-stable; rationals are written as "n/d" strings.

#include <json.hpp>

#include "equidecomp/algebra.hpp"
#include "equidecomp/group.hpp"

namespace equidecomp {

using Json = nlohmann::ordered_json;

struct GVertex;
struct ComponentView;
struct SampleReport;
struct CertifiedPath;
struct LemmaReport;

Json to_json(const Rational& q);
Json to_json(const AlgebraicPoint& x);
Json to_json(const AlphaSpec& spec);
Json to_json(const GroupElement& g);
Json to_json(const GVertex& v);
Json to_json(const ComponentView& view, bool include_vertices = false);
Json to_json(const SampleReport& report);
Json to_json(const CertifiedPath& path);
Json to_json(const LemmaReport& report);

/// Compact description of a component for Finding witnesses.
Json component_witness(const ComponentView& view);

/// Parses {"u": "..", "v": ".."}.
AlgebraicPoint point_from_json(const Json& j);

}  // namespace equidecomp
