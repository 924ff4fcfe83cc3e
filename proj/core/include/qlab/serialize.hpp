#pragma once

#include "qlab/coeffs.hpp"
#include "qlab/constructions.hpp"
#include "qlab/covering.hpp"
#include "qlab/net.hpp"
#include "qlab/norms.hpp"
#include "qlab/oracle.hpp"
#include "qlab/polytope.hpp"
#include "qlab/quantize.hpp"

#include <nlohmann/json.hpp>

namespace qlab {

using Json = nlohmann::ordered_json;

// Scalars travel as "p/q" strings; parsing also accepts JSON numbers
// that are integers and decimal strings.
Json scalar_to_json(const Scalar& value);
Scalar scalar_from_json(const Json& j);

Json coeffs_to_json(const Coeffs& x);
Coeffs coeffs_from_json(const Json& j);

Json net_to_json(const Net& net);
Net net_from_json(const Json& j);

/// {"default": net, "overrides": {"i": net}}; a bare net is accepted too.
Json net_family_to_json(const NetFamily& nets);
NetFamily net_family_from_json(const Json& j);

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

/// {"vertices": [[..], ..]} or {"pieces": [{"vertices": ..}, ..]},
/// optionally {"box": {"lower": .., "upper": ..}}.
Json body_to_json(const Body& body);
Body body_from_json(const Json& j);

/// {"basis": [[..], ..]}.
Json lattice_to_json(const LatticeSpec& lattice);
LatticeSpec lattice_from_json(const Json& j);

/// {"family": "...", ...}.
Json space_to_json(const BasisSpace& space);
BasisSpace space_from_json(const Json& j);

Json choice_to_json(const QuantizationChoice& choice);
Json quantizer_report_to_json(const QuantizerReport& report);
Json verdict_to_json(const CoverVerdict& verdict);
Json eps_estimate_to_json(const EpsEstimate& estimate);

Json u_build_to_json(const USpaceBuild& build);
USpaceBuild u_build_from_json(const Json& j);

} // namespace qlab
