// JSON payloads for every CLI output type; each to_json has a matching parser.
#pragma once

#include <json.hpp>

#include "weilform/borcherds.h"
#include "weilform/scalar_forms.h"
#include "weilform/vvmf.h"

namespace weilform {

using Json = nlohmann::json;

Json series_to_json(const FracQSeries& f);
FracQSeries series_from_json(const Json& j);

Json basis_to_json(const ReducedBasis& b);
ReducedBasis basis_from_json(const Json& j);

Json vector_to_json(const VectorForm& F);
VectorForm vector_from_json(const Json& j);

Json lift_to_json(const BorcherdsLift& L);
BorcherdsLift lift_from_json(const Json& j);

Json duality_to_json(const DualityReport& r);
DualityReport duality_from_json(const Json& j);

Json hurwitz_to_json(const std::map<int64_t, Rational>& values);
std::map<int64_t, Rational> hurwitz_from_json(const Json& j);

Json residuals_to_json(const std::string& genus, int64_t dim, const RelationResiduals& r);
RelationResiduals residuals_from_json(const Json& j);

Json eps_to_json(const std::map<int64_t, int>& eps);
std::map<int64_t, int> eps_from_json(const Json& j);

}  // namespace weilform
