#pragma once

#include <json.hpp>

#include "fcmetric/algebra.hpp"
#include "fcmetric/contraction.hpp"
#include "fcmetric/solver.hpp"
#include "fcmetric/space.hpp"

// JSON views of the report types. Object keys serialize in sorted order and
// numbers use the shortest round-trip form, so two identical reports always
// render to identical bytes (the parallel-vs-serial tests rely on this).

namespace fcm {

nlohmann::json to_json(const AlgebraDescriptor& desc);
nlohmann::json to_json(const AlgebraElement& value);
nlohmann::json to_json(const Witness& witness);
nlohmann::json to_json(const AxiomReport& report);
nlohmann::json to_json(const HypothesisReport& report);
nlohmann::json to_json(const FixedPointReport& report);
nlohmann::json to_json(const BoundCheckReport& report);
nlohmann::json to_json(const UniquenessReport& report);

} // namespace fcm
