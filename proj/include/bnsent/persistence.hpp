#pragma once

#include <nlohmann/json.hpp>

#include "bnsent/models.hpp"

// JSON encoding of model hyperparameters and trained parameters.
namespace bnsent::persistence {

using nlohmann::json;

json spec_to_json(const models::ModelSpec& spec);
// Fields absent from `j` keep the kind's defaults.
models::ModelSpec spec_from_json(models::ModelKind kind, const json& j,
                                 std::uint64_t seed);

json params_to_json(const models::TrainedModel& model);
models::TrainedModel model_from_json(const json& spec, const json& params);

}  // namespace bnsent::persistence
