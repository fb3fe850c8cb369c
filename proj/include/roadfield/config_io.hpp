#pragma once

#include <string>

#include <json.hpp>

#include "roadfield/kernel.hpp"
#include "roadfield/model_spec.hpp"
#include "roadfield/params.hpp"

namespace roadfield {

/// Structured-config schema. Unknown keys are rejected everywhere.
///
/// params: {"d":1, "big_d":4, "growth":1, "mu_bar":1, "nu_bar":1}
/// kernel: {"atom":1}                                   pure atom
///         {"shape":"boxcar","halfwidth":1,"mass":1}    named closed form
///         {"atom":0.9, "shape":..., ...}               atom + shape
///         {"samples":{"spacing":h,"values":[...]}}     half-grid table
///         {"samples":{"spacing":h,"full_values":[...]}} full even table
nlohmann::json params_to_json(const Params& p);
Params params_from_json(const nlohmann::json& j);

nlohmann::json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j);

/// Throws validation_error when the object holds a key outside `allowed`.
void reject_unknown_keys(const nlohmann::json& obj,
                         std::initializer_list<const char*> allowed,
                         const std::string& where);

}  // namespace roadfield
