#ifndef GIBBS_MODEL_JSON_HPP
#define GIBBS_MODEL_JSON_HPP

#include <string>

#include <json.hpp>

#include "gibbs/gibbs_model.hpp"
#include "gibbs/posterior.hpp"

namespace gibbs {

using Json = nlohmann::json;

/// Makes a Custom family addressable from JSON by its name.
void register_custom_family(const Custom& family);

/// Registered Custom family; "unit" is always present.
Custom lookup_custom_family(const std::string& name);

/// {"alpha": a, "family": {"type": "pitman_yor", "theta": t}} and the other family tags.
Json model_to_json(const GibbsModel& model);
GibbsModel model_from_json(const Json& document);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& document);

Json posterior_to_json(const PosteriorMeasure& measure);

}  // namespace gibbs

#endif  // GIBBS_MODEL_JSON_HPP
