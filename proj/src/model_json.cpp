#include "gibbs/model_json.hpp"

#include <map>
#include <mutex>

#include "gibbs/errors.hpp"

namespace gibbs {

namespace {

std::mutex& registry_mutex() {
  static std::mutex mutex;
  return mutex;
}

std::map<std::string, Custom>& registry() {
  static std::map<std::string, Custom> families = [] {
    std::map<std::string, Custom> init;
    const Custom unit = unit_custom();
    init.emplace(unit.name, unit);
    return init;
  }();
  return families;
}

double number_field(const Json& object, const char* key) {
  if (!object.contains(key) || !object.at(key).is_number()) {
    throw DomainError(std::string("model json: missing numeric field '") + key + "'");
  }
  return object.at(key).get<double>();
}

struct FamilyToJson {
  Json operator()(const PitmanYor& f) const { return {{"type", "pitman_yor"}, {"theta", f.theta}}; }
  Json operator()(const GeneralizedGamma& f) const { return {{"type", "generalized_gamma"}, {"lambda", f.lambda}}; }
  Json operator()(const MittagLefflerTilt& f) const {
    return {{"type", "mittag_leffler"}, {"lambda", f.lambda}, {"theta", f.theta}, {"j", f.j}};
  }
  Json operator()(const Custom& f) const { return {{"type", "custom"}, {"name", f.name}}; }
};

}  // namespace

void register_custom_family(const Custom& family) {
  if (family.name.empty()) throw DomainError("register_custom_family: empty name");
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[family.name] = family;
}

Custom lookup_custom_family(const std::string& name) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  const auto it = registry().find(name);
  if (it == registry().end()) throw DomainError("unknown custom family '" + name + "'");
  return it->second;
}

Json model_to_json(const GibbsModel& model) {
  return {{"alpha", model.alpha()}, {"family", std::visit(FamilyToJson{}, model.family())}};
}

GibbsModel model_from_json(const Json& document) {
  if (!document.is_object()) throw DomainError("model json: expected an object");
  const double alpha = number_field(document, "alpha");
  if (!document.contains("family") || !document.at("family").is_object()) {
    throw DomainError("model json: missing 'family' object");
  }
  const Json& family = document.at("family");
  if (!family.contains("type") || !family.at("type").is_string()) {
    throw DomainError("model json: missing family 'type'");
  }
  const std::string type = family.at("type").get<std::string>();
  if (type == "pitman_yor") return GibbsModel(alpha, PitmanYor{number_field(family, "theta")});
  if (type == "generalized_gamma") return GibbsModel(alpha, GeneralizedGamma{number_field(family, "lambda")});
  if (type == "mittag_leffler") {
    unsigned j = 0;
    if (family.contains("j")) {
      if (!family.at("j").is_number_unsigned()) throw DomainError("model json: 'j' must be a nonnegative integer");
      j = family.at("j").get<unsigned>();
    }
    return GibbsModel(alpha, MittagLefflerTilt{number_field(family, "lambda"), number_field(family, "theta"), j});
  }
  if (type == "custom") {
    if (!family.contains("name") || !family.at("name").is_string()) {
      throw DomainError("model json: custom family needs a 'name'");
    }
    return GibbsModel(alpha, lookup_custom_family(family.at("name").get<std::string>()));
  }
  throw DomainError("model json: unknown family type '" + type + "'");
}

Json partition_to_json(const Partition& p) { return p.block_sizes(); }

Partition partition_from_json(const Json& document) {
  if (!document.is_array()) throw DomainError("partition json: expected an array of block sizes");
  std::vector<int> sizes;
  for (const Json& entry : document) {
    if (!entry.is_number_integer()) throw DomainError("partition json: block sizes must be integers");
    sizes.push_back(entry.get<int>());
  }
  return Partition(sizes);
}

Json posterior_to_json(const PosteriorMeasure& measure) {
  Json fixed = Json::array();
  for (std::size_t j = 0; j < measure.fixed_atoms.size(); ++j) {
    fixed.push_back({{"label", j + 1}, {"weight", measure.fixed_atoms[j]}});
  }
  Json continuous = Json::array();
  for (std::size_t i = 0; i < measure.continuous_part.weights.size(); ++i) {
    continuous.push_back({{"atom_id", i + 1}, {"weight", measure.continuous_part.weights[i]}});
  }
  return {{"representation", measure.representation == Representation::t1 ? "T1" : "T2"},
          {"scale_split", measure.scale_split},
          {"t_draw", measure.t_draw},
          {"fixed", fixed},
          {"continuous", continuous},
          {"residual", measure.continuous_part.residual},
          {"ess", measure.ess ? Json(*measure.ess) : Json(nullptr)}};
}

}  // namespace gibbs
