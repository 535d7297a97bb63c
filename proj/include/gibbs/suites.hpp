#ifndef GIBBS_SUITES_HPP
#define GIBBS_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibbs/model_json.hpp"
#include "gibbs/report.hpp"

namespace gibbs {

/// Experiment configuration; the meaning of `sample_sizes` is suite specific
/// and listed in `suite_usage`.
///
/// Family descriptors are the "family" objects of the model schema. A
/// Pitman-Yor or Mittag-Leffler descriptor may give "theta_per_alpha"
/// instead of "theta", meaning theta = value * alpha.
struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<long> sample_sizes;
  std::vector<double> alpha_grid;
  std::vector<Json> families;
  std::vector<long> m_values;
};

const std::vector<std::string>& suite_names();

/// One-line description of a suite and of its sample_sizes entries.
std::string suite_usage(const std::string& name);

SuiteConfig default_suite_config(const std::string& name);

/// Fields present in `document` override the defaults of the named suite.
SuiteConfig suite_config_from_json(const std::string& name, const Json& document);
Json suite_config_to_json(const SuiteConfig& config);

/// Model for one grid point.
GibbsModel model_from_descriptor(double alpha, const Json& family);

SuiteReport run_suite(const SuiteConfig& config);
SuiteReport run_suite(const std::string& name, const Json& config);

/// All set partitions of [n], as block sizes in order of first element.
std::vector<Partition> set_partitions(int n);

/// All integer partitions of n, block sizes in nonincreasing order.
std::vector<Partition> integer_partitions(int n);

}  // namespace gibbs

#endif  // GIBBS_SUITES_HPP
