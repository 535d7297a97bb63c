#ifndef GIBBS_REPORT_HPP
#define GIBBS_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibbs/model_json.hpp"

namespace gibbs {

enum class CaseMeasure { p_value, tolerance_gap };

/// One verification case. For tolerance cases `statistic` is the observed
/// error and `p_or_gap` = tolerance - error, so a case passes iff the gap is >= 0.
struct SuiteCase {
  std::string case_id;
  std::string statistic_name;
  double statistic = 0.0;
  CaseMeasure measure = CaseMeasure::tolerance_gap;
  double p_or_gap = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string suite_name;
  std::vector<SuiteCase> cases;
  bool overall_pass = false;
  double family_level = 0.01;
  double per_case_level = 0.01;
  std::size_t p_value_cases = 0;
  double wall_time = 0.0;
};

/// The wall time is left out when `with_wall_time` is false, for comparisons across runs.
Json report_to_json(const SuiteReport& report, bool with_wall_time = true);

/// Header: suite,case_id,statistic_name,statistic,p_or_gap,n,seed,pass.
std::string report_to_csv(const SuiteReport& report);

/// %.17g; non-finite values become "nan", "inf" or "-inf".
std::string format_double(double value);

}  // namespace gibbs

#endif  // GIBBS_REPORT_HPP
