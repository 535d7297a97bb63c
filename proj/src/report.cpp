#include "gibbs/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace gibbs {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

Json number_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json report_to_json(const SuiteReport& report, bool with_wall_time) {
  Json cases = Json::array();
  for (const SuiteCase& c : report.cases) {
    Json entry = {{"case_id", c.case_id},
                  {"statistic_name", c.statistic_name},
                  {"statistic", number_or_null(c.statistic)},
                  {"measure", c.measure == CaseMeasure::p_value ? "p_value" : "tolerance_gap"},
                  {"p_or_gap", number_or_null(c.p_or_gap)},
                  {"n_samples", c.n_samples},
                  {"seed", c.seed},
                  {"stream", c.stream},
                  {"pass", c.pass}};
    if (!c.note.empty()) entry["note"] = c.note;
    cases.push_back(std::move(entry));
  }
  Json out = {{"suite_name", report.suite_name},
              {"cases", cases},
              {"overall_pass", report.overall_pass},
              {"multiple_testing",
               {{"method", "bonferroni"},
                {"family_level", report.family_level},
                {"p_value_cases", report.p_value_cases},
                {"per_case_level", report.per_case_level}}}};
  if (with_wall_time) out["wall_time"] = report.wall_time;
  return out;
}

std::string report_to_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "suite,case_id,statistic_name,statistic,p_or_gap,n,seed,pass\n";
  for (const SuiteCase& c : report.cases) {
    out << csv_quote(report.suite_name) << ',' << csv_quote(c.case_id) << ',' << csv_quote(c.statistic_name) << ','
        << format_double(c.statistic) << ',' << format_double(c.p_or_gap) << ',' << c.n_samples << ',' << c.seed
        << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace gibbs
