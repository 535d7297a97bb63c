#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "gibbs/errors.hpp"
#include "gibbs/model_json.hpp"
#include "gibbs/report.hpp"
#include "gibbs/suites.hpp"

using namespace gibbs;

TEST_CASE("partition enumeration counts") {
  // Bell and partition numbers.
  const int bell[] = {1, 2, 5, 15, 52, 203, 877, 4140};
  const int parts[] = {1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 1; n <= 8; ++n) {
    CHECK(set_partitions(n).size() == static_cast<std::size_t>(bell[n - 1]));
    CHECK(integer_partitions(n).size() == static_cast<std::size_t>(parts[n - 1]));
    for (const Partition& p : set_partitions(n)) REQUIRE(p.n() == n);
  }
  CHECK_THROWS_AS(set_partitions(0), DomainError);
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 10);
  for (const std::string& name : suite_names()) {
    CHECK(!suite_usage(name).empty());
    const SuiteConfig config = default_suite_config(name);
    CHECK(config.suite == name);
    const SuiteConfig back = suite_config_from_json(name, suite_config_to_json(config));
    CHECK(suite_config_to_json(back) == suite_config_to_json(config));
  }
  CHECK_THROWS_AS(default_suite_config("no-such-suite"), DomainError);
  CHECK_THROWS_AS(run_suite("no-such-suite", Json::object()), DomainError);
  CHECK_THROWS_AS(suite_config_from_json("stirling", Json::parse(R"({"suite": "species"})")), DomainError);
}

TEST_CASE("theta per alpha descriptors") {
  const GibbsModel model = model_from_descriptor(0.4, Json::parse(R"({"type": "pitman_yor", "theta_per_alpha": -0.5})"));
  CHECK(std::get<PitmanYor>(model.family()).theta == doctest::Approx(-0.2).epsilon(1e-15));
}

TEST_CASE("a suite run is deterministic and reports every case") {
  const Json config = Json::parse(R"({"seed": 7, "sample_sizes": [2000], "alpha_grid": [0.5]})");
  const SuiteReport first = run_suite("identity-2-13", config);
  const SuiteReport second = run_suite("identity-2-13", config);
  CHECK(first.cases.size() == 3);
  CHECK(report_to_json(first, false).dump() == report_to_json(second, false).dump());
  CHECK(report_to_csv(first) == report_to_csv(second));
  const Json other = Json::parse(R"({"seed": 8, "sample_sizes": [2000], "alpha_grid": [0.5]})");
  CHECK(report_to_json(run_suite("identity-2-13", other), false).dump() != report_to_json(first, false).dump());
}

TEST_CASE("report serialization") {
  const SuiteReport report = run_suite("stirling", Json::parse(R"({"sample_sizes": [5], "alpha_grid": [0.5]})"));
  CHECK(report.overall_pass);
  const std::string csv = report_to_csv(report);
  CHECK(csv.rfind("suite,case_id,statistic_name,statistic,p_or_gap,n,seed,pass\n", 0) == 0);
  const Json document = report_to_json(report);
  CHECK(document.at("suite_name").get<std::string>() == "stirling");
  CHECK(document.contains("wall_time"));
  CHECK(!report_to_json(report, false).contains("wall_time"));
  CHECK(document.at("cases").size() == report.cases.size());
}

TEST_CASE("double formatting round trips") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}
