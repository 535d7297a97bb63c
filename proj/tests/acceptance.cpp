#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gibbs/report.hpp"
#include "gibbs/stat_tests.hpp"
#include "gibbs/suites.hpp"

using namespace gibbs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::string num(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", x);
  return buffer;
}

// A run with an exception case fails every check drawn from it.
Outcome no_errors(const SuiteReport& report) {
  Outcome out;
  for (const SuiteCase& c : report.cases) {
    if (starts_with(c.case_id, "error/")) {
      out.pass = false;
      out.detail += c.case_id + ": " + c.note + "; ";
    }
  }
  return out;
}

std::vector<const SuiteCase*> select(const SuiteReport& report, const std::string& prefix) {
  std::vector<const SuiteCase*> out;
  for (const SuiteCase& c : report.cases) {
    if (starts_with(c.case_id, prefix)) out.push_back(&c);
  }
  return out;
}

void merge(Outcome& total, const Outcome& part) {
  total.pass = total.pass && part.pass;
  if (!total.detail.empty() && !part.detail.empty()) total.detail += "; ";
  total.detail += part.detail;
}

// Every case under `prefix` has a finite statistic at most `tolerance`.
Outcome at_most(const SuiteReport& report, const std::string& prefix, double tolerance) {
  const std::vector<const SuiteCase*> cases = select(report, prefix);
  Outcome out;
  double worst = 0.0;
  for (const SuiteCase* c : cases) {
    if (!(std::isfinite(c->statistic) && c->statistic <= tolerance)) out.pass = false;
    if (!(c->statistic <= worst)) worst = c->statistic;
  }
  if (cases.empty()) out.pass = false;
  out.detail = prefix + " " + std::to_string(cases.size()) + " cases, max " + num(worst) + " <= " + num(tolerance);
  return out;
}

// Every case under `prefix` has p above `level`.
Outcome p_above(const SuiteReport& report, const std::string& prefix, double level) {
  const std::vector<const SuiteCase*> cases = select(report, prefix);
  Outcome out;
  double smallest = 1.0;
  for (const SuiteCase* c : cases) {
    if (!(c->measure == CaseMeasure::p_value && c->p_or_gap > level)) out.pass = false;
    if (!(c->p_or_gap >= smallest)) smallest = c->p_or_gap;
  }
  if (cases.empty()) out.pass = false;
  out.detail = prefix + " " + std::to_string(cases.size()) + " cases, min p " + num(smallest) + " > " + num(level);
  return out;
}

// Every case under `prefix` has a decrease, i.e. a positive gap.
Outcome decreasing(const SuiteReport& report, const std::string& prefix) {
  const std::vector<const SuiteCase*> cases = select(report, prefix);
  Outcome out;
  for (const SuiteCase* c : cases) {
    if (!(c->p_or_gap > 0.0)) out.pass = false;
    out.detail += (out.detail.empty() ? "" : ", ") + num(c->statistic);
  }
  if (cases.empty()) out.pass = false;
  out.detail = "medians after the first m: " + out.detail;
  return out;
}

SuiteReport run(const std::string& name, const std::string& config) { return run_suite(name, Json::parse(config)); }

constexpr const char* kFiveAlphas = R"("alpha_grid": [0.1, 0.3, 0.5, 0.7, 0.9])";

Outcome criterion_1() {
  const SuiteReport eppf = run("eppf-exact", std::string(R"({"sample_sizes": [8, 1], )") + kFiveAlphas + R"(,
      "families": [{"type": "custom", "name": "unit"},
                   {"type": "pitman_yor", "theta_per_alpha": -0.5},
                   {"type": "pitman_yor", "theta": 0.5},
                   {"type": "pitman_yor", "theta": 2.0}]})");
  const SuiteReport stirling = run("stirling", std::string(R"({"sample_sizes": [10], )") + kFiveAlphas + "}");
  Outcome out = no_errors(eppf);
  merge(out, no_errors(stirling));
  merge(out, at_most(eppf, "eppf-sum/", 1e-9));
  merge(out, at_most(stirling, "closed/", 1e-9));
  return out;
}

Outcome criterion_2() {
  const SuiteReport report = run("eppf-exact", std::string(R"({"sample_sizes": [1, 12], )") + kFiveAlphas + R"(,
      "families": [{"type": "pitman_yor", "theta_per_alpha": -0.5},
                   {"type": "pitman_yor", "theta": 0.5},
                   {"type": "pitman_yor", "theta": 2.0},
                   {"type": "generalized_gamma", "lambda": 1.0},
                   {"type": "generalized_gamma", "lambda": 4.0},
                   {"type": "mittag_leffler", "lambda": 1.0, "theta": 0.5, "j": 0},
                   {"type": "mittag_leffler", "lambda": 2.0, "theta_per_alpha": -0.5, "j": 1}]})");
  Outcome out = no_errors(report);
  merge(out, at_most(report, "recursion/", 1e-8));
  return out;
}

Outcome criterion_3() {
  const SuiteReport report = run("identity-2-13", R"({"sample_sizes": [100000], "alpha_grid": [0.3, 0.5, 0.7]})");
  Outcome out = no_errors(report);
  merge(out, p_above(report, "ratio/", 0.01));
  return out;
}

Outcome criterion_4() {
  const SuiteReport report =
      run("samplers-oracle", R"({"sample_sizes": [100000, 1000000], "alpha_grid": [0.3, 0.5, 0.7]})");
  Outcome out = no_errors(report);
  merge(out, p_above(report, "stable-ks/", 0.01));
  merge(out, p_above(report, "tilted-ks/", 0.01));
  merge(out, at_most(report, "stable-laplace/", 3.0));
  return out;
}

Outcome criterion_5() {
  const SuiteReport report = run("posterior-py", R"({"sample_sizes": [100000], "alpha_grid": [0.3, 0.5, 0.7]})");
  Outcome out = no_errors(report);
  merge(out, p_above(report, "t1-split/", 0.01));
  merge(out, p_above(report, "t2-split/", 0.01));
  return out;
}

Outcome criterion_6() {
  const SuiteReport report = run("posterior-t1t2", R"({"sample_sizes": [50000, 5], "alpha_grid": [0.3, 0.5],
      "families": [{"type": "pitman_yor", "theta": 0.5},
                   {"type": "generalized_gamma", "lambda": 1.0},
                   {"type": "mittag_leffler", "lambda": 1.0, "theta": 0.5, "j": 0}]})");
  Outcome out = no_errors(report);
  const std::size_t atoms = select(report, "atom/").size();
  merge(out, p_above(report, "atom/", atoms == 0 ? 0.01 : bonferroni_level(0.01, atoms)));
  return out;
}

Outcome criterion_7() {
  const SuiteReport report = run("posterior-mean", R"({"sample_sizes": [100000, 4], "alpha_grid": [0.5],
      "families": [{"type": "pitman_yor", "theta": 0.5},
                   {"type": "generalized_gamma", "lambda": 1.0},
                   {"type": "mittag_leffler", "lambda": 1.0, "theta": 0.5, "j": 0}]})");
  Outcome out = no_errors(report);
  merge(out, at_most(report, "mc-mean/", 3.0));
  merge(out, at_most(report, "py-closed-form/", 1e-10));
  return out;
}

Outcome criterion_8() {
  const SuiteReport report =
      run("ml-class", R"({"sample_sizes": [1000000, 20000, 50000], "alpha_grid": [0.3, 0.5]})");
  Outcome out = no_errors(report);
  merge(out, at_most(report, "laplace-mc/", 3.0));
  merge(out, at_most(report, "beta-mixture/", 1e-8));
  merge(out, at_most(report, "density-mass/", 1e-6));
  merge(out, at_most(report, "tilt-h-mass/", 1e-6));
  merge(out, at_most(report, "predict/", 1e-8));
  return out;
}

Outcome criterion_9() {
  const SuiteReport report = run("species", R"({"sample_sizes": [2000, 5], "alpha_grid": [0.5],
      "families": [{"type": "pitman_yor", "theta": 0.5}], "m_values": [100, 1000, 10000]})");
  Outcome out = no_errors(report);
  merge(out, decreasing(report, "decrease/"));
  merge(out, at_most(report, "final/", 0.05));
  return out;
}

Outcome criterion_10() {
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"eppf-exact", R"({"sample_sizes": [5, 6], "alpha_grid": [0.5]})"},
      {"stirling", R"({"sample_sizes": [6], "alpha_grid": [0.5]})"},
      {"special-fn", R"({"alpha_grid": [0.5]})"},
      {"samplers-oracle", R"({"sample_sizes": [2000, 2000], "alpha_grid": [0.5]})"},
      {"identity-2-13", R"({"sample_sizes": [2000], "alpha_grid": [0.5]})"},
      {"posterior-py", R"({"sample_sizes": [2000], "alpha_grid": [0.5]})"},
      {"posterior-t1t2", R"({"sample_sizes": [1000, 3], "alpha_grid": [0.3]})"},
      {"posterior-mean", R"({"sample_sizes": [2000, 3]})"},
      {"ml-class", R"({"sample_sizes": [5000, 1000, 1000], "alpha_grid": [0.5]})"},
      {"species", R"({"sample_sizes": [200, 2], "m_values": [100, 1000]})"}};
  Outcome out;
  int identical = 0;
  for (const auto& [name, config] : configs) {
    const SuiteReport first = run(name, config);
    const SuiteReport second = run(name, config);
    const bool same = report_to_json(first, false).dump() == report_to_json(second, false).dump() &&
                      report_to_csv(first) == report_to_csv(second) && !first.cases.empty();
    if (same) {
      ++identical;
    } else {
      out.pass = false;
      out.detail += name + " differs; ";
    }
  }
  out.detail += std::to_string(identical) + "/" + std::to_string(configs.size()) + " suites bit-identical on rerun";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "EPPF sums and generalized Stirling numbers", 30.0, criterion_1},
      {2, "Gibbs recursion", 10.0, criterion_2},
      {3, "stable ratio identity", 60.0, criterion_3},
      {4, "alpha = 1/2 oracles and stable Laplace transform", 60.0, criterion_4},
      {5, "Pitman-Yor scale splits", 120.0, criterion_5},
      {6, "T1 and T2 fixed-atom agreement", 300.0, criterion_6},
      {7, "posterior mean equals prediction rule", 120.0, criterion_7},
      {8, "Mittag-Leffler class", 120.0, criterion_8},
      {9, "species discovery", 300.0, criterion_9},
      {10, "determinism", 600.0, criterion_10},
  };
  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < criterion.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::ostringstream line;
    line << "criterion " << criterion.id << " " << (pass ? "PASS" : "FAIL") << " [" << criterion.title << "] "
         << outcome.detail << "; time " << num(seconds) << " s < " << num(criterion.budget_seconds) << " s"
         << (in_budget ? "" : " EXCEEDED");
    std::cout << line.str() << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
