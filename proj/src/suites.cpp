#include "gibbs/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "gibbs/errors.hpp"
#include "gibbs/families.hpp"
#include "gibbs/posterior.hpp"
#include "gibbs/quadrature.hpp"
#include "gibbs/samplers.hpp"
#include "gibbs/species.hpp"
#include "gibbs/stable_table.hpp"
#include "gibbs/stat_tests.hpp"

namespace gibbs {

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Partition> set_partitions(int n) {
  if (n < 1) throw DomainError("set_partitions: n must be positive");
  std::vector<Partition> out;
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);
  for (;;) {
    std::vector<int> sizes(prefix_max[n - 1] + 1, 0);
    for (int v : a) ++sizes[v];
    out.emplace_back(sizes);
    int i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

namespace {

void integer_partitions_rec(int remaining, int largest, std::vector<int>& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    current.push_back(part);
    integer_partitions_rec(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Partition> integer_partitions(int n) {
  if (n < 1) throw DomainError("integer_partitions: n must be positive");
  std::vector<Partition> out;
  std::vector<int> current;
  integer_partitions_rec(n, n, current, out);
  return out;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

Json py(double theta) { return {{"type", "pitman_yor"}, {"theta", theta}}; }
Json py_scaled(double ratio) { return {{"type", "pitman_yor"}, {"theta_per_alpha", ratio}}; }
Json gg(double lambda) { return {{"type", "generalized_gamma"}, {"lambda", lambda}}; }
Json ml(double lambda, double theta, unsigned j) {
  return {{"type", "mittag_leffler"}, {"lambda", lambda}, {"theta", theta}, {"j", j}};
}
Json ml_scaled(double lambda, double ratio, unsigned j) {
  return {{"type", "mittag_leffler"}, {"lambda", lambda}, {"theta_per_alpha", ratio}, {"j", j}};
}
Json unit() { return {{"type", "custom"}, {"name", "unit"}}; }

const std::vector<double> kFiveAlphas = {0.1, 0.3, 0.5, 0.7, 0.9};

struct SuiteSpec {
  std::string usage;
  std::vector<long> sample_sizes;
  std::vector<double> alpha_grid;
  std::vector<Json> families;
  std::vector<long> m_values;
};

const std::map<std::string, SuiteSpec>& suite_specs() {
  static const std::map<std::string, SuiteSpec> specs = {
      {"eppf-exact",
       {"EPPF and K_n pmf sums over set partitions, Gibbs recursion and prediction sums; "
        "sample_sizes = [max n for enumeration, max n for the recursion]",
        {8, 12},
        kFiveAlphas,
        {unit(), py_scaled(-0.5), py(0.5), py(2.0), gg(1.0), gg(4.0), ml(1.0, 0.5, 0), ml_scaled(2.0, -0.5, 1)},
        {}}},
      {"stirling",
       {"generalized Stirling numbers against set-partition enumeration; sample_sizes = [max n]",
        {10},
        kFiveAlphas,
        {},
        {}}},
      {"special-fn",
       {"stable density routes and normalization, negative moments, Mittag-Leffler and confluent "
        "hypergeometric series against independent evaluations; sample_sizes unused",
        {},
        kFiveAlphas,
        {},
        {}}},
      {"samplers-oracle",
       {"alpha = 1/2 stable and tilted-stable KS against inverse-gamma transforms, Laplace transform "
        "check on alpha_grid; sample_sizes = [KS draws, Laplace draws]",
        {100000, 1000000},
        {0.3, 0.5, 0.7},
        {},
        {}}},
      {"identity-2-13",
       {"T_{a,ka}/B_{ka,n-ka} against T_{a,n}/B_{k,n/a-k}^{1/a} for (n,k) in {(3,2),(5,2),(6,4)}; "
        "sample_sizes = [draws per side]",
        {100000},
        {0.3, 0.5, 0.7},
        {},
        {}}},
      {"posterior-py",
       {"Pitman-Yor scale splits of both representations against their Beta laws for partitions "
        "(2,1), (3,2), (3,1,1,1); sample_sizes = [draws]",
        {100000},
        {0.3, 0.5, 0.7},
        {py(0.5)},
        {}}},
      {"posterior-t1t2",
       {"fixed-atom masses and T | K_n of both representations, two-sample KS, every partition of "
        "n <= max n; sample_sizes = [draws per representation, max n]",
        {50000, 5},
        {0.3, 0.5},
        {py(0.5), gg(1.0), ml(1.0, 0.5, 0)},
        {}}},
      {"posterior-mean",
       {"Monte Carlo fixed-atom means of the first representation against the prediction rule, "
        "every partition of n <= max n; sample_sizes = [draws, max n]",
        {100000, 4},
        {0.5},
        {py(0.5), gg(1.0), ml(1.0, 0.5, 0)},
        {}}},
      {"ml-class",
       {"Mittag-Leffler class: Laplace transform by Monte Carlo, Beta-mixture identity, density "
        "normalization, prediction rule and EPPF, lambda -> 0 continuity, thinning identity and "
        "posterior densities against samplers; sample_sizes = [Laplace draws, thinning draws, "
        "posterior draws]",
        {1000000, 20000, 50000},
        {0.3, 0.5},
        {},
        {}}},
      {"species",
       {"median KS distance of m^{-alpha} K_m to the limit draws across replicate experiments, "
        "partition (2,1); sample_sizes = [reps, replicate experiments]",
        {2000, 5},
        {0.5},
        {py(0.5)},
        {100, 1000, 10000}}},
  };
  return specs;
}

const SuiteSpec& spec_for(const std::string& name) {
  const auto& specs = suite_specs();
  const auto it = specs.find(name);
  if (it == specs.end()) throw DomainError("unknown suite '" + name + "'");
  return it->second;
}

constexpr std::uint64_t kDefaultSeed = 20240611;

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"eppf-exact",    "stirling",       "special-fn",     "samplers-oracle",
                                                 "identity-2-13", "posterior-py",   "posterior-t1t2", "posterior-mean",
                                                 "ml-class",      "species"};
  return names;
}

std::string suite_usage(const std::string& name) { return spec_for(name).usage; }

SuiteConfig default_suite_config(const std::string& name) {
  const SuiteSpec& spec = spec_for(name);
  SuiteConfig config;
  config.suite = name;
  config.seed = kDefaultSeed;
  config.sample_sizes = spec.sample_sizes;
  config.alpha_grid = spec.alpha_grid;
  config.families = spec.families;
  config.m_values = spec.m_values;
  return config;
}

SuiteConfig suite_config_from_json(const std::string& name, const Json& document) {
  SuiteConfig config = default_suite_config(name);
  if (document.is_null()) return config;
  if (!document.is_object()) throw DomainError("suite config: expected an object");
  if (document.contains("suite") && document.at("suite").get<std::string>() != name) {
    throw DomainError("suite config: names suite '" + document.at("suite").get<std::string>() + "'");
  }
  if (document.contains("seed")) config.seed = document.at("seed").get<std::uint64_t>();
  if (document.contains("sample_sizes")) config.sample_sizes = document.at("sample_sizes").get<std::vector<long>>();
  if (document.contains("alpha_grid")) config.alpha_grid = document.at("alpha_grid").get<std::vector<double>>();
  if (document.contains("families")) config.families = document.at("families").get<std::vector<Json>>();
  if (document.contains("m_values")) config.m_values = document.at("m_values").get<std::vector<long>>();
  return config;
}

Json suite_config_to_json(const SuiteConfig& config) {
  return {{"suite", config.suite},         {"seed", config.seed},         {"sample_sizes", config.sample_sizes},
          {"alpha_grid", config.alpha_grid}, {"families", config.families}, {"m_values", config.m_values}};
}

GibbsModel model_from_descriptor(double alpha, const Json& family) {
  Json resolved = family;
  if (resolved.contains("theta_per_alpha")) {
    resolved["theta"] = resolved.at("theta_per_alpha").get<double>() * alpha;
    resolved.erase("theta_per_alpha");
  }
  return model_from_json({{"alpha", alpha}, {"family", resolved}});
}

// ---------------------------------------------------------------------------
// Case plumbing

namespace {

using Cases = std::vector<SuiteCase>;

struct Task {
  std::string label;
  std::function<void(RngState&, Cases&)> run;
};

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

std::string family_label(const Json& family) {
  std::string out = family.at("type").get<std::string>();
  for (const auto& [key, value] : family.items()) {
    if (key == "type") continue;
    out += "," + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
  }
  return out;
}

std::string partition_label(const Partition& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.block_sizes().size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(p.block_sizes()[i]);
  }
  return out + ")";
}

void add_tolerance(Cases& cases, std::string id, std::string name, double error, double tolerance, long n = 0) {
  SuiteCase c;
  c.case_id = std::move(id);
  c.statistic_name = std::move(name);
  c.statistic = error;
  c.measure = CaseMeasure::tolerance_gap;
  c.p_or_gap = tolerance - error;
  c.n_samples = n;
  c.pass = std::isfinite(error) && error <= tolerance;
  cases.push_back(std::move(c));
}

void add_p_value(Cases& cases, std::string id, std::string name, const TestResult& result, long n) {
  SuiteCase c;
  c.case_id = std::move(id);
  c.statistic_name = std::move(name);
  c.statistic = result.statistic;
  c.measure = CaseMeasure::p_value;
  c.p_or_gap = result.p_value;
  c.n_samples = n;
  cases.push_back(std::move(c));
}

double rel_error(double x, double reference) {
  if (reference == 0.0) return std::abs(x);
  return std::abs(x - reference) / std::abs(reference);
}

long size_at(const SuiteConfig& config, std::size_t index) {
  if (index >= config.sample_sizes.size()) {
    throw DomainError("suite '" + config.suite + "': sample_sizes needs " + std::to_string(index + 1) + " entries");
  }
  if (config.sample_sizes[index] < 1) throw DomainError("suite config: sample sizes must be positive");
  return config.sample_sizes[index];
}

// Mean and standard error of a sample.
std::pair<double, double> mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

// ---------------------------------------------------------------------------
// eppf-exact

void eppf_exact_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const int n_enum = static_cast<int>(size_at(config, 0));
  const int n_rec = static_cast<int>(size_at(config, 1));
  for (double alpha : config.alpha_grid) {
    for (const Json& family : config.families) {
      const std::string tag = family_label(family) + "/alpha=" + fmt(alpha);
      tasks.push_back({tag, [=](RngState&, Cases& cases) {
                         const GibbsModel model = model_from_descriptor(alpha, family);
                         double sum_error = 0.0;
                         double pmf_error = 0.0;
                         double predict_error = 0.0;
                         for (int n = 1; n <= n_enum; ++n) {
                           std::vector<double> by_k(n, 0.0);
                           double total = 0.0;
                           for (const Partition& p : set_partitions(n)) {
                             const double w = eppf(model, p).value();
                             total += w;
                             by_k[p.k() - 1] += w;
                             const Prediction pred = predict(model, p);
                             const double mass = std::accumulate(pred.existing.begin(), pred.existing.end(),
                                                                 pred.new_table_prob);
                             predict_error = std::max(predict_error, std::abs(mass - 1.0));
                           }
                           sum_error = std::max(sum_error, std::abs(total - 1.0));
                           const std::vector<double> pmf = k_pmf(model, n);
                           for (int k = 0; k < n; ++k) pmf_error = std::max(pmf_error, std::abs(pmf[k] - by_k[k]));
                         }
                         add_tolerance(cases, "eppf-sum/" + tag, "max |sum eppf - 1|, n<=" + std::to_string(n_enum),
                                       sum_error, 1e-9);
                         add_tolerance(cases, "kpmf-enum/" + tag, "max |k_pmf - enumeration|", pmf_error, 1e-9);
                         add_tolerance(cases, "predict-sum/" + tag, "max |prediction mass - 1|", predict_error, 1e-9);
                         double rec_error = 0.0;
                         for (int n = 1; n <= n_rec; ++n) {
                           for (int k = 1; k <= n; ++k) {
                             const SpecialValue v = gibbs_v(model, n, k);
                             const SpecialValue rhs = SpecialValue::from_value(n - k * alpha) * gibbs_v(model, n + 1, k) +
                                                      gibbs_v(model, n + 1, k + 1);
                             rec_error = std::max(rec_error, std::abs((rhs / v).value() - 1.0));
                           }
                         }
                         add_tolerance(cases, "recursion/" + tag,
                                       "max rel |V(n,k) - (n-k a)V(n+1,k) - V(n+1,k+1)|, n<=" + std::to_string(n_rec),
                                       rec_error, 1e-8);
                       }});
    }
  }
}

// ---------------------------------------------------------------------------
// stirling

void stirling_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const int n_max = static_cast<int>(size_at(config, 0));
  for (double alpha : config.alpha_grid) {
    const std::string tag = "alpha=" + fmt(alpha);
    tasks.push_back({tag, [=](RngState&, Cases& cases) {
                       const StableParams params(alpha);
                       for (int n = 1; n <= n_max; ++n) {
                         // Sum over k-block set partitions of prod (1-alpha)_{n_j-1}.
                         std::vector<double> by_k(n + 1, 0.0);
                         for (const Partition& p : set_partitions(n)) {
                           double w = 1.0;
                           for (int size : p.block_sizes()) w *= pochhammer(1.0 - alpha, size - 1).value();
                           by_k[p.k()] += w;
                         }
                         double closed = 0.0;
                         double recursive = 0.0;
                         for (int k = 1; k <= n; ++k) {
                           closed = std::max(closed, rel_error(gen_stirling(params, n, k).value(), by_k[k]));
                           recursive =
                               std::max(recursive, rel_error(gen_stirling_recursive(params, n, k).value(), by_k[k]));
                         }
                         const std::string id = tag + "/n=" + std::to_string(n);
                         add_tolerance(cases, "closed/" + id, "max rel error vs enumeration", closed, 1e-9);
                         add_tolerance(cases, "recursive/" + id, "max rel error vs enumeration", recursive, 1e-9);
                       }
                     }});
  }
}

// ---------------------------------------------------------------------------
// special-fn

void special_fn_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  tasks.push_back({"half-closed-form", [](RngState&, Cases& cases) {
                     const StableParams half(0.5);
                     double error = 0.0;
                     for (int i = -30; i <= 30; ++i) {
                       const double t = std::pow(10.0, i / 10.0);
                       const double exact = -0.5 * std::log(4.0 * M_PI) - 1.5 * std::log(t) - 1.0 / (4.0 * t);
                       error = std::max(error, std::abs(log_stable_pdf_integral(half, t) - exact));
                     }
                     add_tolerance(cases, "stable-pdf/alpha=0.5", "max |log f integral route - closed form|", error,
                                   1e-9);
                     double ml_error = 0.0;
                     for (double lambda : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
                       const double exact = std::exp(lambda * lambda) * boost::math::erfc(lambda);
                       ml_error = std::max(ml_error, rel_error(ml3_function(1.0, 0.5, 1.0, lambda), exact));
                     }
                     add_tolerance(cases, "ml3/alpha=0.5", "max rel |E_{1/2}(-x) - exp(x^2) erfc(x)|", ml_error, 1e-9);
                   }});
  tasks.push_back({"confluent", [](RngState&, Cases& cases) {
                     double error = 0.0;
                     for (double a : {0.5, 2.0, 5.5})
                       for (double gap : {0.3, 1.0, 7.0})
                         for (double x : {0.01, 1.0, 10.0, 60.0, 800.0}) {
                           const double b = a + gap;
                           error = std::max(error,
                                            rel_error(hyp1f1_neg(a, b, x), boost::math::hypergeometric_1F1(a, b, -x)));
                         }
                     add_tolerance(cases, "hyp1f1", "max rel error vs independent evaluation", error, 1e-9);
                   }});
  for (double alpha : config.alpha_grid) {
    const std::string tag = "alpha=" + fmt(alpha);
    tasks.push_back({tag, [=](RngState&, Cases& cases) {
                       const StableParams params(alpha);
                       const StableGrid& grid = StableGrid::get(params);
                       add_tolerance(cases, "stable-mass/" + tag, "|integral of f - 1|",
                                     std::abs(grid.integrate([](double) { return 0.0; }) - 1.0), 1e-8);
                       double moment = 0.0;
                       for (double theta : {0.5, 1.0, 3.0}) {
                         const double numeric = grid.integrate([=](double t) { return -theta * std::log(t); });
                         moment = std::max(moment, rel_error(numeric, neg_moment_stable(params, theta).value()));
                       }
                       add_tolerance(cases, "neg-moment/" + tag, "max rel |quadrature - Gamma ratio|", moment, 1e-8);
                       // Laplace transform of T_{alpha,theta}^{-alpha} by quadrature against the series.
                       double lt = 0.0;
                       for (double theta : {0.0, 0.5, 2.0})
                         for (double lambda : {0.5, 1.5}) {
                           const double log_norm = neg_moment_stable(params, theta).log_magnitude();
                           const double numeric = grid.integrate([=](double t) {
                             return -lambda * std::pow(t, -alpha) - theta * std::log(t) - log_norm;
                           });
                           lt = std::max(lt, rel_error(numeric, ml3_function_series(theta / alpha + 1.0, alpha, theta + 1.0,
                                                                               lambda)));
                         }
                       add_tolerance(cases, "ml3-laplace/" + tag, "max rel |quadrature - series|", lt, 1e-8);
                       double mixed = 0.0;
                       for (const auto& [n, k] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{6, 4}}) {
                         const double gamma = 0.5 / alpha + k;
                         const double beta = 0.5 + n;
                         mixed = std::max(mixed, rel_error(ml3_function_integral(gamma, alpha, beta, 1.5),
                                                           ml3_function_series(gamma, alpha, beta, 1.5)));
                       }
                       add_tolerance(cases, "ml3-mixture/" + tag, "max rel |Beta-mixed quadrature - series|",
                                     mixed, 1e-8);
                     }});
  }
}

// ---------------------------------------------------------------------------
// samplers-oracle

void samplers_oracle_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const long n_ks = size_at(config, 0);
  const long n_lt = size_at(config, 1);
  for (double theta : {0.0, -0.25, 0.5, 1.0, 2.0}) {
    const std::string tag = "alpha=0.5/theta=" + fmt(theta);
    tasks.push_back({tag, [=](RngState& rng, Cases& cases) {
                       const StableParams half(0.5);
                       std::vector<double> inv(n_ks);
                       for (long i = 0; i < n_ks; ++i) {
                         const double t = theta == 0.0 ? sample_positive_stable(rng, half)
                                                       : sample_tilted_stable(rng, half, theta);
                         inv[i] = 1.0 / t;
                       }
                       const boost::math::gamma_distribution<double> law(theta + 0.5, 4.0);
                       add_p_value(cases, (theta == 0.0 ? "stable-ks/" : "tilted-ks/") + tag,
                                   "KS 1/T vs Gamma(theta+1/2, scale 4)",
                                   ks_one_sample(std::move(inv), [&](double x) { return boost::math::cdf(law, x); }),
                                   n_ks);
                     }});
  }
  for (double alpha : config.alpha_grid) {
    const std::string tag = "alpha=" + fmt(alpha);
    tasks.push_back({tag, [=](RngState& rng, Cases& cases) {
                       const StableParams params(alpha);
                       std::vector<double> xs(n_lt);
                       for (long i = 0; i < n_lt; ++i) xs[i] = std::exp(-sample_positive_stable(rng, params));
                       const auto [mean, se] = mean_se(xs);
                       add_tolerance(cases, "stable-laplace/" + tag, "|mean exp(-T) - exp(-1)| / SE",
                                     std::abs(mean - std::exp(-1.0)) / se, 3.0, n_lt);
                     }});
  }
}

// ---------------------------------------------------------------------------
// identity-2-13

const std::vector<std::pair<int, int>> kIdentityGrid = {{3, 2}, {5, 2}, {6, 4}};

void identity_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const long draws = size_at(config, 0);
  for (double alpha : config.alpha_grid) {
    for (const auto& [n, k] : kIdentityGrid) {
      const std::string tag = "alpha=" + fmt(alpha) + "/n=" + std::to_string(n) + "/k=" + std::to_string(k);
      tasks.push_back({tag, [=, n = n, k = k](RngState& rng, Cases& cases) {
                         const StableParams params(alpha);
                         std::vector<double> lhs(draws);
                         std::vector<double> rhs(draws);
                         for (long i = 0; i < draws; ++i) {
                           const double t = sample_tilted_stable(rng, params, k * alpha);
                           lhs[i] = std::log(t) - std::log(beta_variate(rng, k * alpha, n - k * alpha));
                         }
                         for (long i = 0; i < draws; ++i) {
                           const double t = sample_tilted_stable(rng, params, n);
                           rhs[i] = std::log(t) - std::log(beta_variate(rng, k, n / alpha - k)) / alpha;
                         }
                         add_p_value(cases, "ratio/" + tag, "two-sample KS on log ratios",
                                     ks_two_sample(std::move(lhs), std::move(rhs)), draws);
                       }});
    }
  }
}

// ---------------------------------------------------------------------------
// posterior-py

const std::vector<Partition> kPyPartitions = {Partition({2, 1}), Partition({3, 2}), Partition({3, 1, 1, 1})};

void posterior_py_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const long draws = size_at(config, 0);
  for (const Json& family : config.families) {
    if (family.at("type") != "pitman_yor") throw DomainError("posterior-py: families must be pitman_yor");
    for (double alpha : config.alpha_grid) {
      for (const Partition& p : kPyPartitions) {
        const std::string tag = family_label(family) + "/alpha=" + fmt(alpha) + "/p=" + partition_label(p);
        tasks.push_back({tag, [=](RngState& rng, Cases& cases) {
                           const GibbsModel model = model_from_descriptor(alpha, family);
                           const double theta = std::get<PitmanYor>(model.family()).theta;
                           const PyPosteriorParams exact = py_posterior_params(alpha, theta, p);
                           PosteriorOptions options;
                           options.continuous_sticks = false;
                           std::vector<double> b1(draws);
                           std::vector<double> b2(draws);
                           for (long i = 0; i < draws; ++i) b1[i] = sample_posterior_t1(rng, model, p, options).scale_split;
                           for (long i = 0; i < draws; ++i) b2[i] = sample_posterior_t2(rng, model, p, options).scale_split;
                           const boost::math::beta_distribution<double> law1(exact.beta_t1.first, exact.beta_t1.second);
                           const boost::math::beta_distribution<double> law2(exact.beta_t2.first, exact.beta_t2.second);
                           add_p_value(cases, "t1-split/" + tag, "KS vs Beta(theta+k a, n-k a)",
                                       ks_one_sample(std::move(b1), [&](double x) { return boost::math::cdf(law1, x); }),
                                       draws);
                           add_p_value(cases, "t2-split/" + tag, "KS vs Beta(theta/a+k, n/a-k)",
                                       ks_one_sample(std::move(b2), [&](double x) { return boost::math::cdf(law2, x); }),
                                       draws);
                         }});
      }
    }
  }
}

// ---------------------------------------------------------------------------
// posterior-t1t2

void posterior_t1t2_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const long draws = size_at(config, 0);
  const int n_max = static_cast<int>(size_at(config, 1));
  for (const Json& family : config.families) {
    for (double alpha : config.alpha_grid) {
      for (int n = 1; n <= n_max; ++n) {
        for (const Partition& p : integer_partitions(n)) {
          const std::string tag = family_label(family) + "/alpha=" + fmt(alpha) + "/p=" + partition_label(p);
          tasks.push_back({tag, [=](RngState& rng, Cases& cases) {
                             const GibbsModel model = model_from_descriptor(alpha, family);
                             PosteriorOptions options;
                             options.continuous_sticks = false;
                             const int k = p.k();
                             std::vector<std::vector<double>> m1(k, std::vector<double>(draws));
                             std::vector<std::vector<double>> m2(k, std::vector<double>(draws));
                             std::vector<double> tk1(draws);
                             std::vector<double> tk2(draws);
                             for (long i = 0; i < draws; ++i) {
                               const PosteriorMeasure post = sample_posterior_t1(rng, model, p, options);
                               for (int j = 0; j < k; ++j) m1[j][i] = post.fixed_atoms[j];
                               tk1[i] = std::log(post.t_draw) - std::log(post.scale_split);
                             }
                             for (long i = 0; i < draws; ++i) {
                               const PosteriorMeasure post = sample_posterior_t2(rng, model, p, options);
                               for (int j = 0; j < k; ++j) m2[j][i] = post.fixed_atoms[j];
                               tk2[i] = std::log(post.t_draw) - std::log(post.scale_split) / alpha;
                             }
                             for (int j = 0; j < k; ++j) {
                               add_p_value(cases, "atom/" + tag + "/j=" + std::to_string(j + 1),
                                           "two-sample KS, fixed-atom mass", ks_two_sample(m1[j], m2[j]), draws);
                             }
                             add_p_value(cases, "t-given-k/" + tag, "two-sample KS, log T given K_n",
                                         ks_two_sample(std::move(tk1), std::move(tk2)), draws);
                           }});
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// posterior-mean

void posterior_mean_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const long draws = size_at(config, 0);
  const int n_max = static_cast<int>(size_at(config, 1));
  for (const Json& family : config.families) {
    for (double alpha : config.alpha_grid) {
      for (int n = 1; n <= n_max; ++n) {
        for (const Partition& p : integer_partitions(n)) {
          const std::string tag = family_label(family) + "/alpha=" + fmt(alpha) + "/p=" + partition_label(p);
          tasks.push_back({tag, [=](RngState& rng, Cases& cases) {
                             const GibbsModel model = model_from_descriptor(alpha, family);
                             const AtomMasses exact = posterior_mean_atom_masses(model, p);
                             const Prediction pred = predict(model, p);
                             double gap = std::abs(exact.new_mass - pred.new_table_prob);
                             for (int j = 0; j < p.k(); ++j) {
                               gap = std::max(gap, std::abs(exact.atom_masses[j] - pred.existing[j]));
                             }
                             add_tolerance(cases, "equals-predict/" + tag, "max |posterior mean - prediction rule|", gap,
                                           1e-12);
                             if (const auto* py = std::get_if<PitmanYor>(&model.family())) {
                               double closed = 0.0;
                               for (int j = 0; j < p.k(); ++j) {
                                 const double value = (p.block_sizes()[j] - alpha) / (py->theta + n);
                                 closed = std::max(closed, std::abs(exact.atom_masses[j] - value));
                               }
                               add_tolerance(cases, "py-closed-form/" + tag, "max |mean - (n_j-a)/(theta+n)|", closed,
                                             1e-10);
                             }
                             PosteriorOptions options;
                             options.continuous_sticks = false;
                             std::vector<std::vector<double>> masses(p.k(), std::vector<double>(draws));
                             for (long i = 0; i < draws; ++i) {
                               const PosteriorMeasure post = sample_posterior_t1(rng, model, p, options);
                               for (int j = 0; j < p.k(); ++j) masses[j][i] = post.fixed_atoms[j];
                             }
                             for (int j = 0; j < p.k(); ++j) {
                               const auto [mean, se] = mean_se(masses[j]);
                               add_tolerance(cases, "mc-mean/" + tag + "/j=" + std::to_string(j + 1), "|MC mean - exact| / SE",
                                             std::abs(mean - exact.atom_masses[j]) / se, 3.0, draws);
                             }
                           }});
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// ml-class

// Bin probabilities of a density on [0, 1] over `bins` equal cells.
std::vector<double> unit_bin_probs(const std::function<double(double)>& pdf, int bins) {
  std::vector<double> probs(bins);
  for (int i = 0; i < bins; ++i) {
    probs[i] = quad::integrate_singular(pdf, static_cast<double>(i) / bins, static_cast<double>(i + 1) / bins).value;
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& x : probs) x /= total;
  return probs;
}

std::vector<std::int64_t> unit_bin_counts(const std::vector<double>& xs, int bins) {
  std::vector<std::int64_t> counts(bins, 0);
  for (double x : xs) ++counts[std::min(bins - 1, static_cast<int>(x * bins))];
  return counts;
}

void ml_class_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const long n_lt = size_at(config, 0);
  const long n_thin = size_at(config, 1);
  const long n_post = size_at(config, 2);
  for (double alpha : config.alpha_grid) {
    const std::string tag = "alpha=" + fmt(alpha);
    tasks.push_back({"laplace/" + tag, [=](RngState& rng, Cases& cases) {
                       const StableParams params(alpha);
                       for (const auto& [theta, lambda] : {std::pair{0.5, 1.0}, std::pair{1.5, 2.0}}) {
                         std::vector<double> xs(n_lt);
                         for (long i = 0; i < n_lt; ++i) {
                           xs[i] = std::exp(-lambda * std::pow(sample_tilted_stable(rng, params, theta), -alpha));
                         }
                         const auto [mean, se] = mean_se(xs);
                         const double series = ml_e(theta / alpha + 1.0, alpha, theta + 1.0, lambda);
                         add_tolerance(cases, "laplace-mc/" + tag + "/theta=" + fmt(theta) + "/lambda=" + fmt(lambda),
                                       "|MC E[exp(-lambda T^-a)] - series| / SE", std::abs(mean - series) / se, 3.0, n_lt);
                       }
                     }});
    tasks.push_back({"closed-forms/" + tag, [=](RngState&, Cases& cases) {
                       const MLTiltParams ml(alpha, 0.5, 0, 1.0);
                       double mixture = 0.0;
                       for (int n = 1; n <= 6; ++n)
                         for (int k = 1; k <= n; ++k)
                           for (double lambda : {0.3, 1.0, 4.0}) {
                             const MLTiltParams m(alpha, 0.5, 0, lambda);
                             mixture = std::max(mixture, std::abs(ml_e_nk(m, n, k) - ml_e_nk_beta_mixture(m, n, k)));
                           }
                       add_tolerance(cases, "beta-mixture/" + tag, "max |series - Beta mixture|, n<=6", mixture, 1e-8);

                       const StableGrid& grid = StableGrid::get(ml.params);
                       double norm = 0.0;
                       for (unsigned j : {0u, 2u}) {
                         const MLTiltParams m(alpha, 0.5, j, 1.0);
                         norm = std::max(norm, std::abs(grid.integrate([&](double t) { return std::log(ml_tilt_h(m, t)); }) - 1.0));
                       }
                       add_tolerance(cases, "tilt-h-mass/" + tag, "|integral h f - 1|", norm, 1e-6);
                       auto half_line = [](const std::function<double(double)>& pdf) {
                         return quad::integrate_singular(
                                    [&](double u) {
                                      if (!(u > 0.0 && u < 1.0)) return 0.0;
                                      const double s = u / (1.0 - u);
                                      return pdf(s) / ((1.0 - u) * (1.0 - u));
                                    },
                                    0.0, 1.0, 1e-12)
                             .value;
                       };
                       double density = 0.0;
                       density = std::max(density, std::abs(half_line([&](double s) {
                                                     return ml_diversity_pdf(ml.params, 0.5, s);
                                                   }) - 1.0));
                       for (const auto& [n, k] : {std::pair{3, 2}, std::pair{5, 1}, std::pair{4, 4}}) {
                         density = std::max(density, std::abs(quad::integrate_singular([&](double b) {
                                                       return ml_posterior_rk_pdf(ml, n, k, b);
                                                     }, 0.0, 1.0).value - 1.0));
                         density = std::max(density, std::abs(quad::integrate_singular([&](double b) {
                                                       return ml_beta_lambda_pdf(ml, n, k, b);
                                                     }, 0.0, 1.0).value - 1.0));
                         density = std::max(density,
                                            std::abs(half_line([&](double s) { return ml_gnk_pdf(ml, n, k, s); }) - 1.0));
                       }
                       add_tolerance(cases, "density-mass/" + tag, "max |integral - 1| over the class densities",
                                     density, 1e-6);

                       double rule = 0.0;
                       double tilted = 0.0;
                       for (unsigned j : {0u, 1u}) {
                         const MLTiltParams m(alpha, 0.5, j, 1.0);
                         const GibbsModel model = m.model();
                         for (int n = 1; n <= 6; ++n) {
                           for (const Partition& p : integer_partitions(n)) {
                             const Prediction a = ml_predict(m, p);
                             const Prediction b = predict(model, p);
                             rule = std::max(rule, rel_error(a.new_table_prob, b.new_table_prob));
                             for (int i = 0; i < p.k(); ++i) rule = std::max(rule, rel_error(a.existing[i], b.existing[i]));
                             tilted = std::max(tilted, rel_error(ml_eppf(m, p).value(), eppf(model, p).value()));
                           }
                         }
                       }
                       add_tolerance(cases, "predict/" + tag, "max rel |E-ratio rule - generic predict|, n<=6", rule, 1e-8);
                       add_tolerance(cases, "eppf/" + tag, "max rel |tilted EPPF - generic eppf|, n<=6", tilted, 1e-8);

                       const MLTiltParams tiny(alpha, 0.5, 0, 1e-8);
                       const MLTiltParams zero(alpha, 0.5, 0, 0.0);
                       const GibbsModel py_model(alpha, PitmanYor{0.5});
                       double continuity = 0.0;
                       for (int n = 1; n <= 5; ++n) {
                         for (const Partition& p : integer_partitions(n)) {
                           continuity = std::max(continuity, rel_error(ml_eppf(tiny, p).value(), eppf(py_model, p).value()));
                           continuity = std::max(continuity, rel_error(ml_predict(tiny, p).new_table_prob,
                                                                       ml_predict(zero, p).new_table_prob));
                         }
                         for (int k = 1; k <= n; ++k) {
                           for (double b : {0.1, 0.5, 0.9}) {
                             continuity = std::max(continuity, rel_error(ml_posterior_rk_pdf(tiny, n, k, b),
                                                                         ml_posterior_rk_pdf(zero, n, k, b)));
                             continuity = std::max(continuity, rel_error(ml_beta_lambda_pdf(tiny, n, k, b),
                                                                         ml_beta_lambda_pdf(zero, n, k, b)));
                           }
                         }
                       }
                       add_tolerance(cases, "lambda-to-zero/" + tag, "max rel |lambda=1e-8 - lambda=0|", continuity, 1e-6);
                     }});
    for (unsigned j : {0u, 1u}) {
      const std::string jtag = tag + "/j=" + std::to_string(j);
      tasks.push_back({"thinning/" + jtag, [=](RngState& rng, Cases& cases) {
                         // PD(alpha, theta) kept with probability P(N(lambda L) = j | L), L = T^{-alpha}.
                         const double theta = 0.5;
                         const double lambda = 1.0;
                         const int n = 5;
                         const StableParams params(alpha);
                         const GibbsModel model = MLTiltParams(alpha, theta, j, lambda).model();
                         const double log_sup = j == 0 ? 0.0 : j * std::log(static_cast<double>(j)) - j - std::lgamma(j + 1.0);
                         std::vector<std::int64_t> counts(n, 0);
                         for (long kept = 0; kept < n_thin;) {
                           const double t = sample_tilted_stable(rng, params, theta);
                           const double mean = lambda * std::pow(t, -alpha);
                           const double log_pmf = -mean + j * std::log(mean) - std::lgamma(j + 1.0);
                           if (std::log(uniform(rng)) >= log_pmf - log_sup) continue;
                           LazySticks sticks = LazySticks::pd_given_total(params, t);
                           for (int c = 0; c < n; ++c) sticks.draw_index(rng);
                           ++counts[sticks.revealed() - 1];
                           ++kept;
                         }
                         add_p_value(cases, "thinning/" + jtag, "chi-square K_5 vs k_pmf", chi_square_pmf(counts, k_pmf(model, n)),
                                     n_thin);
                       }});
    }
    tasks.push_back({"posterior-densities/" + tag, [=](RngState& rng, Cases& cases) {
                       const MLTiltParams ml(alpha, 0.5, 0, 1.0);
                       const GibbsModel model = ml.model();
                       const Partition p({2, 1});
                       const int n = 3;
                       const int k = 2;
                       const int bins = 20;
                       PosteriorOptions options;
                       options.continuous_sticks = false;
                       std::vector<double> r(n_post);
                       std::vector<double> beta(n_post);
                       std::vector<double> diversity(n_post);
                       for (long i = 0; i < n_post; ++i) r[i] = sample_posterior_t1(rng, model, p, options).scale_split;
                       for (long i = 0; i < n_post; ++i) {
                         const PosteriorMeasure post = sample_posterior_t2(rng, model, p, options);
                         beta[i] = post.scale_split;
                         diversity[i] = std::pow(post.t_draw, -alpha);
                       }
                       add_p_value(cases, "rk-density/" + tag, "chi-square T1 split vs density",
                                   chi_square_pmf(unit_bin_counts(r, bins),
                                                  unit_bin_probs([&](double b) { return ml_posterior_rk_pdf(ml, n, k, b); }, bins)),
                                   n_post);
                       add_p_value(cases, "beta-density/" + tag, "chi-square T2 split vs density",
                                   chi_square_pmf(unit_bin_counts(beta, bins),
                                                  unit_bin_probs([&](double b) { return ml_beta_lambda_pdf(ml, n, k, b); }, bins)),
                                   n_post);
                       // Tabulated CDF of the diversity density on u = s/(1+s).
                       const int cells = 4000;
                       std::vector<double> cdf(cells + 1, 0.0);
                       auto mapped = [&](double u) {
                         if (!(u > 0.0 && u < 1.0)) return 0.0;
                         const double s = u / (1.0 - u);
                         return ml_gnk_pdf(ml, n, k, s) / ((1.0 - u) * (1.0 - u));
                       };
                       for (int i = 0; i < cells; ++i) {
                         cdf[i + 1] = cdf[i] + quad::integrate(mapped, static_cast<double>(i) / cells,
                                                               static_cast<double>(i + 1) / cells, 1e-10, 10).value;
                       }
                       const double total = cdf[cells];
                       auto cdf_at = [&](double s) {
                         const double x = s / (1.0 + s) * cells;
                         const int i = std::min(cells - 1, static_cast<int>(x));
                         return (cdf[i] + (x - i) * (cdf[i + 1] - cdf[i])) / total;
                       };
                       add_p_value(cases, "gnk-density/" + tag, "KS T2 t^-alpha vs density",
                                   ks_one_sample(std::move(diversity), cdf_at), n_post);
                     }});
  }
}

// ---------------------------------------------------------------------------
// species

void species_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  const int reps = static_cast<int>(size_at(config, 0));
  const long replicates = size_at(config, 1);
  if (config.m_values.empty()) throw DomainError("species: m_values must be nonempty");
  for (const Json& family : config.families) {
    for (double alpha : config.alpha_grid) {
      const std::string tag = family_label(family) + "/alpha=" + fmt(alpha) + "/p=(2,1)";
      tasks.push_back({tag, [=](RngState& rng, Cases& cases) {
                         const GibbsModel model = model_from_descriptor(alpha, family);
                         const Partition p({2, 1});
                         const std::size_t m_count = config.m_values.size();
                         std::vector<std::vector<double>> distances(m_count);
                         for (long r = 0; r < replicates; ++r) {
                           const SpeciesSamples s =
                               species_discovery_sim(rng.split(static_cast<std::uint64_t>(r)), model, p, config.m_values, reps);
                           for (std::size_t i = 0; i < m_count; ++i) distances[i].push_back(ks_distance(s.scaled[i], s.limit));
                         }
                         std::vector<double> medians(m_count);
                         for (std::size_t i = 0; i < m_count; ++i) {
                           std::vector<double> d = distances[i];
                           std::sort(d.begin(), d.end());
                           const std::size_t h = d.size() / 2;
                           medians[i] = d.size() % 2 == 1 ? d[h] : 0.5 * (d[h - 1] + d[h]);
                         }
                         for (std::size_t i = 1; i < m_count; ++i) {
                           // Gap is the decrease of the median distance; a decrease passes.
                           SuiteCase c;
                           c.case_id = "decrease/" + tag + "/m=" + std::to_string(config.m_values[i]);
                           c.statistic_name = "median KS distance";
                           c.statistic = medians[i];
                           c.measure = CaseMeasure::tolerance_gap;
                           c.p_or_gap = medians[i - 1] - medians[i];
                           c.n_samples = reps * replicates;
                           c.pass = medians[i] < medians[i - 1];
                           cases.push_back(std::move(c));
                         }
                         add_tolerance(cases, "final/" + tag + "/m=" + std::to_string(config.m_values.back()),
                                       "median KS distance", medians.back(), 0.05, reps * replicates);
                       }});
    }
  }
}

using TaskBuilder = void (*)(const SuiteConfig&, std::vector<Task>&);

TaskBuilder builder_for(const std::string& name) {
  static const std::map<std::string, TaskBuilder> builders = {
      {"eppf-exact", eppf_exact_tasks},       {"stirling", stirling_tasks},
      {"special-fn", special_fn_tasks},       {"samplers-oracle", samplers_oracle_tasks},
      {"identity-2-13", identity_tasks},      {"posterior-py", posterior_py_tasks},
      {"posterior-t1t2", posterior_t1t2_tasks}, {"posterior-mean", posterior_mean_tasks},
      {"ml-class", ml_class_tasks},           {"species", species_tasks}};
  const auto it = builders.find(name);
  if (it == builders.end()) throw DomainError("unknown suite '" + name + "'");
  return it->second;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  const TaskBuilder builder = builder_for(config.suite);
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite_name = config.suite;
  std::vector<Task> tasks;
  builder(config, tasks);
  for (std::size_t index = 0; index < tasks.size(); ++index) {
    RngState rng(config.seed, index);
    Cases cases;
    try {
      tasks[index].run(rng, cases);
    } catch (const std::exception& error) {
      SuiteCase failed;
      failed.case_id = "error/" + tasks[index].label;
      failed.statistic_name = "exception";
      failed.statistic = std::nan("");
      failed.p_or_gap = std::nan("");
      failed.pass = false;
      failed.note = error.what();
      cases.push_back(std::move(failed));
    }
    for (SuiteCase& c : cases) {
      c.seed = config.seed;
      c.stream = index;
      report.cases.push_back(std::move(c));
    }
  }
  report.p_value_cases = static_cast<std::size_t>(std::count_if(
      report.cases.begin(), report.cases.end(), [](const SuiteCase& c) { return c.measure == CaseMeasure::p_value; }));
  report.per_case_level =
      report.p_value_cases == 0 ? report.family_level : bonferroni_level(report.family_level, report.p_value_cases);
  for (SuiteCase& c : report.cases) {
    if (c.measure == CaseMeasure::p_value) c.pass = std::isfinite(c.p_or_gap) && c.p_or_gap > report.per_case_level;
  }
  report.overall_pass = !report.cases.empty() && std::all_of(report.cases.begin(), report.cases.end(),
                                                               [](const SuiteCase& c) { return c.pass; });
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SuiteReport run_suite(const std::string& name, const Json& config) {
  return run_suite(suite_config_from_json(name, config));
}

}  // namespace gibbs
