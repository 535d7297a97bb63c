#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gibbs/errors.hpp"
#include "gibbs/gibbs_model.hpp"
#include "gibbs/model_json.hpp"
#include "gibbs/posterior.hpp"
#include "gibbs/report.hpp"
#include "gibbs/species.hpp"
#include "gibbs/suites.hpp"

namespace {

using gibbs::Json;

struct GlobalOptions {
  std::string model_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out_path;
  std::string format = "json";
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gibbs::DomainError("cannot open '" + path + "'");
  return Json::parse(in);
}

gibbs::GibbsModel load_model(const GlobalOptions& global) {
  if (global.model_path.empty()) throw gibbs::DomainError("--model <file.json> is required");
  return gibbs::model_from_json(read_json_file(global.model_path));
}

void emit(const GlobalOptions& global, const std::string& text) {
  if (global.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(global.out_path);
  if (!out) throw gibbs::DomainError("cannot write '" + global.out_path + "'");
  out << text;
}

std::string dump(const Json& document) { return document.dump(2) + "\n"; }

std::string join_blocks(const gibbs::Partition& p) {
  std::string text;
  for (std::size_t i = 0; i < p.block_sizes().size(); ++i) {
    if (i > 0) text += ';';
    text += std::to_string(p.block_sizes()[i]);
  }
  return text;
}

using gibbs::format_double;

int run_eppf(const GlobalOptions& global, const std::vector<int>& blocks) {
  const gibbs::GibbsModel model = load_model(global);
  const gibbs::Partition p(blocks);
  const gibbs::SpecialValue value = gibbs::eppf(model, p);
  if (global.format == "csv") {
    emit(global, "partition,eppf,log_eppf\n" + join_blocks(p) + "," + format_double(value.value()) + "," +
                     format_double(value.log_magnitude()) + "\n");
  } else {
    emit(global, dump({{"model", gibbs::model_to_json(model)},
                       {"partition", gibbs::partition_to_json(p)},
                       {"eppf", value.value()},
                       {"log_eppf", value.log_magnitude()}}));
  }
  return 0;
}

int run_kpmf(const GlobalOptions& global, int n) {
  const gibbs::GibbsModel model = load_model(global);
  const std::vector<double> pmf = gibbs::k_pmf(model, n);
  if (global.format == "csv") {
    std::string text = "k,prob\n";
    for (std::size_t k = 0; k < pmf.size(); ++k) text += std::to_string(k + 1) + "," + format_double(pmf[k]) + "\n";
    emit(global, text);
  } else {
    emit(global, dump({{"model", gibbs::model_to_json(model)}, {"n", n}, {"k_pmf", pmf}}));
  }
  return 0;
}

int run_predict(const GlobalOptions& global, const std::vector<int>& blocks) {
  const gibbs::GibbsModel model = load_model(global);
  const gibbs::Partition p(blocks);
  const gibbs::Prediction prediction = gibbs::predict(model, p);
  if (global.format == "csv") {
    std::string text = "label,prob\nnew," + format_double(prediction.new_table_prob) + "\n";
    for (std::size_t j = 0; j < prediction.existing.size(); ++j) {
      text += std::to_string(j + 1) + "," + format_double(prediction.existing[j]) + "\n";
    }
    emit(global, text);
  } else {
    emit(global, dump({{"model", gibbs::model_to_json(model)},
                       {"partition", gibbs::partition_to_json(p)},
                       {"new_table_prob", prediction.new_table_prob},
                       {"existing", prediction.existing}}));
  }
  return 0;
}

int run_sample_partition(const GlobalOptions& global, int n, int reps) {
  const gibbs::GibbsModel model = load_model(global);
  const gibbs::RngState root(global.seed);
  std::string text = "rep,k,block_sizes\n";
  Json draws = Json::array();
  for (int r = 0; r < reps; ++r) {
    gibbs::RngState rng = root.split(static_cast<std::uint64_t>(r));
    const gibbs::Partition p = gibbs::sample_partition_sequential(rng, model, n);
    text += std::to_string(r) + "," + std::to_string(p.k()) + "," + join_blocks(p) + "\n";
    draws.push_back(gibbs::partition_to_json(p));
  }
  if (global.format == "csv") {
    emit(global, text);
  } else {
    emit(global, dump({{"model", gibbs::model_to_json(model)}, {"n", n}, {"seed", global.seed}, {"partitions", draws}}));
  }
  return 0;
}

int run_sample_posterior(const GlobalOptions& global, const std::vector<int>& blocks, const std::string& representation,
                         int reps, double eps, bool sir) {
  const gibbs::GibbsModel model = load_model(global);
  const gibbs::Partition p(blocks);
  const gibbs::RngState root(global.seed);
  gibbs::PosteriorOptions options;
  options.eps = eps;
  if (sir) options.joint.method = gibbs::JointMethod::sir;
  std::string text = "rep,representation,scale_split,t_draw,kind,label,weight\n";
  Json draws = Json::array();
  for (int r = 0; r < reps; ++r) {
    gibbs::RngState rng = root.split(static_cast<std::uint64_t>(r));
    const gibbs::PosteriorMeasure measure = representation == "T2" ? gibbs::sample_posterior_t2(rng, model, p, options)
                                                                   : gibbs::sample_posterior_t1(rng, model, p, options);
    const std::string prefix = std::to_string(r) + "," + representation + "," + format_double(measure.scale_split) +
                               "," + format_double(measure.t_draw) + ",";
    for (std::size_t j = 0; j < measure.fixed_atoms.size(); ++j) {
      text += prefix + "fixed," + std::to_string(j + 1) + "," + format_double(measure.fixed_atoms[j]) + "\n";
    }
    const auto& sticks = measure.continuous_part.weights;
    for (std::size_t i = 0; i < sticks.size(); ++i) {
      text += prefix + "continuous," + std::to_string(i) + "," + format_double(sticks[i]) + "\n";
    }
    text += prefix + "residual,," + format_double(measure.continuous_part.residual) + "\n";
    draws.push_back(gibbs::posterior_to_json(measure));
  }
  if (global.format == "csv") {
    emit(global, text);
  } else {
    emit(global, dump({{"model", gibbs::model_to_json(model)},
                       {"partition", gibbs::partition_to_json(p)},
                       {"seed", global.seed},
                       {"draws", draws}}));
  }
  return 0;
}

int run_species(const GlobalOptions& global, const std::vector<int>& blocks, const std::vector<long>& m_values,
                int reps) {
  const gibbs::GibbsModel model = load_model(global);
  const gibbs::RngState root(global.seed);
  const gibbs::SpeciesSamples samples = blocks.empty()
                                            ? gibbs::species_discovery_prior(root, model, m_values, reps)
                                            : gibbs::species_discovery_sim(root, model, gibbs::Partition(blocks),
                                                                           m_values, reps);
  if (global.format == "csv") {
    std::string text = "m,rep,value\n";
    for (std::size_t i = 0; i < samples.m_values.size(); ++i) {
      for (std::size_t r = 0; r < samples.scaled[i].size(); ++r) {
        text += std::to_string(samples.m_values[i]) + "," + std::to_string(r) + "," +
                format_double(samples.scaled[i][r]) + "\n";
      }
    }
    for (std::size_t r = 0; r < samples.limit.size(); ++r) {
      text += "limit," + std::to_string(r) + "," + format_double(samples.limit[r]) + "\n";
    }
    emit(global, text);
  } else {
    emit(global, dump({{"model", gibbs::model_to_json(model)},
                       {"seed", global.seed},
                       {"m_values", samples.m_values},
                       {"scaled", samples.scaled},
                       {"limit", samples.limit}}));
  }
  return 0;
}

int run_verify(const GlobalOptions& global, const std::string& suite, const std::string& config_path) {
  Json config = config_path.empty() ? Json::object() : read_json_file(config_path);
  if (global.seed_given) config["seed"] = global.seed;
  const gibbs::SuiteReport report = gibbs::run_suite(suite, config);
  emit(global, global.format == "csv" ? gibbs::report_to_csv(report) : dump(gibbs::report_to_json(report)));
  return report.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs-type priors: partition laws, posterior samplers and verification suites"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--model", global.model_path, "Model JSON file");
  auto* seed_option = app.add_option("--seed", global.seed, "Root seed");
  app.add_option("--out", global.out_path, "Output path (default stdout)");
  app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::vector<int> blocks;
  int n = 0;
  int reps = 1;
  std::string representation = "T1";
  double eps = gibbs::kDefaultStickEps;
  bool sir = false;
  std::vector<long> m_values;
  std::string suite;
  std::string config_path;

  auto* eppf = app.add_subcommand("eppf", "EPPF of a partition");
  eppf->add_option("--partition", blocks, "Block sizes")->required()->delimiter(',');
  auto* kpmf = app.add_subcommand("kpmf", "Law of the number of blocks K_n");
  kpmf->add_option("--n", n, "Sample size")->required();
  auto* predict = app.add_subcommand("predict", "Prediction rule given a partition");
  predict->add_option("--partition", blocks, "Block sizes")->required()->delimiter(',');
  auto* sample_partition = app.add_subcommand("sample-partition", "Draw partitions sequentially");
  sample_partition->add_option("--n", n, "Sample size")->required();
  sample_partition->add_option("--reps", reps, "Number of draws");
  auto* sample_posterior = app.add_subcommand("sample-posterior", "Draw posterior random measures");
  sample_posterior->add_option("--partition", blocks, "Block sizes")->required()->delimiter(',');
  sample_posterior->add_option("--representation", representation, "T1 or T2")->check(CLI::IsMember({"T1", "T2"}));
  sample_posterior->add_option("--reps", reps, "Number of draws");
  sample_posterior->add_option("--eps", eps, "Stick truncation threshold");
  sample_posterior->add_flag("--sir", sir, "Resampling instead of exact rejection");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(gibbs::suite_names()));
  verify->add_option("--config", config_path, "Suite config JSON file");
  auto* species = app.add_subcommand("species", "New-species counts in further samples");
  species->add_option("--partition", blocks, "Observed block sizes (omit for the prior)")->delimiter(',');
  species->add_option("--m", m_values, "Further sample sizes")->required()->delimiter(',');
  species->add_option("--reps", reps, "Replicates");

  CLI11_PARSE(app, argc, argv);
  global.seed_given = seed_option->count() > 0;

  try {
    if (*eppf) return run_eppf(global, blocks);
    if (*kpmf) return run_kpmf(global, n);
    if (*predict) return run_predict(global, blocks);
    if (*sample_partition) return run_sample_partition(global, n, reps);
    if (*sample_posterior) return run_sample_posterior(global, blocks, representation, reps, eps, sir);
    if (*verify) return run_verify(global, suite, config_path);
    if (*species) return run_species(global, blocks, m_values, reps);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 2;
}
