// Command-line front end: sample / dist / experiment / verify / table.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "perfsamp/analytics.hpp"
#include "perfsamp/errors.hpp"
#include "perfsamp/experiment.hpp"
#include "perfsamp/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

// Relative output paths resolve against PERFSAMP_OUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
  if (path.empty() || path == "-" || path.front() == '/') return path;
  const char* dir = std::getenv("PERFSAMP_OUT_DIR");
  if (!dir || !*dir) return path;
  std::string d(dir);
  if (d.back() != '/') d += '/';
  return d + path;
}

int emit_experiment(const perfsamp::ExperimentSpec& spec) {
  const auto result = perfsamp::run_experiment(spec);
  const std::string path = resolve_output(spec.output);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw perfsamp::input_error("cannot open output: " + path);
    os = &file;
  }
  if (spec.format == "json")
    perfsamp::write_json(*os, spec, result);
  else
    perfsamp::write_csv(*os, spec, result);
  std::cerr << "replications=" << result.summary.replications
            << " timeouts=" << result.summary.timeouts
            << " window_mean=" << result.summary.window.mean
            << " window_median=" << result.summary.window.median
            << " steps_mean=" << result.summary.total_steps.mean << "\n";
  if (result.summary.timeouts == result.summary.replications)
    return kExitResource;
  return kExitOk;
}

void add_spec_flags(CLI::App* cmd, perfsamp::ExperimentSpec& spec) {
  cmd->add_option("--n", spec.n, "list length (mtf)");
  cmd->add_option("--weights", spec.weights,
                  "weight family: uniform, zipf, gzl:a, power:s, "
                  "geometric:t, or list:w1,w2,...");
  cmd->add_option("--eps", spec.epsilon, "three-state epsilon");
  cmd->add_option("--sites", spec.sites, "spin sites");
  cmd->add_option("--beta", spec.beta, "spin coupling");
  cmd->add_option("--field", spec.field, "spin field at sites 1..n-1");
  cmd->add_option("--end-field", spec.end_field, "spin field at site n");
  cmd->add_option("--sweep", spec.sweep, "spin sweep direction: lr | rl");
  cmd->add_option("--start", spec.start,
                  "start state (fmmr): id | rev | labels; 0|1|2; bottom|top");
  cmd->add_option("--downset", spec.downset,
                  "fmmr-set: root permutation of the principal down-set");
  cmd->add_option("--reps", spec.replications, "replications");
  cmd->add_option("--seed", spec.seed, "master seed");
  cmd->add_option("--max-window", spec.max_window, "window cap");
  cmd->add_flag("--doubling", spec.doubling, "doubling window schedule");
  cmd->add_option("--trajectories", spec.trajectories,
                  "forward trajectories: auto | all | extremes");
  cmd->add_option("--threads", spec.threads, "worker threads (0 = hardware)");
  cmd->add_option("--format", spec.format, "csv | json");
  cmd->add_option("--out", spec.output, "output path (default stdout)");
}

int cmd_dist(const std::string& weights_text, int n, const std::string& start,
             bool cftp_mixture, long horizon, long pmf_prefix,
             const std::string& out) {
  using namespace perfsamp;
  const WeightVector w = parse_weights(weights_text, n);
  nlohmann::json doc;
  doc["version"] = kOutputFormatVersion;
  if (cftp_mixture) {
    const auto law = cftp_runtime_law(w, horizon);
    doc["law"] = "cftp-mixture";
    doc["pmf_prefix"] = std::vector<double>(
        law.pmf.begin(),
        law.pmf.begin() +
            std::min<std::size_t>(law.pmf.size(),
                                  static_cast<std::size_t>(pmf_prefix) + 1));
    doc["truncation_tail"] = law.tail;
    double mean = 0.0;
    for (std::size_t t = 0; t < law.pmf.size(); ++t)
      mean += static_cast<double>(t) * law.pmf[t];
    doc["mean_truncated"] = mean;
  } else {
    Permutation z = start == "id"     ? Permutation::identity(n)
                    : start == "rev" ? Permutation::reversal(n)
                                     : parse_permutation(start);
    if (z.size() != n)
      throw input_error("start permutation has wrong length");
    const GeomConvolution law = fmmr_runtime_law(w, z);
    doc["law"] = "geometric-convolution";
    doc["start"] = to_string(z);
    doc["law_params"] = law.params();
    doc["mean"] = law.mean();
    doc["var"] = law.variance();
    const auto pmf = law.pmf_table(pmf_prefix);
    doc["pmf_prefix"] = pmf;
    double mass = 0.0;
    for (double p : pmf) mass += p;
    doc["truncation_tail"] = 1.0 - mass;
  }
  const std::string path = resolve_output(out);
  if (!path.empty() && path != "-") {
    std::ofstream file(path);
    if (!file) throw input_error("cannot open output: " + path);
    file << doc.dump(2) << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perfect sampling on move-to-front and toy chains"};
  app.require_subcommand(1);

  perfsamp::ExperimentSpec spec;

  auto* sample = app.add_subcommand("sample", "run a sampler and stream runs");
  sample->add_option("chain", spec.chain, "mtf | three-state | spin")
      ->required();
  sample
      ->add_option("algo", spec.algorithm,
                   "cftp | fmmr | fmmr-set | incremental")
      ->required();
  add_spec_flags(sample, spec);

  std::string dist_chain = "mtf", dist_weights = "uniform", dist_start = "rev";
  std::string dist_out;
  int dist_n = 4;
  bool dist_mixture = false;
  long dist_horizon = 256, dist_prefix = 64;
  auto* dist = app.add_subcommand("dist", "exact running-time laws");
  dist->add_option("chain", dist_chain, "mtf")->required();
  dist->add_option("--n", dist_n, "list length");
  dist->add_option("--weights", dist_weights, "weight family");
  dist->add_option("--start", dist_start, "start state: id | rev | labels");
  dist->add_flag("--cftp-mixture", dist_mixture,
                 "stationary mixture law instead of a fixed start");
  dist->add_option("--horizon", dist_horizon, "mixture truncation horizon");
  dist->add_option("--pmf-upto", dist_prefix, "pmf prefix length to print");
  dist->add_option("--out", dist_out, "output path (default stdout)");

  std::string exp_path;
  perfsamp::ExperimentSpec exp_spec;
  auto* experiment =
      app.add_subcommand("experiment", "run an experiment from a JSON spec");
  experiment->add_option("spec", exp_path, "spec JSON path (- for defaults)");
  add_spec_flags(experiment, exp_spec);

  std::string verify_level = "quick";
  std::uint64_t verify_seed = 20260809;
  bool verify_verbose = false;
  auto* verify = app.add_subcommand("verify", "statistical verification suite");
  verify->add_option("--level", verify_level, "quick | full");
  verify->add_option("--seed", verify_seed, "suite seed");
  verify->add_flag("--verbose", verify_verbose, "print each check");

  std::string table_families = "zipf,gzl:0.5,gzl:2,power:1,geometric:0.5,uniform";
  std::string table_sizes = "1000,10000,100000";
  std::string table_out;
  auto* table = app.add_subcommand("table", "exact-moment scaling table");
  table->add_option("--families", table_families, "comma list of families");
  table->add_option("--sizes", table_sizes, "comma list of n values");
  table->add_option("--out", table_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);

    if (sample->parsed()) return emit_experiment(spec);

    if (dist->parsed()) {
      if (dist_chain != "mtf")
        throw perfsamp::input_error("dist supports the mtf chain");
      return cmd_dist(dist_weights, dist_n, dist_start, dist_mixture,
                      dist_horizon, dist_prefix, dist_out);
    }

    if (experiment->parsed()) {
      // A spec file, when given, is the whole configuration; without one
      // the flags describe the experiment.
      if (!exp_path.empty() && exp_path != "-") {
        std::ifstream in(exp_path);
        if (!in)
          throw perfsamp::input_error("cannot read spec: " + exp_path);
        std::stringstream buf;
        buf << in.rdbuf();
        return emit_experiment(perfsamp::spec_from_json_text(buf.str()));
      }
      return emit_experiment(exp_spec);
    }

    if (verify->parsed()) {
      perfsamp::VerifyOptions opt;
      opt.level = verify_level == "full"
                      ? perfsamp::VerifyOptions::Level::Full
                      : perfsamp::VerifyOptions::Level::Quick;
      opt.seed = verify_seed;
      const auto results = perfsamp::run_acceptance(opt, std::cerr);
      const bool ok =
          perfsamp::print_acceptance(results, std::cout, verify_verbose);
      return ok ? kExitOk : kExitTestFailure;
    }

    if (table->parsed()) {
      std::vector<std::pair<perfsamp::WeightFamily, double>> families;
      std::stringstream fs(table_families);
      std::string item;
      while (std::getline(fs, item, ',')) {
        const auto colon = item.find(':');
        const std::string name = item.substr(0, colon);
        const double param =
            colon == std::string::npos ? 0.0 : std::stod(item.substr(colon + 1));
        const auto fam = perfsamp::family_from_name(name);
        if (!fam) throw perfsamp::input_error("unknown family: " + name);
        families.emplace_back(*fam, param);
      }
      std::vector<double> sizes;
      std::stringstream ss(table_sizes);
      while (std::getline(ss, item, ',')) sizes.push_back(std::stod(item));
      const auto rows = perfsamp::scaling_table(families, sizes);
      const std::string path = resolve_output(table_out);
      if (!path.empty() && path != "-") {
        std::ofstream file(path);
        if (!file) throw perfsamp::input_error("cannot open output: " + path);
        perfsamp::write_scaling_csv(file, rows);
      } else {
        perfsamp::write_scaling_csv(std::cout, rows);
      }
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const perfsamp::input_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const perfsamp::unsupported_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const perfsamp::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTestFailure;
  }
  return kExitUsage;
}
