#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "perfsamp/analytics.hpp"
#include "perfsamp/experiment.hpp"

using namespace perfsamp;

namespace {

std::string csv_of(const ExperimentSpec& spec) {
  std::ostringstream os;
  write_csv(os, spec, run_experiment(spec));
  return os.str();
}

}  // namespace

TEST_CASE("one replication yields one record") {
  ExperimentSpec spec;
  spec.chain = "three-state";
  spec.algorithm = "cftp";
  spec.replications = 1;
  const auto res = run_experiment(spec);
  CHECK(res.rows.size() == 1);
  CHECK(res.summary.replications == 1);
  CHECK(res.rows[0].status == "ok");
}

TEST_CASE("fixed seed gives byte-identical output") {
  ExperimentSpec spec;
  spec.chain = "mtf";
  spec.algorithm = "fmmr";
  spec.start = "rev";
  spec.n = 4;
  spec.weights = "zipf";
  spec.replications = 500;
  spec.seed = 99;
  const std::string a = csv_of(spec);
  const std::string b = csv_of(spec);
  CHECK(a == b);
  spec.threads = 3;  // scheduling must not leak into the bytes
  CHECK(csv_of(spec) == a);
  std::ostringstream j1, j2;
  write_json(j1, spec, run_experiment(spec));
  write_json(j2, spec, run_experiment(spec));
  CHECK(j1.str() == j2.str());
  spec.seed = 100;
  CHECK(csv_of(spec) != a);
}

TEST_CASE("per-replication seeds differ") {
  ExperimentSpec spec;
  spec.chain = "three-state";
  spec.algorithm = "cftp";
  spec.replications = 50;
  const auto res = run_experiment(spec);
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].seed != res.rows[0].seed);
}

TEST_CASE("three-state window mean matches the geometric law") {
  const double eps = 0.2;
  ExperimentSpec spec;
  spec.chain = "three-state";
  spec.epsilon = eps;
  spec.algorithm = "cftp";
  spec.replications = 10000;
  spec.seed = 7;
  const auto res = run_experiment(spec);
  const double mean = res.summary.window.mean;
  const double se = std::sqrt((1 - eps) / (eps * eps) /
                              static_cast<double>(spec.replications));
  CHECK(std::fabs(mean - 1.0 / eps) <= 3.0 * se);
}

TEST_CASE("mtf window mean matches the convolution mean") {
  ExperimentSpec spec;
  spec.chain = "mtf";
  spec.n = 4;
  spec.weights = "uniform";
  spec.algorithm = "fmmr";
  spec.start = "rev";
  spec.replications = 10000;
  spec.seed = 12;
  const auto res = run_experiment(spec);
  const auto law = fmmr_runtime_law(weight_family(WeightFamily::Uniform, 4),
                                    Permutation::reversal(4));
  const double se =
      std::sqrt(law.variance() / static_cast<double>(spec.replications));
  CHECK(std::fabs(res.summary.window.mean - law.mean()) <= 3.0 * se);
}

TEST_CASE("timeouts are reported, not truncated") {
  ExperimentSpec spec;
  spec.chain = "mtf";
  spec.n = 3;
  spec.algorithm = "cftp";
  spec.replications = 20;
  spec.max_window = 1;  // n=3 needs at least two steps
  const auto res = run_experiment(spec);
  CHECK(res.summary.timeouts == 20);
  for (const auto& row : res.rows) {
    CHECK(row.status == "timeout");
    CHECK(row.output.empty());
  }
}

TEST_CASE("csv quotes fields with embedded commas") {
  ExperimentSpec spec;
  spec.chain = "mtf";
  spec.n = 3;
  spec.algorithm = "incremental";
  spec.replications = 2;
  const std::string csv = csv_of(spec);
  CHECK(csv.find("\"") != std::string::npos);
  // header plus one line per replication
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("spec json round-trip") {
  ExperimentSpec spec;
  spec.chain = "spin";
  spec.algorithm = "fmmr";
  spec.start = "bottom";
  spec.sites = 6;
  spec.beta = 3.5;
  spec.replications = 4;
  const auto back = spec_from_json_text(spec_to_json_text(spec));
  CHECK(back.chain == spec.chain);
  CHECK(back.beta == spec.beta);
  CHECK(back.sites == spec.sites);
  CHECK(back.start == spec.start);
}

TEST_CASE("json output carries version, spec, summary, records") {
  ExperimentSpec spec;
  spec.chain = "three-state";
  spec.algorithm = "fmmr";
  spec.start = "0";
  spec.replications = 3;
  spec.format = "json";
  std::ostringstream os;
  write_json(os, spec, run_experiment(spec));
  const std::string doc = os.str();
  for (const char* key :
       {"\"version\"", "\"spec\"", "\"summary\"", "\"records\""})
    CHECK(doc.find(key) != std::string::npos);
}

TEST_CASE("invalid configurations are usage errors") {
  ExperimentSpec spec;
  spec.chain = "mtf";
  spec.algorithm = "nope";
  CHECK_THROWS_AS(run_experiment(spec), input_error);
  spec.algorithm = "cftp";
  spec.replications = 0;
  CHECK_THROWS_AS(run_experiment(spec), input_error);
  spec.replications = 1;
  spec.chain = "spin";
  spec.algorithm = "incremental";
  CHECK_THROWS_AS(run_experiment(spec), input_error);
}
