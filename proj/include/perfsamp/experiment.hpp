#ifndef PERFSAMP_EXPERIMENT_HPP
#define PERFSAMP_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace perfsamp {

inline constexpr const char* kOutputFormatVersion = "1";

struct ExperimentSpec {
  std::string chain = "mtf";        // mtf | three-state | spin
  int n = 4;                        // mtf list length
  std::string weights = "uniform";  // family[:param] or list:w1,w2,...
  double epsilon = 0.2;             // three-state
  int sites = 10;                   // spin
  double beta = 8.0;
  double field = 2.0;
  double end_field = 20.0;
  std::string sweep = "lr";         // lr | rl
  std::string algorithm = "cftp";   // cftp | fmmr | fmmr-set | incremental
  std::string start = "rev";        // fmmr start state
  std::string downset;              // fmmr-set: principal down-set root
  long replications = 1;
  std::uint64_t seed = 1;
  long max_window = 1L << 20;
  bool doubling = false;
  std::string trajectories = "auto";  // auto | all | extremes
  int threads = 1;
  std::string format = "csv";  // csv | json
  std::string output;          // path; empty = stdout
};

struct RunRow {
  long replication = 0;
  std::uint64_t seed = 0;
  std::string status;  // ok | timeout
  long window = 0;
  long long total_steps = 0;
  std::string output;
  std::string start_state;
  std::string coalesced_to;
};

struct Quantiles {
  double mean = 0, q05 = 0, q25 = 0, median = 0, q75 = 0, q95 = 0;
};

struct ExperimentSummary {
  long replications = 0;
  long timeouts = 0;
  Quantiles window;
  Quantiles total_steps;
};

struct ExperimentResult {
  std::vector<RunRow> rows;  // ordered by replication index
  ExperimentSummary summary;
};

// Executes the replications (worker pool, one generator per replication,
// seeds derived from the master seed and the replication index).
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_csv(std::ostream& os, const ExperimentSpec& spec,
               const ExperimentResult& result);
void write_json(std::ostream& os, const ExperimentSpec& spec,
                const ExperimentResult& result);

ExperimentSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const ExperimentSpec& spec);

Quantiles summarize(std::vector<double> values);

}  // namespace perfsamp

#endif
