#ifndef PERFSAMP_VERIFY_HPP
#define PERFSAMP_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "perfsamp/mtf.hpp"
#include "perfsamp/stats.hpp"

namespace perfsamp {

struct VerifyOptions {
  enum class Level { Quick, Full };
  Level level = Level::Full;
  std::uint64_t seed = 20260809;
  double significance = 1e-3;
};

struct CriterionResult {
  std::string id;
  std::string title;
  std::vector<StatReport> reports;

  bool pass() const {
    for (const auto& r : reports)
      if (!r.pass) return false;
    return !reports.empty();
  }
};

// Runs the statistical verification suite; one CriterionResult per
// acceptance criterion, with per-check StatReports underneath.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            std::ostream& log);

// Prints one pass/fail line per criterion (and per check when verbose);
// returns true when everything passed.
bool print_acceptance(const std::vector<CriterionResult>& results,
                      std::ostream& os, bool verbose = false);

struct ScalingRow {
  std::string family;
  double param = 0.0;
  double n = 0.0;
  double mean_rev = 0.0;  // exact E[T] from the best start state
  double mean_id = 0.0;   // exact E[T] from the worst start state
  double k_n = 0.0;
  double ratio_rev = 0.0;  // mean_rev / k_n
  std::string cftp_shape;
};

// Pure analytics: exact first moments of the running-time laws against
// the per-family step counts. No simulation.
std::vector<ScalingRow> scaling_table(
    const std::vector<std::pair<WeightFamily, double>>& families,
    const std::vector<double>& sizes);

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows);

}  // namespace perfsamp

#endif
