#ifndef PERFSAMP_STATS_HPP
#define PERFSAMP_STATS_HPP

#include <string>
#include <vector>

namespace perfsamp {

struct StatReport {
  std::string name;
  double statistic = 0.0;
  long df = 0;
  double p_value = 1.0;
  double significance = 1e-3;
  bool pass = true;  // p_value >= significance (or the stated check holds)
  std::string detail;
};

// Upper tail of the chi-squared distribution.
double chi_square_p_value(double statistic, long df);

// Pearson goodness-of-fit of observed counts against an exact pmf.
// Cells are pooled smallest-expected-first until every expected count is
// at least min_expected. Throws inconclusive_error when fewer than two
// cells survive pooling.
StatReport gof_test(std::string name, const std::vector<long>& counts,
                    const std::vector<double>& probs, double significance,
                    double min_expected = 5.0);

// Pearson independence test on a contingency table (rows x cols).
// Columns, then rows, are pooled smallest-total-first into an adjacent
// neighbor until every expected cell reaches min_expected.
StatReport independence_test(std::string name,
                             const std::vector<std::vector<long>>& table,
                             double significance, double min_expected = 5.0);

// Two-sample test that both count vectors come from a common law
// (a 2 x C contingency test).
StatReport two_sample_test(std::string name, const std::vector<long>& a,
                           const std::vector<long>& b, double significance,
                           double min_expected = 5.0);

// Tallies category indices into a fixed number of cells.
std::vector<long> tally(const std::vector<std::size_t>& categories,
                        std::size_t cells);

}  // namespace perfsamp

#endif
