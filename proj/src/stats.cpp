#include "perfsamp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "perfsamp/errors.hpp"

namespace perfsamp {

double chi_square_p_value(double statistic, long df) {
  if (df <= 0) throw input_error("chi_square_p_value: df must be positive");
  boost::math::chi_squared dist(static_cast<double>(df));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

namespace {

struct PooledCells {
  std::vector<double> observed;
  std::vector<double> expected;
};

// Merge the smallest-expected cell into the next smallest until every
// expected count reaches the floor.
PooledCells pool_cells(const std::vector<long>& counts,
                       const std::vector<double>& probs, double min_expected) {
  const double n = static_cast<double>(
      std::accumulate(counts.begin(), counts.end(), 0L));
  std::vector<double> obs(counts.begin(), counts.end());
  std::vector<double> exp;
  exp.reserve(probs.size());
  for (double p : probs) exp.push_back(p * n);
  while (exp.size() > 1) {
    auto lo = std::min_element(exp.begin(), exp.end());
    if (*lo >= min_expected) break;
    const std::size_t i = static_cast<std::size_t>(lo - exp.begin());
    std::size_t j = i == 0 ? 1 : i - 1;
    for (std::size_t k = 0; k < exp.size(); ++k)
      if (k != i && (j == i || exp[k] < exp[j])) j = k;
    exp[j] += exp[i];
    obs[j] += obs[i];
    exp.erase(exp.begin() + static_cast<std::ptrdiff_t>(i));
    obs.erase(obs.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return {std::move(obs), std::move(exp)};
}

}  // namespace

StatReport gof_test(std::string name, const std::vector<long>& counts,
                    const std::vector<double>& probs, double significance,
                    double min_expected) {
  if (counts.size() != probs.size())
    throw input_error("gof_test: counts/probs size mismatch");
  auto [obs, exp] = pool_cells(counts, probs, min_expected);
  if (exp.size() < 2 ||
      *std::min_element(exp.begin(), exp.end()) < min_expected)
    throw inconclusive_error("gof_test: insufficient samples after pooling");
  double stat = 0.0;
  for (std::size_t k = 0; k < exp.size(); ++k) {
    const double d = obs[k] - exp[k];
    stat += d * d / exp[k];
  }
  StatReport r;
  r.name = std::move(name);
  r.statistic = stat;
  r.df = static_cast<long>(exp.size()) - 1;
  r.p_value = chi_square_p_value(stat, r.df);
  r.significance = significance;
  r.pass = r.p_value >= significance;
  return r;
}

namespace {

std::vector<std::vector<double>> pool_table(
    const std::vector<std::vector<long>>& table, double min_expected) {
  std::vector<std::vector<double>> t;
  for (const auto& row : table) t.emplace_back(row.begin(), row.end());

  auto expected_floor = [&](const std::vector<std::vector<double>>& m) {
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<double> rs(rows, 0.0), cs(cols, 0.0);
    double n = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        rs[i] += m[i][j];
        cs[j] += m[i][j];
        n += m[i][j];
      }
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        lo = std::min(lo, rs[i] * cs[j] / n);
    return lo;
  };

  auto merge_smallest_col = [&](std::vector<std::vector<double>>& m) {
    const std::size_t cols = m[0].size();
    std::vector<double> cs(cols, 0.0);
    for (const auto& row : m)
      for (std::size_t j = 0; j < cols; ++j) cs[j] += row[j];
    const std::size_t i = static_cast<std::size_t>(
        std::min_element(cs.begin(), cs.end()) - cs.begin());
    const std::size_t j =
        i == 0 ? 1 : (i + 1 < cols && cs[i + 1] < cs[i - 1] ? i + 1 : i - 1);
    for (auto& row : m) {
      row[j] += row[i];
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(i));
    }
  };

  auto merge_smallest_row = [&](std::vector<std::vector<double>>& m) {
    std::vector<double> rs(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
      rs[i] = std::accumulate(m[i].begin(), m[i].end(), 0.0);
    const std::size_t i = static_cast<std::size_t>(
        std::min_element(rs.begin(), rs.end()) - rs.begin());
    const std::size_t j =
        i == 0 ? 1
               : (i + 1 < m.size() && rs[i + 1] < rs[i - 1] ? i + 1 : i - 1);
    for (std::size_t c = 0; c < m[0].size(); ++c) m[j][c] += m[i][c];
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
  };

  while (expected_floor(t) < min_expected) {
    if (t[0].size() > 2)
      merge_smallest_col(t);
    else if (t.size() > 2)
      merge_smallest_row(t);
    else
      break;
  }
  return t;
}

}  // namespace

StatReport independence_test(std::string name,
                             const std::vector<std::vector<long>>& table,
                             double significance, double min_expected) {
  if (table.size() < 2 || table[0].size() < 2)
    throw input_error("independence_test: table must be at least 2x2");
  auto t = pool_table(table, min_expected);
  const std::size_t rows = t.size(), cols = t[0].size();
  std::vector<double> rs(rows, 0.0), cs(cols, 0.0);
  double n = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      rs[i] += t[i][j];
      cs[j] += t[i][j];
      n += t[i][j];
    }
  double floor = std::numeric_limits<double>::infinity();
  double stat = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double e = rs[i] * cs[j] / n;
      floor = std::min(floor, e);
      const double d = t[i][j] - e;
      stat += d * d / e;
    }
  if (floor < min_expected)
    throw inconclusive_error(
        "independence_test: insufficient samples after pooling");
  StatReport r;
  r.name = std::move(name);
  r.statistic = stat;
  r.df = static_cast<long>((rows - 1) * (cols - 1));
  r.p_value = chi_square_p_value(stat, r.df);
  r.significance = significance;
  r.pass = r.p_value >= significance;
  return r;
}

StatReport two_sample_test(std::string name, const std::vector<long>& a,
                           const std::vector<long>& b, double significance,
                           double min_expected) {
  if (a.size() != b.size())
    throw input_error("two_sample_test: size mismatch");
  return independence_test(std::move(name), {a, b}, significance,
                           min_expected);
}

std::vector<long> tally(const std::vector<std::size_t>& categories,
                        std::size_t cells) {
  std::vector<long> counts(cells, 0);
  for (std::size_t c : categories) {
    if (c >= cells) throw input_error("tally: category out of range");
    ++counts[c];
  }
  return counts;
}

}  // namespace perfsamp
