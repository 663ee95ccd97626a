#include "perfsamp/geom_conv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "perfsamp/errors.hpp"

namespace perfsamp {

GeomConvolution::GeomConvolution(std::vector<double> params)
    : params_(std::move(params)) {
  for (double p : params_)
    if (!(p > 0.0) || p > 1.0)
      throw input_error("GeomConvolution: parameters must lie in (0, 1]");
}

double GeomConvolution::mean() const {
  double m = 0.0;
  for (double p : params_) m += 1.0 / p;
  return m;
}

double GeomConvolution::variance() const {
  double v = 0.0;
  for (double p : params_) v += (1.0 - p) / (p * p);
  return v;
}

std::vector<double> GeomConvolution::pmf_table(long kmax) const {
  if (kmax < 0) throw input_error("pmf_table: negative horizon");
  if (kmax > (1L << 27))
    throw resource_error("pmf_table: horizon exceeds the table budget");
  const std::size_t size = static_cast<std::size_t>(kmax) + 1;
  std::vector<double> f(size, 0.0);
  f[0] = 1.0;
  std::vector<double> g(size);
  for (double p : params_) {
    // One more Geometric(p) term: g(k) = (1-p) g(k-1) + p f(k-1).
    // Exact on the window; no truncation error enters below kmax.
    std::fill(g.begin(), g.end(), 0.0);
    const double q = 1.0 - p;
    for (std::size_t k = 1; k < size; ++k)
      g[k] = q * g[k - 1] + p * f[k - 1];
    f.swap(g);
  }
  return f;
}

double GeomConvolution::pmf(long k) const {
  if (k < static_cast<long>(terms())) return 0.0;
  return pmf_table(k).back();
}

double GeomConvolution::cdf(long k) const {
  if (k < static_cast<long>(terms())) return 0.0;
  const auto t = pmf_table(k);
  return std::accumulate(t.begin(), t.end(), 0.0);
}

long GeomConvolution::horizon_for_tail(double tol) const {
  const double sd = std::sqrt(variance());
  const double guess = mean() + 10.0 * sd + static_cast<double>(terms()) + 1;
  if (!(guess < static_cast<double>(1L << 27)))
    throw resource_error("horizon_for_tail: law too spread out to tabulate");
  long h = static_cast<long>(std::ceil(guess));
  for (int round = 0; round < 32; ++round) {
    if (cdf(h) >= 1.0 - tol) return h;
    if (h > (1L << 26))
      throw resource_error("horizon_for_tail: horizon exceeds budget");
    h *= 2;
  }
  throw resource_error("horizon_for_tail: tail tolerance unreachable");
}

}  // namespace perfsamp
