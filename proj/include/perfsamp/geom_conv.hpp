#ifndef PERFSAMP_GEOM_CONV_HPP
#define PERFSAMP_GEOM_CONV_HPP

#include <vector>

namespace perfsamp {

// Law of a sum of independent Geometric(p_r) variables, each supported on
// {1, 2, ...} with mass p (1-p)^{k-1}; the sum of m terms is supported on
// {m, m+1, ...}.
class GeomConvolution {
 public:
  explicit GeomConvolution(std::vector<double> params);

  std::size_t terms() const { return params_.size(); }
  const std::vector<double>& params() const { return params_; }

  double mean() const;      // sum 1/p_r
  double variance() const;  // sum (1-p_r)/p_r^2

  // Exact pmf on {0..kmax}; entries below terms() are zero.
  std::vector<double> pmf_table(long kmax) const;

  double pmf(long k) const;
  double cdf(long k) const;

  // Smallest horizon with tail mass below tol.
  long horizon_for_tail(double tol = 1e-12) const;

 private:
  std::vector<double> params_;
};

}  // namespace perfsamp

#endif
