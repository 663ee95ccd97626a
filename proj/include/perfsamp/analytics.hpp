#ifndef PERFSAMP_ANALYTICS_HPP
#define PERFSAMP_ANALYTICS_HPP

#include <string>
#include <vector>

#include "perfsamp/geom_conv.hpp"
#include "perfsamp/mtf.hpp"
#include "perfsamp/permutation.hpp"

namespace perfsamp {

// Exact law of the rejection sampler's running time on move-to-front when
// started at z: convolution of Geometric(1 - y_r^+), r = 0..n-2, with
// y_r = w_{z_r}. For z = reversal this reduces to parameters w_r^+
// (r = 2..n); for z = identity, 1 - w_r^+ (r = 0..n-2).
GeomConvolution fmmr_runtime_law(const WeightVector& w, const Permutation& z);

struct TruncatedPmf {
  std::vector<double> pmf;  // pmf[t] for t = 0..horizon
  double tail = 0.0;        // mass beyond the horizon
};

// Law of the coupling-from-the-past running time: the stationary mixture
// over start states z of the started-at-z laws. Enumerates S_n (n <= 6).
TruncatedPmf cftp_runtime_law(const WeightVector& w, long horizon);

// a <=st b: cdf_a(k) >= cdf_b(k) for all k. Throws inconclusive_error
// when either tail mass at the horizon exceeds tail_tol.
bool stochastic_leq(const GeomConvolution& a, const GeomConvolution& b,
                    long horizon, double tail_tol = 1e-10);
bool stochastic_leq(const std::vector<double>& pmf_a,
                    const std::vector<double>& pmf_b, double tail_a,
                    double tail_b, double tail_tol = 1e-10);

// Largest pointwise cdf gap max_k (cdf_a(k) - cdf_b(k)) up to the horizon.
double max_cdf_gap(const GeomConvolution& a, const GeomConvolution& b,
                   long horizon);

// Prefix-sum dominance of two equal-length descending weight vectors.
bool majorizes(const WeightVector& a, const WeightVector& b);

// Steps necessary and sufficient for the best-start running time:
// uniform n ln n; zipf n; gzl n/a (a<1) or n (a>1); power n ln n/(s+1);
// geometric n.
double rate_constant(WeightFamily family, double param, double n);

struct RateMoments {
  double mean_rev = 0.0;  // E[T] from the best start state
  double mean_id = 0.0;   // E[T] from the worst start state (may overflow)
};

// Exact first moments from per-family prefix/tail sums, in one O(n)
// pass and without materializing the weights (geometric tails underflow
// past n of a few thousand).
RateMoments rate_moments(WeightFamily family, double param, long n);

// Shape of the corresponding coupling-from-the-past rate, for display
// only (constants are not specified).
std::string cftp_rate_shape(WeightFamily family);

}  // namespace perfsamp

#endif
