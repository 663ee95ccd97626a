#ifndef PERFSAMP_MTF_HPP
#define PERFSAMP_MTF_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perfsamp/chain.hpp"
#include "perfsamp/permutation.hpp"
#include "perfsamp/rng.hpp"

namespace perfsamp {

// Request probabilities w_1 >= ... >= w_n > 0 summing to 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);

  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const {  // 0-based: w_{i+1}
    return w_[static_cast<std::size_t>(i)];
  }
  const std::vector<double>& values() const { return w_; }

  // w_r^+ for r = 1..n.
  std::vector<double> prefix_sums() const;

  // First k weights, renormalized to sum to 1.
  WeightVector prefix_renormalized(int k) const;

 private:
  std::vector<double> w_;
};

enum class WeightFamily { Uniform, Zipf, Gzl, Power, Geometric };

// The standard request-weight families:
//   uniform      1/n
//   zipf         (H_n i)^-1
//   gzl(a)       (i^a H_n^(a))^-1,   a > 0, a != 1
//   power(s)     (n-i+1)^s / sum_j j^s,   s > 0
//   geometric(t) (1-t) t^(i-1) for i < n, t^(n-1) for i = n,  0 < t <= 1/2
WeightVector weight_family(WeightFamily family, int n, double param = 0.0);

const char* family_name(WeightFamily family);
std::optional<WeightFamily> family_from_name(std::string_view name);

// Parses "uniform", "zipf", "gzl:0.5", "power:1", "geometric:0.5",
// or "list:0.5,0.3,0.2".
WeightVector parse_weights(const std::string& text, int n);

// Sampling-without-replacement probability of drawing the records in the
// order z; computed with running tail sums.
double stationary_prob(const WeightVector& w, const Permutation& z);

// Log-space variant for large n.
double stationary_log_prob(const WeightVector& w, const Permutation& z);

// One step of the time-reversed move-to-front chain from y. With
// i = front(y), the predecessors are exactly y with i relocated to
// position r; the r-law is sampled in O(n) from tail-sum ratios.
Permutation mtf_reverse_step(const WeightVector& w, const Permutation& y,
                             Rng& rng);

// Exact predecessor probabilities (r = 1..n) behind mtf_reverse_step.
std::vector<double> mtf_reverse_step_probs(const WeightVector& w,
                                           const Permutation& y);

// The request producing x_prev -> x_next; a point mass at front(x_next).
int mtf_impute(const Permutation& x_prev, const Permutation& x_next);

using MtfModel = ChainModel<Permutation, int>;

// States are enumerated (canonical lexicographic order) when n <= 6.
MtfModel mtf_model(const WeightVector& w);

struct IncrementalSample {
  Permutation value;
  long reverse_steps = 0;
};

// Builds a stationary observation in exactly n-1 reversed-chain steps:
// step k prepends record k+1 (an exact draw from the stationary law
// conditioned on that record being in front) and applies one reverse
// step under the renormalized prefix weights.
IncrementalSample mtf_incremental_sample(const WeightVector& w, Rng& rng);

}  // namespace perfsamp

#endif
