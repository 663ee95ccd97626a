#ifndef PERFSAMP_TOY_CHAINS_HPP
#define PERFSAMP_TOY_CHAINS_HPP

#include <vector>

#include "perfsamp/chain.hpp"

namespace perfsamp {

// Three-state chain on {0,1,2}: innovation u in {0,1,2} with masses
// (eps, (1-eps)/2, (1-eps)/2); u = 0 resets every state to 0, and
//   step(0,1) = step(1,1) = step(1,2) = 1,
//   step(0,2) = step(2,1) = step(2,2) = 2.
// The chain is reversible (verified exactly by the tests).
using ThreeStateModel = ChainModel<int, int>;
ThreeStateModel three_state_model(double epsilon);

// Heat-bath Gibbs sweep chain on {-1,+1}^sites with free boundaries.
// Site i flips to + with probability logistic(2 (beta (s_{i-1} + s_{i+1})
// + field_i)), missing neighbors contributing 0; field_i = field for all
// sites but the last, which carries end_field. One chain transition is a
// full directional sweep; the reversed chain sweeps the opposite way.
struct SpinParams {
  int sites = 10;
  double beta = 8.0;
  double field = 2.0;
  double end_field = 20.0;
  bool left_to_right = true;
};

using SpinState = std::vector<signed char>;
using SpinModel = ChainModel<SpinState, std::vector<double>>;

// Continuous innovations (one uniform per site); states enumerated for
// sites <= 10, innovations not enumerable.
SpinModel spin_model(const SpinParams& params);

// Innovations discretized on the per-site threshold grid, for exact
// kernel and monotonicity oracles (sites <= 5).
using SpinModelDiscrete = ChainModel<SpinState, int>;
SpinModelDiscrete spin_model_discrete(const SpinParams& params);

// Exact Gibbs measure over the canonical state enumeration.
std::vector<double> spin_gibbs_pmf(const SpinParams& params);

std::size_t spin_state_index(const SpinState& s);

}  // namespace perfsamp

#endif
