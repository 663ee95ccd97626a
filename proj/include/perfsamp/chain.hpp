#ifndef PERFSAMP_CHAIN_HPP
#define PERFSAMP_CHAIN_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perfsamp/errors.hpp"
#include "perfsamp/rng.hpp"

namespace perfsamp {

// A Markov chain in stochastic-recursive form X_s = step(X_{s-1}, U_s),
// with the extra machinery the samplers need: an innovation sampler, a
// reversed-chain step, a conditional innovation imputer, and an optional
// partial order with distinguished bottom/top elements.
//
// Models are immutable after construction and safe to share across
// threads; all randomness flows through caller-supplied Rng handles.
template <typename StateT, typename InnovationT>
struct ChainModel {
  using State = StateT;
  using Innovation = InnovationT;

  std::string name;

  // Deterministic forward rule.
  std::function<State(const State&, const Innovation&)> step;

  // Draws one innovation from its law.
  std::function<Innovation(Rng&)> draw_innovation;

  // Enumerations, in canonical (sorted) encoding order. Either may be
  // empty when the corresponding space is not enumerated.
  std::vector<State> states;
  std::vector<Innovation> innovations;
  std::vector<double> innovation_pmf;

  // Samples a predecessor from the time-reversed kernel row.
  std::function<State(const State&, Rng&)> reverse_step;

  // Draws an innovation from its conditional law given that
  // step(prev, u) == next. Throws imputation_error when impossible.
  std::function<Innovation(const State& prev, const State& next, Rng&)> impute;

  // Optional partial order with minimum `bottom` and maximum `top`.
  std::function<bool(const State&, const State&)> leq;
  std::optional<State> bottom;
  std::optional<State> top;

  // Optional validators used by the checked entry points.
  std::function<bool(const State&)> valid_state;
  std::function<bool(const Innovation&)> valid_innovation;

  // Elementary updates per chain transition (a sweep chain counts its
  // per-site updates here).
  int steps_per_transition = 1;

  std::function<std::string(const State&)> format;

  bool enumerable() const { return !states.empty(); }
  bool innovations_enumerable() const { return !innovations.empty(); }
  bool has_order() const {
    return static_cast<bool>(leq) && bottom.has_value() && top.has_value();
  }
  bool has_reversal() const {
    return static_cast<bool>(reverse_step) && static_cast<bool>(impute);
  }

  std::string format_state(const State& s) const {
    return format ? format(s) : std::string("?");
  }
};

// Checked forward application of the transition rule.
template <typename M>
typename M::State forward_step(const M& model, const typename M::State& x,
                               const typename M::Innovation& u) {
  if (model.valid_state && !model.valid_state(x))
    throw input_error(model.name + ": invalid state encoding");
  if (model.valid_innovation && !model.valid_innovation(u))
    throw input_error(model.name + ": invalid innovation encoding");
  return model.step(x, u);
}

// Checked imputation entry point.
template <typename M>
typename M::Innovation impute_innovation(const M& model,
                                         const typename M::State& x_prev,
                                         const typename M::State& x_next,
                                         Rng& rng) {
  if (!model.impute)
    throw unsupported_error(model.name + ": no innovation imputer");
  return model.impute(x_prev, x_next, rng);
}

}  // namespace perfsamp

#endif
