#ifndef PERFSAMP_SAMPLERS_HPP
#define PERFSAMP_SAMPLERS_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "perfsamp/chain.hpp"
#include "perfsamp/errors.hpp"
#include "perfsamp/rng.hpp"

namespace perfsamp {

enum class RunStatus { Success, Timeout };

// Window schedule: vanilla increment-by-one, or successive doubling.
enum class Schedule { Increment, Doubling };

// Which trajectories the forward phase follows. Auto prefers the two
// extreme states when the model carries a monotone order, otherwise runs
// every state with deduplication of merged trajectories.
enum class TrajectoryMode { Auto, AllStates, Extremes };

template <typename State>
struct RunResult {
  RunStatus status = RunStatus::Timeout;
  long window = 0;            // smallest successful window length T
  long long total_steps = 0;  // forward + backward transitions executed
  std::optional<State> output;
  std::optional<State> start_state;
  std::optional<State> coalesced_to;

  bool ok() const { return status == RunStatus::Success; }
};

struct SamplerOptions {
  long max_window = 1L << 20;
  Schedule schedule = Schedule::Increment;
  TrajectoryMode mode = TrajectoryMode::Auto;
};

namespace detail {

inline long next_window(long t, Schedule schedule) {
  return schedule == Schedule::Increment ? t + 1 : 2 * t;
}

template <typename M>
bool use_extremes(const M& model, TrajectoryMode mode) {
  switch (mode) {
    case TrajectoryMode::Extremes:
      if (!model.has_order())
        throw unsupported_error(model.name + ": no order for extreme tracking");
      return true;
    case TrajectoryMode::AllStates:
      if (!model.enumerable())
        throw unsupported_error(model.name + ": state space not enumerated");
      return false;
    case TrajectoryMode::Auto:
      if (model.has_order()) return true;
      if (model.enumerable()) return false;
      throw unsupported_error(model.name + ": neither order nor enumeration");
  }
  return false;
}

// Runs the window-t forward phase from the two extreme states; returns
// the common terminal value when the trajectories meet.
template <typename M>
std::optional<typename M::State> forward_extremes(
    const M& model, const std::vector<typename M::Innovation>& innov, long t,
    long long& steps) {
  typename M::State lo = *model.bottom;
  typename M::State hi = *model.top;
  for (long k = t - 1; k >= 0; --k) {
    lo = model.step(lo, innov[static_cast<std::size_t>(k)]);
    hi = model.step(hi, innov[static_cast<std::size_t>(k)]);
  }
  steps += 2 * t * model.steps_per_transition;
  if (lo == hi) return lo;
  return std::nullopt;
}

// Window-t forward phase from every state, collapsing merged
// trajectories after each step; returns the distinct terminal images.
template <typename M>
std::vector<typename M::State> forward_all(
    const M& model, const std::vector<typename M::Innovation>& innov, long t,
    long long& steps) {
  std::vector<typename M::State> cur = model.states;
  for (long k = t - 1; k >= 0; --k) {
    for (auto& s : cur) s = model.step(s, innov[static_cast<std::size_t>(k)]);
    steps += static_cast<long long>(cur.size()) * model.steps_per_transition;
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  }
  return cur;
}

}  // namespace detail

// Coupling from the past. Windows grow by the schedule; innovations for
// common times are reused across windows. On coalescence at time 0 the
// common value is an exact stationary draw. A run that exceeds
// max_window is reported as a timeout and must be discarded whole;
// returning the partial state would bias the output law.
template <typename M>
RunResult<typename M::State> cftp(
    const M& model, const SamplerOptions& opt, Rng& rng,
    const std::function<void(long, const std::vector<typename M::Innovation>&)>&
        window_observer = {}) {
  const bool extremes = detail::use_extremes(model, opt.mode);
  std::vector<typename M::Innovation> innov;
  long long steps = 0;
  for (long t = 1; t <= opt.max_window;
       t = detail::next_window(t, opt.schedule)) {
    while (static_cast<long>(innov.size()) < t)
      innov.push_back(model.draw_innovation(rng));
    if (window_observer) window_observer(t, innov);
    std::optional<typename M::State> out;
    if (extremes) {
      out = detail::forward_extremes(model, innov, t, steps);
    } else {
      auto images = detail::forward_all(model, innov, t, steps);
      if (images.size() == 1) out = std::move(images.front());
    }
    if (out) {
      RunResult<typename M::State> r;
      r.status = RunStatus::Success;
      r.window = t;
      r.total_steps = steps;
      r.coalesced_to = *out;
      r.output = std::move(*out);
      return r;
    }
  }
  RunResult<typename M::State> r;
  r.window = opt.max_window;
  r.total_steps = steps;
  return r;
}

// Rejection-based perfect sampler started at z0. The backward trajectory
// and its imputed innovations are extended one step per window increment
// and cached; each window reruns the forward phase (windows reach further
// into the past, so forward work cannot be reused). On success the
// output X_{-T} is an exact stationary draw, independent of T, so a
// timeout may be retried with fresh randomness without bias.
template <typename M>
RunResult<typename M::State> fmmr(const M& model, const typename M::State& z0,
                                  const SamplerOptions& opt, Rng& rng) {
  if (!model.has_reversal())
    throw unsupported_error(model.name + ": no reversal machinery");
  const bool extremes = detail::use_extremes(model, opt.mode);
  std::vector<typename M::State> back{z0};
  std::vector<typename M::Innovation> innov;
  long long steps = 0;
  for (long t = 1; t <= opt.max_window;
       t = detail::next_window(t, opt.schedule)) {
    while (static_cast<long>(back.size()) < t + 1) {
      auto prev = model.reverse_step(back.back(), rng);
      innov.push_back(model.impute(prev, back.back(), rng));
      back.push_back(std::move(prev));
      steps += model.steps_per_transition;
    }
    std::optional<typename M::State> common;
    if (extremes) {
      common = detail::forward_extremes(model, innov, t, steps);
    } else {
      auto images = detail::forward_all(model, innov, t, steps);
      if (images.size() == 1) common = std::move(images.front());
    }
    if (common) {
      RunResult<typename M::State> r;
      r.status = RunStatus::Success;
      r.window = t;
      r.total_steps = steps;
      r.output = back[static_cast<std::size_t>(t)];
      r.start_state = z0;
      r.coalesced_to = std::move(*common);
      return r;
    }
  }
  RunResult<typename M::State> r;
  r.window = opt.max_window;
  r.total_steps = steps;
  r.start_state = z0;
  return r;
}

// How membership of every forward trajectory in the target set is
// decided. For a monotone model, a down-set needs only the trajectory
// from the top state and an up-set only the one from the bottom.
enum class SetKind { DownSet, UpSet, General };

// Set-coalescence variant: starts from the conditional law on a set S,
// accepts at the smallest window whose forward trajectories all land in
// S, and outputs X_{-T}, an exact unconditional stationary draw. The
// caller must supply an exact sampler for the conditional law on S.
// When S is the whole space the window-0 check succeeds immediately.
template <typename M>
RunResult<typename M::State> fmmr_set(
    const M& model,
    const std::function<bool(const typename M::State&)>& member, SetKind kind,
    const std::function<typename M::State(Rng&)>& conditional_sampler,
    const SamplerOptions& opt, Rng& rng) {
  if (!model.has_reversal())
    throw unsupported_error(model.name + ": no reversal machinery");
  if (kind != SetKind::General && !model.has_order())
    throw unsupported_error(model.name + ": set shortcut needs an order");
  if (kind == SetKind::General && !model.enumerable())
    throw unsupported_error(model.name + ": general set check needs states");

  typename M::State x0 = conditional_sampler(rng);
  const bool everything = [&] {
    switch (kind) {
      case SetKind::DownSet: return member(*model.top);
      case SetKind::UpSet: return member(*model.bottom);
      case SetKind::General:
        return std::all_of(model.states.begin(), model.states.end(), member);
    }
    return false;
  }();
  if (everything) {
    RunResult<typename M::State> r;
    r.status = RunStatus::Success;
    r.window = 0;
    r.output = x0;
    r.start_state = std::move(x0);
    return r;
  }

  std::vector<typename M::State> back{std::move(x0)};
  std::vector<typename M::Innovation> innov;
  long long steps = 0;
  for (long t = 1; t <= opt.max_window;
       t = detail::next_window(t, opt.schedule)) {
    while (static_cast<long>(back.size()) < t + 1) {
      auto prev = model.reverse_step(back.back(), rng);
      innov.push_back(model.impute(prev, back.back(), rng));
      back.push_back(std::move(prev));
      steps += model.steps_per_transition;
    }
    bool inside = false;
    if (kind == SetKind::General) {
      auto images = detail::forward_all(model, innov, t, steps);
      inside = std::all_of(images.begin(), images.end(), member);
    } else {
      typename M::State probe =
          kind == SetKind::DownSet ? *model.top : *model.bottom;
      for (long k = t - 1; k >= 0; --k)
        probe = model.step(probe, innov[static_cast<std::size_t>(k)]);
      steps += t * model.steps_per_transition;
      inside = member(probe);
    }
    if (inside) {
      RunResult<typename M::State> r;
      r.status = RunStatus::Success;
      r.window = t;
      r.total_steps = steps;
      r.output = back[static_cast<std::size_t>(t)];
      r.start_state = back.front();
      return r;
    }
  }
  RunResult<typename M::State> r;
  r.window = opt.max_window;
  r.total_steps = steps;
  r.start_state = back.front();
  return r;
}

}  // namespace perfsamp

#endif
