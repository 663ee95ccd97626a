#ifndef PERFSAMP_KERNEL_HPP
#define PERFSAMP_KERNEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "perfsamp/chain.hpp"
#include "perfsamp/errors.hpp"

namespace perfsamp {

// Dense row-stochastic transition matrix over an enumerated state space,
// together with its stationary vector. Indices follow the model's
// canonical state order.
struct KernelMatrix {
  std::size_t n = 0;
  std::vector<double> p;   // row-major n*n
  std::vector<double> pi;

  double at(std::size_t i, std::size_t j) const { return p[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return p[i * n + j]; }
};

// Checks row sums (1e-12) and stationarity pi*K = pi (1e-10, max norm).
void validate_kernel(const KernelMatrix& k, double row_tol = 1e-12,
                     double pi_tol = 1e-10);

// Time reversal: Krev(y,x) = pi(x) K(x,y) / pi(y). Same stationary vector.
KernelMatrix reverse_kernel(const KernelMatrix& k);

// Row x of K^t by repeated vector-matrix products.
std::vector<double> kernel_power_row(const KernelMatrix& k, std::size_t x,
                                     long t);

// sep_x(t) = 1 - min_z K^t(x,z) / pi(z).
double separation(const KernelMatrix& k, std::size_t x, long t);

// Stationary vector of a row-stochastic matrix by fixed-point iteration.
std::vector<double> stationary_vector(const std::vector<double>& p,
                                      std::size_t n, double tol = 1e-12,
                                      long max_iter = 1000000);

// Throws model_error unless the support graph is irreducible and aperiodic.
void require_ergodic(const std::vector<double>& p, std::size_t n);

namespace detail {

template <typename M>
std::size_t state_index(const M& model, const typename M::State& s) {
  auto it = std::lower_bound(model.states.begin(), model.states.end(), s);
  if (it == model.states.end() || !(*it == s))
    throw input_error(model.name + ": state not in enumeration");
  return static_cast<std::size_t>(it - model.states.begin());
}

template <typename M>
std::vector<std::vector<std::uint32_t>> transition_table(const M& model) {
  const std::size_t ns = model.states.size();
  const std::size_t nu = model.innovations.size();
  std::vector<std::vector<std::uint32_t>> next(
      ns, std::vector<std::uint32_t>(nu));
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t u = 0; u < nu; ++u)
      next[i][u] = static_cast<std::uint32_t>(
          state_index(model, model.step(model.states[i], model.innovations[u])));
  return next;
}

}  // namespace detail

// Exact kernel: K(x,y) = sum of innovation masses u with step(x,u) = y.
template <typename M>
KernelMatrix build_kernel(const M& model) {
  if (!model.enumerable() || !model.innovations_enumerable())
    throw unsupported_error(model.name + ": build_kernel needs enumerations");
  const std::size_t n = model.states.size();
  KernelMatrix k;
  k.n = n;
  k.p.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t u = 0; u < model.innovations.size(); ++u) {
      const std::size_t j = detail::state_index(
          model, model.step(model.states[i], model.innovations[u]));
      k.at(i, j) += model.innovation_pmf[u];
    }
  require_ergodic(k.p, n);
  k.pi = stationary_vector(k.p, n);
  validate_kernel(k);
  return k;
}

struct MonotoneReport {
  struct Violation {
    std::size_t x, y, u;  // indices into states/innovations
  };
  bool monotone = true;
  std::vector<Violation> violations;  // capped
  std::size_t checked_pairs = 0;
};

// Verifies step(x,u) <= step(y,u) for all innovations whenever x <= y.
template <typename M>
MonotoneReport check_monotone(const M& model, std::size_t max_violations = 16) {
  if (!model.has_order() || !model.enumerable() ||
      !model.innovations_enumerable())
    throw unsupported_error(model.name +
                            ": check_monotone needs order and enumerations");
  MonotoneReport rep;
  const std::size_t n = model.states.size();
  const auto next = detail::transition_table(model);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !model.leq(model.states[x], model.states[y])) continue;
      ++rep.checked_pairs;
      for (std::size_t u = 0; u < model.innovations.size(); ++u) {
        if (!model.leq(model.states[next[x][u]], model.states[next[y][u]])) {
          rep.monotone = false;
          if (rep.violations.size() < max_violations)
            rep.violations.push_back({x, y, u});
        }
      }
    }
  return rep;
}

namespace detail {

// Law of the grand coupling (image tuple of every start state) after t
// steps, by exhaustive enumeration of innovation sequences with merging
// of identical tuples.
template <typename M>
std::map<std::vector<std::uint32_t>, double> coupling_distribution(
    const M& model, long t, double budget) {
  if (!model.enumerable() || !model.innovations_enumerable())
    throw unsupported_error(model.name +
                            ": exact coalescence needs enumerations");
  const std::size_t nu = model.innovations.size();
  if (static_cast<double>(t) * std::log(static_cast<double>(nu)) >
      std::log(budget))
    throw resource_error(model.name + ": innovation-sequence budget exceeded");
  const auto next = detail::transition_table(model);
  std::vector<std::uint32_t> ident(model.states.size());
  std::iota(ident.begin(), ident.end(), 0u);
  std::map<std::vector<std::uint32_t>, double> dist;
  dist.emplace(std::move(ident), 1.0);
  for (long s = 0; s < t; ++s) {
    std::map<std::vector<std::uint32_t>, double> to;
    for (const auto& [tup, pr] : dist)
      for (std::size_t u = 0; u < nu; ++u) {
        std::vector<std::uint32_t> img(tup.size());
        for (std::size_t i = 0; i < tup.size(); ++i) img[i] = next[tup[i]][u];
        to[std::move(img)] += pr * model.innovation_pmf[u];
      }
    dist = std::move(to);
  }
  return dist;
}

inline bool tuple_constant(const std::vector<std::uint32_t>& tup) {
  return std::all_of(tup.begin(), tup.end(),
                     [&](std::uint32_t v) { return v == tup.front(); });
}

}  // namespace detail

// Probability that all forward trajectories over a window of length t
// occupy a single common state at the end.
template <typename M>
double exact_coalescence_prob(const M& model, long t, double budget = 1e7) {
  double total = 0.0;
  for (const auto& [tup, pr] : detail::coupling_distribution(model, t, budget))
    if (detail::tuple_constant(tup)) total += pr;
  return total;
}

// ... and the common state equals `target`.
template <typename M>
double exact_coalescence_prob_to(const M& model, long t,
                                 const typename M::State& target,
                                 double budget = 1e7) {
  const std::uint32_t z =
      static_cast<std::uint32_t>(detail::state_index(model, target));
  double total = 0.0;
  for (const auto& [tup, pr] : detail::coupling_distribution(model, t, budget))
    if (detail::tuple_constant(tup) && tup.front() == z) total += pr;
  return total;
}

// ... set variant: every trajectory ends inside the set (not necessarily
// at a common state).
template <typename M>
double exact_coalescence_prob_into(
    const M& model, long t,
    const std::function<bool(const typename M::State&)>& member,
    double budget = 1e7) {
  double total = 0.0;
  for (const auto& [tup, pr] :
       detail::coupling_distribution(model, t, budget)) {
    bool all_in = true;
    for (std::uint32_t v : tup)
      if (!member(model.states[v])) {
        all_in = false;
        break;
      }
    if (all_in) total += pr;
  }
  return total;
}

}  // namespace perfsamp

#endif
