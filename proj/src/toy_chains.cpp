#include "perfsamp/toy_chains.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

#include "perfsamp/errors.hpp"

namespace perfsamp {

namespace {

int three_state_step(int x, int u) {
  if (u == 0) return 0;
  if (u == 1) return x == 2 ? 2 : 1;
  return x == 1 ? 1 : 2;
}

}  // namespace

ThreeStateModel three_state_model(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw input_error("three_state_model: epsilon must lie in (0,1)");
  ThreeStateModel m;
  m.name = "three-state(eps=" + std::to_string(epsilon) + ")";
  m.step = [](const int& x, const int& u) { return three_state_step(x, u); };
  const double half = (1.0 - epsilon) / 2.0;
  auto dist = std::make_shared<DiscreteDist>(
      std::vector<double>{epsilon, half, half});
  m.draw_innovation = [dist](Rng& rng) {
    return static_cast<int>(dist->sample(rng));
  };
  m.states = {0, 1, 2};
  m.innovations = {0, 1, 2};
  m.innovation_pmf = {epsilon, half, half};
  // Reversible chain: the reversed kernel coincides with the forward one.
  m.reverse_step = [m_step = m.step, m_draw = m.draw_innovation](
                       const int& y, Rng& rng) {
    return m_step(y, m_draw(rng));
  };
  m.impute = [](const int& prev, const int& next, Rng& rng) {
    if (next == 0) return 0;                  // only u = 0 enters state 0
    if (prev == 0) return next;               // 0 -> 1 forces 1; 0 -> 2 forces 2
    if (prev == next)                         // self-loop at 1 or 2
      return rng.next_double() < 0.5 ? 1 : 2;
    throw imputation_error("three-state: impossible transition");
  };
  m.valid_state = [](const int& x) { return x >= 0 && x <= 2; };
  m.valid_innovation = [](const int& u) { return u >= 0 && u <= 2; };
  m.format = [](const int& x) { return std::to_string(x); };
  return m;
}

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct SpinCore {
  SpinParams prm;

  double field_at(int i) const {
    return i == prm.sites - 1 ? prm.end_field : prm.field;
  }

  // Flip-to-plus probability given the current neighbor spins.
  double p_plus(const SpinState& s, int i) const {
    const int left = i > 0 ? s[static_cast<std::size_t>(i - 1)] : 0;
    const int right =
        i < prm.sites - 1 ? s[static_cast<std::size_t>(i + 1)] : 0;
    return logistic(2.0 * (prm.beta * (left + right) + field_at(i)));
  }

  template <typename SiteUpdate>
  void sweep(SpinState& s, bool left_to_right, SiteUpdate&& update) const {
    if (left_to_right)
      for (int i = 0; i < prm.sites; ++i) update(s, i);
    else
      for (int i = prm.sites - 1; i >= 0; --i) update(s, i);
  }
};

std::vector<SpinState> enumerate_spin_states(int n) {
  std::vector<SpinState> out;
  out.reserve(static_cast<std::size_t>(1) << n);
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << n);
       ++mask) {
    SpinState s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      s[static_cast<std::size_t>(i)] =
          (mask >> (n - 1 - i)) & 1 ? 1 : -1;
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_spins(const SpinState& s) {
  std::string t;
  for (signed char v : s) t += v > 0 ? '+' : '-';
  return t;
}

bool spins_leq(const SpinState& a, const SpinState& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void validate_spin_params(const SpinParams& p) {
  if (p.sites < 1) throw input_error("spin model: sites must be >= 1");
  if (p.beta < 0.0 || p.field < 0.0 || p.end_field < 0.0)
    throw input_error("spin model: beta and fields must be >= 0");
}

}  // namespace

std::size_t spin_state_index(const SpinState& s) {
  std::size_t idx = 0;
  for (signed char v : s) idx = (idx << 1) | (v > 0 ? 1u : 0u);
  return idx;
}

SpinModel spin_model(const SpinParams& params) {
  validate_spin_params(params);
  auto core = std::make_shared<SpinCore>(SpinCore{params});
  const int n = params.sites;
  SpinModel m;
  m.name = "spin(n=" + std::to_string(n) + ")";
  m.step = [core](const SpinState& x, const std::vector<double>& u) {
    SpinState s = x;
    core->sweep(s, core->prm.left_to_right, [&](SpinState& t, int i) {
      t[static_cast<std::size_t>(i)] =
          u[static_cast<std::size_t>(i)] < core->p_plus(t, i) ? 1 : -1;
    });
    return s;
  };
  m.draw_innovation = [n](Rng& rng) {
    std::vector<double> u(static_cast<std::size_t>(n));
    for (double& v : u) v = rng.next_double();
    return u;
  };
  if (n <= 10) m.states = enumerate_spin_states(n);
  m.reverse_step = [core](const SpinState& y, Rng& rng) {
    SpinState s = y;
    core->sweep(s, !core->prm.left_to_right, [&](SpinState& t, int i) {
      t[static_cast<std::size_t>(i)] =
          rng.next_double() < core->p_plus(t, i) ? 1 : -1;
    });
    return s;
  };
  m.impute = [core](const SpinState& prev, const SpinState& next, Rng& rng) {
    std::vector<double> u(prev.size());
    SpinState s = prev;
    core->sweep(s, core->prm.left_to_right, [&](SpinState& t, int i) {
      const double p = core->p_plus(t, i);
      const std::size_t k = static_cast<std::size_t>(i);
      if (next[k] > 0) {
        u[k] = p * rng.next_double();
      } else {
        if (p >= 1.0)
          throw imputation_error("spin: site forced positive");
        u[k] = p + (1.0 - p) * rng.next_double();
      }
      t[k] = next[k];
    });
    return u;
  };
  m.leq = spins_leq;
  m.bottom = SpinState(static_cast<std::size_t>(n), -1);
  m.top = SpinState(static_cast<std::size_t>(n), 1);
  m.valid_state = [n](const SpinState& s) {
    return static_cast<int>(s.size()) == n &&
           std::all_of(s.begin(), s.end(),
                       [](signed char v) { return v == 1 || v == -1; });
  };
  m.steps_per_transition = n;
  m.format = [](const SpinState& s) { return format_spins(s); };
  return m;
}

namespace {

// Per-site discretization of the uniform innovation on the grid of all
// attainable flip probabilities: intervals between consecutive grid
// points behave identically under every comparison the sweep makes.
struct SpinGrid {
  // intervals[i]: (lo, hi) pairs with hi > lo covering [0,1)
  std::vector<std::vector<std::pair<double, double>>> intervals;
  // rank[i][sum+2]: number of intervals at site i lying below the flip
  // probability for neighbor sum `sum`
  std::vector<std::array<int, 5>> rank;
  std::vector<int> radix;  // interval count per site
  std::size_t total = 1;
};

SpinGrid build_grid(const SpinCore& core) {
  const int n = core.prm.sites;
  SpinGrid g;
  g.intervals.resize(static_cast<std::size_t>(n));
  g.rank.resize(static_cast<std::size_t>(n));
  g.radix.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<int> sums;
    if (n == 1)
      sums = {0};
    else if (i == 0 || i == n - 1)
      sums = {-1, 1};
    else
      sums = {-2, 0, 2};
    auto p_of = [&](int s) {
      return logistic(2.0 * (core.prm.beta * s + core.field_at(i)));
    };
    std::vector<double> cuts{0.0, 1.0};
    for (int s : sums) cuts.push_back(p_of(s));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto& iv = g.intervals[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      if (cuts[k + 1] > cuts[k]) iv.emplace_back(cuts[k], cuts[k + 1]);
    for (int s = -2; s <= 2; ++s) {
      const double p = p_of(s);
      int r = 0;
      for (const auto& [lo, hi] : iv)
        if (hi <= p) ++r;
      g.rank[static_cast<std::size_t>(i)][static_cast<std::size_t>(s + 2)] = r;
    }
    g.radix[static_cast<std::size_t>(i)] = static_cast<int>(iv.size());
    g.total *= iv.size();
  }
  return g;
}

std::vector<int> decode_flat(const SpinGrid& g, int flat) {
  std::vector<int> ks(g.radix.size());
  for (std::size_t i = g.radix.size(); i-- > 0;) {
    ks[i] = flat % g.radix[i];
    flat /= g.radix[i];
  }
  return ks;
}

}  // namespace

SpinModelDiscrete spin_model_discrete(const SpinParams& params) {
  validate_spin_params(params);
  if (params.sites > 5)
    throw unsupported_error("spin_model_discrete: grid too large above 5 sites");
  auto core = std::make_shared<SpinCore>(SpinCore{params});
  auto grid = std::make_shared<SpinGrid>(build_grid(*core));
  const int n = params.sites;

  auto site_update = [core, grid](SpinState& t, int i,
                                  const std::vector<int>& ks) {
    const int left = i > 0 ? t[static_cast<std::size_t>(i - 1)] : 0;
    const int right =
        i < core->prm.sites - 1 ? t[static_cast<std::size_t>(i + 1)] : 0;
    const int r = grid->rank[static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(left + right + 2)];
    t[static_cast<std::size_t>(i)] =
        ks[static_cast<std::size_t>(i)] < r ? 1 : -1;
  };

  SpinModelDiscrete m;
  m.name = "spin-grid(n=" + std::to_string(n) + ")";
  m.step = [core, grid, site_update](const SpinState& x, const int& flat) {
    const auto ks = decode_flat(*grid, flat);
    SpinState s = x;
    core->sweep(s, core->prm.left_to_right,
                [&](SpinState& t, int i) { site_update(t, i, ks); });
    return s;
  };
  m.states = enumerate_spin_states(n);
  m.innovations.resize(grid->total);
  std::iota(m.innovations.begin(), m.innovations.end(), 0);
  m.innovation_pmf.reserve(grid->total);
  for (std::size_t flat = 0; flat < grid->total; ++flat) {
    const auto ks = decode_flat(*grid, static_cast<int>(flat));
    double mass = 1.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto& [lo, hi] =
          grid->intervals[i][static_cast<std::size_t>(ks[i])];
      mass *= hi - lo;
    }
    m.innovation_pmf.push_back(mass);
  }
  // Per-site interval samplers, shared by draw/reverse/impute.
  auto site_dists = std::make_shared<std::vector<DiscreteDist>>();
  for (int i = 0; i < n; ++i) {
    std::vector<double> lengths;
    for (const auto& [lo, hi] : grid->intervals[static_cast<std::size_t>(i)])
      lengths.push_back(hi - lo);
    site_dists->emplace_back(lengths);
  }
  auto encode = [grid](const std::vector<int>& ks) {
    int flat = 0;
    for (std::size_t i = 0; i < ks.size(); ++i)
      flat = flat * grid->radix[i] + ks[i];
    return flat;
  };
  m.draw_innovation = [site_dists, encode, n](Rng& rng) {
    std::vector<int> ks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      ks[static_cast<std::size_t>(i)] =
          static_cast<int>((*site_dists)[static_cast<std::size_t>(i)].sample(rng));
    return encode(ks);
  };
  m.reverse_step = [core, grid, site_update, site_dists,
                    n](const SpinState& y, Rng& rng) {
    std::vector<int> ks(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      ks[static_cast<std::size_t>(i)] =
          static_cast<int>((*site_dists)[static_cast<std::size_t>(i)].sample(rng));
    SpinState s = y;
    core->sweep(s, !core->prm.left_to_right,
                [&](SpinState& t, int i) { site_update(t, i, ks); });
    return s;
  };
  m.impute = [core, grid, encode, n](const SpinState& prev,
                                     const SpinState& next, Rng& rng) {
    std::vector<int> ks(static_cast<std::size_t>(n));
    SpinState s = prev;
    core->sweep(s, core->prm.left_to_right, [&](SpinState& t, int i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      const int left = i > 0 ? t[ii - 1] : 0;
      const int right = i < n - 1 ? t[ii + 1] : 0;
      const int r = grid->rank[ii][static_cast<std::size_t>(left + right + 2)];
      const auto& iv = grid->intervals[ii];
      const int lo_k = next[ii] > 0 ? 0 : r;
      const int hi_k = next[ii] > 0 ? r : static_cast<int>(iv.size());
      if (lo_k >= hi_k)
        throw imputation_error("spin-grid: impossible site outcome");
      std::vector<double> lengths;
      for (int k = lo_k; k < hi_k; ++k)
        lengths.push_back(iv[static_cast<std::size_t>(k)].second -
                          iv[static_cast<std::size_t>(k)].first);
      ks[ii] = lo_k + static_cast<int>(DiscreteDist(lengths).sample(rng));
      t[ii] = next[ii];
    });
    return encode(ks);
  };
  m.leq = spins_leq;
  m.bottom = SpinState(static_cast<std::size_t>(n), -1);
  m.top = SpinState(static_cast<std::size_t>(n), 1);
  m.steps_per_transition = n;
  m.format = [](const SpinState& s) { return format_spins(s); };
  return m;
}

std::vector<double> spin_gibbs_pmf(const SpinParams& params) {
  validate_spin_params(params);
  if (params.sites > 16)
    throw unsupported_error("spin_gibbs_pmf: too many sites to enumerate");
  const auto states = enumerate_spin_states(params.sites);
  std::vector<double> energy(states.size());
  double emax = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& s = states[k];
    double e = 0.0;
    for (int i = 0; i + 1 < params.sites; ++i)
      e += params.beta * s[static_cast<std::size_t>(i)] *
           s[static_cast<std::size_t>(i + 1)];
    for (int i = 0; i < params.sites; ++i)
      e += (i == params.sites - 1 ? params.end_field : params.field) *
           s[static_cast<std::size_t>(i)];
    energy[k] = e;
    emax = std::max(emax, e);
  }
  double total = 0.0;
  for (double& e : energy) {
    e = std::exp(e - emax);
    total += e;
  }
  for (double& e : energy) e /= total;
  return energy;
}

}  // namespace perfsamp
