#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "perfsamp/kernel.hpp"
#include "perfsamp/stats.hpp"
#include "perfsamp/toy_chains.hpp"

using namespace perfsamp;

namespace {

// Gentle parameters keep every state visible in goodness-of-fit samples.
SpinParams gentle_params(int sites) {
  SpinParams p;
  p.sites = sites;
  p.beta = 0.4;
  p.field = 0.2;
  p.end_field = 0.8;
  return p;
}

}  // namespace

TEST_CASE("three-state model construction") {
  CHECK_THROWS_AS(three_state_model(0.0), input_error);
  CHECK_THROWS_AS(three_state_model(1.0), input_error);
  const auto m = three_state_model(0.2);
  CHECK(m.states.size() == 3);
  CHECK(m.innovation_pmf[0] == doctest::Approx(0.2));
}

TEST_CASE("three-state reverse sampler follows the reversed kernel") {
  const auto m = three_state_model(0.2);
  const auto krev = reverse_kernel(build_kernel(m));
  Rng rng(3);
  for (int y = 0; y < 3; ++y) {
    std::vector<long> counts(3, 0);
    for (int i = 0; i < 60000; ++i)
      ++counts[static_cast<std::size_t>(m.reverse_step(y, rng))];
    std::vector<double> probs(3);
    for (std::size_t x = 0; x < 3; ++x)
      probs[x] = krev.at(static_cast<std::size_t>(y), x);
    CHECK(gof_test("reverse row", counts, probs, 1e-3).pass);
  }
}

TEST_CASE("single-site chain has the two-point conditional law") {
  SpinParams p;
  p.sites = 1;
  p.beta = 0.0;
  p.field = 0.0;
  p.end_field = 0.7;
  const auto k = build_kernel(spin_model_discrete(p));
  const double plus = 1.0 / (1.0 + std::exp(-2.0 * 0.7));
  // every row mixes immediately, so the stationary law is (1-p, p)
  CHECK(k.pi[0] == doctest::Approx(1.0 - plus).epsilon(1e-10));
  CHECK(k.pi[1] == doctest::Approx(plus).epsilon(1e-10));
  const auto gibbs = spin_gibbs_pmf(p);
  CHECK(gibbs[0] == doctest::Approx(k.pi[0]).epsilon(1e-10));
  CHECK(gibbs[1] == doctest::Approx(k.pi[1]).epsilon(1e-10));
}

TEST_CASE("sweep chain is monotone on the threshold grid") {
  const auto m = spin_model_discrete(gentle_params(3));
  const auto rep = check_monotone(m);
  CHECK(rep.monotone);
  CHECK(rep.checked_pairs > 0);
}

TEST_CASE("kernel stationary law equals the Gibbs measure") {
  for (int sites = 1; sites <= 3; ++sites) {
    const auto p = gentle_params(sites);
    const auto k = build_kernel(spin_model_discrete(p));
    const auto gibbs = spin_gibbs_pmf(p);
    for (std::size_t i = 0; i < gibbs.size(); ++i)
      CHECK(k.pi[i] == doctest::Approx(gibbs[i]).epsilon(1e-9));
  }
}

TEST_CASE("forward and reverse sweeps satisfy the reversal identity") {
  for (int sites = 2; sites <= 3; ++sites) {
    auto p = gentle_params(sites);
    const auto fwd = build_kernel(spin_model_discrete(p));
    p.left_to_right = false;
    const auto rev = build_kernel(spin_model_discrete(p));
    const auto gibbs = spin_gibbs_pmf(gentle_params(sites));
    for (std::size_t x = 0; x < fwd.n; ++x)
      for (std::size_t y = 0; y < fwd.n; ++y)
        CHECK(gibbs[x] * fwd.at(x, y) ==
              doctest::Approx(gibbs[y] * rev.at(y, x)).epsilon(1e-12));
  }
}

TEST_CASE("continuous sweep matches the discretized kernel row") {
  const auto p = gentle_params(3);
  const auto cont = spin_model(p);
  const auto k = build_kernel(spin_model_discrete(p));
  Rng rng(17);
  const SpinState x0 = {-1, 1, -1};
  const std::size_t xi = spin_state_index(x0);
  std::vector<long> counts(8, 0);
  for (int i = 0; i < 80000; ++i)
    ++counts[spin_state_index(cont.step(x0, cont.draw_innovation(rng)))];
  std::vector<double> probs(8);
  for (std::size_t j = 0; j < 8; ++j) probs[j] = k.at(xi, j);
  CHECK(gof_test("continuous vs grid", counts, probs, 1e-3).pass);
}

TEST_CASE("continuous sweep preserves the coordinatewise order") {
  const auto cont = spin_model(gentle_params(4));
  Rng rng(23);
  for (int trial = 0; trial < 5000; ++trial) {
    SpinState lo(4), hi(4);
    for (int i = 0; i < 4; ++i) {
      const int a = rng.next_double() < 0.5 ? -1 : 1;
      lo[static_cast<std::size_t>(i)] = static_cast<signed char>(a);
      hi[static_cast<std::size_t>(i)] = static_cast<signed char>(
          a == 1 ? 1 : (rng.next_double() < 0.5 ? -1 : 1));
    }
    const auto u = cont.draw_innovation(rng);
    CHECK(cont.leq(cont.step(lo, u), cont.step(hi, u)));
  }
}

TEST_CASE("imputed innovations reproduce the observed sweep") {
  const auto cont = spin_model(gentle_params(3));
  Rng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    SpinState x(3);
    for (auto& s : x)
      s = static_cast<signed char>(rng.next_double() < 0.5 ? -1 : 1);
    const auto y = cont.step(x, cont.draw_innovation(rng));
    const auto u = cont.impute(x, y, rng);
    CHECK(cont.step(x, u) == y);
  }
}

TEST_CASE("spin state indexing is the canonical enumeration order") {
  const auto m = spin_model_discrete(gentle_params(3));
  for (std::size_t i = 0; i < m.states.size(); ++i)
    CHECK(spin_state_index(m.states[i]) == i);
  for (const auto& s : m.states) {
    CHECK(m.leq(*m.bottom, s));
    CHECK(m.leq(s, *m.top));
  }
}

TEST_CASE("grid reverse sampler follows the reversed kernel") {
  const auto p = gentle_params(2);
  const auto m = spin_model_discrete(p);
  const auto krev = reverse_kernel(build_kernel(m));
  Rng rng(41);
  const SpinState y = {1, -1};
  const std::size_t yi = spin_state_index(y);
  std::vector<long> counts(4, 0);
  for (int i = 0; i < 60000; ++i)
    ++counts[spin_state_index(m.reverse_step(y, rng))];
  std::vector<double> probs(4);
  for (std::size_t x = 0; x < 4; ++x) probs[x] = krev.at(yi, x);
  CHECK(gof_test("grid reverse row", counts, probs, 1e-3).pass);
}

TEST_CASE("grid imputation draws the exact conditional law") {
  const auto p = gentle_params(2);
  const auto m = spin_model_discrete(p);
  // both sites flip down, each leaving two admissible intervals
  const SpinState x = {1, -1};
  const SpinState y = {-1, -1};
  // conditional mass of each innovation given the observed transition
  std::vector<double> cond(m.innovations.size(), 0.0);
  double total = 0.0;
  for (std::size_t u = 0; u < m.innovations.size(); ++u)
    if (m.step(x, m.innovations[u]) == y) {
      cond[u] = m.innovation_pmf[u];
      total += cond[u];
    }
  REQUIRE(total > 0.0);
  for (double& c : cond) c /= total;
  Rng rng(43);
  std::vector<long> counts(m.innovations.size(), 0);
  for (int i = 0; i < 40000; ++i) {
    const int u = m.impute(x, y, rng);
    CHECK(m.step(x, u) == y);
    ++counts[static_cast<std::size_t>(u)];
  }
  CHECK(gof_test("imputed innovation law", counts, cond, 1e-3).pass);
}

TEST_CASE("separation decays along the sweep chain") {
  const auto k = build_kernel(spin_model_discrete(gentle_params(3)));
  double prev = separation(k, 0, 1);
  for (long t = 2; t <= 12; ++t) {
    const double cur = separation(k, 0, t);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  CHECK(prev < 1e-3);
}
