#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "perfsamp/kernel.hpp"
#include "perfsamp/mtf.hpp"
#include "perfsamp/stats.hpp"
#include "perfsamp/toy_chains.hpp"

using namespace perfsamp;

namespace {

// Brute-force coalescence oracle: walks every innovation sequence with an
// odometer, no merging. Independent of the library's computation.
template <typename M>
double brute_coalescence_to(const M& model, long t,
                            const typename M::State& target) {
  const std::size_t nu = model.innovations.size();
  std::vector<std::size_t> seq(static_cast<std::size_t>(t), 0);
  double total = 0.0;
  for (;;) {
    double pr = 1.0;
    for (std::size_t k = 0; k < seq.size(); ++k) pr *= model.innovation_pmf[seq[k]];
    bool all_target = true;
    for (const auto& x0 : model.states) {
      auto x = x0;
      for (long k = t - 1; k >= 0; --k)
        x = model.step(x, model.innovations[seq[static_cast<std::size_t>(k)]]);
      if (!(x == target)) {
        all_target = false;
        break;
      }
    }
    if (all_target) total += pr;
    std::size_t i = 0;
    for (; i < seq.size(); ++i) {
      if (++seq[i] < nu) break;
      seq[i] = 0;
    }
    if (i == seq.size()) break;
  }
  return total;
}

}  // namespace

TEST_CASE("three-state kernel equals the stated matrix") {
  const double eps = 0.1;
  const auto model = three_state_model(eps);
  const auto k = build_kernel(model);
  const double half = (1.0 - eps) / 2.0;
  const double expected[3][3] = {
      {eps, half, half}, {eps, 1 - eps, 0.0}, {eps, 0.0, 1 - eps}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(k.at(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-12));
  CHECK(k.pi[0] == doctest::Approx(eps).epsilon(1e-10));
  CHECK(k.pi[1] == doctest::Approx(half).epsilon(1e-10));
}

TEST_CASE("mtf kernels: single entries and symmetric stationary law") {
  const auto m2 = mtf_model(WeightVector({0.7, 0.3}));
  const auto k2 = build_kernel(m2);
  // state order: (1,2) then (2,1); requesting record 2 moves (1,2) to (2,1)
  CHECK(k2.at(0, 1) == doctest::Approx(0.3).epsilon(1e-12));

  const auto m3 = mtf_model(weight_family(WeightFamily::Uniform, 3));
  const auto k3 = build_kernel(m3);
  for (double p : k3.pi) CHECK(p == doctest::Approx(1.0 / 6).epsilon(1e-10));
}

TEST_CASE("reverse kernel: reversibility and its failure") {
  const auto ts = build_kernel(three_state_model(0.1));
  const auto ts_rev = reverse_kernel(ts);
  for (std::size_t i = 0; i < ts.n; ++i)
    for (std::size_t j = 0; j < ts.n; ++j)
      CHECK(std::fabs(ts.at(i, j) - ts_rev.at(i, j)) < 1e-12);

  const auto m2 = build_kernel(mtf_model(WeightVector({0.7, 0.3})));
  const auto m2r = reverse_kernel(m2);
  for (std::size_t i = 0; i < m2.n; ++i)
    for (std::size_t j = 0; j < m2.n; ++j)
      CHECK(std::fabs(m2.at(i, j) - m2r.at(i, j)) < 1e-12);

  const auto m3 = build_kernel(mtf_model(WeightVector({0.5, 0.3, 0.2})));
  const auto m3r = reverse_kernel(m3);
  double diff = 0.0;
  for (std::size_t i = 0; i < m3.n; ++i)
    for (std::size_t j = 0; j < m3.n; ++j)
      diff = std::max(diff, std::fabs(m3.at(i, j) - m3r.at(i, j)));
  CHECK(diff > 1e-3);  // move-to-front is not reversible at n = 3
}

TEST_CASE("separation: start, decay, monotonicity") {
  const auto k = build_kernel(three_state_model(0.1));
  CHECK(separation(k, 1, 0) == doctest::Approx(1.0));
  CHECK(separation(k, 1, 200) < 1e-6);
  const auto km = build_kernel(mtf_model(WeightVector({0.5, 1.0 / 3, 1.0 / 6})));
  for (const auto* kk : {&k, &km}) {
    double prev = separation(*kk, 0, 1);
    for (long t = 2; t <= 15; ++t) {
      const double cur = separation(*kk, 0, t);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("forward_step: rule application and validation") {
  const auto m = mtf_model(weight_family(WeightFamily::Uniform, 3));
  CHECK(forward_step(m, Permutation({2, 1, 3}), 3) == Permutation({3, 2, 1}));
  const Permutation z({2, 1, 3});
  CHECK(forward_step(m, z, z.front()) == z);  // front request is a no-op
  CHECK_THROWS_AS(forward_step(m, z, 7), input_error);

  const auto ts = three_state_model(0.2);
  CHECK(forward_step(ts, 2, 0) == 0);
  CHECK_THROWS_AS(forward_step(ts, 5, 0), input_error);
}

TEST_CASE("imputation: deterministic cases and the impossible one") {
  const auto m = mtf_model(weight_family(WeightFamily::Uniform, 3));
  Rng rng(1);
  CHECK(impute_innovation(m, Permutation({1, 2, 3}), Permutation({2, 1, 3}),
                          rng) == 2);
  CHECK(impute_innovation(m, Permutation({2, 1, 3}), Permutation({2, 1, 3}),
                          rng) == 2);
  CHECK_THROWS_AS(impute_innovation(m, Permutation({1, 2, 3}),
                                    Permutation({3, 2, 1}), rng),
                  imputation_error);

  const auto ts = three_state_model(0.2);
  CHECK(impute_innovation(ts, 1, 0, rng) == 0);
  for (int i = 0; i < 50; ++i) CHECK(impute_innovation(ts, 0, 0, rng) == 0);
  CHECK_THROWS_AS(impute_innovation(ts, 1, 2, rng), imputation_error);
}

TEST_CASE("imputation soundness: conditional law matches enumeration") {
  const auto ts = three_state_model(0.3);
  Rng rng(77);
  // φ(x, u') must reproduce the observed transition
  for (int i = 0; i < 10000; ++i) {
    const int x = static_cast<int>(rng.next_u64() % 3);
    const int u = ts.draw_innovation(rng);
    const int y = ts.step(x, u);
    const int u2 = ts.impute(x, y, rng);
    CHECK(ts.step(x, u2) == y);
  }
  // the self-loop at 1 imputes {1,2} with equal mass
  std::vector<long> counts(2, 0);
  for (int i = 0; i < 20000; ++i)
    ++counts[static_cast<std::size_t>(ts.impute(1, 1, rng) - 1)];
  const auto rep = gof_test("impute self-loop", counts, {0.5, 0.5}, 1e-3);
  CHECK(rep.pass);
}

TEST_CASE("reversal soundness: sampler matches the reversed kernel row") {
  const auto m = mtf_model(WeightVector({0.5, 1.0 / 3, 1.0 / 6}));
  const auto krev = reverse_kernel(build_kernel(m));
  Rng rng(5);
  for (const auto& y : {Permutation({2, 1, 3}), Permutation({3, 1, 2})}) {
    const std::size_t yi = permutation_rank(y);
    std::vector<long> counts(6, 0);
    for (int i = 0; i < 100000; ++i)
      ++counts[permutation_rank(m.reverse_step(y, rng))];
    std::vector<double> probs(6);
    for (std::size_t x = 0; x < 6; ++x) probs[x] = krev.at(yi, x);
    CHECK(gof_test("reverse row", counts, probs, 1e-3).pass);
  }
}

TEST_CASE("stationarity is preserved by simulation") {
  const auto m = mtf_model(WeightVector({0.5, 1.0 / 3, 1.0 / 6}));
  const auto k = build_kernel(m);
  DiscreteDist start(k.pi);
  Rng rng(11);
  std::vector<long> counts(6, 0);
  for (int i = 0; i < 100000; ++i) {
    Permutation x = m.states[start.sample(rng)];
    for (int t = 0; t < 5; ++t) x = m.step(x, m.draw_innovation(rng));
    ++counts[permutation_rank(x)];
  }
  CHECK(gof_test("pi invariance", counts, k.pi, 1e-3).pass);
}

TEST_CASE("monotone rule verification") {
  for (int n = 3; n <= 5; ++n) {
    const auto m = mtf_model(weight_family(WeightFamily::Zipf, n));
    const auto rep = check_monotone(m);
    CHECK(rep.monotone);
    CHECK(rep.checked_pairs > 0);
  }
  // corrupt the rule by swapping two outputs for one innovation
  auto bad = mtf_model(weight_family(WeightFamily::Uniform, 3));
  const auto base = bad.step;
  bad.step = [base](const Permutation& z, const int& u) {
    if (u == 2 && z == Permutation({1, 2, 3})) return Permutation({3, 2, 1});
    if (u == 2 && z == Permutation({3, 2, 1})) return Permutation({2, 1, 3});
    return base(z, u);
  };
  CHECK_FALSE(check_monotone(bad).monotone);
  CHECK(!check_monotone(bad).violations.empty());

  CHECK_THROWS_AS(check_monotone(three_state_model(0.2)), unsupported_error);
}

TEST_CASE("exact coalescence: closed form, brute force, budget") {
  const double eps = 0.25;
  const auto ts = three_state_model(eps);
  for (long t = 0; t <= 8; ++t) {
    const double expect = t == 0 ? 0.0 : 1.0 - std::pow(1.0 - eps, t);
    CHECK(exact_coalescence_prob(ts, t) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK_THROWS_AS(exact_coalescence_prob(ts, 100), resource_error);

  const auto m = mtf_model(weight_family(WeightFamily::Uniform, 3));
  CHECK(exact_coalescence_prob(m, 0) == 0.0);
  for (const auto& z : {Permutation::identity(3), Permutation::reversal(3)})
    for (long t = 1; t <= 4; ++t)
      CHECK(exact_coalescence_prob_to(m, t, z) ==
            doctest::Approx(brute_coalescence_to(m, t, z)).epsilon(1e-12));

  // set variant: landing anywhere is certain, landing in a principal
  // down-set has the sandwich value
  auto all = [](const Permutation&) { return true; };
  CHECK(exact_coalescence_prob_into(m, 2, all) == doctest::Approx(1.0));
}

TEST_CASE("enumeration probability matches a Monte Carlo coupling") {
  const auto m = mtf_model(weight_family(WeightFamily::Uniform, 3));
  const long t = 3;
  const double exact = exact_coalescence_prob(m, t);
  Rng rng(211);
  const long reps = 20000;
  long hits = 0;
  for (long i = 0; i < reps; ++i) {
    std::vector<int> innov;
    for (long k = 0; k < t; ++k) innov.push_back(m.draw_innovation(rng));
    auto images = m.states;
    for (long k = t - 1; k >= 0; --k) {
      for (auto& s : images)
        s = m.step(s, innov[static_cast<std::size_t>(k)]);
      std::sort(images.begin(), images.end());
      images.erase(std::unique(images.begin(), images.end()), images.end());
    }
    if (images.size() == 1) ++hits;
  }
  const double est = static_cast<double>(hits) / reps;
  const double se = std::sqrt(exact * (1 - exact) / reps);
  CHECK(std::fabs(est - exact) <= 3.0 * se);
}

TEST_CASE("sampled innovations reproduce the kernel row") {
  const auto m = mtf_model(WeightVector({0.5, 1.0 / 3, 1.0 / 6}));
  const auto k = build_kernel(m);
  Rng rng(223);
  const Permutation x({2, 3, 1});
  const std::size_t xi = permutation_rank(x);
  std::vector<long> counts(6, 0);
  for (int i = 0; i < 60000; ++i)
    ++counts[permutation_rank(m.step(x, m.draw_innovation(rng)))];
  std::vector<double> row(6);
  for (std::size_t j = 0; j < 6; ++j) row[j] = k.at(xi, j);
  CHECK(gof_test("kernel row", counts, row, 1e-3).pass);
}

TEST_CASE("ordered models bracket every state between the extremes") {
  const auto m = mtf_model(weight_family(WeightFamily::Zipf, 4));
  REQUIRE(m.has_order());
  for (const auto& z : m.states) {
    CHECK(m.leq(*m.bottom, z));
    CHECK(m.leq(z, *m.top));
  }
}

TEST_CASE("degenerate chains are rejected") {
  // two-state deterministic swap: periodic
  ChainModel<int, int> flip;
  flip.name = "flip";
  flip.step = [](const int& x, const int&) { return 1 - x; };
  flip.states = {0, 1};
  flip.innovations = {0};
  flip.innovation_pmf = {1.0};
  CHECK_THROWS_AS(build_kernel(flip), model_error);

  // two absorbing halves: reducible
  ChainModel<int, int> stuck;
  stuck.name = "stuck";
  stuck.step = [](const int& x, const int&) { return x; };
  stuck.states = {0, 1};
  stuck.innovations = {0, 1};
  stuck.innovation_pmf = {0.5, 0.5};
  CHECK_THROWS_AS(build_kernel(stuck), model_error);
}
