#include "perfsamp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "perfsamp/analytics.hpp"
#include "perfsamp/experiment.hpp"
#include "perfsamp/kernel.hpp"
#include "perfsamp/samplers.hpp"
#include "perfsamp/toy_chains.hpp"

namespace perfsamp {

namespace {

StatReport check_report(std::string name, double statistic, double bound,
                        bool pass, std::string detail = {}) {
  StatReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.df = 0;
  r.p_value = pass ? 1.0 : 0.0;
  r.significance = bound;
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// T columns: bucket index relative to the smallest attainable value,
// overflow lumped into the last column.
std::size_t t_bucket(long t, long tmin, std::size_t cols) {
  const long i = std::max(0L, t - tmin);
  return std::min(static_cast<std::size_t>(i), cols - 1);
}

struct Ctx {
  VerifyOptions opt;
  bool quick() const { return opt.level == VerifyOptions::Level::Quick; }
  long reps(long full, long quick_reps) const {
    return quick() ? quick_reps : full;
  }
  Rng rng(std::uint64_t slot) const { return Rng(derive_seed(opt.seed, slot)); }
};

const double kThird = 1.0 / 3.0;
const double kSixth = 1.0 / 6.0;

WeightVector demo_weights3() { return WeightVector({0.5, kThird, kSixth}); }

// ---------------------------------------------------------------------
// A1: every sampler reproduces the stationary law.

CriterionResult criterion_exactness(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A1", "stationary exactness of every sampler", {}};
  const long reps = ctx.reps(100000, 20000);
  const Permutation downset_root = parse_permutation("2,1,4,3");
  int slot = 0;
  const std::vector<std::pair<std::string, WeightVector>> weight_cases = {
      {"uniform", weight_family(WeightFamily::Uniform, 4)},
      {"geometric", weight_family(WeightFamily::Geometric, 4, 0.5)}};
  for (const auto& [wname, w] : weight_cases) {
    const MtfModel model = mtf_model(w);
    std::vector<double> pi;
    for (const auto& z : model.states) pi.push_back(stationary_prob(w, z));
    SamplerOptions opt;
    opt.max_window = 4096;

    auto run_gof = [&](const std::string& algo,
                       const std::function<Permutation(Rng&)>& draw) {
      Rng rng = ctx.rng(100 + static_cast<std::uint64_t>(slot++));
      std::vector<long> counts(model.states.size(), 0);
      for (long i = 0; i < reps; ++i)
        ++counts[permutation_rank(draw(rng))];
      cr.reports.push_back(gof_test("exactness " + wname + " " + algo, counts,
                                    pi, ctx.opt.significance));
      log << "  [A1] " << wname << " " << algo
          << " p=" << fmt(cr.reports.back().p_value) << "\n";
    };

    run_gof("cftp", [&](Rng& rng) { return *cftp(model, opt, rng).output; });
    const Permutation rev = Permutation::reversal(4);
    run_gof("fmmr(rev)",
            [&](Rng& rng) { return *fmmr(model, rev, opt, rng).output; });
    const Permutation id = Permutation::identity(4);
    run_gof("fmmr(id)",
            [&](Rng& rng) { return *fmmr(model, id, opt, rng).output; });
    auto member = [&](const Permutation& z) {
      return weak_bruhat_leq(z, downset_root);
    };
    auto cond = [&](Rng& rng) {
      for (;;) {
        Permutation z = mtf_incremental_sample(w, rng).value;
        if (member(z)) return z;
      }
    };
    run_gof("fmmr-set", [&](Rng& rng) {
      return *fmmr_set<MtfModel>(model, member, SetKind::DownSet, cond, opt,
                                 rng)
                  .output;
    });
    run_gof("incremental",
            [&](Rng& rng) { return mtf_incremental_sample(w, rng).value; });
  }
  return cr;
}

// ---------------------------------------------------------------------
// A2: started-at-z running time is the stated geometric convolution,
// empirically and against the exact enumeration oracle.

CriterionResult criterion_runtime_law(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A2", "runtime law from a fixed start state", {}};
  const WeightVector w = demo_weights3();
  const MtfModel model = mtf_model(w);
  const long reps = ctx.reps(20000, 5000);
  const long horizon = 64;
  SamplerOptions opt;
  opt.max_window = 4096;
  int slot = 0;
  for (const auto& z : model.states) {
    const GeomConvolution law = fmmr_runtime_law(w, z);
    auto pmf = law.pmf_table(horizon);
    double tail = 1.0;
    for (double p : pmf) tail -= p;
    pmf.push_back(std::max(0.0, tail));
    Rng rng = ctx.rng(200 + static_cast<std::uint64_t>(slot++));
    std::vector<long> counts(pmf.size(), 0);
    for (long i = 0; i < reps; ++i) {
      const auto res = fmmr(model, z, opt, rng);
      ++counts[std::min(static_cast<std::size_t>(res.window),
                        pmf.size() - 1)];
    }
    cr.reports.push_back(gof_test("runtime-law gof z=" + to_string(z), counts,
                                  pmf, ctx.opt.significance));
    log << "  [A2] z=" << to_string(z)
        << " p=" << fmt(cr.reports.back().p_value) << "\n";
  }
  // Enumeration oracle: acceptance cdf over the window equals the law cdf.
  double worst = 0.0;
  for (const auto& z : model.states) {
    const GeomConvolution law = fmmr_runtime_law(w, z);
    const auto pmf = law.pmf_table(8);
    const double pz = stationary_prob(w, z);
    double cdf = 0.0;
    for (long t = 1; t <= 8; ++t) {
      cdf += pmf[static_cast<std::size_t>(t)];
      const double enumerated =
          exact_coalescence_prob_to(model, t, z) / pz;
      worst = std::max(worst, std::fabs(enumerated - cdf));
    }
  }
  cr.reports.push_back(check_report("runtime-law enumeration oracle", worst,
                                    1e-9, worst <= 1e-9,
                                    "max |enumeration - law cdf|"));
  log << "  [A2] enumeration max diff = " << fmt(worst) << "\n";
  return cr;
}

// ---------------------------------------------------------------------
// A3: the coupling-from-the-past runtime law is the stationary mixture
// of the started-at-z laws, conditionally and unconditionally.

CriterionResult criterion_runtime_mixture(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A3", "cftp runtime is the stationary mixture", {}};
  const WeightVector w = demo_weights3();
  const MtfModel model = mtf_model(w);
  SamplerOptions opt;
  opt.max_window = 4096;
  const long cftp_reps = ctx.reps(120000, 30000);
  const long fmmr_reps = ctx.reps(20000, 5000);
  const std::size_t cols = 24;
  const long tmin = 2;

  Rng rng = ctx.rng(300);
  std::vector<std::vector<long>> cond(
      model.states.size(), std::vector<long>(cols, 0));
  const long horizon = 64;
  std::vector<long> uncond(static_cast<std::size_t>(horizon) + 2, 0);
  for (long i = 0; i < cftp_reps; ++i) {
    const auto res = cftp(model, opt, rng);
    ++cond[permutation_rank(*res.output)][t_bucket(res.window, tmin, cols)];
    ++uncond[std::min(static_cast<std::size_t>(res.window),
                      static_cast<std::size_t>(horizon) + 1)];
  }
  for (std::size_t zi = 0; zi < model.states.size(); ++zi) {
    Rng rng2 = ctx.rng(310 + zi);
    std::vector<long> fm(cols, 0);
    for (long i = 0; i < fmmr_reps; ++i) {
      const auto res = fmmr(model, model.states[zi], opt, rng2);
      ++fm[t_bucket(res.window, tmin, cols)];
    }
    cr.reports.push_back(two_sample_test(
        "mixture conditional z=" + to_string(model.states[zi]), cond[zi], fm,
        ctx.opt.significance));
    log << "  [A3] z=" << to_string(model.states[zi])
        << " p=" << fmt(cr.reports.back().p_value) << "\n";
  }
  auto mixture = cftp_runtime_law(w, horizon);
  auto probs = mixture.pmf;
  probs.push_back(mixture.tail);
  cr.reports.push_back(gof_test("mixture unconditional", uncond, probs,
                                ctx.opt.significance));
  log << "  [A3] unconditional p=" << fmt(cr.reports.back().p_value) << "\n";
  return cr;
}

// ---------------------------------------------------------------------
// A4: rejection-sampler interruptibility; coupling-from-the-past lacks it.

CriterionResult criterion_interruptibility(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A4", "interruptibility of runtime vs output", {}};
  const std::size_t cols = 24;
  SamplerOptions opt;
  opt.max_window = 4096;

  {  // rejection sampler on move-to-front: independence must hold
    const WeightVector w = demo_weights3();
    const MtfModel model = mtf_model(w);
    const Permutation z0 = Permutation::reversal(3);
    Rng rng = ctx.rng(400);
    const long reps = ctx.reps(100000, 30000);
    std::vector<std::vector<long>> table(model.states.size(),
                                         std::vector<long>(cols, 0));
    for (long i = 0; i < reps; ++i) {
      const auto res = fmmr(model, z0, opt, rng);
      ++table[permutation_rank(*res.output)][t_bucket(res.window, 2, cols)];
    }
    cr.reports.push_back(independence_test("fmmr independence (mtf)", table,
                                           ctx.opt.significance));
    log << "  [A4] fmmr mtf p=" << fmt(cr.reports.back().p_value) << "\n";
  }
  {  // rejection sampler on the three-state chain
    const ThreeStateModel model = three_state_model(0.2);
    Rng rng = ctx.rng(401);
    const long reps = ctx.reps(100000, 30000);
    std::vector<std::vector<long>> table(3, std::vector<long>(cols, 0));
    for (long i = 0; i < reps; ++i) {
      const auto res = fmmr(model, 1, opt, rng);
      ++table[static_cast<std::size_t>(*res.output)]
             [t_bucket(res.window, 2, cols)];
    }
    cr.reports.push_back(independence_test("fmmr independence (three-state)",
                                           table, ctx.opt.significance));
    log << "  [A4] fmmr three-state p=" << fmt(cr.reports.back().p_value)
        << "\n";
  }
  {  // coupling from the past: dependence must be detected
    const WeightVector w = demo_weights3();
    const MtfModel model = mtf_model(w);
    Rng rng = ctx.rng(402);
    const long reps = ctx.reps(100000, 30000);
    std::vector<std::vector<long>> table(model.states.size(),
                                         std::vector<long>(cols, 0));
    for (long i = 0; i < reps; ++i) {
      const auto res = cftp(model, opt, rng);
      ++table[permutation_rank(*res.output)][t_bucket(res.window, 2, cols)];
    }
    StatReport dep = independence_test("cftp dependence detected", table,
                                       ctx.opt.significance);
    dep.pass = dep.p_value < ctx.opt.significance;
    dep.detail = "independence must be rejected";
    cr.reports.push_back(dep);
    log << "  [A4] cftp dependence p=" << fmt(dep.p_value)
        << " (must reject)\n";
  }
  return cr;
}

// ---------------------------------------------------------------------
// A5: runtime laws decrease stochastically as the start state rises in
// the strong order; reversal is minimal, identity maximal.

CriterionResult criterion_order_monotonicity(const Ctx& ctx,
                                             std::ostream& log) {
  (void)ctx;
  CriterionResult cr{"A5", "stochastic monotonicity in the start state", {}};
  const auto perms = all_permutations(4);
  const std::vector<WeightVector> weights = {
      weight_family(WeightFamily::Zipf, 4),
      weight_family(WeightFamily::Power, 4, 1.0),
      weight_family(WeightFamily::Geometric, 4, 0.4)};
  long violations = 0;
  long pairs = 0;
  for (const auto& w : weights) {
    std::vector<GeomConvolution> laws;
    long horizon = 0;
    for (const auto& z : perms) {
      laws.push_back(fmmr_runtime_law(w, z));
      horizon = std::max(horizon, laws.back().horizon_for_tail(1e-12));
    }
    for (std::size_t a = 0; a < perms.size(); ++a)
      for (std::size_t b = 0; b < perms.size(); ++b) {
        if (a == b || !bruhat_leq(perms[a], perms[b])) continue;
        ++pairs;
        if (!stochastic_leq(laws[b], laws[a], horizon)) ++violations;
      }
    const GeomConvolution rev_law =
        fmmr_runtime_law(w, Permutation::reversal(4));
    const GeomConvolution id_law =
        fmmr_runtime_law(w, Permutation::identity(4));
    for (const auto& law : laws) {
      ++pairs;
      if (!stochastic_leq(rev_law, law, horizon)) ++violations;
      if (!stochastic_leq(law, id_law, horizon)) ++violations;
    }
  }
  cr.reports.push_back(check_report(
      "order monotonicity violations", static_cast<double>(violations), 0.0,
      violations == 0, std::to_string(pairs) + " ordered comparisons"));
  log << "  [A5] " << pairs << " comparisons, " << violations
      << " violations\n";
  return cr;
}

// ---------------------------------------------------------------------
// A6: the best-start runtime law is stochastically Schur-concave in the
// weights.

CriterionResult criterion_schur_concavity(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A6", "schur-concavity in the weight vector", {}};
  const int n = 5;
  Rng rng = ctx.rng(600);
  long violations = 0;
  for (int pair = 0; pair < 20; ++pair) {
    // Random descending base vector, then an averaging toward uniform;
    // averaging is doubly stochastic, so the base majorizes the result.
    std::vector<double> base(static_cast<std::size_t>(n));
    for (double& x : base) x = rng.uniform(0.2, 1.0);
    std::sort(base.begin(), base.end(), std::greater<>());
    double sum = 0.0;
    for (double x : base) sum += x;
    for (double& x : base) x /= sum;
    const double lambda = rng.uniform(0.3, 0.9);
    std::vector<double> mixed(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
      mixed[i] = (1.0 - lambda) * base[i] + lambda / n;
    const WeightVector w(std::move(base));
    const WeightVector wp(std::move(mixed));
    if (!majorizes(w, wp)) ++violations;
    const GeomConvolution a = fmmr_runtime_law(w, Permutation::reversal(n));
    const GeomConvolution b = fmmr_runtime_law(wp, Permutation::reversal(n));
    const long horizon =
        std::max(a.horizon_for_tail(1e-12), b.horizon_for_tail(1e-12));
    if (!stochastic_leq(a, b, horizon)) ++violations;
  }
  cr.reports.push_back(check_report("schur-concavity violations",
                                    static_cast<double>(violations), 0.0,
                                    violations == 0, "20 majorization pairs"));
  // A strictly comparable pair exhibits a strict cdf gap.
  const WeightVector strict({0.5, 0.2, 0.15, 0.1, 0.05});
  const WeightVector uni = weight_family(WeightFamily::Uniform, n);
  const GeomConvolution a = fmmr_runtime_law(strict, Permutation::reversal(n));
  const GeomConvolution b = fmmr_runtime_law(uni, Permutation::reversal(n));
  const double gap =
      max_cdf_gap(a, b, std::max(a.horizon_for_tail(1e-12),
                                 b.horizon_for_tail(1e-12)));
  cr.reports.push_back(check_report("strict majorization cdf gap", gap, 1e-6,
                                    gap >= 1e-6));
  log << "  [A6] violations=" << violations << " strict gap=" << fmt(gap)
      << "\n";
  return cr;
}

// ---------------------------------------------------------------------
// A7: exact moments against the per-family step counts.

CriterionResult criterion_rate_table(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A7", "rate table from exact moments", {}};
  std::vector<double> sizes = {1e3, 1e4, 1e5};
  if (ctx.quick()) sizes = {1e3, 1e4};
  const std::vector<std::pair<WeightFamily, double>> families = {
      {WeightFamily::Zipf, 0.0},      {WeightFamily::Gzl, 0.5},
      {WeightFamily::Gzl, 2.0},       {WeightFamily::Power, 1.0},
      {WeightFamily::Geometric, 0.5}, {WeightFamily::Uniform, 0.0}};
  const auto rows = scaling_table(families, sizes);
  for (const auto& [family, param] : families) {
    std::vector<double> ratios;
    for (const auto& r : rows)
      if (r.family == family_name(family) && r.param == param)
        ratios.push_back(r.ratio_rev);
    bool in_band = true;
    bool approaching = true;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (ratios[i] < 0.8 || ratios[i] > 1.3) in_band = false;
      if (i > 0 &&
          std::fabs(ratios[i] - 1.0) >= std::fabs(ratios[i - 1] - 1.0))
        approaching = false;
    }
    std::string detail = "ratios";
    for (double r : ratios) detail += " " + fmt(r);
    cr.reports.push_back(check_report(
        std::string("rate ratio ") + family_name(family) +
            (param != 0.0 ? "(" + fmt(param) + ")" : ""),
        ratios.empty() ? -1.0 : ratios.back(), 1.3, in_band && approaching,
        detail));
    log << "  [A7] " << family_name(family) << " " << detail << "\n";
  }
  const auto g20 =
      scaling_table({{WeightFamily::Geometric, 0.5}}, {20.0}).front();
  const double speedup = g20.mean_id / g20.mean_rev;
  cr.reports.push_back(check_report("worst/best start speedup at n=20",
                                    speedup, 1e4, speedup > 1e4));
  log << "  [A7] geometric n=20 speedup = " << fmt(speedup) << "\n";
  return cr;
}

// ---------------------------------------------------------------------
// A8: the incremental sampler takes exactly n-1 reverse steps, is exact,
// and its one-step set coalescence holds exhaustively for small stages.

CriterionResult criterion_incremental(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A8", "incremental sampler and set coalescence", {}};
  long step_mismatches = 0;
  Rng rng = ctx.rng(800);
  for (int n = 1; n <= 64; ++n) {
    const WeightVector w = weight_family(WeightFamily::Zipf, n);
    const auto s = mtf_incremental_sample(w, rng);
    if (s.reverse_steps != n - 1) ++step_mismatches;
    if (s.value.size() != n) ++step_mismatches;
  }
  cr.reports.push_back(check_report("reverse step count n<=64",
                                    static_cast<double>(step_mismatches), 0.0,
                                    step_mismatches == 0));

  const WeightVector w4 = weight_family(WeightFamily::Zipf, 4);
  std::vector<double> pi;
  const auto perms = all_permutations(4);
  for (const auto& z : perms) pi.push_back(stationary_prob(w4, z));
  Rng rng2 = ctx.rng(801);
  const long reps = ctx.reps(100000, 20000);
  std::vector<long> counts(perms.size(), 0);
  for (long i = 0; i < reps; ++i)
    ++counts[permutation_rank(mtf_incremental_sample(w4, rng2).value)];
  cr.reports.push_back(
      gof_test("incremental gof n=4", counts, pi, ctx.opt.significance));

  // Requesting the new record from any state lands inside the target set.
  long violations = 0;
  for (int k = 1; k <= 4; ++k) {
    for (const auto& x : all_permutations(k + 1))
      if (move_to_front(x, k + 1).front() != k + 1) ++violations;
  }
  cr.reports.push_back(check_report("one-step set coalescence k<=4",
                                    static_cast<double>(violations), 0.0,
                                    violations == 0));
  log << "  [A8] mismatches=" << step_mismatches
      << " gof p=" << fmt(cr.reports[1].p_value)
      << " set violations=" << violations << "\n";
  return cr;
}

// ---------------------------------------------------------------------
// A9: the two toy-chain speedup pictures.

CriterionResult criterion_toy_examples(const Ctx& ctx, std::ostream& log) {
  CriterionResult cr{"A9", "toy-chain speedup examples", {}};
  {  // three-state: window law is Geometric(eps)
    const double eps = 0.2;
    const ThreeStateModel model = three_state_model(eps);
    SamplerOptions opt;
    opt.max_window = 4096;
    Rng rng = ctx.rng(900);
    const long reps = ctx.reps(10000, 4000);
    std::vector<long> tcounts(64, 0);
    for (long i = 0; i < reps; ++i) {
      const auto res = cftp(model, opt, rng);
      ++tcounts[std::min<std::size_t>(static_cast<std::size_t>(res.window),
                                      63)];
    }
    double worst_sigma = 0.0;
    double cum = 0.0;
    for (long t = 1; t <= 20; ++t) {
      cum += static_cast<double>(tcounts[static_cast<std::size_t>(t)]);
      const double fhat = cum / static_cast<double>(reps);
      const double f = 1.0 - std::pow(1.0 - eps, static_cast<double>(t));
      const double se =
          std::sqrt(f * (1.0 - f) / static_cast<double>(reps));
      worst_sigma = std::max(worst_sigma, std::fabs(fhat - f) / se);
    }
    cr.reports.push_back(check_report("three-state cftp window cdf",
                                      worst_sigma, 3.0, worst_sigma <= 3.0,
                                      "max |cdf error| in standard errors"));
    log << "  [A9] three-state cftp worst sigma = " << fmt(worst_sigma)
        << "\n";

    Rng rng2 = ctx.rng(901);
    long not_one = 0;
    for (long i = 0; i < reps; ++i) {
      const auto res = fmmr(model, 0, opt, rng2);
      if (!(res.ok() && res.window == 1)) ++not_one;
    }
    cr.reports.push_back(check_report("three-state fmmr one-step acceptance",
                                      static_cast<double>(not_one), 0.0,
                                      not_one == 0));
    log << "  [A9] three-state fmmr runs with T != 1: " << not_one << "\n";
  }
  {  // spin chain: one backward sweep versus a slow forward march
    SpinParams p;  // library defaults realize the strong-field regime
    const SpinModel model = spin_model(p);
    SamplerOptions opt;
    opt.max_window = 512;
    Rng rng = ctx.rng(902);
    const long reps = ctx.reps(10000, 2000);
    long ones = 0;
    for (long i = 0; i < reps; ++i) {
      const auto res = fmmr(model, *model.bottom, opt, rng);
      if (res.ok() && res.window == 1) ++ones;
    }
    const double frac = static_cast<double>(ones) / static_cast<double>(reps);
    cr.reports.push_back(check_report("spin fmmr one-sweep fraction", frac,
                                      0.8, frac >= 0.8));
    log << "  [A9] spin fmmr one-sweep fraction = " << fmt(frac) << "\n";

    Rng rng2 = ctx.rng(903);
    const long creps = ctx.reps(2000, 400);
    std::vector<double> windows;
    for (long i = 0; i < creps; ++i) {
      const auto res = cftp(model, opt, rng2);
      if (res.ok()) windows.push_back(static_cast<double>(res.window));
    }
    const double median = summarize(windows).median;
    cr.reports.push_back(check_report("spin cftp median window (sweeps)",
                                      median, 5.0, median >= 5.0));
    log << "  [A9] spin cftp median window = " << fmt(median) << "\n";
  }
  return cr;
}

// ---------------------------------------------------------------------
// A10: acceptance probability from an extreme start equals one minus the
// reversed-chain separation.

CriterionResult criterion_separation_identity(const Ctx& ctx,
                                              std::ostream& log) {
  (void)ctx;
  CriterionResult cr{"A10", "acceptance probability vs separation", {}};
  const WeightVector w = demo_weights3();
  const MtfModel model = mtf_model(w);
  const KernelMatrix k = build_kernel(model);
  const KernelMatrix krev = reverse_kernel(k);
  double worst = 0.0;
  for (const Permutation& z :
       {Permutation::identity(3), Permutation::reversal(3)}) {
    const std::size_t zi = permutation_rank(z);
    const double pz = k.pi[zi];
    for (long t = 1; t <= 8; ++t) {
      const double accept = exact_coalescence_prob_to(model, t, z) / pz;
      const double sep_complement = 1.0 - separation(krev, zi, t);
      worst = std::max(worst, std::fabs(accept - sep_complement));
    }
  }
  cr.reports.push_back(check_report("acceptance vs separation", worst, 1e-9,
                                    worst <= 1e-9,
                                    "max abs difference, windows 1..8"));
  log << "  [A10] max diff = " << fmt(worst) << "\n";
  return cr;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            std::ostream& log) {
  Ctx ctx{options};
  std::vector<CriterionResult> out;
  out.push_back(criterion_exactness(ctx, log));
  out.push_back(criterion_runtime_law(ctx, log));
  out.push_back(criterion_runtime_mixture(ctx, log));
  out.push_back(criterion_interruptibility(ctx, log));
  out.push_back(criterion_order_monotonicity(ctx, log));
  out.push_back(criterion_schur_concavity(ctx, log));
  out.push_back(criterion_rate_table(ctx, log));
  out.push_back(criterion_incremental(ctx, log));
  out.push_back(criterion_toy_examples(ctx, log));
  out.push_back(criterion_separation_identity(ctx, log));
  return out;
}

bool print_acceptance(const std::vector<CriterionResult>& results,
                      std::ostream& os, bool verbose) {
  bool all = true;
  for (const auto& cr : results) {
    const bool ok = cr.pass();
    all = all && ok;
    os << (ok ? "PASS " : "FAIL ") << cr.id << "  " << cr.title << "\n";
    if (verbose || !ok)
      for (const auto& r : cr.reports)
        os << "    " << (r.pass ? "pass " : "FAIL ") << r.name
           << "  stat=" << r.statistic << " df=" << r.df
           << " p=" << r.p_value
           << (r.detail.empty() ? "" : "  [" + r.detail + "]") << "\n";
  }
  return all;
}

std::vector<ScalingRow> scaling_table(
    const std::vector<std::pair<WeightFamily, double>>& families,
    const std::vector<double>& sizes) {
  std::vector<ScalingRow> rows;
  for (const auto& [family, param] : families)
    for (double dn : sizes) {
      ScalingRow row;
      row.family = family_name(family);
      row.param = param;
      row.n = dn;
      const RateMoments m =
          rate_moments(family, param, static_cast<long>(dn));
      row.mean_rev = m.mean_rev;
      row.mean_id = m.mean_id;
      row.k_n = rate_constant(family, param, dn);
      row.ratio_rev = row.mean_rev / row.k_n;
      row.cftp_shape = cftp_rate_shape(family);
      rows.push_back(std::move(row));
    }
  return rows;
}

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows) {
  os << "version,family,params,n,mean_rev,mean_id,k_n,ratio_rev,cftp_shape\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                  kOutputFormatVersion, r.family.c_str(), r.param, r.n,
                  r.mean_rev, r.mean_id, r.k_n, r.ratio_rev);
    os << buf << ',' << r.cftp_shape << '\n';
  }
}

}  // namespace perfsamp
