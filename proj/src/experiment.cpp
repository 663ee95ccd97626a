#include "perfsamp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "perfsamp/mtf.hpp"
#include "perfsamp/samplers.hpp"
#include "perfsamp/toy_chains.hpp"

namespace perfsamp {

namespace {

void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  if (threads <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

SamplerOptions options_from(const ExperimentSpec& spec) {
  SamplerOptions opt;
  opt.max_window = spec.max_window;
  opt.schedule = spec.doubling ? Schedule::Doubling : Schedule::Increment;
  if (spec.trajectories == "auto")
    opt.mode = TrajectoryMode::Auto;
  else if (spec.trajectories == "all")
    opt.mode = TrajectoryMode::AllStates;
  else if (spec.trajectories == "extremes")
    opt.mode = TrajectoryMode::Extremes;
  else
    throw input_error("unknown trajectory mode: " + spec.trajectories);
  return opt;
}

template <typename M>
void fill_row(const M& model, const RunResult<typename M::State>& res,
              RunRow& row) {
  row.status = res.ok() ? "ok" : "timeout";
  row.window = res.window;
  row.total_steps = res.total_steps;
  if (res.output) row.output = model.format_state(*res.output);
  if (res.start_state) row.start_state = model.format_state(*res.start_state);
  if (res.coalesced_to)
    row.coalesced_to = model.format_state(*res.coalesced_to);
}

Permutation parse_mtf_start(const std::string& start, int n) {
  if (start == "id") return Permutation::identity(n);
  if (start == "rev" || start.empty()) return Permutation::reversal(n);
  Permutation z = parse_permutation(start);
  if (z.size() != n) throw input_error("start permutation has wrong length");
  return z;
}

std::function<void(long, Rng&, RunRow&)> make_runner(
    const ExperimentSpec& spec) {
  const SamplerOptions opt = options_from(spec);
  if (spec.chain == "mtf") {
    const WeightVector w = parse_weights(spec.weights, spec.n);
    auto model = std::make_shared<MtfModel>(mtf_model(w));
    if (spec.algorithm == "cftp")
      return [model, opt](long, Rng& rng, RunRow& row) {
        fill_row(*model, cftp(*model, opt, rng), row);
      };
    if (spec.algorithm == "fmmr") {
      const Permutation z0 = parse_mtf_start(spec.start, spec.n);
      return [model, opt, z0](long, Rng& rng, RunRow& row) {
        fill_row(*model, fmmr(*model, z0, opt, rng), row);
      };
    }
    if (spec.algorithm == "fmmr-set") {
      if (spec.downset.empty())
        throw input_error("fmmr-set needs a down-set root permutation");
      const Permutation root = parse_mtf_start(spec.downset, spec.n);
      auto member = [root](const Permutation& z) {
        return weak_bruhat_leq(z, root);
      };
      auto wv = std::make_shared<WeightVector>(w);
      // Exact conditional sampler: rejection from the incremental
      // stationary sampler.
      auto cond = [wv, member](Rng& rng) {
        for (;;) {
          Permutation z = mtf_incremental_sample(*wv, rng).value;
          if (member(z)) return z;
        }
      };
      return [model, opt, member, cond](long, Rng& rng, RunRow& row) {
        fill_row(*model,
                 fmmr_set<MtfModel>(*model, member, SetKind::DownSet, cond,
                                    opt, rng),
                 row);
      };
    }
    if (spec.algorithm == "incremental") {
      auto wv = std::make_shared<WeightVector>(w);
      return [model, wv](long, Rng& rng, RunRow& row) {
        const auto s = mtf_incremental_sample(*wv, rng);
        row.status = "ok";
        row.window = s.reverse_steps;
        row.total_steps = s.reverse_steps;
        row.output = to_string(s.value);
      };
    }
    throw input_error("unknown algorithm for mtf: " + spec.algorithm);
  }
  if (spec.chain == "three-state") {
    auto model = std::make_shared<ThreeStateModel>(
        three_state_model(spec.epsilon));
    if (spec.algorithm == "cftp")
      return [model, opt](long, Rng& rng, RunRow& row) {
        fill_row(*model, cftp(*model, opt, rng), row);
      };
    if (spec.algorithm == "fmmr") {
      if (!spec.start.empty() &&
          (spec.start.size() != 1 || spec.start[0] < '0' ||
           spec.start[0] > '2'))
        throw input_error("three-state start must be 0..2");
      const int z0 = spec.start.empty() ? 0 : spec.start[0] - '0';
      return [model, opt, z0](long, Rng& rng, RunRow& row) {
        fill_row(*model, fmmr(*model, z0, opt, rng), row);
      };
    }
    throw input_error("unknown algorithm for three-state: " + spec.algorithm);
  }
  if (spec.chain == "spin") {
    SpinParams p;
    p.sites = spec.sites;
    p.beta = spec.beta;
    p.field = spec.field;
    p.end_field = spec.end_field;
    if (spec.sweep == "lr")
      p.left_to_right = true;
    else if (spec.sweep == "rl")
      p.left_to_right = false;
    else
      throw input_error("sweep must be lr or rl");
    auto model = std::make_shared<SpinModel>(spin_model(p));
    if (spec.algorithm == "cftp")
      return [model, opt](long, Rng& rng, RunRow& row) {
        fill_row(*model, cftp(*model, opt, rng), row);
      };
    if (spec.algorithm == "fmmr") {
      SpinState z0;
      if (spec.start == "bottom" || spec.start.empty())
        z0 = *model->bottom;
      else if (spec.start == "top")
        z0 = *model->top;
      else
        throw input_error("spin start must be bottom or top");
      return [model, opt, z0](long, Rng& rng, RunRow& row) {
        fill_row(*model, fmmr(*model, z0, opt, rng), row);
      };
    }
    throw input_error("unknown algorithm for spin: " + spec.algorithm);
  }
  throw input_error("unknown chain: " + spec.chain);
}

}  // namespace

Quantiles summarize(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  q.mean = sum / static_cast<double>(values.size());
  auto at = [&](double p) {
    const std::size_t i = static_cast<std::size_t>(
        p * static_cast<double>(values.size() - 1));
    return values[i];
  };
  q.q05 = at(0.05);
  q.q25 = at(0.25);
  q.median = at(0.5);
  q.q75 = at(0.75);
  q.q95 = at(0.95);
  return q;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.replications < 1)
    throw input_error("replications must be >= 1");
  auto runner = make_runner(spec);
  ExperimentResult result;
  result.rows.resize(static_cast<std::size_t>(spec.replications));
  const int threads =
      spec.threads > 0
          ? spec.threads
          : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  parallel_for(spec.replications, threads, [&](long i) {
    RunRow& row = result.rows[static_cast<std::size_t>(i)];
    row.replication = i;
    row.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
    Rng rng(row.seed);
    runner(i, rng, row);
  });
  auto& s = result.summary;
  s.replications = spec.replications;
  std::vector<double> windows, steps;
  for (const auto& row : result.rows) {
    if (row.status != "ok") {
      ++s.timeouts;
      continue;
    }
    windows.push_back(static_cast<double>(row.window));
    steps.push_back(static_cast<double>(row.total_steps));
  }
  s.window = summarize(std::move(windows));
  s.total_steps = summarize(std::move(steps));
  return result;
}

namespace {

nlohmann::json spec_to_json(const ExperimentSpec& s) {
  return nlohmann::json{{"chain", s.chain},
                        {"n", s.n},
                        {"weights", s.weights},
                        {"epsilon", s.epsilon},
                        {"sites", s.sites},
                        {"beta", s.beta},
                        {"field", s.field},
                        {"end_field", s.end_field},
                        {"sweep", s.sweep},
                        {"algorithm", s.algorithm},
                        {"start", s.start},
                        {"downset", s.downset},
                        {"replications", s.replications},
                        {"seed", s.seed},
                        {"max_window", s.max_window},
                        {"doubling", s.doubling},
                        {"trajectories", s.trajectories},
                        {"threads", s.threads},
                        {"format", s.format},
                        {"output", s.output}};
}

}  // namespace

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const ExperimentSpec& spec,
               const ExperimentResult& result) {
  os << "version,chain,algorithm,replication,seed,status,window,total_steps,"
        "start_state,coalesced_to,output\n";
  for (const auto& r : result.rows)
    os << kOutputFormatVersion << ',' << spec.chain << ',' << spec.algorithm
       << ',' << r.replication << ',' << r.seed << ',' << r.status << ','
       << r.window << ',' << r.total_steps << ',' << csv_field(r.start_state)
       << ',' << csv_field(r.coalesced_to) << ',' << csv_field(r.output)
       << '\n';
}

namespace {

nlohmann::json quantiles_json(const Quantiles& q) {
  return nlohmann::json{{"mean", q.mean}, {"q05", q.q05},   {"q25", q.q25},
                        {"median", q.median}, {"q75", q.q75}, {"q95", q.q95}};
}

}  // namespace

void write_json(std::ostream& os, const ExperimentSpec& spec,
                const ExperimentResult& result) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : result.rows)
    records.push_back({{"replication", r.replication},
                       {"seed", r.seed},
                       {"status", r.status},
                       {"window", r.window},
                       {"total_steps", r.total_steps},
                       {"start_state", r.start_state},
                       {"coalesced_to", r.coalesced_to},
                       {"output", r.output}});
  nlohmann::json doc{
      {"version", kOutputFormatVersion},
      {"spec", spec_to_json(spec)},
      {"summary",
       {{"replications", result.summary.replications},
        {"timeouts", result.summary.timeouts},
        {"window", quantiles_json(result.summary.window)},
        {"total_steps", quantiles_json(result.summary.total_steps)}}},
      {"records", std::move(records)}};
  os << doc.dump(2) << '\n';
}

ExperimentSpec spec_from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentSpec s;
  s.chain = j.value("chain", s.chain);
  s.n = j.value("n", s.n);
  s.weights = j.value("weights", s.weights);
  s.epsilon = j.value("epsilon", s.epsilon);
  s.sites = j.value("sites", s.sites);
  s.beta = j.value("beta", s.beta);
  s.field = j.value("field", s.field);
  s.end_field = j.value("end_field", s.end_field);
  s.sweep = j.value("sweep", s.sweep);
  s.algorithm = j.value("algorithm", s.algorithm);
  s.start = j.value("start", s.start);
  s.downset = j.value("downset", s.downset);
  s.replications = j.value("replications", s.replications);
  s.seed = j.value("seed", s.seed);
  s.max_window = j.value("max_window", s.max_window);
  s.doubling = j.value("doubling", s.doubling);
  s.trajectories = j.value("trajectories", s.trajectories);
  s.threads = j.value("threads", s.threads);
  s.format = j.value("format", s.format);
  s.output = j.value("output", s.output);
  return s;
}

std::string spec_to_json_text(const ExperimentSpec& spec) {
  return spec_to_json(spec).dump(2);
}

}  // namespace perfsamp
