#include "perfsamp/mtf.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "perfsamp/errors.hpp"

namespace perfsamp {

namespace {
constexpr double kSumTol = 1e-12;
constexpr int kEnumerateLimit = 6;
}  // namespace

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw input_error("WeightVector: empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!(w_[i] > 0.0)) throw input_error("WeightVector: weights must be > 0");
    if (i > 0 && w_[i] > w_[i - 1] + kSumTol)
      throw input_error("WeightVector: weights must be nonincreasing");
    sum += w_[i];
  }
  if (std::fabs(sum - 1.0) > kSumTol)
    throw input_error("WeightVector: weights must sum to 1");
}

std::vector<double> WeightVector::prefix_sums() const {
  std::vector<double> p(w_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    acc += w_[i];
    p[i] = acc;
  }
  if (!p.empty()) p.back() = 1.0;
  return p;
}

WeightVector WeightVector::prefix_renormalized(int k) const {
  if (k < 1 || k > size())
    throw input_error("WeightVector: prefix length out of range");
  std::vector<double> v(w_.begin(), w_.begin() + k);
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= sum;
  return WeightVector(std::move(v));
}

WeightVector weight_family(WeightFamily family, int n, double param) {
  if (n < 1) throw input_error("weight_family: n must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(n));
  switch (family) {
    case WeightFamily::Uniform:
      for (double& x : w) x = 1.0 / n;
      break;
    case WeightFamily::Zipf: {
      double h = 0.0;
      for (int i = 1; i <= n; ++i) h += 1.0 / i;
      for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i - 1)] = 1.0 / (h * i);
      break;
    }
    case WeightFamily::Gzl: {
      if (!(param > 0.0)) throw input_error("gzl: alpha must be > 0");
      if (param == 1.0) throw input_error("gzl: alpha = 1 is the zipf family");
      double h = 0.0;
      for (int i = 1; i <= n; ++i) h += std::pow(i, -param);
      for (int i = 1; i <= n; ++i)
        w[static_cast<std::size_t>(i - 1)] = std::pow(i, -param) / h;
      break;
    }
    case WeightFamily::Power: {
      if (!(param > 0.0)) throw input_error("power: s must be > 0");
      double f = 0.0;
      for (int j = 1; j <= n; ++j) f += std::pow(j, param);
      for (int i = 1; i <= n; ++i)
        w[static_cast<std::size_t>(i - 1)] = std::pow(n - i + 1, param) / f;
      break;
    }
    case WeightFamily::Geometric: {
      // theta > 1/2 would put more mass on record n than on n-1,
      // breaking the nonincreasing labeling.
      if (!(param > 0.0 && param <= 0.5))
        throw input_error("geometric: theta must be in (0, 1/2]");
      for (int i = 1; i < n; ++i)
        w[static_cast<std::size_t>(i - 1)] =
            (1.0 - param) * std::pow(param, i - 1);
      w[static_cast<std::size_t>(n - 1)] = std::pow(param, n - 1);
      break;
    }
  }
  // Remove accumulated rounding so the sum-to-1 invariant holds exactly.
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return WeightVector(std::move(w));
}

const char* family_name(WeightFamily family) {
  switch (family) {
    case WeightFamily::Uniform: return "uniform";
    case WeightFamily::Zipf: return "zipf";
    case WeightFamily::Gzl: return "gzl";
    case WeightFamily::Power: return "power";
    case WeightFamily::Geometric: return "geometric";
  }
  return "?";
}

std::optional<WeightFamily> family_from_name(std::string_view name) {
  if (name == "uniform") return WeightFamily::Uniform;
  if (name == "zipf") return WeightFamily::Zipf;
  if (name == "gzl") return WeightFamily::Gzl;
  if (name == "power") return WeightFamily::Power;
  if (name == "geometric") return WeightFamily::Geometric;
  return std::nullopt;
}

WeightVector parse_weights(const std::string& text, int n) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (head == "list") {
    std::string t = tail;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<double> v;
    double x = 0;
    while (in >> x) v.push_back(x);
    if (n > 0 && static_cast<int>(v.size()) != n)
      throw input_error("weights list length does not match n");
    return WeightVector(std::move(v));
  }
  const auto fam = family_from_name(head);
  if (!fam) throw input_error("unknown weight family: " + head);
  double param = 0.0;
  if (!tail.empty()) param = std::stod(tail);
  return weight_family(*fam, n, param);
}

namespace {

// Tail sums t_r = sum_{j>=r} w_{z_j}, accumulated backward.
std::vector<double> tail_sums(const WeightVector& w, const Permutation& z) {
  const int n = z.size();
  std::vector<double> t(static_cast<std::size_t>(n) + 1, 0.0);
  for (int r = n - 1; r >= 0; --r)
    t[static_cast<std::size_t>(r)] =
        t[static_cast<std::size_t>(r) + 1] + w[z.at(r) - 1];
  return t;
}

}  // namespace

double stationary_prob(const WeightVector& w, const Permutation& z) {
  if (w.size() != z.size()) throw input_error("stationary_prob: size mismatch");
  const auto t = tail_sums(w, z);
  double p = 1.0;
  for (int r = 0; r < z.size(); ++r)
    p *= w[z.at(r) - 1] / t[static_cast<std::size_t>(r)];
  return p;
}

double stationary_log_prob(const WeightVector& w, const Permutation& z) {
  if (w.size() != z.size())
    throw input_error("stationary_log_prob: size mismatch");
  const auto t = tail_sums(w, z);
  double lp = 0.0;
  for (int r = 0; r < z.size(); ++r)
    lp += std::log(w[z.at(r) - 1]) - std::log(t[static_cast<std::size_t>(r)]);
  return lp;
}

std::vector<double> mtf_reverse_step_probs(const WeightVector& w,
                                           const Permutation& y) {
  if (w.size() != y.size())
    throw input_error("mtf_reverse_step: size mismatch");
  const int n = y.size();
  const double wi = w[y.front() - 1];
  // v[m] = sum of weights of the records behind the front, from list
  // position m+1 on (v[n-1] = 0).
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  for (int m = n - 2; m >= 0; --m)
    v[static_cast<std::size_t>(m)] =
        v[static_cast<std::size_t>(m) + 1] + w[y.at(m + 1) - 1];
  // P(r) = A_{r-1} - A_r with A_r = prod_{m<=r} v_m / (v_m + wi);
  // the cumulative law telescopes to 1 - A_r exactly.
  std::vector<double> probs(static_cast<std::size_t>(n));
  double a_prev = 1.0;
  for (int r = 1; r <= n; ++r) {
    const double vm = v[static_cast<std::size_t>(r - 1)];
    const double a = a_prev * (vm / (vm + wi));
    probs[static_cast<std::size_t>(r - 1)] = a_prev - a;
    a_prev = a;
  }
  return probs;
}

namespace {

Permutation reinsert_front_at(const Permutation& y, int r) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(y.size()));
  for (int m = 1; m < y.size(); ++m) v.push_back(y.at(m));
  v.insert(v.begin() + (r - 1), y.front());
  return Permutation(std::move(v));
}

}  // namespace

Permutation mtf_reverse_step(const WeightVector& w, const Permutation& y,
                             Rng& rng) {
  if (w.size() != y.size())
    throw input_error("mtf_reverse_step: size mismatch");
  const int n = y.size();
  if (n == 1) return y;
  const double wi = w[y.front() - 1];
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  for (int m = n - 2; m >= 0; --m)
    v[static_cast<std::size_t>(m)] =
        v[static_cast<std::size_t>(m) + 1] + w[y.at(m + 1) - 1];
  // Invert the cumulative law 1 - A_r at a single uniform draw.
  const double target = 1.0 - rng.next_double();  // in (0, 1]
  double a = 1.0;
  int r = n;
  for (int m = 1; m <= n; ++m) {
    a *= v[static_cast<std::size_t>(m - 1)] /
         (v[static_cast<std::size_t>(m - 1)] + wi);
    if (a < target) {
      r = m;
      break;
    }
  }
  return reinsert_front_at(y, r);
}

int mtf_impute(const Permutation& x_prev, const Permutation& x_next) {
  if (x_prev.size() != x_next.size())
    throw imputation_error("mtf_impute: size mismatch");
  const int i = x_next.front();
  if (!(move_to_front(x_prev, i) == x_next))
    throw imputation_error("mtf_impute: not a single move-to-front step");
  return i;
}

MtfModel mtf_model(const WeightVector& w) {
  const int n = w.size();
  MtfModel m;
  m.name = "mtf(n=" + std::to_string(n) + ")";
  m.step = [](const Permutation& z, const int& i) {
    return move_to_front(z, i);
  };
  auto dist = std::make_shared<DiscreteDist>(w.values());
  m.draw_innovation = [dist](Rng& rng) {
    return static_cast<int>(dist->sample(rng)) + 1;
  };
  if (n <= kEnumerateLimit) m.states = all_permutations(n);
  m.innovations.resize(static_cast<std::size_t>(n));
  std::iota(m.innovations.begin(), m.innovations.end(), 1);
  m.innovation_pmf = w.values();
  auto wv = std::make_shared<WeightVector>(w);
  m.reverse_step = [wv](const Permutation& y, Rng& rng) {
    return mtf_reverse_step(*wv, y, rng);
  };
  m.impute = [](const Permutation& prev, const Permutation& next, Rng&) {
    return mtf_impute(prev, next);
  };
  m.leq = [](const Permutation& a, const Permutation& b) {
    return weak_bruhat_leq(a, b);
  };
  m.bottom = Permutation::identity(n);
  m.top = Permutation::reversal(n);
  m.valid_state = [n](const Permutation& z) { return z.size() == n; };
  m.valid_innovation = [n](const int& i) { return i >= 1 && i <= n; };
  m.format = [](const Permutation& z) { return to_string(z); };
  return m;
}

IncrementalSample mtf_incremental_sample(const WeightVector& w, Rng& rng) {
  const int n = w.size();
  IncrementalSample out;
  std::vector<int> x{1};
  for (int k = 2; k <= n; ++k) {
    // (k, x_1, ..., x_{k-1}) is an exact draw from the stage-k stationary
    // law conditioned on record k being in front.
    x.insert(x.begin(), k);
    Permutation cur(x);
    cur = mtf_reverse_step(w.prefix_renormalized(k), cur, rng);
    ++out.reverse_steps;
    // One forward request of record k sends every state into the target
    // set, so the set-coalescence window is always a single step.
    x = cur.labels();
  }
  out.value = Permutation(std::move(x));
  return out;
}

}  // namespace perfsamp
