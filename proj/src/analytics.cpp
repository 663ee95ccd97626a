#include "perfsamp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "perfsamp/errors.hpp"

namespace perfsamp {

GeomConvolution fmmr_runtime_law(const WeightVector& w, const Permutation& z) {
  if (w.size() != z.size())
    throw input_error("fmmr_runtime_law: size mismatch");
  const int n = z.size();
  std::vector<double> params;
  params.reserve(static_cast<std::size_t>(std::max(0, n - 1)));
  double prefix = 0.0;  // y_r^+
  for (int r = 0; r <= n - 2; ++r) {
    params.push_back(1.0 - prefix);
    prefix += w[z.at(r) - 1];
  }
  return GeomConvolution(std::move(params));
}

TruncatedPmf cftp_runtime_law(const WeightVector& w, long horizon) {
  const int n = w.size();
  if (n > 6) throw input_error("cftp_runtime_law: n too large to enumerate");
  if (horizon < 0) throw input_error("cftp_runtime_law: negative horizon");
  TruncatedPmf out;
  out.pmf.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (const Permutation& z : all_permutations(n)) {
    const double pz = stationary_prob(w, z);
    const auto t = fmmr_runtime_law(w, z).pmf_table(horizon);
    for (std::size_t k = 0; k < t.size(); ++k) out.pmf[k] += pz * t[k];
  }
  out.tail = 1.0 - std::accumulate(out.pmf.begin(), out.pmf.end(), 0.0);
  return out;
}

bool stochastic_leq(const std::vector<double>& pmf_a,
                    const std::vector<double>& pmf_b, double tail_a,
                    double tail_b, double tail_tol) {
  if (tail_a > tail_tol || tail_b > tail_tol)
    throw inconclusive_error("stochastic_leq: horizon leaves too much tail");
  const std::size_t m = std::max(pmf_a.size(), pmf_b.size());
  double ca = 0.0, cb = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    ca += k < pmf_a.size() ? pmf_a[k] : 0.0;
    cb += k < pmf_b.size() ? pmf_b[k] : 0.0;
    if (ca < cb - 1e-12) return false;
  }
  return true;
}

bool stochastic_leq(const GeomConvolution& a, const GeomConvolution& b,
                    long horizon, double tail_tol) {
  const auto ta = a.pmf_table(horizon);
  const auto tb = b.pmf_table(horizon);
  const double tail_a = 1.0 - std::accumulate(ta.begin(), ta.end(), 0.0);
  const double tail_b = 1.0 - std::accumulate(tb.begin(), tb.end(), 0.0);
  return stochastic_leq(ta, tb, tail_a, tail_b, tail_tol);
}

double max_cdf_gap(const GeomConvolution& a, const GeomConvolution& b,
                   long horizon) {
  const auto ta = a.pmf_table(horizon);
  const auto tb = b.pmf_table(horizon);
  double ca = 0.0, cb = 0.0, gap = 0.0;
  for (std::size_t k = 0; k < ta.size(); ++k) {
    ca += ta[k];
    cb += tb[k];
    gap = std::max(gap, ca - cb);
  }
  return gap;
}

bool majorizes(const WeightVector& a, const WeightVector& b) {
  if (a.size() != b.size()) throw input_error("majorizes: size mismatch");
  const auto pa = a.prefix_sums();
  const auto pb = b.prefix_sums();
  for (std::size_t k = 0; k < pa.size(); ++k)
    if (pa[k] < pb[k] - 1e-12) return false;
  return true;
}

double rate_constant(WeightFamily family, double param, double n) {
  switch (family) {
    case WeightFamily::Uniform:
      return n * std::log(n);
    case WeightFamily::Zipf:
      return n;
    case WeightFamily::Gzl:
      if (param == 1.0) throw input_error("gzl: alpha = 1 is the zipf family");
      if (!(param > 0.0)) throw input_error("gzl: alpha must be > 0");
      return param < 1.0 ? n / param : n;
    case WeightFamily::Power:
      if (!(param > 0.0)) throw input_error("power: s must be > 0");
      return n * std::log(n) / (param + 1.0);
    case WeightFamily::Geometric:
      return n;
  }
  throw input_error("rate_constant: unknown family");
}

RateMoments rate_moments(WeightFamily family, double param, long n) {
  if (n < 1) throw input_error("rate_moments: n must be >= 1");
  RateMoments m;
  if (n == 1) return m;
  // mean_rev = sum_{r=2}^{n} 1 / w_r^+ and
  // mean_id  = 1 + sum_{r=1}^{n-2} 1 / (1 - w_r^+), with the prefix and
  // tail sums expressed per family so neither under- nor overflows the
  // intermediate weights.
  switch (family) {
    case WeightFamily::Uniform: {
      for (long r = 2; r <= n; ++r)
        m.mean_rev += static_cast<double>(n) / static_cast<double>(r);
      m.mean_id = 1.0;
      for (long r = 1; r <= n - 2; ++r)
        m.mean_id += static_cast<double>(n) / static_cast<double>(n - r);
      return m;
    }
    case WeightFamily::Zipf:
    case WeightFamily::Gzl: {
      const double a = family == WeightFamily::Zipf ? 1.0 : param;
      if (family == WeightFamily::Gzl) {
        if (!(a > 0.0)) throw input_error("gzl: alpha must be > 0");
        if (a == 1.0) throw input_error("gzl: alpha = 1 is the zipf family");
      }
      std::vector<double> h(static_cast<std::size_t>(n) + 1, 0.0);
      for (long i = 1; i <= n; ++i)
        h[static_cast<std::size_t>(i)] =
            h[static_cast<std::size_t>(i - 1)] +
            std::pow(static_cast<double>(i), -a);
      const double hn = h[static_cast<std::size_t>(n)];
      for (long r = 2; r <= n; ++r)
        m.mean_rev += hn / h[static_cast<std::size_t>(r)];
      m.mean_id = 1.0;
      for (long r = 1; r <= n - 2; ++r)
        m.mean_id += hn / (hn - h[static_cast<std::size_t>(r)]);
      return m;
    }
    case WeightFamily::Power: {
      if (!(param > 0.0)) throw input_error("power: s must be > 0");
      // f_k = sum_{j<=k} j^s; prefix after r records is (f_n - f_{n-r})/f_n.
      std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
      for (long j = 1; j <= n; ++j)
        f[static_cast<std::size_t>(j)] =
            f[static_cast<std::size_t>(j - 1)] +
            std::pow(static_cast<double>(j), param);
      const double fn = f[static_cast<std::size_t>(n)];
      for (long r = 2; r <= n; ++r)
        m.mean_rev += fn / (fn - f[static_cast<std::size_t>(n - r)]);
      m.mean_id = 1.0;
      for (long r = 1; r <= n - 2; ++r)
        m.mean_id += fn / f[static_cast<std::size_t>(n - r)];
      return m;
    }
    case WeightFamily::Geometric: {
      if (!(param > 0.0 && param <= 0.5))
        throw input_error("geometric: theta must be in (0, 1/2]");
      double theta_r = param;  // theta^r
      m.mean_rev = 1.0;        // the r = n prefix is exactly 1
      for (long r = 2; r <= n - 1; ++r) {
        theta_r *= param;
        m.mean_rev += 1.0 / (1.0 - theta_r);
      }
      m.mean_id = 1.0;
      double inv = 1.0 / param;  // theta^{-r}; saturates to inf honestly
      for (long r = 1; r <= n - 2; ++r) {
        m.mean_id += inv;
        inv /= param;
      }
      return m;
    }
  }
  throw input_error("rate_moments: unknown family");
}

std::string cftp_rate_shape(WeightFamily family) {
  switch (family) {
    case WeightFamily::Uniform: return "n ln n";
    case WeightFamily::Zipf: return "n (ln n)^2";
    case WeightFamily::Gzl: return "n/(1-a) ln n (a<1); zeta(a) n^a ln n (a>1)";
    case WeightFamily::Power: return "c n^(s+1)";
    case WeightFamily::Geometric: return "c theta^(-n)";
  }
  return "?";
}

}  // namespace perfsamp
