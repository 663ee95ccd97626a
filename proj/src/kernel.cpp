#include "perfsamp/kernel.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace perfsamp {

void validate_kernel(const KernelMatrix& k, double row_tol, double pi_tol) {
  for (std::size_t i = 0; i < k.n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < k.n; ++j) row += k.at(i, j);
    if (std::fabs(row - 1.0) > row_tol)
      throw model_error("kernel row does not sum to 1");
  }
  if (k.pi.size() != k.n) throw model_error("kernel has no stationary vector");
  for (std::size_t j = 0; j < k.n; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < k.n; ++i) v += k.pi[i] * k.at(i, j);
    if (std::fabs(v - k.pi[j]) > pi_tol)
      throw model_error("stationary vector is not invariant");
  }
}

KernelMatrix reverse_kernel(const KernelMatrix& k) {
  KernelMatrix r;
  r.n = k.n;
  r.p.assign(k.n * k.n, 0.0);
  r.pi = k.pi;
  // Row y is normalized by the computed (pi K)(y) rather than pi(y): the
  // two agree to the stationary tolerance, and the rows then sum to one
  // at machine precision instead of amplifying pi's residual.
  for (std::size_t y = 0; y < k.n; ++y) {
    if (k.pi[y] <= 0.0)
      throw model_error("reverse_kernel: degenerate state with pi = 0");
    double mass = 0.0;
    for (std::size_t x = 0; x < k.n; ++x) mass += k.pi[x] * k.at(x, y);
    for (std::size_t x = 0; x < k.n; ++x)
      r.at(y, x) = k.pi[x] * k.at(x, y) / mass;
  }
  validate_kernel(r);
  return r;
}

std::vector<double> kernel_power_row(const KernelMatrix& k, std::size_t x,
                                     long t) {
  if (x >= k.n) throw input_error("kernel_power_row: state index out of range");
  if (t < 0) throw input_error("kernel_power_row: negative time");
  std::vector<double> row(k.n, 0.0);
  row[x] = 1.0;
  std::vector<double> tmp(k.n);
  for (long s = 0; s < t; ++s) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (std::size_t i = 0; i < k.n; ++i) {
      if (row[i] == 0.0) continue;
      const double w = row[i];
      for (std::size_t j = 0; j < k.n; ++j) tmp[j] += w * k.at(i, j);
    }
    row.swap(tmp);
  }
  return row;
}

double separation(const KernelMatrix& k, std::size_t x, long t) {
  const auto row = kernel_power_row(k, x, t);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t z = 0; z < k.n; ++z) m = std::min(m, row[z] / k.pi[z]);
  return 1.0 - m;
}

std::vector<double> stationary_vector(const std::vector<double>& p,
                                      std::size_t n, double tol,
                                      long max_iter) {
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> nxt(n);
  // Iterate past the requested tolerance down to the floating-point
  // plateau; identities built on pi divide by its entries and would
  // otherwise amplify the residual.
  double best = std::numeric_limits<double>::infinity();
  long stalled = 0;
  double diff = std::numeric_limits<double>::infinity();
  for (long it = 0; it < max_iter; ++it) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = pi[i];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) nxt[j] += w * p[i * n + j];
    }
    double mass = 0.0;
    for (double v : nxt) mass += v;
    for (double& v : nxt) v /= mass;
    diff = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      diff = std::max(diff, std::fabs(nxt[j] - pi[j]));
    pi.swap(nxt);
    if (diff < 5e-16) return pi;
    if (diff < best) {
      best = diff;
      stalled = 0;
    } else if (++stalled > 500) {
      break;
    }
  }
  if (diff > tol)
    throw model_error(
        "stationary_vector: fixed-point iteration did not converge");
  return pi;
}

void require_ergodic(const std::vector<double>& p, std::size_t n) {
  if (n == 0) throw model_error("empty state space");
  if (n == 1) return;
  auto bfs = [&](bool forward) {
    std::vector<int> dist(n, -1);
    std::queue<std::size_t> q;
    dist[0] = 0;
    q.push(0);
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      for (std::size_t j = 0; j < n; ++j) {
        const double w = forward ? p[i * n + j] : p[j * n + i];
        if (w > 0.0 && dist[j] < 0) {
          dist[j] = dist[i] + 1;
          q.push(j);
        }
      }
    }
    return dist;
  };
  const auto dfwd = bfs(true);
  const auto dback = bfs(false);
  for (std::size_t i = 0; i < n; ++i)
    if (dfwd[i] < 0 || dback[i] < 0)
      throw model_error("chain is reducible; stationary law not unique");
  // Period = gcd over all edges of d(u) + 1 - d(v) in a BFS tree.
  long g = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p[i * n + j] > 0.0)
        g = std::gcd(g, static_cast<long>(dfwd[i]) + 1 - dfwd[j]);
  if (std::abs(g) != 1) throw model_error("chain is periodic");
}

}  // namespace perfsamp
