#ifndef PERFSAMP_RNG_HPP
#define PERFSAMP_RNG_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "perfsamp/errors.hpp"

namespace perfsamp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Per-replication seed: counter-mode SplitMix64 over (master, index).
// Deterministic regardless of scheduling or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

// All randomness in the library flows through one of these, one per
// thread of execution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Inverse-cdf sampler for a fixed finite pmf.
class DiscreteDist {
 public:
  explicit DiscreteDist(const std::vector<double>& pmf) : cdf_(pmf) {
    double total = 0.0;
    for (double v : cdf_) {
      if (v < 0.0) throw input_error("DiscreteDist: negative mass");
      total += v;
    }
    if (total <= 0.0) throw input_error("DiscreteDist: zero total mass");
    double acc = 0.0;
    for (double& v : cdf_) {
      acc += v / total;
      v = acc;
    }
    cdf_.back() = 1.0;
  }

  std::size_t size() const { return cdf_.size(); }

  std::size_t sample(Rng& rng) const {
    const double u = rng.next_double();
    return static_cast<std::size_t>(
        std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;  // nondecreasing, ends at 1
};

}  // namespace perfsamp

#endif
