#include "perfsamp/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "perfsamp/errors.hpp"

namespace perfsamp {

Permutation::Permutation(std::vector<int> labels) : labels_(std::move(labels)) {
  const int n = static_cast<int>(labels_.size());
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : labels_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw input_error("Permutation: labels must be a bijection on 1..n");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(v));
}

Permutation move_to_front(const Permutation& z, int label) {
  if (label < 1 || label > z.size())
    throw input_error("move_to_front: label out of range");
  std::vector<int> v = z.labels();
  auto it = std::find(v.begin(), v.end(), label);
  std::rotate(v.begin(), it, it + 1);
  return Permutation(std::move(v));
}

namespace {

// positions[label] = index of label in z
std::vector<int> positions_of(const Permutation& z) {
  std::vector<int> pos(static_cast<std::size_t>(z.size()) + 1, 0);
  for (int i = 0; i < z.size(); ++i)
    pos[static_cast<std::size_t>(z.at(i))] = i;
  return pos;
}

}  // namespace

bool weak_bruhat_leq(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw input_error("weak_bruhat_leq: size mismatch");
  const auto pa = positions_of(a);
  const auto pb = positions_of(b);
  const int n = a.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (pa[static_cast<std::size_t>(i)] > pa[static_cast<std::size_t>(j)] &&
          pb[static_cast<std::size_t>(i)] < pb[static_cast<std::size_t>(j)])
        return false;
  return true;
}

bool bruhat_leq(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw input_error("bruhat_leq: size mismatch");
  const int n = a.size();
  // R(z; x, y) = #{r <= x : z_r >= y}; a <= b iff R(a) <= R(b) pointwise.
  std::vector<int> ra(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> rb(static_cast<std::size_t>(n) + 1, 0);
  for (int x = 1; x <= n; ++x) {
    const int va = a.at(x - 1);
    const int vb = b.at(x - 1);
    for (int y = 1; y <= va; ++y) ++ra[static_cast<std::size_t>(y)];
    for (int y = 1; y <= vb; ++y) ++rb[static_cast<std::size_t>(y)];
    for (int y = 1; y <= n; ++y)
      if (ra[static_cast<std::size_t>(y)] > rb[static_cast<std::size_t>(y)])
        return false;
  }
  return true;
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 0 || n > 8)
    throw input_error("all_permutations: n out of supported range");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::size_t permutation_rank(const Permutation& z) {
  const int n = z.size();
  std::vector<std::size_t> fact(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i)
    fact[static_cast<std::size_t>(i)] =
        fact[static_cast<std::size_t>(i - 1)] * static_cast<std::size_t>(i);
  std::size_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (z.at(j) < z.at(i)) ++smaller;
    rank += static_cast<std::size_t>(smaller) *
            fact[static_cast<std::size_t>(n - 1 - i)];
  }
  return rank;
}

std::string to_string(const Permutation& z) {
  std::string s;
  for (int i = 0; i < z.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(z.at(i));
  }
  return s;
}

Permutation parse_permutation(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<int> v;
  int x = 0;
  while (in >> x) v.push_back(x);
  if (v.empty()) throw input_error("parse_permutation: empty");
  return Permutation(std::move(v));
}

}  // namespace perfsamp
