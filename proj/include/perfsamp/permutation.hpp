#ifndef PERFSAMP_PERMUTATION_HPP
#define PERFSAMP_PERMUTATION_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace perfsamp {

// Ordering of records 1..n; position 0 is the list front.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> labels);

  static Permutation identity(int n);
  static Permutation reversal(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  int front() const { return labels_.front(); }
  int at(int pos) const { return labels_[static_cast<std::size_t>(pos)]; }
  const std::vector<int>& labels() const { return labels_; }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;  // lexicographic

 private:
  std::vector<int> labels_;
};

// Requested record moved to the front, relative order of the rest unchanged.
Permutation move_to_front(const Permutation& z, int label);

// Inversion-set containment; identity is the minimum, reversal the maximum.
bool weak_bruhat_leq(const Permutation& a, const Permutation& b);

// Strong order via rank-matrix dominance.
bool bruhat_leq(const Permutation& a, const Permutation& b);

// All of S_n in lexicographic (canonical) order. n <= 8.
std::vector<Permutation> all_permutations(int n);

// Lexicographic rank within S_n, 0-based.
std::size_t permutation_rank(const Permutation& z);

std::string to_string(const Permutation& z);

// Parses "3,1,2" (or "3 1 2").
Permutation parse_permutation(const std::string& text);

}  // namespace perfsamp

#endif
