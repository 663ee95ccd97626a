#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "perfsamp/errors.hpp"
#include "perfsamp/permutation.hpp"

using namespace perfsamp;

namespace {

// Independent oracle for the strong order: closure under single swaps of
// two records standing in natural order.
std::set<Permutation> swap_closure(const Permutation& z) {
  std::set<Permutation> seen{z};
  std::vector<Permutation> frontier{z};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& s : frontier) {
      for (int i = 0; i < s.size(); ++i)
        for (int j = i + 1; j < s.size(); ++j) {
          if (s.at(i) >= s.at(j)) continue;
          auto v = s.labels();
          std::swap(v[static_cast<std::size_t>(i)],
                    v[static_cast<std::size_t>(j)]);
          Permutation t(v);
          if (seen.insert(t).second) next.push_back(std::move(t));
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("construction validates bijection") {
  CHECK_THROWS_AS(Permutation({1, 1, 3}), input_error);
  CHECK_THROWS_AS(Permutation({0, 1, 2}), input_error);
  CHECK_THROWS_AS(Permutation({1, 2, 4}), input_error);
  CHECK(Permutation({2, 1, 3}).front() == 2);
}

TEST_CASE("move_to_front") {
  CHECK(move_to_front(Permutation({1, 2, 3}), 3) == Permutation({3, 1, 2}));
  CHECK(move_to_front(Permutation({3, 1, 2}), 3) == Permutation({3, 1, 2}));
  CHECK(move_to_front(Permutation({2, 4, 1, 3}), 1) ==
        Permutation({1, 2, 4, 3}));
  CHECK_THROWS_AS(move_to_front(Permutation({1, 2}), 3), input_error);
}

TEST_CASE("weak order: extremes and incomparability") {
  const auto s3 = all_permutations(3);
  for (const auto& z : s3) {
    CHECK(weak_bruhat_leq(Permutation::identity(3), z));
    CHECK(weak_bruhat_leq(z, Permutation::reversal(3)));
    CHECK(weak_bruhat_leq(z, z));
  }
  CHECK_FALSE(weak_bruhat_leq(Permutation({2, 1, 3}), Permutation({1, 3, 2})));
  CHECK_FALSE(weak_bruhat_leq(Permutation({1, 3, 2}), Permutation({2, 1, 3})));
}

TEST_CASE("orders are partial orders and weak refines strong") {
  for (int n = 2; n <= 4; ++n) {
    const auto perms = all_permutations(n);
    for (const auto& a : perms)
      for (const auto& b : perms) {
        if (weak_bruhat_leq(a, b)) CHECK(bruhat_leq(a, b));
        if (weak_bruhat_leq(a, b) && weak_bruhat_leq(b, a)) CHECK(a == b);
        if (bruhat_leq(a, b) && bruhat_leq(b, a)) CHECK(a == b);
        for (const auto& c : perms) {
          if (bruhat_leq(a, b) && bruhat_leq(b, c)) CHECK(bruhat_leq(a, c));
          if (weak_bruhat_leq(a, b) && weak_bruhat_leq(b, c))
            CHECK(weak_bruhat_leq(a, c));
        }
      }
  }
}

TEST_CASE("strong order matches the swap-closure oracle at n<=4") {
  for (int n = 2; n <= 4; ++n) {
    const auto perms = all_permutations(n);
    for (const auto& a : perms) {
      const auto closure = swap_closure(a);
      for (const auto& b : perms)
        CHECK(bruhat_leq(a, b) == (closure.count(b) > 0));
    }
  }
}

TEST_CASE("strong-only comparable pair at n=4") {
  // Comparable in the strong order but not in the weak one.
  const Permutation a({2, 1, 4, 3});
  const Permutation b({3, 4, 1, 2});
  CHECK(bruhat_leq(a, b));
  CHECK_FALSE(weak_bruhat_leq(a, b));
}

TEST_CASE("rank is the lexicographic index") {
  const auto perms = all_permutations(4);
  for (std::size_t i = 0; i < perms.size(); ++i)
    CHECK(permutation_rank(perms[i]) == i);
}

TEST_CASE("parse and print round-trip") {
  CHECK(parse_permutation("3,1,2") == Permutation({3, 1, 2}));
  CHECK(to_string(Permutation({3, 1, 2})) == "3,1,2");
  CHECK_THROWS_AS(parse_permutation(""), input_error);
}
