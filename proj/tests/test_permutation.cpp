#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <vector>

#include "braid/permutation.hpp"

using namespace braid;

namespace {

std::vector<PermutationBraid> all_perms(int n) {
  std::vector<int> ol(n);
  for (int i = 0; i < n; ++i) ol[i] = i + 1;
  std::vector<PermutationBraid> out;
  do {
    out.push_back(PermutationBraid::from_one_line(ol));
  } while (std::next_permutation(ol.begin(), ol.end()));
  return out;
}

// Oracle: maximal common left subword by enumeration. The lattice property
// makes the maximum unique; assert that.
PermutationBraid brute_meet_left(const PermutationBraid& a, const PermutationBraid& b,
                                 const std::vector<PermutationBraid>& sn) {
  std::vector<PermutationBraid> lower;
  for (const auto& z : sn)
    if (is_left_subword(z, a) && is_left_subword(z, b)) lower.push_back(z);
  PermutationBraid best = lower.front();
  for (const auto& z : lower)
    if (z.inversions() > best.inversions()) best = z;
  for (const auto& z : lower) REQUIRE(is_left_subword(z, best));
  return best;
}

std::optional<PermutationBraid> brute_join_left(const PermutationBraid& a,
                                                const PermutationBraid& b,
                                                const std::vector<PermutationBraid>& sn) {
  std::optional<PermutationBraid> best;
  for (const auto& z : sn) {
    if (is_left_subword(a, z) && is_left_subword(b, z)) {
      if (!best || z.inversions() < best->inversions()) best = z;
    }
  }
  if (best)
    for (const auto& z : sn)
      if (is_left_subword(a, z) && is_left_subword(b, z)) REQUIRE(is_left_subword(*best, z));
  return best;
}

PermutationBraid p(std::vector<int> ol) { return PermutationBraid::from_one_line(ol); }

}  // namespace

TEST_CASE("composition in S_n with additive lengths") {
  const auto s1 = PermutationBraid::generator(3, 1);
  const auto s2 = PermutationBraid::generator(3, 2);
  const auto e = PermutationBraid::identity(3);

  auto prod = compose_in_Sn(s1, s2);
  REQUIRE(prod.has_value());
  CHECK(*prod == p({3, 1, 2}));
  CHECK(prod->inversions() == 2);

  CHECK(compose_in_Sn(e, s1) == s1);
  CHECK(compose_in_Sn(s2, e) == s2);
  CHECK_FALSE(compose_in_Sn(s1, s1).has_value());

  CHECK_THROWS_AS(compose_in_Sn(s1, PermutationBraid::identity(4)), std::invalid_argument);
}

TEST_CASE("word length is the inversion count") {
  CHECK(PermutationBraid::identity(5).inversions() == 0);
  CHECK(PermutationBraid::half_twist(5).inversions() == 10);
  CHECK(PermutationBraid::generator(5, 3).inversions() == 1);
  for (const auto& a : all_perms(4))
    CHECK(static_cast<int>(reduced_word(a).size()) == a.inversions());
}

TEST_CASE("subword order") {
  const auto s1 = PermutationBraid::generator(3, 1);
  const auto s2 = PermutationBraid::generator(3, 2);
  const auto delta = PermutationBraid::half_twist(3);
  CHECK(is_left_subword(s1, delta));
  CHECK(is_left_subword(s2, delta));
  CHECK(is_left_subword(s1, s1));
  CHECK_FALSE(is_left_subword(s1, s2.then(s1)));  // sigma2 sigma1 = [2,3,1]... s1 not a prefix
  CHECK(is_right_subword(s1, s2.then(s1)));
  CHECK_FALSE(is_right_subword(s2, s2.then(s1)));
}

TEST_CASE("meets and joins agree with the brute-force oracle (n<=4)") {
  for (int n : {2, 3, 4}) {
    const auto sn = all_perms(n);
    for (const auto& a : sn) {
      for (const auto& b : sn) {
        CHECK(meet_left(a, b) == brute_meet_left(a, b, sn));
        const auto j = join_left(a, b);
        const auto bj = brute_join_left(a, b, sn);
        REQUIRE(j.has_value());
        REQUIRE(bj.has_value());
        CHECK(*j == *bj);
        CHECK(meet_right(a, b) ==
              meet_left(a.inverse(), b.inverse()).inverse());
      }
    }
  }
}

TEST_CASE("spec meet/join examples in B_3") {
  const auto s1 = PermutationBraid::generator(3, 1);
  const auto s2 = PermutationBraid::generator(3, 2);
  const auto delta = PermutationBraid::half_twist(3);
  const auto s1s2 = p({3, 1, 2});
  const auto s2s1 = p({2, 3, 1});

  CHECK(meet_left(s1, s2).is_identity());
  CHECK(meet_left(s1s2, delta) == s1s2);
  CHECK(meet_left(s1s2, s2s1).is_identity());

  CHECK(*join_left(s1, s2) == delta);
  for (const auto& a : all_perms(3)) {
    CHECK(*join_left(a, PermutationBraid::identity(3)) == a);
    CHECK(*join_left(a, a) == a);
  }
}

TEST_CASE("lattice laws hold exhaustively (n<=4)") {
  for (int n : {3, 4}) {
    const auto sn = all_perms(n);
    for (const auto& a : sn) {
      for (const auto& b : sn) {
        const auto m = meet_left(a, b);
        CHECK(m == meet_left(b, a));
        CHECK(*join_left(a, b) == *join_left(b, a));
        // absorption
        CHECK(meet_left(a, *join_left(a, b)) == a);
        CHECK(*join_left(a, meet_left(a, b)) == a);
        // monotone bounds
        CHECK(is_left_subword(m, a));
        CHECK(is_left_subword(m, b));
        CHECK(m.inversions() <= std::min(a.inversions(), b.inversions()));
        // tau is a lattice automorphism
        CHECK(tau(m) == meet_left(tau(a), tau(b)));
      }
    }
    // associativity on a subsample to keep the cube tractable
    for (size_t i = 0; i < sn.size(); i += 3)
      for (size_t j = 0; j < sn.size(); j += 3)
        for (size_t k = 0; k < sn.size(); k += 3) {
          CHECK(meet_left(sn[i], meet_left(sn[j], sn[k])) ==
                meet_left(meet_left(sn[i], sn[j]), sn[k]));
        }
  }
}

TEST_CASE("complements") {
  const auto s1 = PermutationBraid::generator(3, 1);
  CHECK(right_complement(s1) == p({2, 3, 1}));
  CHECK(right_complement(PermutationBraid::half_twist(3)).is_identity());
  CHECK(right_complement(PermutationBraid::identity(3)).is_half_twist());

  for (int n : {3, 4, 5}) {
    const auto delta = PermutationBraid::half_twist(n);
    for (const auto& a : all_perms(n)) {
      CHECK(a.then(right_complement(a)) == delta);
      CHECK(left_complement(a).then(a) == delta);
      CHECK(left_complement(right_complement(a)) == a);
      CHECK(right_complement(right_complement(a)) == tau(a));
    }
  }
}

TEST_CASE("tau flips generators and fixes the half twist") {
  CHECK(tau(PermutationBraid::generator(3, 1)) == PermutationBraid::generator(3, 2));
  CHECK(tau(PermutationBraid::half_twist(6)) == PermutationBraid::half_twist(6));
  for (const auto& a : all_perms(4)) {
    CHECK(tau(tau(a)) == a);
    CHECK(tau(a, 2) == a);
    CHECK(tau(a, -1) == tau(a));
  }
}

TEST_CASE("starting and finishing sets") {
  const auto s1s2 = p({3, 1, 2});
  CHECK(starting_set(s1s2) == std::set<GeneratorIndex>{1});
  CHECK(finishing_set(s1s2) == std::set<GeneratorIndex>{2});

  const auto delta = PermutationBraid::half_twist(4);
  CHECK(starting_set(delta) == std::set<GeneratorIndex>{1, 2, 3});
  CHECK(starting_set(PermutationBraid::identity(4)).empty());

  // cross-check against the subword oracle
  for (const auto& a : all_perms(4)) {
    for (int i = 1; i <= 3; ++i) {
      const auto s = PermutationBraid::generator(4, i);
      CHECK(starting_set(a).count(i) == static_cast<size_t>(is_left_subword(s, a)));
      CHECK(finishing_set(a).count(i) == static_cast<size_t>(is_right_subword(s, a)));
    }
  }
}

TEST_CASE("weighted pairs: two characterizations agree on all of S_4 x S_4") {
  const auto s1 = PermutationBraid::generator(3, 1);
  const auto s2 = PermutationBraid::generator(3, 2);
  CHECK(is_weighted_pair(s1, s1));
  CHECK_FALSE(is_weighted_pair(s1, s2));
  for (const auto& b : all_perms(3)) CHECK(is_weighted_pair(PermutationBraid::half_twist(3), b));

  for (const auto& a : all_perms(4))
    for (const auto& b : all_perms(4))
      CHECK(is_weighted_pair(a, b) == is_weighted_pair_by_meet(a, b));
}

TEST_CASE("left subword enumeration") {
  const auto subs = left_subwords(PermutationBraid::half_twist(4));
  CHECK(subs.size() == 24);  // every permutation divides the half twist
  const auto subs2 = left_subwords(p({3, 1, 2}));
  CHECK(subs2.size() == 3);  // e, sigma1, sigma1 sigma2
  for (const auto& z : subs2) CHECK(is_left_subword(z, p({3, 1, 2})));
}

TEST_CASE("one-line text form") {
  CHECK(to_text(p({3, 1, 2})) == "[3,1,2]");
  CHECK_THROWS_AS(p({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(p({0, 1, 2}), std::invalid_argument);
}
