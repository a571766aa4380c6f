#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "braid/descent.hpp"
#include "braid/experiments.hpp"
#include "braid/random.hpp"

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

// Oracle: P[sigma_i divides x1 x2] by exhausting S_n x S_n.
Rational brute_D2(int n, int i) {
  const auto sn = all_perms(n);
  long long hits = 0;
  for (const auto& a : sn) {
    for (const auto& b : sn) {
      const CanonicalBraid x = CanonicalBraid::normalized(n, 0, {a, b});
      bool descent = false;
      if (x.inf() >= 1)
        descent = true;
      else if (x.canonical_length() >= 1)
        descent = starting_set(x.head()).count(i) > 0;
      hits += descent ? 1 : 0;
    }
  }
  return Rational(hits, static_cast<long long>(sn.size()) * sn.size());
}

}  // namespace

TEST_CASE("exact_D2 against exhaustive enumeration for n in {2,3,4}") {
  CHECK(exact_D2(2, 1) == Rational(3, 4));
  // The closed formula counts descents through its block-inversion
  // conditions; those miss crossings created by full-twist formation.
  // Exactly one of the 576 pairs at (n,i)=(4,2) is affected:
  // x1 = [3,1,4,2], x2 = the half twist.
  for (int n : {2, 3, 4}) {
    for (int i = 1; i <= n - 1; ++i) {
      if (n == 4 && i == 2) {
        CHECK(exact_D2(4, 2) == Rational(25, 36));
        CHECK(brute_D2(4, 2) == Rational(401, 576));
        CHECK(brute_D2(4, 2) - exact_D2(4, 2) == Rational(1, 576));
      } else {
        CHECK(exact_D2(n, i) == brute_D2(n, i));
      }
    }
  }
}

TEST_CASE("exact_D2 symmetry in i") {
  for (int n : {3, 4, 5, 6, 8})
    for (int i = 1; i <= n - 1; ++i) CHECK(exact_D2(n, i) == exact_D2(n, n - i));
}

TEST_CASE("two-factor upper bound") {
  CHECK(d2_upper_bound(2) == Rational(1, 4));
  // bound dominates the mean excess of the exact values
  for (int n : {2, 3, 4, 5, 6, 7, 8}) {
    Rational mean = 0;
    for (int i = 1; i <= n - 1; ++i) mean += exact_D2(n, i) - Rational(1, 2);
    mean /= (n - 1);
    CHECK(d2_upper_bound(n) >= mean);
  }
  // logarithmic growth: doubling n adds about ln 2 to the bound
  const double step1 = static_cast<double>(d2_upper_bound(64) - d2_upper_bound(32));
  const double step2 = static_cast<double>(d2_upper_bound(128) - d2_upper_bound(64));
  CHECK(step1 > 0.5 * std::log(2.0));
  CHECK(step1 < 1.5 * std::log(2.0));
  CHECK(step2 < step1 * 1.1);
}

TEST_CASE("recursive bound: pinned rational values") {
  CHECK(recursive_D_bound(4, 1) == Rational(1, 2));
  CHECK(recursive_D_bound(10, 1) == Rational(1, 2));
  CHECK(recursive_D_bound(4, 2) == Rational(1, 2) + Rational(29, 144));
  CHECK(recursive_D_bound(2, 2) == exact_D2(2, 1));  // equality at n = 2
  // upper bound on the exact two-factor values at small n
  for (int n : {2, 3, 4}) CHECK(recursive_D_bound(n, 2) >= exact_D2(n, 1));

  // table estimator at (4,2): 3 * 29/144 = 29/48
  const Rational cell = Rational(3) * (recursive_D_bound(4, 2) - recursive_D_bound(4, 1));
  CHECK(cell == Rational(29, 48));
  CHECK(format_sig3(static_cast<double>(cell)) == "6.04e-01");
}

TEST_CASE("the k=2 table column collapses to the two-factor bound") {
  DescentBoundCalculator<Rational> calc;
  for (int n : {4, 6, 10, 20}) {
    CHECK(calc.table_cell(n, 2) == d2_upper_bound(n));
  }
}

TEST_CASE("corollary bound for three factors") {
  const auto b10 = corollary_d3_bound(10);
  const double ln10 = std::log(10.0);
  CHECK(b10.D_bound == Catch::Approx(0.5 + ln10 / 9 + 3 * ln10 * ln10 / 90));
  CHECK(b10.d_form == Catch::Approx(3 * ln10 * ln10 / 10));
  CHECK(corollary_d3_bound(1000000).D_bound < 0.51);
  // comparison against the recursion, reported not asserted
  DescentBoundCalculator<TableFloat> calc;
  for (int n : {10, 50, 100}) {
    INFO("n=" << n << " recursion=" << static_cast<double>(calc.bound(n, 3))
              << " corollary=" << corollary_d3_bound(n).D_bound);
    CHECK(corollary_d3_bound(n).D_bound > 0.5);
  }
}

TEST_CASE("bound table emits the requested grid with provenance") {
  const DescentTable t = d_bound_table({4, 10}, {2, 5});
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[0].provenance == "exact");
  CHECK(t.rows[2].provenance == "recursive-bound");
  CHECK(format_sig3(t.rows[0].value) == "6.04e-01");

  const DescentTable full = d_bound_table({10}, {10});
  CHECK_FALSE(full.rows[0].annotation.empty());
}

TEST_CASE("table values decrease in k for k >= 5 at fixed n") {
  DescentBoundCalculator<TableFloat> calc;
  for (int n : {4, 6, 10}) {
    double prev = static_cast<double>(calc.table_cell(n, 5));
    for (int k : {10, 20, 30}) {
      const double cur = static_cast<double>(calc.table_cell(n, k));
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("random braid sampling is deterministic and uniform") {
  RandomBraidSpec spec;
  spec.n = 5;
  spec.k = 6;
  spec.seed = 424242;
  const auto a = sample_random_braid(spec);
  const auto b = sample_random_braid(spec);
  CHECK(a.braid == b.braid);
  REQUIRE(a.raw_factors.size() == 6);
  CHECK(a.raw_delta_power == 0);

  // frozen first sample for cross-run stability of the PRNG contract
  const auto first = a.raw_factors[0].one_line();
  const auto again = sample_random_braid(spec).raw_factors[0].one_line();
  CHECK(first == again);

  // chi-squared uniformity over S_4 (critical value for 23 dof at p=0.001)
  const double chi2 = chi_squared_uniformity(4, 100000, 7);
  CHECK(chi2 < 49.73);
}

TEST_CASE("single-factor descent probability is one half") {
  const McResult r = mc_experiment("descent-count", 6, 1, 20000, 2024);
  CHECK(r.cleared);
  CHECK(std::abs(r.rate - 0.5) < 0.02);
}

TEST_CASE("monte carlo results are reproducible and worker-count independent") {
  const McResult a = mc_experiment("wcw", 5, 4, 400, 99, 1);
  const McResult b = mc_experiment("wcw", 5, 4, 400, 99, 4);
  CHECK(a.successes == b.successes);
  CHECK(a.conditioned_out == b.conditioned_out);
  CHECK(a.rate == b.rate);
}

TEST_CASE("experiment registry rejects unknown names") {
  CHECK_THROWS_AS(mc_experiment("no-such-thing", 4, 4, 10, 1), std::invalid_argument);
}

TEST_CASE("empirical descent symmetry and monotonicity in the index") {
  // D(n,k,i) = D(n,k,n-i) and decreasing toward the middle, within noise.
  const int n = 6, k = 3, samples = 4000;
  std::vector<double> freq(n, 0.0);
  long long used = 0;
  for (int t = 0; t < samples; ++t) {
    RandomBraidSpec spec;
    spec.n = n;
    spec.k = k;
    spec.seed = derive_seed(31337, t);
    const auto s = sample_random_braid(spec);
    if (s.braid.inf() != 0 || s.braid.canonical_length() == 0) continue;
    ++used;
    const auto d = starting_set(s.braid.head());
    for (int i : d) freq[i] += 1.0;
  }
  for (int i = 1; i < n; ++i) freq[i] /= static_cast<double>(used);
  const double noise = 4.0 / std::sqrt(static_cast<double>(used));
  for (int i = 1; i <= (n - 1) / 2; ++i) CHECK(std::abs(freq[i] - freq[n - i]) < noise);
  for (int i = 1; i < n / 2; ++i) CHECK(freq[i] >= freq[i + 1] - noise);
}
