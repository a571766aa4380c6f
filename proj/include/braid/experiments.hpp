#pragma once

// Monte-Carlo verification harness for the probabilistic properties of
// random braids. Trials are seeded independently (derive_seed) so results
// are bit-identical for a given (name, n, k, samples, seed) regardless of
// the worker count. Samples violating the standing assumption
// inf(x_1..x_k) = 0, sup = k are recorded and excluded from the rate, per
// the conditioning the properties are stated under.

#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "braid/conjugacy.hpp"
#include "braid/descent.hpp"
#include "braid/random.hpp"
#include "braid/summit.hpp"

namespace braid {

enum class TrialOutcome { Success, Failure, ConditionedOut };

struct McResult {
  std::string name;
  int n = 0;
  int k = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
  long long successes = 0;
  long long evaluated = 0;
  long long conditioned_out = 0;
  double rate = 0;      // successes / evaluated
  double std_error = 0; // binomial
  double ci_low = 0, ci_high = 0;  // rate -/+ 3 se, clamped to [0,1]
  double bound = 0;                // theoretical bound on the success rate
  std::string bound_expr;
  bool cleared = false;  // empirical rate compatible with the bound (3 se slack)
};

namespace detail {

struct TrialContext {
  int n;
  int k;
  Rng rng;
};

// One conditioned sample: k uniform factors with no collapse, then an
// optional half-twist prefix with random parity.
inline std::optional<CanonicalBraid> conditioned_braid(TrialContext& ctx, bool random_parity) {
  std::vector<PermutationBraid> fac;
  fac.reserve(ctx.k);
  for (int i = 0; i < ctx.k; ++i) fac.push_back(ctx.rng.permutation(ctx.n));
  CanonicalBraid x = CanonicalBraid::normalized(ctx.n, 0, fac);
  if (x.inf() != 0 || x.canonical_length() != ctx.k) return std::nullopt;
  if (random_parity) x = x.times_delta_power(static_cast<long long>(ctx.rng.below(2)));
  return x;
}

inline bool in_uss(const CanonicalBraid& z, long long summit_inf, long long summit_sup) {
  return z.inf() == summit_inf && z.sup() == summit_sup && is_cycling_periodic(z);
}

}  // namespace detail

class ExperimentRegistry {
 public:
  using Predicate = std::function<TrialOutcome(detail::TrialContext&)>;

  static TrialOutcome head_stability(detail::TrialContext& ctx) {
    auto x = detail::conditioned_braid(ctx, false);
    if (!x) return TrialOutcome::ConditionedOut;
    const CanonicalBraid xa = x->times(ctx.rng.permutation(ctx.n));
    const bool stable =
        xa.inf() == 0 && xa.canonical_length() >= 1 && xa.head() == x->head();
    return stable ? TrialOutcome::Success : TrialOutcome::Failure;
  }

  static TrialOutcome tail_stability(detail::TrialContext& ctx) {
    auto x = detail::conditioned_braid(ctx, false);
    if (!x) return TrialOutcome::ConditionedOut;
    const CanonicalBraid ax = CanonicalBraid::from_permutation(ctx.rng.permutation(ctx.n)).times(*x);
    const bool stable =
        ax.inf() == 0 && ax.canonical_length() >= 1 && ax.tail() == x->tail();
    return stable ? TrialOutcome::Success : TrialOutcome::Failure;
  }

  // For every permutation braid a, the head of xa is the head of x up to
  // the flip. Exhaustive in a; meant for small braid index.
  static TrialOutcome cut_head(detail::TrialContext& ctx) {
    auto x = detail::conditioned_braid(ctx, false);
    if (!x) return TrialOutcome::ConditionedOut;
    const PermutationBraid h = x->head();
    for (const PermutationBraid& a :
         left_subwords(PermutationBraid::half_twist(ctx.n))) {
      const CanonicalBraid xa = x->times(a);
      if (xa.canonical_length() == 0) return TrialOutcome::Failure;
      const PermutationBraid ha = xa.head();
      if (!(h == ha || h == tau(ha))) return TrialOutcome::Failure;
    }
    return TrialOutcome::Success;
  }

  static TrialOutcome weakly_cyclically_weighted(detail::TrialContext& ctx) {
    auto x = detail::conditioned_braid(ctx, true);
    if (!x) return TrialOutcome::ConditionedOut;
    return is_weakly_cyclically_weighted(*x) ? TrialOutcome::Success : TrialOutcome::Failure;
  }

  static TrialOutcome in_sss(detail::TrialContext& ctx) {
    auto x = detail::conditioned_braid(ctx, true);
    if (!x) return TrialOutcome::ConditionedOut;
    const Conjugated s = reduce_to_sss(*x);
    return (s.value.inf() == x->inf() && s.value.sup() == x->sup()) ? TrialOutcome::Success
                                                                    : TrialOutcome::Failure;
  }

  static TrialOutcome cw_after_cycling(detail::TrialContext& ctx) {
    auto xo = detail::conditioned_braid(ctx, true);
    if (!xo) return TrialOutcome::ConditionedOut;
    CanonicalBraid x = *xo;
    for (int j = 0; j <= ctx.k / 2; ++j) {
      if (is_cyclically_weighted(x)) return TrialOutcome::Success;
      x = cycling(x).value;
    }
    return TrialOutcome::Failure;
  }

  // The full twisted head is the only minimal cut-head conjugator staying
  // in the ultra summit set.
  static TrialOutcome minimal_conjugator(detail::TrialContext& ctx) {
    auto xo = detail::conditioned_braid(ctx, true);
    if (!xo) return TrialOutcome::ConditionedOut;
    const CanonicalBraid y = settle(*xo, InvariantSetKind::USS).value;
    if (y.canonical_length() == 0 || !is_cyclically_weighted(y))
      return TrialOutcome::ConditionedOut;
    const PermutationBraid bound = tau(y.head(), static_cast<int>(y.inf() & 1));
    for (const PermutationBraid& g : left_subwords(bound)) {
      if (g.is_identity() || g == bound) continue;
      if (detail::in_uss(y.conjugated_by(g), y.inf(), y.sup())) return TrialOutcome::Failure;
    }
    return TrialOutcome::Success;
  }

  // USS(x) is one cycling orbit together with its flip image.
  static TrialOutcome orbit_structure(detail::TrialContext& ctx) {
    auto xo = detail::conditioned_braid(ctx, true);
    if (!xo) return TrialOutcome::ConditionedOut;
    const InvariantSetResult uss = generate_invariant_set(
        *xo, InvariantSetKind::USS, CandidatePolicy::Restricted, 100000);
    if (uss.budget_exhausted) return TrialOutcome::ConditionedOut;
    if (uss.orbit_count() == 1) return TrialOutcome::Success;
    if (uss.orbit_count() != 2) return TrialOutcome::Failure;
    const std::string t = uss.orbits[0].front().tau_conjugate().key();
    for (const CanonicalBraid& z : uss.orbits[1])
      if (z.key() == t) return TrialOutcome::Success;
    for (const CanonicalBraid& z : uss.orbits[0])
      if (z.key() == t) return TrialOutcome::Failure;  // each orbit flip-closed
    return TrialOutcome::Failure;
  }

  // Each generator divides a uniform factor with probability 1/2; counts
  // one Bernoulli per generator index.
  static TrialOutcome descent_count(detail::TrialContext& ctx) {
    const PermutationBraid p = ctx.rng.permutation(ctx.n);
    const int i = 1 + static_cast<int>(ctx.rng.below(ctx.n - 1));
    return starting_set(p).count(i) ? TrialOutcome::Success : TrialOutcome::Failure;
  }
};

struct ExperimentSpec {
  ExperimentRegistry::Predicate predicate;
  // bound on the success rate as a function of (n, k)
  std::function<double(int, int)> bound;
  std::string bound_expr;
};

inline const std::map<std::string, ExperimentSpec>& experiment_registry() {
  auto clamp01 = [](double v) { return v < 0 ? 0.0 : (v > 1 ? 1.0 : v); };
  static const std::map<std::string, ExperimentSpec> reg = [clamp01] {
    std::map<std::string, ExperimentSpec> m;
    m["head-stability"] = {ExperimentRegistry::head_stability,
                           [clamp01](int n, int k) { return 1 - clamp01(d_bound_value(n, k)); },
                           "1 - min(d(n,k),1)"};
    m["tail-stability"] = {ExperimentRegistry::tail_stability,
                           [clamp01](int n, int k) { return 1 - clamp01(d_bound_value(n, k)); },
                           "1 - min(d(n,k),1)"};
    m["cut-head"] = {ExperimentRegistry::cut_head,
                     [clamp01](int n, int k) { return 1 - clamp01(2 * d_bound_value(n, k)); },
                     "1 - 2 d(n,k)"};
    m["wcw"] = {ExperimentRegistry::weakly_cyclically_weighted,
                [clamp01](int n, int k) { return 1 - clamp01(2 * d_bound_value(n, k)); },
                "1 - 2 d(n,k)"};
    m["sss"] = {ExperimentRegistry::in_sss,
                [clamp01](int n, int k) { return 1 - clamp01(4 * d_bound_value(n, k)); },
                "1 - 4 d(n,k)"};
    m["cw-after-cycling"] = {
        ExperimentRegistry::cw_after_cycling,
        [clamp01](int n, int k) { return 1 - clamp01(2 * d_bound_value(n, k / 4)); },
        "1 - 2 d(n,floor(k/4))"};
    m["minimal-conjugator"] = {
        ExperimentRegistry::minimal_conjugator,
        [clamp01](int n, int k) { return 1 - clamp01(2 * d_bound_value(n, k - 1)); },
        "1 - 2 d(n,k-1)"};
    m["orbit-structure"] = {
        ExperimentRegistry::orbit_structure,
        [clamp01](int n, int k) { return 1 - clamp01(2 * d_bound_value(n, k / 4)); },
        "1 - 2 d(n,floor(k/4))"};
    m["descent-count"] = {ExperimentRegistry::descent_count, [](int, int) { return 0.5; },
                          "1/2 per generator"};
    return m;
  }();
  return reg;
}

inline McResult mc_experiment(const std::string& name, int n, int k, long long samples,
                              std::uint64_t seed, int jobs = 1) {
  const auto& reg = experiment_registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown experiment: " + name);
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");

  McResult res;
  res.name = name;
  res.n = n;
  res.k = k;
  res.samples = samples;
  res.seed = seed;

  const auto& spec = it->second;
  auto run_chunk = [&](long long lo, long long hi) {
    std::pair<long long, long long> acc{0, 0};  // successes, conditioned_out
    for (long long t = lo; t < hi; ++t) {
      detail::TrialContext ctx{n, k, Rng(derive_seed(seed, static_cast<std::uint64_t>(t)))};
      switch (spec.predicate(ctx)) {
        case TrialOutcome::Success: ++acc.first; break;
        case TrialOutcome::Failure: break;
        case TrialOutcome::ConditionedOut: ++acc.second; break;
      }
    }
    return acc;
  };

  if (jobs <= 1) {
    auto [s, c] = run_chunk(0, samples);
    res.successes = s;
    res.conditioned_out = c;
  } else {
    std::vector<std::future<std::pair<long long, long long>>> futs;
    const long long chunk = (samples + jobs - 1) / jobs;
    for (long long lo = 0; lo < samples; lo += chunk)
      futs.push_back(std::async(std::launch::async, run_chunk, lo, std::min(lo + chunk, samples)));
    for (auto& f : futs) {
      auto [s, c] = f.get();
      res.successes += s;
      res.conditioned_out += c;
    }
  }

  res.evaluated = samples - res.conditioned_out;
  if (res.evaluated > 0) {
    res.rate = static_cast<double>(res.successes) / static_cast<double>(res.evaluated);
    res.std_error = std::sqrt(std::max(res.rate * (1 - res.rate), 1e-12) /
                              static_cast<double>(res.evaluated));
    res.ci_low = std::max(0.0, res.rate - 3 * res.std_error);
    res.ci_high = std::min(1.0, res.rate + 3 * res.std_error);
  }
  res.bound = spec.bound(n, k);
  res.bound_expr = spec.bound_expr;
  res.cleared = res.name == "descent-count" ? (res.ci_low <= 0.5 && 0.5 <= res.ci_high)
                                            : (res.ci_low >= res.bound);
  return res;
}

// Pearson chi-squared statistic for uniformity over the n! factor choices.
inline double chi_squared_uniformity(int n, long long samples, std::uint64_t seed) {
  std::map<std::vector<int>, long long> counts;
  Rng rng(seed);
  for (long long t = 0; t < samples; ++t) ++counts[rng.permutation(n).images()];
  double cells = 1;
  for (int i = 2; i <= n; ++i) cells *= i;
  const double expect = static_cast<double>(samples) / cells;
  double chi2 = (cells - static_cast<double>(counts.size())) * expect;  // empty cells
  for (const auto& [perm, c] : counts) {
    const double d = static_cast<double>(c) - expect;
    chi2 += d * d / expect;
  }
  return chi2;
}

}  // namespace braid
