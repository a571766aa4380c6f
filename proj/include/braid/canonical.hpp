#pragma once

// Braid words and the left-weighted canonical form Delta^u x_1 ... x_k.
// Every element of B_n is held in this unique form; arithmetic goes through
// re-normalization of factor lists.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "braid/permutation.hpp"

namespace braid {

// Raw input word: signed generator letters plus half-twist tokens.
struct BraidToken {
  enum class Kind { Generator, HalfTwist };
  Kind kind = Kind::Generator;
  int value = 1;  // Generator: signed index (+i / -i); HalfTwist: +1 / -1

  static BraidToken generator(int signed_index) { return {Kind::Generator, signed_index}; }
  static BraidToken half_twist(int sign) { return {Kind::HalfTwist, sign}; }
  bool operator==(const BraidToken&) const = default;
};

struct BraidWord {
  int n = 2;
  std::vector<BraidToken> letters;
};

// Accessing the head or tail of a pure Delta-power is meaningless; callers
// that care must check canonical_length() first.
class DeltaPowerError : public std::logic_error {
 public:
  explicit DeltaPowerError(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

// Core rewriting: bring a factor list into left-weighted shape, absorbing
// half twists into the exponent. Right-to-left sweeps of maximal local
// moves; each sweep carries weight leftward, fixpoint is the weighted form.
inline void normalize_factor_list(int n, long long& u,
                                  std::vector<PermutationBraid>& fac) {
  auto strip = [&] {
    size_t w = 0;
    for (size_t r = 0; r < fac.size(); ++r) {
      if (fac[r].is_half_twist()) {
        for (size_t j = 0; j < w; ++j) fac[j] = tau(fac[j]);
        ++u;
      } else if (!fac[r].is_identity()) {
        if (w != r) fac[w] = std::move(fac[r]);
        ++w;
      }
    }
    fac.resize(w);
  };
  strip();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = static_cast<int>(fac.size()) - 2; i >= 0; --i) {
      const PermutationBraid s = meet_left(right_complement(fac[i]), fac[i + 1]);
      if (!s.is_identity()) {
        fac[i] = fac[i].then(s);
        fac[i + 1] = s.inverse().then(fac[i + 1]);
        changed = true;
      }
    }
    if (changed) strip();
  }
}

}  // namespace detail

class CanonicalBraid {
 public:
  CanonicalBraid() : n_(2) {}

  explicit CanonicalBraid(int n, long long delta_power = 0)
      : n_(n), u_(delta_power) {
    if (n < 2) throw std::invalid_argument("braid index must be >= 2");
  }

  // Normalizes an arbitrary factor list (factors may be e or Delta).
  static CanonicalBraid normalized(int n, long long u,
                                   std::vector<PermutationBraid> factors) {
    detail::normalize_factor_list(n, u, factors);
    CanonicalBraid x(n, u);
    x.factors_ = std::move(factors);
    return x;
  }

  static CanonicalBraid identity(int n) { return CanonicalBraid(n, 0); }
  static CanonicalBraid delta_power(int n, long long u) { return CanonicalBraid(n, u); }

  static CanonicalBraid from_permutation(const PermutationBraid& p) {
    return normalized(p.n(), 0, {p});
  }

  static CanonicalBraid from_word(const BraidWord& w) {
    if (w.n < 2) throw std::invalid_argument("braid index must be >= 2");
    // Each letter is Delta^{c} * p; push the twists left with suffix parities.
    std::vector<std::pair<int, PermutationBraid>> items;
    items.reserve(w.letters.size());
    long long u = 0;
    for (const BraidToken& t : w.letters) {
      if (t.kind == BraidToken::Kind::HalfTwist) {
        items.emplace_back(t.value, PermutationBraid::identity(w.n));
        u += t.value;
      } else {
        const int i = t.value > 0 ? t.value : -t.value;
        if (i < 1 || i > w.n - 1) throw std::invalid_argument("generator index out of range");
        if (t.value > 0) {
          items.emplace_back(0, PermutationBraid::generator(w.n, i));
        } else {
          // sigma_i^{-1} = Delta^{-1} * (Delta sigma_i^{-1})
          items.emplace_back(-1, left_complement(PermutationBraid::generator(w.n, i)));
          u -= 1;
        }
      }
    }
    std::vector<PermutationBraid> fac;
    fac.reserve(items.size());
    long long suffix = 0;
    std::vector<PermutationBraid> rev;
    rev.reserve(items.size());
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      rev.push_back(tau(it->second, static_cast<int>(suffix & 1)));
      suffix += it->first;
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) fac.push_back(std::move(*it));
    return normalized(w.n, u, std::move(fac));
  }

  int n() const { return n_; }
  long long inf() const { return u_; }
  long long sup() const { return u_ + static_cast<long long>(factors_.size()); }
  int canonical_length() const { return static_cast<int>(factors_.size()); }
  const std::vector<PermutationBraid>& factors() const { return factors_; }
  bool is_identity() const { return u_ == 0 && factors_.empty(); }
  bool is_delta_power() const { return factors_.empty(); }

  const PermutationBraid& head() const {
    if (factors_.empty()) throw DeltaPowerError("head of a pure Delta power");
    return factors_.front();
  }
  const PermutationBraid& tail() const {
    if (factors_.empty()) throw DeltaPowerError("tail of a pure Delta power");
    return factors_.back();
  }

  bool operator==(const CanonicalBraid& o) const {
    return n_ == o.n_ && u_ == o.u_ && factors_ == o.factors_;
  }
  bool operator!=(const CanonicalBraid& o) const { return !(*this == o); }

  CanonicalBraid times(const CanonicalBraid& y) const {
    if (n_ != y.n_) throw std::invalid_argument("braid index mismatch");
    std::vector<PermutationBraid> fac;
    fac.reserve(factors_.size() + y.factors_.size());
    const int par = static_cast<int>(y.u_ & 1);
    for (const auto& f : factors_) fac.push_back(tau(f, par));
    for (const auto& f : y.factors_) fac.push_back(f);
    return normalized(n_, u_ + y.u_, std::move(fac));
  }

  CanonicalBraid times(const PermutationBraid& p) const {
    std::vector<PermutationBraid> fac = factors_;
    fac.push_back(p);
    return normalized(n_, u_, std::move(fac));
  }

  // x * p^{-1} = (x * p*) * Delta^{-1}
  CanonicalBraid times_inverse(const PermutationBraid& p) const {
    if (p.is_identity()) return *this;
    std::vector<PermutationBraid> fac;
    fac.reserve(factors_.size() + 1);
    for (const auto& f : factors_) fac.push_back(tau(f));
    if (!p.is_half_twist()) fac.push_back(tau(right_complement(p)));
    return normalized(n_, u_ - 1, std::move(fac));
  }

  CanonicalBraid times_delta_power(long long c) const {
    CanonicalBraid r(*this);
    r.u_ += c;
    if (c & 1)
      for (auto& f : r.factors_) f = tau(f);
    return r;
  }

  CanonicalBraid inverse() const {
    // (Delta^u x_1..x_k)^{-1} = Delta^{-(u+k)} tau^{u+k}(x_k*) tau^{u+k+1}(x_{k-1}*) ...
    const long long k = static_cast<long long>(factors_.size());
    std::vector<PermutationBraid> fac;
    fac.reserve(factors_.size());
    long long t = u_ + k;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it, ++t)
      fac.push_back(tau(right_complement(*it), static_cast<int>(t & 1)));
    return normalized(n_, -(u_ + k), std::move(fac));
  }

  // Applies the flip factorwise; equals Delta^{-power} x Delta^{power}.
  CanonicalBraid tau_conjugate(int power = 1) const {
    if ((power & 1) == 0) return *this;
    CanonicalBraid r(*this);
    for (auto& f : r.factors_) f = tau(f);
    return r;
  }

  CanonicalBraid pow(long long m) const {
    if (m == 0) return identity(n_);
    const CanonicalBraid base = m > 0 ? *this : inverse();
    long long e = m > 0 ? m : -m;
    CanonicalBraid acc = identity(n_);
    CanonicalBraid sq = base;
    while (e > 0) {
      if (e & 1) acc = acc.times(sq);
      e >>= 1;
      if (e > 0) sq = sq.times(sq);
    }
    return acc;
  }

  // Conjugate by a permutation braid: g^{-1} * x * g.
  CanonicalBraid conjugated_by(const PermutationBraid& g) const {
    return CanonicalBraid::identity(n_).times_inverse(g).times(*this).times(g);
  }

  CanonicalBraid conjugated_by(const CanonicalBraid& w) const {
    return w.inverse().times(*this).times(w);
  }

  // Structural check of the canonical-form invariants.
  bool is_valid() const {
    for (const auto& f : factors_) {
      if (f.n() != n_ || f.is_identity() || f.is_half_twist()) return false;
    }
    for (size_t i = 0; i + 1 < factors_.size(); ++i)
      if (!is_weighted_pair(factors_[i], factors_[i + 1])) return false;
    return true;
  }

  // Stable identity string; the element key used by summit-set machinery.
  std::string key() const {
    std::string s = std::to_string(u_);
    s += ':';
    for (const auto& f : factors_) {
      for (int i = 0; i < n_; ++i) {
        s += static_cast<char>('0' + f.image(i) / 10);
        s += static_cast<char>('0' + f.image(i) % 10);
      }
      s += ';';
    }
    return s;
  }

  BraidWord to_word() const {
    BraidWord w;
    w.n = n_;
    const int sign = u_ >= 0 ? 1 : -1;
    for (long long i = 0; i != u_; i += sign) w.letters.push_back(BraidToken::half_twist(sign));
    for (const auto& f : factors_)
      for (GeneratorIndex g : reduced_word(f)) w.letters.push_back(BraidToken::generator(g));
    return w;
  }

 private:
  int n_;
  long long u_ = 0;
  std::vector<PermutationBraid> factors_;
};

inline CanonicalBraid normalize(const BraidWord& w) { return CanonicalBraid::from_word(w); }

inline CanonicalBraid multiply(const CanonicalBraid& x, const CanonicalBraid& y) {
  return x.times(y);
}

inline CanonicalBraid invert(const CanonicalBraid& x) { return x.inverse(); }

inline bool equals(const CanonicalBraid& x, const CanonicalBraid& y) { return x == y; }

}  // namespace braid
