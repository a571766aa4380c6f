#pragma once

// Permutation braids of B_n and their lattice structure: the positive left
// divisors of the half twist Delta, in bijection with the symmetric group.
//
// Convention (fixed for the whole library): a braid maps the strand starting
// at position i to position image[i], and composition reads left to right, so
// (a*b).image[i] == b.image[a.image[i]]. With this convention Inv(a) is
// literally the set of strand pairs that cross in a.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace braid {

using GeneratorIndex = int;  // 1-based: sigma_i, 1 <= i <= n-1

class PermutationBraid {
 public:
  PermutationBraid() = default;

  static PermutationBraid identity(int n) {
    check_index(n);
    PermutationBraid p;
    p.img_.resize(n);
    std::iota(p.img_.begin(), p.img_.end(), 0);
    return p;
  }

  static PermutationBraid half_twist(int n) {
    check_index(n);
    PermutationBraid p;
    p.img_.resize(n);
    for (int i = 0; i < n; ++i) p.img_[i] = n - 1 - i;
    return p;
  }

  static PermutationBraid generator(int n, GeneratorIndex i) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("generator index out of range");
    PermutationBraid p = identity(n);
    std::swap(p.img_[i - 1], p.img_[i]);
    return p;
  }

  // One-line images, 1-based (the external text form, e.g. {3,1,2}).
  static PermutationBraid from_one_line(const std::vector<int>& oneline) {
    const int n = static_cast<int>(oneline.size());
    check_index(n);
    std::vector<char> seen(n, 0);
    PermutationBraid p;
    p.img_.resize(n);
    for (int i = 0; i < n; ++i) {
      const int v = oneline[i];
      if (v < 1 || v > n || seen[v - 1]) throw std::invalid_argument("not a permutation");
      seen[v - 1] = 1;
      p.img_[i] = v - 1;
    }
    return p;
  }

  std::vector<int> one_line() const {
    std::vector<int> out(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1;
    return out;
  }

  int n() const { return static_cast<int>(img_.size()); }
  int image(int i) const { return img_[i]; }  // 0-based
  const std::vector<int>& images() const { return img_; }

  bool operator==(const PermutationBraid& o) const { return img_ == o.img_; }
  bool operator!=(const PermutationBraid& o) const { return img_ != o.img_; }
  bool operator<(const PermutationBraid& o) const { return img_ < o.img_; }

  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  bool is_half_twist() const {
    for (int i = 0; i < n(); ++i)
      if (img_[i] != n() - 1 - i) return false;
    return true;
  }

  // this, then other.
  PermutationBraid then(const PermutationBraid& other) const {
    require_same_n(other);
    PermutationBraid r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = other.img_[img_[i]];
    return r;
  }

  PermutationBraid inverse() const {
    PermutationBraid r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<int>(i);
    return r;
  }

  // Word length |a| = number of inversions.
  int inversions() const {
    int count = 0;
    for (int i = 0; i < n(); ++i)
      for (int j = i + 1; j < n(); ++j)
        if (img_[i] > img_[j]) ++count;
    return count;
  }

  void require_same_n(const PermutationBraid& o) const {
    if (n() != o.n()) throw std::invalid_argument("braid index mismatch");
  }

 private:
  static void check_index(int n) {
    if (n < 2) throw std::invalid_argument("braid index must be >= 2");
  }
  std::vector<int> img_;
};

enum class Side { Left, Right };

// Product inside S_n: defined only when lengths add.
inline std::optional<PermutationBraid> compose_in_Sn(const PermutationBraid& a,
                                                     const PermutationBraid& b) {
  a.require_same_n(b);
  PermutationBraid c = a.then(b);
  if (c.inversions() != a.inversions() + b.inversions()) return std::nullopt;
  return c;
}

// S(a) = {i : sigma_i left-divides a}: the descent positions of the image word.
inline std::set<GeneratorIndex> starting_set(const PermutationBraid& a) {
  std::set<GeneratorIndex> s;
  for (int i = 0; i + 1 < a.n(); ++i)
    if (a.image(i) > a.image(i + 1)) s.insert(i + 1);
  return s;
}

// F(a) = {i : sigma_i right-divides a} = S(a^{-1}).
inline std::set<GeneratorIndex> finishing_set(const PermutationBraid& a) {
  return starting_set(a.inverse());
}

// a precedes b in the left subword order: b = a*z with additive lengths.
inline bool is_left_subword(const PermutationBraid& a, const PermutationBraid& b) {
  a.require_same_n(b);
  const PermutationBraid z = a.inverse().then(b);
  return a.inversions() + z.inversions() == b.inversions();
}

// a is a right subword of b: b = z*a with additive lengths.
inline bool is_right_subword(const PermutationBraid& a, const PermutationBraid& b) {
  a.require_same_n(b);
  const PermutationBraid z = b.then(a.inverse());
  return a.inversions() + z.inversions() == b.inversions();
}

namespace detail {

// Longest element of the parabolic generated by {sigma_i : i in d}: reverses
// each maximal run of consecutive marked positions. d is a 1-based bitmask.
inline PermutationBraid run_reversal(int n, const std::vector<char>& d) {
  PermutationBraid w = PermutationBraid::identity(n);
  std::vector<int> img = w.images();
  int i = 1;
  while (i <= n - 1) {
    if (d[i]) {
      int j = i;
      while (j <= n - 1 && d[j]) ++j;
      std::reverse(img.begin() + (i - 1), img.begin() + j);
      i = j;
    } else {
      ++i;
    }
  }
  return PermutationBraid::from_one_line([&] {
    std::vector<int> ol(n);
    for (int t = 0; t < n; ++t) ol[t] = img[t] + 1;
    return ol;
  }());
}

}  // namespace detail

// Left meet: the maximal common left subword. Greedy extraction of the full
// common starting chunk per round; each round strictly shortens both sides.
inline PermutationBraid meet_left(PermutationBraid a, PermutationBraid b) {
  a.require_same_n(b);
  const int n = a.n();
  PermutationBraid m = PermutationBraid::identity(n);
  std::vector<char> d(n, 0);
  for (;;) {
    bool any = false;
    for (int i = 0; i + 1 < n; ++i) {
      d[i + 1] = (a.image(i) > a.image(i + 1)) && (b.image(i) > b.image(i + 1));
      any |= d[i + 1];
    }
    if (!any) return m;
    const PermutationBraid w = detail::run_reversal(n, d);
    const PermutationBraid wi = w.inverse();
    m = m.then(w);
    a = wi.then(a);
    b = wi.then(b);
  }
}

inline PermutationBraid meet_right(const PermutationBraid& a, const PermutationBraid& b) {
  return meet_left(a.inverse(), b.inverse()).inverse();
}

// Right complement a* = a^{-1} Delta, so a * (a*) = Delta.
inline PermutationBraid right_complement(const PermutationBraid& a) {
  return a.inverse().then(PermutationBraid::half_twist(a.n()));
}

// Left complement *a = Delta a^{-1}, so (*a) * a = Delta.
inline PermutationBraid left_complement(const PermutationBraid& a) {
  return PermutationBraid::half_twist(a.n()).then(a.inverse());
}

// The flip involution sigma_i -> sigma_{n-i}; equals conjugation by Delta.
inline PermutationBraid tau(const PermutationBraid& a, int power = 1) {
  if ((power % 2) == 0) return a;
  const int n = a.n();
  std::vector<int> ol(n);
  for (int i = 0; i < n; ++i) ol[i] = n - a.image(n - 1 - i);
  return PermutationBraid::from_one_line(ol);
}

// Joins via complement duality: a v b = *(a* ^R b*), a vR b dually.
inline std::optional<PermutationBraid> join_left(const PermutationBraid& a,
                                                 const PermutationBraid& b) {
  return left_complement(meet_right(right_complement(a), right_complement(b)));
}

inline std::optional<PermutationBraid> join_right(const PermutationBraid& a,
                                                  const PermutationBraid& b) {
  return right_complement(meet_left(left_complement(a), left_complement(b)));
}

inline PermutationBraid meet(const PermutationBraid& a, const PermutationBraid& b,
                             Side side) {
  return side == Side::Left ? meet_left(a, b) : meet_right(a, b);
}

inline std::optional<PermutationBraid> join(const PermutationBraid& a,
                                            const PermutationBraid& b, Side side) {
  return side == Side::Left ? join_left(a, b) : join_right(a, b);
}

// a |- b (left-weighted pair): every starting generator of b finishes a.
// Equivalent to a* ^ b = e; the meet form is kept as a cross-check.
inline bool is_weighted_pair(const PermutationBraid& a, const PermutationBraid& b) {
  a.require_same_n(b);
  const PermutationBraid ai = a.inverse();
  for (int i = 0; i + 1 < b.n(); ++i) {
    if (b.image(i) > b.image(i + 1)) {
      // i+1 in S(b); need i+1 in F(a), i.e. a^{-1} has a descent at i.
      if (!(ai.image(i) > ai.image(i + 1))) return false;
    }
  }
  return true;
}

inline bool is_weighted_pair_by_meet(const PermutationBraid& a,
                                     const PermutationBraid& b) {
  return meet_left(right_complement(a), b).is_identity();
}

// Shortest positive word for a permutation braid (left-greedy peeling).
inline std::vector<GeneratorIndex> reduced_word(PermutationBraid a) {
  std::vector<GeneratorIndex> out;
  out.reserve(a.inversions());
  const int n = a.n();
  for (;;) {
    int i = -1;
    for (int t = 0; t + 1 < n; ++t)
      if (a.image(t) > a.image(t + 1)) { i = t; break; }
    if (i < 0) return out;
    out.push_back(i + 1);
    a = PermutationBraid::generator(n, i + 1).then(a);  // sigma_i^{-1} * a
  }
}

// All left subwords of bound (including e and bound itself). Exponential in
// |bound|; intended for candidate enumeration at small braid index.
inline std::vector<PermutationBraid> left_subwords(const PermutationBraid& bound) {
  const int n = bound.n();
  std::set<std::vector<int>> seen;
  std::vector<PermutationBraid> out;
  std::vector<std::pair<PermutationBraid, PermutationBraid>> stack;  // (prefix, rest)
  stack.emplace_back(PermutationBraid::identity(n), bound);
  while (!stack.empty()) {
    auto [z, rest] = stack.back();
    stack.pop_back();
    if (!seen.insert(z.images()).second) continue;
    out.push_back(z);
    for (int i = 0; i + 1 < n; ++i) {
      if (rest.image(i) > rest.image(i + 1)) {
        const PermutationBraid s = PermutationBraid::generator(n, i + 1);
        stack.emplace_back(z.then(s), s.then(rest));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Text form "[p1,p2,...,pn]".
inline std::string to_text(const PermutationBraid& a) {
  std::string s = "[";
  const auto ol = a.one_line();
  for (size_t i = 0; i < ol.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ol[i]);
  }
  s += ']';
  return s;
}

}  // namespace braid
