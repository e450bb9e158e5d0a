#pragma once

// Intuitionistic validity by brute force over Kripke frames: every partial
// order on at most four worlds (up to isomorphism) and every valuation of
// two atoms by up-sets. Truth values for all valuations of one frame are
// packed in 256-bit words, slot 16*i + j meaning A -> upset i, B -> upset j.
//
// Used only to cross-check the sequent prover.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndk/expr.hpp"

namespace oracle {

struct Frame {
  int n = 0;
  std::array<std::uint8_t, 4> up{};  // up[w]: worlds v with w <= v
  std::vector<std::uint8_t> upsets;  // at most 16
};

using Bits = std::array<std::uint64_t, 4>;

inline std::vector<Frame> enumerate_frames() {
  std::vector<Frame> out;
  for (int n = 1; n <= 4; ++n) {
    std::set<std::vector<std::uint8_t>> seen;
    const int pairs = n * n;
    for (int mask = 0; mask < (1 << pairs); ++mask) {
      auto le = [&](int a, int b) { return a == b || ((mask >> (a * n + b)) & 1); };
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) {
        if ((mask >> (a * n + a)) & 1) ok = false;  // diagonal is implicit
        for (int b = 0; b < n && ok; ++b) {
          if (a != b && le(a, b) && le(b, a)) ok = false;
          for (int c = 0; c < n && ok; ++c)
            if (le(a, b) && le(b, c) && !le(a, c)) ok = false;
        }
      }
      if (!ok) continue;
      // canonical form: lexicographically least relation matrix over permutations
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::uint8_t> best;
      do {
        std::vector<std::uint8_t> m;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) m.push_back(le(perm[a], perm[b]));
        if (best.empty() || m < best) best = m;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!seen.insert(best).second) continue;
      Frame f;
      f.n = n;
      for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
          if (le(w, v)) f.up[w] |= static_cast<std::uint8_t>(1u << v);
      for (int s = 0; s < (1 << n); ++s) {
        bool closed = true;
        for (int w = 0; w < n; ++w)
          if (((s >> w) & 1) && (f.up[w] & ~s)) closed = false;
        if (closed) f.upsets.push_back(static_cast<std::uint8_t>(s));
      }
      out.push_back(f);
    }
  }
  return out;
}

// One table: a Bits word per (frame, world).
class Evaluator {
 public:
  using Table = std::vector<Bits>;

  Evaluator() : frames_(enumerate_frames()) {
    for (const auto& f : frames_) {
      offset_.push_back(slots_);
      slots_ += static_cast<std::size_t>(f.n);
    }
  }

  const std::vector<Frame>& frames() const { return frames_; }
  std::size_t slots() const { return slots_; }

  Table atom(int which) const {
    Table t(slots_);
    for (std::size_t fi = 0; fi < frames_.size(); ++fi) {
      const Frame& f = frames_[fi];
      const std::size_t m = f.upsets.size();
      for (int w = 0; w < f.n; ++w) {
        Bits b{};
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) {
            std::uint8_t set = f.upsets[which == 0 ? i : j];
            if ((set >> w) & 1) set_bit(b, 16 * i + j);
          }
        t[offset_[fi] + static_cast<std::size_t>(w)] = b;
      }
    }
    return t;
  }

  Table bottom() const { return Table(slots_, Bits{}); }

  Table conj(const Table& a, const Table& b) const { return zip(a, b, [](auto x, auto y) { return x & y; }); }
  Table disj(const Table& a, const Table& b) const { return zip(a, b, [](auto x, auto y) { return x | y; }); }

  Table imp(const Table& a, const Table& b) const {
    Table local = zip(a, b, [](auto x, auto y) { return ~x | y; });
    Table t(slots_);
    for (std::size_t fi = 0; fi < frames_.size(); ++fi) {
      const Frame& f = frames_[fi];
      for (int w = 0; w < f.n; ++w) {
        Bits acc;
        acc.fill(~0ull);
        for (int v = 0; v < f.n; ++v) {
          if (!((f.up[w] >> v) & 1)) continue;
          const Bits& x = local[offset_[fi] + static_cast<std::size_t>(v)];
          for (int k = 0; k < 4; ++k) acc[k] &= x[k];
        }
        t[offset_[fi] + static_cast<std::size_t>(w)] = acc;
      }
    }
    return t;
  }

  // True at every world under every valuation.
  bool valid(const Table& t) const {
    for (std::size_t fi = 0; fi < frames_.size(); ++fi) {
      const Frame& f = frames_[fi];
      Bits mask = valid_mask(f.upsets.size());
      for (int w = 0; w < f.n; ++w) {
        const Bits& b = t[offset_[fi] + static_cast<std::size_t>(w)];
        for (int k = 0; k < 4; ++k)
          if ((b[k] & mask[k]) != mask[k]) return false;
      }
    }
    return true;
  }

  // Atoms must be the second-order variables A and B.
  Table eval(const ndk::Expr& e) const {
    using ndk::Kind;
    switch (e.kind()) {
      case Kind::SecondOrder:
        if (e.name() == "A") return atom(0);
        if (e.name() == "B") return atom(1);
        throw std::runtime_error("oracle handles atoms A and B only");
      case Kind::Bottom: return bottom();
      case Kind::And: return conj(eval(e.lhs()), eval(e.rhs()));
      case Kind::Or: return disj(eval(e.lhs()), eval(e.rhs()));
      case Kind::Implies: return imp(eval(e.lhs()), eval(e.rhs()));
      case Kind::Iff: {
        Table a = eval(e.lhs()), b = eval(e.rhs());
        return conj(imp(a, b), imp(b, a));
      }
      default: throw std::runtime_error("oracle: not propositional");
    }
  }

  bool valid(const ndk::Expr& e) const { return valid(eval(e)); }

 private:
  static void set_bit(Bits& b, std::size_t i) { b[i / 64] |= 1ull << (i % 64); }

  static Bits valid_mask(std::size_t m) {
    Bits b{};
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) set_bit(b, 16 * i + j);
    return b;
  }

  template <typename Op>
  Table zip(const Table& a, const Table& b, Op op) const {
    Table t(slots_);
    for (std::size_t s = 0; s < slots_; ++s)
      for (int k = 0; k < 4; ++k) t[s][k] = op(a[s][k], b[s][k]);
    return t;
  }

  std::vector<Frame> frames_;
  std::vector<std::size_t> offset_;
  std::size_t slots_ = 0;
};

}  // namespace oracle
