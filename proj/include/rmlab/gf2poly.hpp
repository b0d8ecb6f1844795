#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmlab/bitvec.hpp"
#include "rmlab/combinatorics.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/rng.hpp"

namespace rmlab {

// Point/mask encoding, used consistently by every module:
//   * a point a in F_2^m is the integer with bit i-1 = value of x_i;
//   * a monomial mask has bit i-1 set iff x_i appears (mask 0 = constant 1);
//   * an evaluation vector is indexed by the point encoding.
// Evaluation vectors are capped at m <= 30 (2^30 bits = 128 MB).

inline constexpr int kMaxEvalVars = 30;
inline constexpr int kMaxAnfVars = 32;

// Length-2^m evaluation table of a Boolean function.
class EvalVec {
 public:
  explicit EvalVec(int m) : m_(check_m(m)), bits_(std::size_t(1) << m) {}
  EvalVec(int m, BitVec bits) : m_(check_m(m)), bits_(std::move(bits)) {
    if (bits_.size() != (std::size_t(1) << m_)) throw precondition_error("EvalVec: bit vector length must be 2^m");
  }

  int vars() const { return m_; }
  std::size_t size() const { return bits_.size(); }
  const BitVec& bits() const { return bits_; }
  BitVec& bits() { return bits_; }

  bool get(std::uint32_t a) const { return bits_.get(a); }
  void set(std::uint32_t a, bool v) { bits_.set(a, v); }

  std::size_t ones_count() const { return bits_.count(); }

  bool operator==(const EvalVec& o) const { return m_ == o.m_ && bits_ == o.bits_; }
  bool operator!=(const EvalVec& o) const { return !(*this == o); }

  EvalVec& operator^=(const EvalVec& o) {
    bits_ ^= o.bits_;
    return *this;
  }
  friend EvalVec operator^(EvalVec a, const EvalVec& b) { return a ^= b; }

  std::string to_hex() const { return bits_.to_hex(); }
  static EvalVec from_hex(int m, const std::string& hex) {
    return EvalVec(m, BitVec::from_hex(std::size_t(1) << check_m(m), hex));
  }

 private:
  static int check_m(int m) {
    if (m < 1 || m > kMaxEvalVars) throw precondition_error("EvalVec: m must be in [1, 30]");
    return m;
  }
  int m_;
  BitVec bits_;
};

// wt(f) = Pr_x[f(x) = 1], exact with denominator 2^m.
inline BigRational weight(const EvalVec& v) {
  return BigRational(BigInt(v.ones_count()), BigInt(1) << v.vars());
}

// bias(f) = E_x[(-1)^f(x)] = 1 - 2 wt(f).
inline BigRational bias(const EvalVec& v) {
  return 1 - 2 * weight(v);
}

// Degree <= r multilinear polynomial as a sorted set of monomial masks.
// The zero polynomial is the empty set; its degree is reported as nullopt
// rather than a numeric sentinel.
class PolyANF {
 public:
  explicit PolyANF(int m) : m_(check_m(m)) {}
  PolyANF(int m, std::vector<std::uint32_t> masks) : m_(check_m(m)), masks_(std::move(masks)) {
    normalize();
  }

  static PolyANF zero(int m) { return PolyANF(m); }
  static PolyANF constant_one(int m) { return PolyANF(m, {0}); }
  static PolyANF monomial(int m, std::uint32_t mask) { return PolyANF(m, {mask}); }

  int vars() const { return m_; }
  const std::vector<std::uint32_t>& masks() const { return masks_; }
  bool is_zero() const { return masks_.empty(); }

  std::optional<int> degree() const {
    if (masks_.empty()) return std::nullopt;
    int d = 0;
    for (std::uint32_t mk : masks_) d = std::max(d, std::popcount(mk));
    return d;
  }

  // Addition over F_2 = symmetric difference of coefficient sets.
  PolyANF operator+(const PolyANF& o) const {
    if (m_ != o.m_) throw precondition_error("PolyANF: mixed variable counts");
    std::vector<std::uint32_t> out;
    out.reserve(masks_.size() + o.masks_.size());
    std::set_symmetric_difference(masks_.begin(), masks_.end(), o.masks_.begin(), o.masks_.end(),
                                  std::back_inserter(out));
    return PolyANF(m_, std::move(out), already_sorted_tag{});
  }

  bool operator==(const PolyANF& o) const { return m_ == o.m_ && masks_ == o.masks_; }
  bool operator!=(const PolyANF& o) const { return !(*this == o); }

  // Sorted comma-separated hex mask list, e.g. "0,3,c". Empty string is the
  // zero polynomial.
  std::string to_hex_list() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if (i) os << ',';
      os << std::hex << masks_[i];
    }
    return os.str();
  }

  static PolyANF from_hex_list(int m, const std::string& text) {
    std::vector<std::uint32_t> masks;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) continue;
      masks.push_back(static_cast<std::uint32_t>(std::stoul(tok, nullptr, 16)));
    }
    return PolyANF(m, std::move(masks));
  }

 private:
  struct already_sorted_tag {};
  PolyANF(int m, std::vector<std::uint32_t> masks, already_sorted_tag) : m_(m), masks_(std::move(masks)) {}

  static int check_m(int m) {
    if (m < 1 || m > kMaxAnfVars) throw precondition_error("PolyANF: m must be in [1, 32]");
    return m;
  }

  void normalize() {
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
    if (!masks_.empty() && m_ < 32 && masks_.back() >= (std::uint32_t(1) << m_))
      throw precondition_error("PolyANF: mask exceeds 2^m");
  }

  int m_;
  std::vector<std::uint32_t> masks_;
};

namespace detail {

// In-place subset-sum (zeta) butterfly over F_2; self-inverse, so it is both
// the ANF -> evaluation map and its inverse. m (2^m) bit operations done
// word-parallel: the first six levels stay inside a word.
inline void zeta_transform(BitVec& v) {
  std::size_t n = v.size();
  std::uint64_t* w = v.data();
  std::size_t nw = v.word_count();
  static constexpr std::uint64_t kLow[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
      0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
  };
  for (int lvl = 0; lvl < 6 && (std::size_t(1) << lvl) < n; ++lvl)
    for (std::size_t i = 0; i < nw; ++i)
      w[i] ^= (w[i] & kLow[lvl]) << (1 << lvl);
  for (std::size_t step = 1; step * 64 < n; step <<= 1)
    for (std::size_t i = 0; i < nw; ++i)
      if (i & step) w[i] ^= w[i ^ step];
}

}  // namespace detail

// Evaluation table of f: bits[a] = f(a).
inline EvalVec anf_to_eval(const PolyANF& f) {
  if (f.vars() > kMaxEvalVars) throw precondition_error("anf_to_eval: m must be <= 30 for evaluation tables");
  EvalVec v(f.vars());
  for (std::uint32_t mk : f.masks()) v.bits().flip(mk);
  detail::zeta_transform(v.bits());
  return v;
}

// Inverse transform; anf_to_eval(eval_to_anf(v)) == v.
inline PolyANF eval_to_anf(const EvalVec& v) {
  BitVec coeffs = v.bits();
  detail::zeta_transform(coeffs);
  std::vector<std::uint32_t> masks;
  for (std::size_t a = 0; a < coeffs.size(); ++a)
    if (coeffs.get(a)) masks.push_back(static_cast<std::uint32_t>(a));
  return PolyANF(v.vars(), std::move(masks));
}

// Uniformly random polynomial of degree <= r: every monomial of degree <= r
// gets an independent fair coin. Masks are visited in ascending order, one
// buffered coin flip per eligible mask, so the draw is reproducible.
inline PolyANF random_poly(int m, int r, Rng& rng) {
  if (r > m) throw precondition_error("random_poly: r must be <= m");
  if (r < 0) throw precondition_error("random_poly: r must be >= 0");
  std::vector<std::uint32_t> masks;
  if (m < kMaxAnfVars && r >= m / 2) {
    // Dense regime: scan all 2^m masks.
    for (std::uint32_t mk = 0; mk < (std::uint32_t(1) << m); ++mk)
      if (std::popcount(mk) <= r && rng.fair_bit()) masks.push_back(mk);
  } else {
    // Sparse regime: walk combinations degree by degree (colex next-combination).
    if (rng.fair_bit()) masks.push_back(0);
    for (int d = 1; d <= r; ++d) {
      std::uint32_t mk = (d == 32) ? ~0u : ((std::uint32_t(1) << d) - 1);
      std::uint32_t last = mk << (m - d);
      for (;;) {
        if (rng.fair_bit()) masks.push_back(mk);
        if (mk == last) break;
        std::uint32_t c = mk & -mk;
        std::uint32_t rr = mk + c;
        mk = (((rr ^ mk) >> 2) / c) | rr;
      }
    }
    std::sort(masks.begin(), masks.end());
  }
  return PolyANF(m, std::move(masks));
}

}  // namespace rmlab
