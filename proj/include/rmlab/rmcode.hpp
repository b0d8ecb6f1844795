#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "rmlab/combinatorics.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/gf2poly.hpp"

namespace rmlab {

inline constexpr std::uint64_t kMaxEnumDim = 26;  // 2^26 codewords enumeration cap

// RM(m, r): evaluation vectors of m-variate degree-<= r polynomials.
struct CodeParams {
  int m = 0;
  int r = 0;
  std::uint64_t dim = 0;  // binom(m, <= r), fits 64 bits for m <= 30

  CodeParams(int m_, int r_) : m(m_), r(r_) {
    if (m < 1 || m > kMaxEvalVars) throw precondition_error("CodeParams: m must be in [1, 30]");
    if (r < 0 || r > m) throw precondition_error("CodeParams: r must be in [0, m]");
    dim = binom_leq(m, r).convert_to<std::uint64_t>();
  }

  std::uint64_t block_length() const { return std::uint64_t(1) << m; }
  BigRational rate() const { return BigRational(BigInt(dim), BigInt(1) << m); }
  double rate_d() const { return static_cast<double>(dim) / static_cast<double>(block_length()); }
  BigRational gamma_exact() const { return BigRational(r, m); }
  double gamma() const { return static_cast<double>(r) / static_cast<double>(m); }
};

// Monomial masks of the code in ascending order; row i of the generator
// matrix is the evaluation vector of masks[i]. The message -> polynomial
// correspondence everywhere in the library uses this order.
inline std::vector<std::uint32_t> monomial_masks(const CodeParams& p) {
  std::vector<std::uint32_t> masks;
  masks.reserve(p.dim);
  for (std::uint32_t mk = 0; mk < (std::uint32_t(1) << p.m); ++mk)
    if (std::popcount(mk) <= p.r) masks.push_back(mk);
  return masks;
}

class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(const CodeParams& p) : params_(p), masks_(monomial_masks(p)) {
    rows_.reserve(masks_.size());
    const std::uint32_t all = (std::uint32_t(1) << p.m) - 1;
    for (std::uint32_t mk : masks_) {
      BitVec row(p.block_length());
      // Monomial mk evaluates to 1 at a iff mk subset a; walk the supersets.
      for (std::uint32_t a = mk;; a = (a + 1) | mk) {
        row.set(a, true);
        if (a == all) break;
      }
      rows_.push_back(std::move(row));
    }
  }

  const CodeParams& params() const { return params_; }
  const std::vector<std::uint32_t>& masks() const { return masks_; }
  const std::vector<BitVec>& rows() const { return rows_; }

  // Rank over F_2 by row elimination; equals dim for every RM code.
  std::uint64_t rank() const {
    std::vector<BitVec> work = rows_;
    std::uint64_t rk = 0;
    std::size_t ncols = params_.block_length();
    for (std::size_t col = 0; col < ncols && rk < work.size(); ++col) {
      std::size_t sel = rk;
      while (sel < work.size() && !work[sel].get(col)) ++sel;
      if (sel == work.size()) continue;
      std::swap(work[rk], work[sel]);
      for (std::size_t i = 0; i < work.size(); ++i)
        if (i != rk && work[i].get(col)) work[i] ^= work[rk];
      ++rk;
    }
    return rk;
  }

  EvalVec encode(const BitVec& message) const {
    if (message.size() != params_.dim) throw precondition_error("encode: message length must equal code dimension");
    EvalVec out(params_.m);
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (message.get(j)) out.bits() ^= rows_[j];
    return out;
  }

 private:
  CodeParams params_;
  std::vector<std::uint32_t> masks_;
  std::vector<BitVec> rows_;
};

inline EvalVec encode(const CodeParams& p, const BitVec& message) {
  return GeneratorMatrix(p).encode(message);
}

// Column a of the generator matrix as packed words (bit j = row j at a).
inline std::vector<std::uint64_t> generator_column(const std::vector<std::uint32_t>& masks, std::uint32_t a) {
  std::vector<std::uint64_t> col((masks.size() + 63) / 64, 0);
  for (std::size_t j = 0; j < masks.size(); ++j)
    if ((a & masks[j]) == masks[j]) col[j >> 6] |= 1ull << (j & 63);
  return col;
}

// Streams all 2^dim codewords exactly once in Gray-code message order, so
// each step XORs a single generator row. Single-consumer.
class CodewordEnumerator {
 public:
  explicit CodewordEnumerator(const CodeParams& p)
      : gen_(p), current_(p.m) {
    if (p.dim > kMaxEnumDim)
      throw precondition_error("CodewordEnumerator: dim must be <= 26 (2^26 codewords cap)");
    total_ = std::uint64_t(1) << p.dim;
  }

  // On success fills message (bit j = coefficient of generator row j) and a
  // view of the codeword. The EvalVec reference stays valid until next().
  bool next(std::uint64_t& message, const EvalVec** word) {
    if (index_ == total_) return false;
    if (index_ > 0) {
      std::uint64_t prev_gray = (index_ - 1) ^ ((index_ - 1) >> 1);
      std::uint64_t gray = index_ ^ (index_ >> 1);
      unsigned row = static_cast<unsigned>(std::countr_zero(prev_gray ^ gray));
      current_.bits() ^= gen_.rows()[row];
    }
    message = index_ ^ (index_ >> 1);
    *word = &current_;
    ++index_;
    return true;
  }

  const GeneratorMatrix& generator() const { return gen_; }

 private:
  GeneratorMatrix gen_;
  EvalVec current_;
  std::uint64_t total_ = 0;
  std::uint64_t index_ = 0;
};

struct MinDistanceResult {
  BigRational value;
  bool exhaustive;  // false when dim > 26 and the analytic value 2^-r is returned
};

// Relative minimum distance; exhaustive for dim <= 26, analytic 2^-r above.
inline MinDistanceResult min_distance(const CodeParams& p) {
  if (p.dim > kMaxEnumDim)
    return {BigRational(1, BigInt(1) << p.r), false};
  CodewordEnumerator en(p);
  std::uint64_t message;
  const EvalVec* word = nullptr;
  std::uint64_t best = std::uint64_t(1) << p.m;
  while (en.next(message, &word)) {
    if (message == 0) continue;
    std::uint64_t w = word->ones_count();
    if (w > 0 && w < best) best = w;
  }
  return {BigRational(BigInt(best), BigInt(1) << p.m), true};
}

}  // namespace rmlab
