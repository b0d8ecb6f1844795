#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmlab/combinatorics.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/gf2poly.hpp"
#include "rmlab/parallel.hpp"
#include "rmlab/rmcode.hpp"
#include "rmlab/rng.hpp"
#include "rmlab/weightdist.hpp"

namespace rmlab {

inline constexpr std::uint64_t kMaxMlDim = 22;      // exhaustive ML decoding cap
inline constexpr std::uint64_t kMaxOracleDim = 20;  // codeword-support scan cap

enum class ChannelKind { BEC, BSC };

struct ChannelSpec {
  ChannelKind kind;
  double p = 0.0;

  enum class DerivationMode { erasure, error };
  struct Derivation {
    double c;
    DerivationMode mode;
  };
  std::optional<Derivation> derivation;

  static ChannelSpec bec(double p) { return make(ChannelKind::BEC, p); }
  static ChannelSpec bsc(double p) { return make(ChannelKind::BSC, p); }

  // p from the capacity-gap parameter c: p = 1 - cR on the BEC and
  // H(p) = 1 - cR on the BSC (p <= 1/2 branch).
  static ChannelSpec from_c(ChannelKind kind, double c, double R) {
    ChannelSpec spec;
    spec.kind = kind;
    if (kind == ChannelKind::BEC) {
      double p = 1.0 - c * R;
      if (!(p >= 0.0 && p <= 1.0)) throw precondition_error("ChannelSpec: c*R must lie in [0,1] for the BEC");
      spec.p = p;
      spec.derivation = Derivation{c, DerivationMode::erasure};
    } else {
      double xi = xi_from_capacity_gap(c, R);
      spec.p = (1.0 - xi) / 2.0;
      spec.derivation = Derivation{c, DerivationMode::error};
    }
    return spec;
  }

 private:
  static ChannelSpec make(ChannelKind kind, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw precondition_error("ChannelSpec: p outside [0,1]");
    ChannelSpec s;
    s.kind = kind;
    s.p = p;
    return s;
  }
};

// Set S of erased evaluation points (bit = 1 means erased).
struct ErasurePattern {
  int m = 0;
  BitVec erased;

  explicit ErasurePattern(int m_) : m(m_), erased(std::size_t(1) << m_) {}
  std::uint64_t erased_count() const { return erased.count(); }
};

struct BecReceived {
  EvalVec values;  // bits at erased positions are meaningless
  ErasurePattern pattern;
};

inline BecReceived bec_transmit(const EvalVec& codeword, double p, Rng& rng) {
  ErasurePattern pat(codeword.vars());
  for (std::size_t i = 0; i < codeword.size(); ++i)
    if (rng.bernoulli(p)) pat.erased.set(i, true);
  return {codeword, std::move(pat)};
}

inline EvalVec bsc_transmit(const EvalVec& codeword, double p, Rng& rng) {
  EvalVec out = codeword;
  for (std::size_t i = 0; i < codeword.size(); ++i)
    if (rng.bernoulli(p)) out.bits().flip(i);
  return out;
}

namespace detail {

// Incremental GF(2) column basis. Columns are dim-bit vectors packed in
// words; rank grows as columns are inserted, with early exit once full.
class ColumnBasis {
 public:
  explicit ColumnBasis(std::uint64_t dim)
      : dim_(dim), words_((dim + 63) / 64) {}

  // Reduces col against the basis; inserts the remainder if nonzero.
  // Returns true when the basis grew.
  bool insert(std::vector<std::uint64_t> col) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      std::size_t piv = pivots_[i];
      if ((col[piv >> 6] >> (piv & 63)) & 1u)
        for (std::size_t w = 0; w < words_; ++w) col[w] ^= basis_[i][w];
    }
    std::size_t piv = find_pivot(col);
    if (piv == std::size_t(-1)) return false;
    basis_.push_back(std::move(col));
    pivots_.push_back(piv);
    return true;
  }

  std::uint64_t rank() const { return basis_.size(); }
  bool full() const { return rank() == dim_; }

 private:
  std::size_t find_pivot(const std::vector<std::uint64_t>& col) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (col[w]) return (w << 6) + static_cast<std::size_t>(std::countr_zero(col[w]));
    return std::size_t(-1);
  }

  std::uint64_t dim_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

// An erasure pattern is recoverable iff the generator columns at surviving
// positions span F_2^dim; equivalently no nonzero codeword is supported
// inside S.
inline bool bec_recoverable(const ErasurePattern& pattern, const CodeParams& params) {
  if (pattern.m != params.m) throw precondition_error("bec_recoverable: variable count mismatch");
  std::vector<std::uint32_t> masks = monomial_masks(params);
  detail::ColumnBasis basis(params.dim);
  for (std::uint32_t a = 0; a < (std::uint32_t(1) << params.m); ++a) {
    if (pattern.erased.get(a)) continue;
    basis.insert(generator_column(masks, a));
    if (basis.full()) return true;
  }
  return basis.full();
}

// Ground truth by the definitional scan: recoverable iff no nonzero codeword
// has support contained in the erased set.
inline bool bec_recoverable_oracle(const ErasurePattern& pattern, const CodeParams& params) {
  if (params.dim > kMaxOracleDim) throw precondition_error("bec_recoverable_oracle: dim must be <= 20");
  CodewordEnumerator en(params);
  std::uint64_t message;
  const EvalVec* word = nullptr;
  while (en.next(message, &word)) {
    if (message == 0) continue;
    if (word->bits().and_not(pattern.erased).none()) return false;  // supp(word) subset S
  }
  return true;
}

enum class BecDecodeStatus { decoded, ambiguous };

struct BecDecodeResult {
  BecDecodeStatus status;
  std::optional<EvalVec> codeword;
};

// Solves the linear system pinned by the surviving coordinates. Unique
// solution -> the codeword; underdetermined -> ambiguous; inconsistent ->
// decode_error (the received word is corrupted, not merely erased).
inline BecDecodeResult bec_decode(const BecReceived& received, const CodeParams& params) {
  std::vector<std::uint32_t> masks = monomial_masks(params);
  std::uint64_t dim = params.dim;
  std::size_t words = (dim + 63) / 64;
  // Row-reduced constraint rows: coefficient words + rhs bit, keyed by pivot.
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<bool> rhs;
  std::vector<std::size_t> pivots;
  for (std::uint32_t a = 0; a < (std::uint32_t(1) << params.m); ++a) {
    if (received.pattern.erased.get(a)) continue;
    std::vector<std::uint64_t> row = generator_column(masks, a);
    bool b = received.values.get(a);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t piv = pivots[i];
      if ((row[piv >> 6] >> (piv & 63)) & 1u) {
        for (std::size_t w = 0; w < words; ++w) row[w] ^= rows[i][w];
        b = b ^ rhs[i];
      }
    }
    std::size_t piv = std::size_t(-1);
    for (std::size_t w = 0; w < words && piv == std::size_t(-1); ++w)
      if (row[w]) piv = (w << 6) + static_cast<std::size_t>(std::countr_zero(row[w]));
    if (piv == std::size_t(-1)) {
      if (b) throw decode_error("bec_decode: received word conflicts with the code on non-erased positions");
      continue;
    }
    rows.push_back(std::move(row));
    rhs.push_back(b);
    pivots.push_back(piv);
  }
  if (rows.size() < dim) return {BecDecodeStatus::ambiguous, std::nullopt};
  // Back-substitute in reverse insertion order: row i was reduced against
  // rows 0..i-1, so it can only reference its own pivot and pivots of later
  // rows, which are already solved by the time we reach it.
  BitVec message(dim);
  for (std::size_t idx = rows.size(); idx-- > 0;) {
    bool value = rhs[idx];
    for (std::size_t j = 0; j < dim; ++j) {
      if (j == pivots[idx]) continue;
      if (((rows[idx][j >> 6] >> (j & 63)) & 1u) && message.get(j)) value = !value;
    }
    message.set(pivots[idx], value);
  }
  EvalVec cw = encode(params, message);
  return {BecDecodeStatus::decoded, std::move(cw)};
}

struct MlResult {
  EvalVec codeword;
  std::uint64_t message = 0;
  bool tie = false;
  std::uint64_t distance = 0;
};

// Exhaustive minimum-distance decoding (equals ML on the BSC). The tie flag
// is set when the minimum is attained by more than one codeword; ties are
// reported, never broken silently.
inline MlResult ml_decode(const EvalVec& received, const CodeParams& params) {
  if (params.dim > kMaxMlDim) throw precondition_error("ml_decode: dim must be <= 22");
  CodewordEnumerator en(params);
  std::uint64_t message;
  const EvalVec* word = nullptr;
  MlResult best{EvalVec(params.m), 0, false, std::uint64_t(1) << params.m};
  std::uint64_t best_count = 0;
  while (en.next(message, &word)) {
    std::uint64_t d = word->bits().count_xor(received.bits());
    if (d < best.distance) {
      best.distance = d;
      best.message = message;
      best.codeword = *word;
      best_count = 1;
    } else if (d == best.distance) {
      ++best_count;
    }
  }
  best.tie = best_count > 1;
  return best;
}

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double failure_rate = 0.0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;  // informational; never serialized into data sections
};

// Monte Carlo decoding-failure probability. Failure means: BEC pattern not
// recoverable (or decode mismatch when a random codeword is transmitted);
// BSC maximum-likelihood result differs from the transmitted word or ties.
// The transmitted codeword defaults to zero; failure probability is
// codeword-independent for linear codes on both channels, and the
// random-codeword mode exists to cross-check exactly that.
inline TrialStats estimate_lambda(const CodeParams& params, const ChannelSpec& channel,
                                  std::uint64_t trials, std::uint64_t seed, int threads = 1,
                                  bool random_codeword = false) {
  // Validate decoder caps before any worker starts; exceptions must not
  // escape on a worker thread.
  if (channel.kind == ChannelKind::BSC && params.dim > kMaxMlDim)
    throw precondition_error("estimate_lambda: BSC decoding requires dim <= 22 (ml_decode cap)");
  auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::uint64_t> failures{0};
  std::optional<GeneratorMatrix> gen;
  if (random_codeword) gen.emplace(params);
  parallel_ranges(trials, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t local = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      Rng rng(derive_seed(seed, i));
      EvalVec cw(params.m);
      if (random_codeword) {
        BitVec msg(params.dim);
        for (std::size_t j = 0; j < params.dim; ++j) msg.set(j, rng.fair_bit());
        cw = gen->encode(msg);
      }
      if (channel.kind == ChannelKind::BEC) {
        BecReceived rec = bec_transmit(cw, channel.p, rng);
        if (!random_codeword) {
          if (!bec_recoverable(rec.pattern, params)) ++local;
        } else {
          BecDecodeResult dec = bec_decode(rec, params);
          if (dec.status != BecDecodeStatus::decoded || *dec.codeword != cw) ++local;
        }
      } else {
        EvalVec rec = bsc_transmit(cw, channel.p, rng);
        MlResult ml = ml_decode(rec, params);
        if (ml.tie || ml.codeword != cw) ++local;
      }
    }
    failures += local;
  });
  auto t1 = std::chrono::steady_clock::now();
  TrialStats st;
  st.trials = trials;
  st.failures = failures.load();
  st.failure_rate = trials ? static_cast<double>(st.failures) / static_cast<double>(trials) : 0.0;
  st.seed = seed;
  st.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return st;
}

// Pre-asymptotic BEC union bound at exactly s surviving coordinates:
//   sum over nonzero codewords of (1 - wt(f))^s,
// evaluated exactly from the weight enumerator.
inline double union_bound_bec(const WeightProfile& profile, std::uint64_t s) {
  BigInt n = BigInt(1) << profile.params.m;
  BigInt num = 0;
  for (const auto& [w, c] : profile.counts) {
    if (w == 0) continue;  // nonzero codewords only
    num += c * pow(n - w, static_cast<unsigned>(s));
  }
  BigRational q(num, pow(n, static_cast<unsigned>(s)));
  return to_double(q);
}

inline double union_bound_bec(const CodeParams& params, std::uint64_t s) {
  return union_bound_bec(brute_force_profile(params), s);
}

// Exact evaluation of the BSC bad-pair bound at error weight w_tilde = p~ 2^m:
//   sum over nonzero codewords of 2^(beta 2^m) binom(2^m(1-beta), <= 2^m(p~ - beta/2))
//   divided by binom(2^m, p~ 2^m);
// terms with a negative upper index vanish. Half-integer upper indices round
// down (the pair count forces at least ceil(w/2) ones on the support).
inline double union_bound_bsc(const WeightProfile& profile, std::uint64_t w_tilde) {
  long long n = static_cast<long long>(profile.params.block_length());
  if (w_tilde > static_cast<std::uint64_t>(n)) throw precondition_error("union_bound_bsc: w_tilde exceeds 2^m");
  BigInt denom = binom(n, static_cast<long long>(w_tilde));
  BigInt num = 0;
  for (const auto& [w, c] : profile.counts) {
    if (w == 0) continue;
    long long upper = static_cast<long long>(w_tilde) - static_cast<long long>((w + 1) / 2);
    if (upper < 0) continue;
    num += c * (BigInt(1) << w) * binom_leq(n - static_cast<long long>(w), upper);
  }
  return to_double(BigRational(num, denom));
}

inline double union_bound_bsc(const CodeParams& params, std::uint64_t w_tilde) {
  return union_bound_bsc(brute_force_profile(params), w_tilde);
}

// ---------------------------------------------------------------------------
// Capacity-threshold constraint checkers.
//
// Each channel's capacity proof reduces to three families of scalar
// inequalities in gamma. The checker evaluates families 1 and 2 for indices
// up to scan_limit and certifies the geometric tails analytically: beyond
// the scan, family-1 right-hand sides are compared against 2^-(l+1) (a lower
// bound on the left side) and family-2 decay ratios are compared against the
// exact left-side ratio (1-gamma)^3.
//
// Margins are relative: margin = 1 - rhs/lhs, positive iff the inequality
// holds strictly. ok requires every scanned margin positive and both tails
// certified.
// ---------------------------------------------------------------------------

struct ConstraintEntry {
  int family = 0;
  int index = 0;  // ell or k; 0 for family 3
  double margin = 0.0;
};

struct ConstraintReport {
  bool ok = false;
  double worst_margin = 0.0;
  ConstraintEntry worst;
  bool tail_certified = false;
  std::vector<ConstraintEntry> family_minima;  // worst entry per family
};

namespace detail {

inline double log2_add(double a, double b) {  // log2(2^a + 2^b)
  if (a < b) std::swap(a, b);
  if (b == -INFINITY) return a;
  return a + std::log2(1.0 + std::exp2(b - a));
}

// log2 of log2(1/(1-2^-(l+1))), stable for large l.
inline double log2_bec_fam1_lhs(int ell) {
  double x = std::exp2(-(ell + 1.0));
  if (x > 1e-8) return std::log2(-std::log1p(-x) / 0.6931471805599453);
  return -(ell + 1.0) - std::log2(0.6931471805599453);
}

// log2 of 2^-(l+1)/(1-2^-(l+1)).
inline double log2_bsc_fam1_lhs(int ell) {
  double x = std::exp2(-(ell + 1.0));
  return -(ell + 1.0) - std::log1p(-x) / 0.6931471805599453;
}

// log2 of log2(1+2^(1-k)).
inline double log2_bec_fam2_b(int k) {
  double y = std::exp2(1.0 - k);
  if (y > 1e-8) return std::log2(std::log1p(y) / 0.6931471805599453);
  return (1.0 - k) - std::log2(0.6931471805599453);
}

// log2 of 2^(2-k)/(1+2^(1-k)).
inline double log2_bsc_fam2_b(int k) {
  double y = std::exp2(1.0 - k);
  return (2.0 - k) - std::log1p(y) / 0.6931471805599453;
}

}  // namespace detail

namespace detail {

inline ConstraintReport check_constraints(double gamma, int scan_limit, bool bsc) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw precondition_error("constraint check: gamma must be in (0, 1/2)");
  double c = c_gamma(gamma), d = d_gamma(gamma);
  double l2g = std::log2(gamma);
  ConstraintReport rep;
  rep.worst_margin = INFINITY;
  auto consider = [&](int family, int index, double margin) {
    ConstraintEntry e{family, index, margin};
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst = e;
    }
    while (rep.family_minima.size() < static_cast<std::size_t>(family))
      rep.family_minima.push_back(ConstraintEntry{static_cast<int>(rep.family_minima.size()) + 1, 0, INFINITY});
    if (margin < rep.family_minima[family - 1].margin) rep.family_minima[family - 1] = e;
  };

  // Family 1 (ell >= 3): lhs >= 17 (c ell + d) gamma^(ell-1).
  for (int ell = 3; ell <= scan_limit; ++ell) {
    double l2lhs = bsc ? log2_bsc_fam1_lhs(ell) : log2_bec_fam1_lhs(ell);
    double l2rhs = std::log2(17.0 * (c * ell + d)) + (ell - 1.0) * l2g;
    consider(1, ell, 1.0 - std::exp2(l2rhs - l2lhs));
  }
  // Family 2 (k >= 2): (1-gamma)^(3k+3) >= 17 (c k + c + d) gamma^k + b(k).
  double l2one_minus_g = std::log2(1.0 - gamma);
  for (int k = 2; k <= scan_limit; ++k) {
    double l2lhs = (3.0 * k + 3.0) * l2one_minus_g;
    double l2a = std::log2(17.0 * (c * k + c + d)) + k * l2g;
    double l2b = bsc ? log2_bsc_fam2_b(k) : log2_bec_fam2_b(k);
    consider(2, k, 1.0 - std::exp2(log2_add(l2a, l2b) - l2lhs));
  }
  // Family 3: (1-gamma)^9 >= 17 (5c + d) gamma^4 + const.
  {
    double lhs = std::pow(1.0 - gamma, 9.0);
    double rhs = 17.0 * (5.0 * c + d) * std::pow(gamma, 4.0) + (bsc ? 6.0 / 7.0 : std::log2(7.0 / 4.0));
    consider(3, 0, 1.0 - rhs / lhs);
  }

  // Tail certificates.
  bool tail1, tail2;
  {
    // Family 1: lhs(ell) >= 2^-(ell+1); let U(ell) = rhs(ell) / 2^-(ell+1).
    // U shrinks geometrically once 2 gamma (1 + 1/ell) < 1, so U(L) <= 1
    // pins every later index.
    int L = scan_limit;
    double l2U = std::log2(17.0 * (c * L + d)) + (L - 1.0) * l2g + (L + 1.0);
    double ratio = 2.0 * gamma * (1.0 + 1.0 / L);
    tail1 = (ratio < 1.0) && (l2U <= 0.0);
    // Family 2: both rhs terms decay at least as fast as
    // max(gamma (1+1/L), (1/2)(1+2^(1-L))) per step; the lhs decays by
    // exactly (1-gamma)^3. rhs(L) <= lhs(L) plus a strictly smaller rhs
    // ratio extends the inequality to every k > L.
    double rhs_ratio = std::max(gamma * (1.0 + 1.0 / L), 0.5 * (1.0 + std::exp2(1.0 - L)));
    double lhs_ratio = std::pow(1.0 - gamma, 3.0);
    double l2lhsL = (3.0 * L + 3.0) * l2one_minus_g;
    double l2rhsL = log2_add(std::log2(17.0 * (c * L + c + d)) + L * l2g,
                             bsc ? log2_bsc_fam2_b(L) : log2_bec_fam2_b(L));
    tail2 = (rhs_ratio < lhs_ratio) && (l2rhsL <= l2lhsL);
  }
  rep.tail_certified = tail1 && tail2;
  rep.ok = rep.worst_margin > 0.0 && rep.tail_certified;
  return rep;
}

}  // namespace detail

inline ConstraintReport check_bec_constraints(double gamma, int scan_limit = 500) {
  return detail::check_constraints(gamma, scan_limit, /*bsc=*/false);
}

inline ConstraintReport check_bsc_constraints(double gamma, int scan_limit = 500) {
  return detail::check_constraints(gamma, scan_limit, /*bsc=*/true);
}

struct SweepRow {
  double c = 0.0;
  double p = 0.0;
  TrialStats stats;
};

// One estimate_lambda row per capacity-gap value c; p derives from the
// channel rule. Row i uses seed derive_seed(master_seed, i).
inline std::vector<SweepRow> capacity_sweep(const CodeParams& params, ChannelKind kind,
                                            const std::vector<double>& c_grid, std::uint64_t trials,
                                            std::uint64_t master_seed, int threads = 1) {
  std::vector<SweepRow> rows;
  rows.reserve(c_grid.size());
  double R = params.rate_d();
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    ChannelSpec spec = ChannelSpec::from_c(kind, c_grid[i], R);
    std::uint64_t row_seed = derive_seed(master_seed, i);
    rows.push_back({c_grid[i], spec.p, estimate_lambda(params, spec, trials, row_seed, threads)});
  }
  return rows;
}

}  // namespace rmlab
