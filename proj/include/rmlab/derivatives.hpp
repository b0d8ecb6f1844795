#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rmlab/errors.hpp"
#include "rmlab/gf2poly.hpp"
#include "rmlab/rng.hpp"

namespace rmlab {

inline constexpr int kMaxSubsetDirections = 20;  // 2^t derivative blowup cap

// Ordered tuple of directions in F_2^m; the derivative along a linearly
// dependent tuple is identically zero and otherwise depends only on the span.
struct DirectionTuple {
  int m = 0;
  std::vector<std::uint32_t> vectors;

  DirectionTuple() = default;
  DirectionTuple(int m_, std::vector<std::uint32_t> vs) : m(m_), vectors(std::move(vs)) {
    for (std::uint32_t y : vectors)
      if (m < 32 && y >= (std::uint32_t(1) << m)) throw precondition_error("DirectionTuple: vector exceeds 2^m");
  }

  int order() const { return static_cast<int>(vectors.size()); }

  int rank() const {
    std::vector<std::uint32_t> basis;
    for (std::uint32_t y : vectors) {
      for (std::uint32_t b : basis) y = std::min(y, y ^ b);
      if (y) basis.push_back(y);
    }
    return static_cast<int>(basis.size());
  }

  bool dependent() const { return rank() < order(); }
};

// Delta_y f(x) = f(x + y) + f(x).
inline EvalVec derivative(const EvalVec& f, std::uint32_t y) {
  if (y >= (std::uint32_t(1) << f.vars())) throw precondition_error("derivative: y exceeds 2^m");
  EvalVec out(f.vars(), f.bits().permute_xor(y) ^ f.bits());
  return out;
}

// Iterated derivative along Y = (y_1, ..., y_k):
// Delta_Y f = Delta_{y_1}(Delta_{y_2}(... Delta_{y_k} f)).
inline EvalVec derivative_multi(const EvalVec& f, const DirectionTuple& Y) {
  if (Y.m != f.vars()) throw precondition_error("derivative_multi: variable count mismatch");
  EvalVec cur = f;
  for (auto it = Y.vectors.rbegin(); it != Y.vectors.rend(); ++it) cur = derivative(cur, *it);
  return cur;
}

// First-order derivatives along every nonempty subset sum of ys. Key = the
// subset as a bitmask over [t]. Satisfies the telescoping identity
//   Delta_{sum_{i in I} y_i} f(x) = sum_l Delta_{y_{j_l}} f(x + y_{j_1} + ... + y_{j_{l-1}}).
inline std::map<std::uint32_t, EvalVec> subset_sum_derivatives(const EvalVec& f,
                                                               const std::vector<std::uint32_t>& ys) {
  int t = static_cast<int>(ys.size());
  if (t > kMaxSubsetDirections) throw precondition_error("subset_sum_derivatives: t must be <= 20");
  std::map<std::uint32_t, EvalVec> out;
  for (std::uint32_t subset = 1; subset < (std::uint32_t(1) << t); ++subset) {
    std::uint32_t dir = 0;
    for (int i = 0; i < t; ++i)
      if (subset & (std::uint32_t(1) << i)) dir ^= ys[i];
    out.emplace(subset, derivative(f, dir));
  }
  return out;
}

enum class ApproxKind { low_weight_maj, low_bias_maj, weighted_sign };

struct Approximator {
  ApproxKind kind;
  EvalVec base_f;
  std::vector<DirectionTuple> directions;
  int t = 0;
  double delta_target = 0.0;
  double epsilon_target = 0.0;       // low-bias kind only
  std::vector<double> alphas;        // weighted-sign kind only
};

struct ApproxResult {
  Approximator approximator;
  BigRational disagreement;          // exact Pr_x[f(x) != g(x)] of the best try
  int retries_used = 0;              // number of direction draws performed
  std::vector<double> per_retry;     // disagreement of every draw, in order
};

namespace detail {

// Majority with ties (even t only) broken toward 1: out = [2 ones >= t].
inline EvalVec majority_from_counts(int m, const std::vector<std::uint32_t>& counts, int t) {
  EvalVec out(m);
  for (std::size_t x = 0; x < counts.size(); ++x)
    if (2ull * counts[x] >= static_cast<unsigned>(t)) out.set(static_cast<std::uint32_t>(x), true);
  return out;
}

inline void add_counts(std::vector<std::uint32_t>& counts, const EvalVec& v) {
  for (std::size_t x = 0; x < counts.size(); ++x) counts[x] += v.get(static_cast<std::uint32_t>(x)) ? 1 : 0;
}

// Ceiling that tolerates the 1 ulp noise of log2 on exact dyadic inputs.
inline int ceil_log_expr(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

}  // namespace detail

// Net element of A_{k-1,t} for wt(f) <= 2^-k: samples t = ceil(17 log2(1/delta))
// direction tuples in (F_2^m)^(k-1) i.i.d. uniform and takes the pointwise
// majority of the order-(k-1) derivatives. The lemma guarantees existence of
// good directions; random draws achieve <= delta with positive probability,
// so the operation retries up to max_retries and reports the best draw.
inline ApproxResult low_weight_approximator(const EvalVec& f, int k, double delta, Rng& rng,
                                            int max_retries = 20) {
  if (k < 2) throw precondition_error("low_weight_approximator: k must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw precondition_error("low_weight_approximator: delta must be in (0,1)");
  int m = f.vars();
  if (weight(f) > BigRational(1, BigInt(1) << k))
    throw precondition_error("low_weight_approximator: weight(f) exceeds 2^-k");
  int t = detail::ceil_log_expr(17.0 * std::log2(1.0 / delta));
  std::size_t n = f.size();
  BigRational delta_q(delta);  // doubles convert exactly

  ApproxResult best{Approximator{ApproxKind::low_weight_maj, f, {}, t, delta, 0.0, {}},
                    BigRational(2), 0, {}};
  BigRational best_dis = 2;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<DirectionTuple> dirs;
    dirs.reserve(t);
    std::vector<std::uint32_t> counts(n, 0);
    for (int i = 0; i < t; ++i) {
      std::vector<std::uint32_t> ys(k - 1);
      for (auto& y : ys) y = static_cast<std::uint32_t>(rng.bits(m));
      DirectionTuple Y(m, std::move(ys));
      detail::add_counts(counts, derivative_multi(f, Y));
      dirs.push_back(std::move(Y));
    }
    EvalVec maj = detail::majority_from_counts(m, counts, t);
    BigRational dis(BigInt(maj.bits().count_xor(f.bits())), BigInt(1) << m);
    best.per_retry.push_back(to_double(dis));
    best.retries_used = attempt + 1;
    if (dis < best_dis) {
      best_dis = dis;
      best.approximator.directions = std::move(dirs);
    }
    if (best_dis <= delta_q) break;
  }
  best.disagreement = best_dis;
  return best;
}

// Net element of B_t for bias(f) >= epsilon: t = ceil(2 log2(1/eps) + log2(1/delta) + 1)
// uniform directions y_1..y_t, majority over all 2^t - 1 subset-sum
// derivatives. Retry semantics as above.
inline ApproxResult low_bias_approximator(const EvalVec& f, double epsilon, double delta, Rng& rng,
                                          int max_retries = 20) {
  if (!(epsilon > 0.0)) throw precondition_error("low_bias_approximator: epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw precondition_error("low_bias_approximator: delta must be in (0,1)");
  int m = f.vars();
  if (bias(f) < BigRational(epsilon))
    throw precondition_error("low_bias_approximator: bias(f) below epsilon");
  int t = detail::ceil_log_expr(2.0 * std::log2(1.0 / epsilon) + std::log2(1.0 / delta) + 1.0);
  if (t > kMaxSubsetDirections) throw precondition_error("low_bias_approximator: t must be <= 20 (2^t derivative blowup)");
  std::size_t n = f.size();
  int nsub = (1 << t) - 1;
  BigRational delta_q(delta);

  ApproxResult best{Approximator{ApproxKind::low_bias_maj, f, {}, t, delta, epsilon, {}},
                    BigRational(2), 0, {}};
  BigRational best_dis = 2;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<std::uint32_t> ys(t);
    for (auto& y : ys) y = static_cast<std::uint32_t>(rng.bits(m));
    std::vector<std::uint32_t> counts(n, 0);
    for (std::uint32_t subset = 1; subset <= static_cast<std::uint32_t>(nsub); ++subset) {
      std::uint32_t dir = 0;
      for (int i = 0; i < t; ++i)
        if (subset & (std::uint32_t(1) << i)) dir ^= ys[i];
      detail::add_counts(counts, derivative(f, dir));
    }
    EvalVec maj = detail::majority_from_counts(m, counts, nsub);
    BigRational dis(BigInt(maj.bits().count_xor(f.bits())), BigInt(1) << m);
    best.per_retry.push_back(to_double(dis));
    best.retries_used = attempt + 1;
    if (dis < best_dis) {
      best_dis = dis;
      best.approximator.directions.assign(1, DirectionTuple(m, ys));
    }
    if (best_dis <= delta_q) break;
  }
  best.disagreement = best_dis;
  return best;
}

struct WeightedSignResult {
  std::vector<double> alphas;   // one per accepted sample, in input order
  EvalVec sign;                 // Sgn of the empirical average (Sgn(0) -> 0)
  int rejected = 0;             // samples dropped for a zero intermediate bias
};

// Sampling estimator (-1)^f(x) = E_Y[alpha_Y (-1)^{Delta_Y f(x)}] for
// wt(f) <= 2^-k and tuples Y of order k-1, where
//   alpha_Y = 1 / (bias(f) bias(Delta_{y_1} f) ... bias(Delta_{y_{k-2}} ... Delta_{y_1} f)).
// Every alpha is at most 1/prod_{j=1..k}(1 - 2^-j) <= 3.5 when the weight
// precondition holds; a zero intermediate bias signals caller error and the
// sample is rejected and reported.
inline WeightedSignResult weighted_sign_estimator(const EvalVec& f, int k,
                                                  const std::vector<DirectionTuple>& samples) {
  if (k < 2) throw precondition_error("weighted_sign_estimator: k must be >= 2");
  int m = f.vars();
  if (weight(f) > BigRational(1, BigInt(1) << k))
    throw precondition_error("weighted_sign_estimator: weight(f) exceeds 2^-k");
  std::size_t n = f.size();
  std::vector<double> acc(n, 0.0);
  WeightedSignResult res{{}, EvalVec(m), 0};
  for (const DirectionTuple& Y : samples) {
    if (Y.order() != k - 1) throw precondition_error("weighted_sign_estimator: direction order must be k-1");
    double alpha_den = 1.0;
    EvalVec cur = f;
    bool rejected = false;
    for (int j = 0; j <= k - 2; ++j) {
      BigRational b = bias(cur);  // prefix of order j
      if (b == 0) {
        rejected = true;
        break;
      }
      alpha_den *= to_double(b);
      cur = derivative(cur, Y.vectors[static_cast<std::size_t>(j)]);  // prefix of order j+1
    }
    if (rejected) {
      ++res.rejected;
      continue;
    }
    double alpha = 1.0 / alpha_den;
    if (!(alpha <= 3.5 + 1e-9))
      throw std::logic_error("weighted_sign_estimator: alpha bound 3.5 violated despite preconditions");
    // cur is now the full order-(k-1) derivative along Y.
    for (std::size_t x = 0; x < n; ++x) acc[x] += cur.get(static_cast<std::uint32_t>(x)) ? -alpha : alpha;
    res.alphas.push_back(alpha);
  }
  if (res.alphas.empty()) throw precondition_error("weighted_sign_estimator: every sample was rejected");
  for (std::size_t x = 0; x < n; ++x) res.sign.set(static_cast<std::uint32_t>(x), acc[x] < 0.0);
  return res;
}

}  // namespace rmlab
