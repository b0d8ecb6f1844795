#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <utility>

#include "rmlab/errors.hpp"

namespace rmlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exact binomial coefficient C(n, k).
inline BigInt binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// binom(m, <= r) = sum_{i=0}^{min(r,m)} C(m, i). r > m clamps to m.
inline BigInt binom_leq(long long m, long long r) {
  if (m < 0 || r < 0) throw precondition_error("binom_leq: m and r must be non-negative");
  if (r > m) r = m;
  BigInt sum = 0, term = 1;
  for (long long i = 0;; ++i) {
    sum += term;
    if (i == r) break;
    term *= (m - i);
    term /= (i + 1);
  }
  return sum;
}

// log2 of a positive BigInt, good to ~1 ulp of double.
inline double log2_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log2_big: value must be positive");
  std::size_t bits = msb(v);  // index of the most significant bit
  if (bits <= 62) return std::log2(v.convert_to<double>());
  BigInt top = v >> (bits - 62);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

// BigInt -> double, saturating to +inf instead of overflowing.
inline double to_double_saturating(const BigInt& v) {
  if (v == 0) return 0.0;
  if (v < 0) return -to_double_saturating(-v);
  if (msb(v) >= 1024) return INFINITY;
  return v.convert_to<double>();
}

inline double to_double(const BigRational& q) {
  if (q == 0) return 0.0;
  BigInt num = numerator(q), den = denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  double l2 = log2_big(num) - log2_big(den);
  double v = std::exp2(l2);
  return neg ? -v : v;
}

// Floating companion of binom_leq for m beyond exact range. Result is
// log2(binom(m, <= r)) with a conservative absolute error bound; the terms
// come from lgamma (the libm Stirling-series implementation).
struct Log2Estimate {
  double value;
  double abs_err;
};

inline Log2Estimate log2_binom_leq(long long m, long long r) {
  if (m < 0 || r < 0) throw precondition_error("log2_binom_leq: m and r must be non-negative");
  if (r > m) r = m;
  constexpr double kLn2 = 0.6931471805599453;
  // log-sum-exp over log2 C(m, i), i = 0..r.
  double best = 0.0;  // log2 of the largest term; term i=0 is exactly 1
  double acc = 1.0;   // sum of 2^(term - best)
  double term_err = 0.0;
  double lg_m1 = std::lgamma(static_cast<double>(m) + 1.0);
  for (long long i = 1; i <= r; ++i) {
    double lt = (lg_m1 - std::lgamma(static_cast<double>(i) + 1.0) -
                 std::lgamma(static_cast<double>(m - i) + 1.0)) / kLn2;
    // Three lgamma evaluations, each within a few ulp; 8 ulp of the largest
    // magnitude is a safe per-term bound.
    double e = 8.0 * std::abs(lg_m1) * 2.2e-16 / kLn2 + 1e-13;
    term_err = std::max(term_err, e);
    if (lt > best) {
      acc = acc * std::exp2(best - lt) + 1.0;
      best = lt;
    } else {
      acc += std::exp2(lt - best);
    }
  }
  double value = best + std::log2(acc);
  // Shifting every term by its error moves the total by at most the same
  // amount in log space; add slack for the accumulation itself.
  double abs_err = term_err + static_cast<double>(r + 1) * 2.2e-16 + 1e-12;
  return {value, abs_err};
}

// Binary entropy, base-2 logs, H(0) = H(1) = 0.
inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// K-term partial sum of the entropy expansion around 1/2:
//   H((1-xi)/2) = 1 - (1/2 ln 2) * sum_{k>=1} xi^(2k) / (k (2k-1)).
// Partial sums decrease monotonically to the entropy as K grows.
inline double entropy_taylor(double xi, int terms) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::domain_error("entropy_taylor: xi outside [0,1]");
  constexpr double kInv2Ln2 = 0.7213475204444817;  // 1/(2 ln 2)
  double xi2 = xi * xi;
  double pow = 1.0, sum = 0.0;
  for (int k = 1; k <= terms; ++k) {
    pow *= xi2;
    sum += pow / (static_cast<double>(k) * (2.0 * k - 1.0));
  }
  return 1.0 - kInv2Ln2 * sum;
}

// Solves H((1-xi)/2) = 1 - c*R for xi in [0,1] by bisection. H is strictly
// decreasing in xi on [0,1], from 1 down to 0.
inline double xi_from_capacity_gap(double c, double R) {
  if (!(c > 0.0)) throw std::domain_error("xi_from_capacity_gap: c must be positive");
  if (!(R > 0.0 && R <= 1.0)) throw std::domain_error("xi_from_capacity_gap: R outside (0,1]");
  double target = 1.0 - c * R;
  if (target < 0.0) throw std::domain_error("xi_from_capacity_gap: c*R > 1, no valid crossover probability");
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double h = binary_entropy((1.0 - mid) / 2.0);
    if (std::abs(h - target) <= 1e-12) return mid;
    if (h > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double c_gamma(double gamma) { return 1.0 / (1.0 - gamma); }
inline double d_gamma(double gamma) { return (2.0 - gamma) / ((1.0 - gamma) * (1.0 - gamma)); }

// Solution record for the smallest-s inequality
//   17 (2s+4) gamma^(s-2) <= (1/2) (1 - gamma_tilde)^(2 ell + s + 1),
// where gamma_tilde = gamma (1 + t/(m-t)) and t = 2 ell + s + 1 is recomputed
// for each candidate s.
struct SParams {
  double gamma;
  int ell;
  long long m;
  double gamma_tilde;
  int s;
  double c_gamma;
  double d_gamma;
};

namespace detail {
inline bool smallest_s_holds(double gamma, int ell, long long m, long long s, double& gamma_tilde) {
  long long t = 2ll * ell + s + 1;
  if (t >= m) return false;
  gamma_tilde = gamma * (1.0 + static_cast<double>(t) / static_cast<double>(m - t));
  if (gamma_tilde >= 1.0) return false;
  double lhs = 17.0 * (2.0 * static_cast<double>(s) + 4.0) * std::pow(gamma, static_cast<double>(s) - 2.0);
  double rhs = 0.5 * std::pow(1.0 - gamma_tilde, static_cast<double>(t));
  return lhs <= rhs;
}
}  // namespace detail

// Minimal s >= 1 satisfying the inequality above, by ascending linear scan.
inline SParams smallest_s(double gamma, int ell, long long m) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw std::domain_error("smallest_s: gamma outside (0, 1/2)");
  if (ell < 1) throw std::domain_error("smallest_s: ell must be positive");
  if (m < 1) throw std::domain_error("smallest_s: m must be positive");
  for (long long s = 1; s <= m; ++s) {
    double gamma_tilde = 0.0;
    if (detail::smallest_s_holds(gamma, ell, m, s, gamma_tilde)) {
      if (gamma_tilde >= 0.5)
        throw precondition_error("smallest_s: gamma_tilde >= 1/2 at the minimal s; parameters outside the theorem's hypotheses");
      return {gamma, ell, m, gamma_tilde, static_cast<int>(s), c_gamma(gamma), d_gamma(gamma)};
    }
  }
  throw precondition_error("smallest_s: no s <= m satisfies the inequality; parameter regime outside the theorem's hypotheses");
}

// Both sides of binom(m-l, <= r-l) <= gamma^l binom(m, <= r); the caller
// asserts lhs <= rhs_bound.
inline std::pair<BigInt, double> lemma_A1_ratio(int m, int r, int ell) {
  if (!(0 <= ell && ell <= r && r <= m)) throw precondition_error("lemma_A1_ratio: need 0 <= ell <= r <= m");
  BigInt lhs = binom_leq(m - ell, r - ell);
  double gamma = static_cast<double>(r) / static_cast<double>(m);
  double rhs = std::pow(gamma, ell) * to_double_saturating(binom_leq(m, r));
  return {lhs, rhs};
}

// Both sides of binom(m-t, <= r) >= (1 - gamma_tilde)^t binom(m, <= r) with
// gamma_tilde = gamma (1 + t/(m-t)); the caller asserts lhs >= rhs_bound.
inline std::pair<BigInt, double> lemma_A2_ratio(int m, int r, int t) {
  if (!(t >= 0 && r >= 0 && t + r <= m)) throw precondition_error("lemma_A2_ratio: need t + r <= m");
  BigInt lhs = binom_leq(m - t, r);
  double gamma = static_cast<double>(r) / static_cast<double>(m);
  double gamma_tilde = (t == m) ? 1.0 : gamma * (1.0 + static_cast<double>(t) / static_cast<double>(m - t));
  double rhs = std::pow(1.0 - gamma_tilde, t) * to_double_saturating(binom_leq(m, r));
  return {lhs, rhs};
}

}  // namespace rmlab
