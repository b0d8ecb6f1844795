#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rmlab/combinatorics.hpp"
#include "rmlab/errors.hpp"
#include "rmlab/gf2poly.hpp"
#include "rmlab/rmcode.hpp"
#include "rmlab/rng.hpp"

namespace rmlab {

// Exact weight enumerator: counts[w] = number of codewords of absolute
// weight w. Total is 2^dim; counts are symmetric under w <-> 2^m - w because
// f <-> 1 + f is a bijection of the code (1 is always a codeword).
struct WeightProfile {
  CodeParams params;
  std::map<std::uint64_t, BigInt> counts;

  BigInt total() const {
    BigInt s = 0;
    for (const auto& [w, c] : counts) s += c;
    return s;
  }

  // W_{m,r}(beta) = #{f : wt(f) <= beta}.
  BigInt count_weight_leq(const BigRational& beta) const {
    BigInt s = 0;
    BigInt n = BigInt(1) << params.m;
    for (const auto& [w, c] : counts)
      if (BigRational(BigInt(w), n) <= beta) s += c;
    return s;
  }

  void to_csv(std::ostream& os) const {
    os << "weight,count\n";
    for (const auto& [w, c] : counts) os << w << ',' << c << '\n';
  }
};

// Exhaustive profile over all 2^dim codewords (Gray-coded enumeration).
inline WeightProfile brute_force_profile(const CodeParams& p) {
  if (p.dim > kMaxEnumDim) throw precondition_error("brute_force_profile: dim must be <= 26");
  std::vector<std::uint64_t> hist(p.block_length() + 1, 0);
  CodewordEnumerator en(p);
  std::uint64_t message;
  const EvalVec* word = nullptr;
  while (en.next(message, &word)) ++hist[word->ones_count()];
  WeightProfile prof{p, {}};
  for (std::uint64_t w = 0; w < hist.size(); ++w)
    if (hist[w]) prof.counts.emplace(w, hist[w]);
  return prof;
}

// Monte Carlo companion for dim > 26. Wilson intervals per observed weight.
struct McProfile {
  CodeParams params;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  struct Interval {
    double lo, hi;
  };
  // 95% Wilson score interval for the frequency of weight w.
  Interval wilson(std::uint64_t w) const {
    constexpr double z = 1.959963984540054;
    auto it = counts.find(w);
    double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    double n = static_cast<double>(trials);
    double phat = c / n;
    double denom = 1.0 + z * z / n;
    double center = (phat + z * z / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
  }
};

inline McProfile mc_profile(const CodeParams& p, std::uint64_t trials, std::uint64_t seed) {
  McProfile prof{p, trials, seed, {}};
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    PolyANF f = random_poly(p.m, p.r, rng);
    ++prof.counts[anf_to_eval(f).ones_count()];
  }
  return prof;
}

struct BiasTailResult {
  double empirical_prob;
  double bound;  // 2 exp(-2^r eps^2 / 2), natural exponential
  std::uint64_t exceedances;
  std::uint64_t trials;
};

// Empirical Pr[|bias(f)| > eps] over uniform degree-<= r polynomials,
// alongside the concentration bound it must respect.
inline BiasTailResult mc_bias_tail(int m, int r, double epsilon, std::uint64_t n_samples, std::uint64_t seed) {
  CodeParams p(m, r);
  BigRational eps_q(epsilon);
  std::uint64_t exceed = 0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    Rng rng(derive_seed(seed, i));
    PolyANF f = random_poly(m, r, rng);
    BigRational b = bias(anf_to_eval(f));
    if (b < 0) b = -b;
    if (b > eps_q) ++exceed;
  }
  double bound = 2.0 * std::exp(-std::ldexp(epsilon * epsilon, r) / 2.0);
  return {static_cast<double>(exceed) / static_cast<double>(n_samples), bound, exceed, n_samples};
}

// A bound evaluation in log2 space. The paper's unspecified O(m^4)/o(1)
// constants are caller-supplied slack terms, itemized and never folded
// silently into the value; log2_value = leading_term + sum of slack terms.
// leading_term saturates to +inf when binom(m, <= r) exceeds double range;
// the dimensionless coefficient and log2 binom stay finite in `aux`.
struct BoundReport {
  std::string name;
  double log2_value = 0.0;
  double leading_term = 0.0;
  std::vector<std::pair<std::string, double>> slack_terms;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> aux;

  double slack_total() const {
    double s = 0.0;
    for (const auto& [k, v] : slack_terms) s += v;
    return s;
  }
};

namespace detail {
inline double binom_leq_as_double(long long m, long long r) {
  if (m <= 1000) return to_double_saturating(binom_leq(m, r));
  return std::exp2(log2_binom_leq(m, r).value);  // +inf far beyond double range
}
}  // namespace detail

// log2 W_{m,r}(2^-ell) <= m4_const m^4 + 17 (c_g ell + d_g) gamma^(ell-1) binom(m, <= r).
inline BoundReport bound_low_weight(long long m, long long r, int ell, double m4_const = 0.0) {
  if (!(1 <= ell && ell <= r && r <= m)) throw precondition_error("bound_low_weight: need 1 <= ell <= r <= m");
  double gamma = static_cast<double>(r) / static_cast<double>(m);
  double coeff = 17.0 * (c_gamma(gamma) * ell + d_gamma(gamma)) * std::pow(gamma, ell - 1);
  double binom_d = detail::binom_leq_as_double(m, r);
  double slack = m4_const * std::pow(static_cast<double>(m), 4.0);
  BoundReport rep;
  rep.name = "low_weight";
  rep.leading_term = coeff * binom_d;
  rep.slack_terms = {{"m4", slack}};
  rep.log2_value = rep.leading_term + slack;
  rep.inputs = {{"m", double(m)}, {"r", double(r)}, {"ell", double(ell)}, {"m4_const", m4_const}};
  rep.aux = {{"gamma", gamma},
             {"c_gamma", c_gamma(gamma)},
             {"d_gamma", d_gamma(gamma)},
             {"coefficient", coeff},
             {"log2_binom", log2_binom_leq(m, r).value}};
  return rep;
}

// log2 |A_{k,t}| <= m t k + t binom(m-k, <= r-k).
inline double bound_net_A(long long m, long long r, int k, int t) {
  if (!(k >= 0 && k <= r && t >= 1)) throw precondition_error("bound_net_A: need 0 <= k <= r and t >= 1");
  BigInt v = BigInt(m) * t * k + BigInt(t) * binom_leq(m - k, r - k);
  return to_double_saturating(v);
}

// log2 |A_{1,t}| <= m t + sum_{j=1..t} binom(m-j, <= r-1).
inline double bound_net_A1(long long m, long long r, int t) {
  if (!(t >= 1 && t <= m && r >= 1)) throw precondition_error("bound_net_A1: need 1 <= t <= m and r >= 1");
  BigInt sum = 0;
  for (int j = 1; j <= t; ++j) sum += binom_leq(m - j, r - 1);
  return to_double_saturating(BigInt(m) * t + sum);
}

// log2 of the recursion product: sum_{j=ell..r} log2 |A_{j-1, 17(j+2)}|.
inline double bound_recursion(long long m, long long r, int ell) {
  if (!(1 <= ell)) throw precondition_error("bound_recursion: ell must be >= 1");
  double total = 0.0;
  for (long long j = ell; j <= r; ++j)
    total += bound_net_A(m, r, static_cast<int>(j - 1), static_cast<int>(17 * (j + 2)));
  return total;  // empty product (ell > r) gives 0
}

// log2 W_{m,r}((1 - 2^-ell)/2) <= m4 slack +
//   (1 - (1-gt)^(2l+s+1) + 17 (c_g (s-1) + d_g) gamma^(s-2)) binom(m, <= r),
// with s the minimal Appendix-C solution and gt = gamma (1 + t/(m-t)).
inline BoundReport bound_low_bias(long long m, long long r, int ell, double m4_const = 0.0) {
  double gamma = static_cast<double>(r) / static_cast<double>(m);
  if (!(gamma < 0.5)) throw precondition_error("bound_low_bias: requires gamma < 1/2");
  SParams sp = smallest_s(gamma, ell, m);
  int t = 2 * ell + sp.s + 1;
  double coeff = 1.0 - std::pow(1.0 - sp.gamma_tilde, t) +
                 17.0 * (c_gamma(gamma) * (sp.s - 1) + d_gamma(gamma)) * std::pow(gamma, sp.s - 2);
  double binom_d = detail::binom_leq_as_double(m, r);
  double slack = m4_const * std::pow(static_cast<double>(m), 4.0);
  BoundReport rep;
  rep.name = "low_bias";
  rep.leading_term = coeff * binom_d;
  rep.slack_terms = {{"m4", slack}};
  rep.log2_value = rep.leading_term + slack;
  rep.inputs = {{"m", double(m)}, {"r", double(r)}, {"ell", double(ell)}, {"m4_const", m4_const}};
  rep.aux = {{"gamma", gamma},
             {"gamma_tilde", sp.gamma_tilde},
             {"s", double(sp.s)},
             {"t", double(t)},
             {"coefficient", coeff},
             {"c_of_gamma_ell", std::log2(1.0 / (1.0 - sp.gamma_tilde)) * t},
             {"log2_binom", log2_binom_leq(m, r).value}};
  return rep;
}

struct LowerBoundResult {
  double log2_count;    // sum_{j=1..ell-1} binom(m-j, <= r-1) - 1
  bool hypothesis_met;  // theorem asks r >= 20 and ell < r/3
};

// log2 of the guaranteed number of polynomials with bias >= 2^-ell.
inline LowerBoundResult lower_bound_log2(long long m, long long r, int ell) {
  if (!(1 <= ell && ell <= r && r <= m)) throw precondition_error("lower_bound_log2: need 1 <= ell <= r <= m");
  BigInt sum = 0;
  for (int j = 1; j <= ell - 1; ++j) sum += binom_leq(m - j, r - 1);
  bool hyp = (r >= 20) && (3 * ell < r);
  return {to_double_saturating(sum) - 1.0, hyp};
}

// Random biased polynomial g = sum_{i=1..ell} x_i f_i(x_{i+1},...,x_m) with
// f_i uniform of degree <= r-1. Distinct (f_1..f_ell) give distinct g: the
// monomials contributed through x_i are exactly those whose lowest variable
// is x_i. Bias is computed exactly by full evaluation.
inline std::pair<PolyANF, BigRational> sample_biased_poly(int m, int r, int ell, Rng& rng) {
  if (!(0 <= ell && ell <= r && r <= m && m <= 24))
    throw precondition_error("sample_biased_poly: need 0 <= ell <= r <= m <= 24");
  std::vector<std::uint32_t> masks;
  for (int i = 1; i <= ell; ++i) {
    if (m - i == 0) {  // f_i is a polynomial in zero variables: a constant
      if (rng.fair_bit()) masks.push_back(std::uint32_t(1) << (i - 1));
      continue;
    }
    PolyANF fi = random_poly(m - i, std::min(r - 1, m - i), rng);  // over variables x_{i+1}..x_m
    for (std::uint32_t mk : fi.masks())
      masks.push_back((mk << i) | (std::uint32_t(1) << (i - 1)));  // multiply by x_i
  }
  PolyANF g(m, std::move(masks));
  BigRational b = bias(anf_to_eval(g));
  return {std::move(g), std::move(b)};
}

}  // namespace rmlab
