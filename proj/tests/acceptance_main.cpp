// Acceptance suite: one criterion per function, one pass/fail line each.
// Exit code 0 iff every criterion passes. All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rmlab/channels.hpp"
#include "rmlab/combinatorics.hpp"
#include "rmlab/derivatives.hpp"
#include "rmlab/gf2poly.hpp"
#include "rmlab/rmcode.hpp"
#include "rmlab/weightdist.hpp"

using namespace rmlab;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

// Criterion 1: weight-profile oracle agreement (ANF route vs codeword route)
// for all m <= 4, plus pinned counts.
Check criterion1() {
  Check c;
  for (int m = 1; m <= 4; ++m)
    for (int r = 0; r <= m; ++r) {
      CodeParams p(m, r);
      WeightProfile via_codewords = brute_force_profile(p);
      // Independent route: message -> polynomial -> butterfly evaluation.
      std::vector<std::uint32_t> masks = monomial_masks(p);
      std::map<std::uint64_t, BigInt> via_anf;
      for (std::uint64_t msg = 0; msg < (std::uint64_t(1) << p.dim); ++msg) {
        std::vector<std::uint32_t> chosen;
        for (std::size_t j = 0; j < p.dim; ++j)
          if ((msg >> j) & 1) chosen.push_back(masks[j]);
        ++via_anf[anf_to_eval(PolyANF(m, chosen)).ones_count()];
      }
      c.expect(via_codewords.counts == via_anf,
               "profiles disagree at RM(" + std::to_string(m) + "," + std::to_string(r) + ")");
    }
  c.expect(brute_force_profile(CodeParams(3, 1)).count_weight_leq(BigRational(1, 2)) == 15, "W_{3,1}(1/2) != 15");
  c.expect(brute_force_profile(CodeParams(3, 2)).count_weight_leq(BigRational(1, 4)) == 29, "W_{3,2}(1/4) != 29");
  c.expect(brute_force_profile(CodeParams(2, 2)).count_weight_leq(BigRational(1, 4)) == 5, "W_{2,2}(1/4) != 5");
  for (int m = 1; m <= 4; ++m)
    for (int r = 0; r <= m; ++r) {
      BigRational below_min(1, BigInt(1) << (r + 1));
      c.expect(brute_force_profile(CodeParams(m, r)).count_weight_leq(below_min) == 1,
               "W(beta < 2^-r) != 1 at RM(" + std::to_string(m) + "," + std::to_string(r) + ")");
    }
  return c;
}

// Criterion 2: erasure-criterion equivalence, exhaustive over all patterns
// for RM(3,1), RM(3,2) (256 each) and RM(4,1) (65536).
Check criterion2() {
  Check c;
  auto scan = [&](int m, int r) {
    CodeParams p(m, r);
    std::uint64_t n = std::uint64_t(1) << (1 << m);
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      ErasurePattern pat(m);
      for (int i = 0; i < (1 << m); ++i)
        if ((mask >> i) & 1) pat.erased.set(i, true);
      if (bec_recoverable(pat, p) != bec_recoverable_oracle(pat, p)) {
        c.expect(false, "mismatch at RM(" + std::to_string(m) + "," + std::to_string(r) + ") pattern " +
                            std::to_string(mask));
        return;
      }
    }
  };
  scan(3, 1);
  scan(3, 2);
  scan(4, 1);
  return c;
}

// Criterion 3: exhaustive minimum distance = 2^-r for all m <= 5 with dim <= 20.
Check criterion3() {
  Check c;
  for (int m = 1; m <= 5; ++m)
    for (int r = 0; r <= m; ++r) {
      CodeParams p(m, r);
      if (p.dim > 20) continue;
      MinDistanceResult res = min_distance(p);
      c.expect(res.exhaustive, "not exhaustive at RM(" + std::to_string(m) + "," + std::to_string(r) + ")");
      c.expect(res.value == BigRational(1, BigInt(1) << r),
               "min distance != 2^-r at RM(" + std::to_string(m) + "," + std::to_string(r) + ")");
    }
  return c;
}

// Criterion 4: bias tail at m=14, r=10, eps=0.15, 2000 seeded samples; at most
// one exceedance (the bound predicts ~0.04 expected).
Check criterion4() {
  Check c;
  BiasTailResult res = mc_bias_tail(14, 10, 0.15, 2000, 20260325);
  c.expect(res.exceedances <= 1, "exceedances = " + std::to_string(res.exceedances));
  std::ostringstream os;
  os << "bound per sample = " << res.bound << ", expected exceedances = " << res.bound * 2000.0;
  c.detail = c.detail.empty() ? os.str() : c.detail;
  return c;
}

// Criterion 5: binomial difference identity exact on the full grid m <= 40,
// plus Lemma A.1 and the simple combinatorial bound III on the same grid.
Check criterion5() {
  Check c;
  for (int m = 1; m <= 40 && c.ok; ++m)
    for (int r = 0; r <= m && c.ok; ++r) {
      for (int t = 1; t <= m; ++t) {
        BigInt sum = 0;
        for (int j = 1; j <= t; ++j) sum += binom_leq(m - j, r - 1);
        if (sum != binom_leq(m, r) - binom_leq(m - t, r)) {
          c.expect(false, "identity fails at m=" + std::to_string(m) + " r=" + std::to_string(r) +
                              " t=" + std::to_string(t));
          break;
        }
      }
    }
  for (int m = 1; m <= 40 && c.ok; ++m)
    for (int r = 1; r <= m && c.ok; ++r) {
      for (int ell = 0; ell <= r; ++ell) {
        auto [lhs, rhs] = lemma_A1_ratio(m, r, ell);
        if (to_double_saturating(lhs) > rhs * (1.0 + 1e-12) + 1e-12) {
          c.expect(false, "lemma A.1 fails at m=" + std::to_string(m) + " r=" + std::to_string(r) +
                              " ell=" + std::to_string(ell));
          break;
        }
      }
      for (int t = 0; t + r <= m; ++t) {
        auto [lhs, rhs] = lemma_A2_ratio(m, r, t);
        if (to_double_saturating(lhs) < rhs * (1.0 - 1e-12) - 1e-12) {
          c.expect(false, "bound III fails at m=" + std::to_string(m) + " r=" + std::to_string(r) +
                              " t=" + std::to_string(t));
          break;
        }
      }
    }
  return c;
}

// Criterion 6: alpha_Y <= 3.5 on 100 random low-weight instances at m=12, and
// the exact pointwise expectation identity at m=4.
Check criterion6() {
  Check c;
  Rng rng(606);
  for (int inst = 0; inst < 100; ++inst) {
    int deg = 2 + static_cast<int>(rng.below(5));  // product of 2..6 variables
    std::uint32_t mask = 0;
    while (std::popcount(mask) < deg) mask |= std::uint32_t(1) << rng.below(12);
    EvalVec f = anf_to_eval(PolyANF::monomial(12, mask));
    std::vector<DirectionTuple> samples;
    for (int s = 0; s < 4; ++s) {
      std::vector<std::uint32_t> ys(static_cast<std::size_t>(deg - 1));
      for (auto& y : ys) y = static_cast<std::uint32_t>(rng.bits(12));
      samples.emplace_back(12, std::move(ys));
    }
    WeightedSignResult res = weighted_sign_estimator(f, deg, samples);
    c.expect(res.rejected == 0, "sample rejected at instance " + std::to_string(inst));
    for (double a : res.alphas)
      c.expect(a <= 3.5, "alpha " + std::to_string(a) + " exceeds 3.5 at instance " + std::to_string(inst));
  }
  // Exact identity: averaging over all y reproduces (-1)^f pointwise.
  EvalVec f = anf_to_eval(PolyANF::monomial(4, 0b11));
  std::vector<DirectionTuple> all;
  for (std::uint32_t y = 0; y < 16; ++y) all.push_back(DirectionTuple(4, {y}));
  WeightedSignResult res = weighted_sign_estimator(f, 2, all);
  c.expect(res.sign == f, "exact expectation identity fails pointwise at m=4");
  return c;
}

// Criterion 7: both approximators reach disagreement <= delta within 20
// retries in at least 18 of 20 seeded outer trials.
Check criterion7() {
  Check c;
  EvalVec f_lw = anf_to_eval(PolyANF::monomial(10, 0b111));
  int ok_lw = 0;
  for (int outer = 0; outer < 20; ++outer) {
    Rng rng(derive_seed(707, static_cast<std::uint64_t>(outer)));
    ApproxResult res = low_weight_approximator(f_lw, 3, 0.125, rng, 20);
    if (res.approximator.t != 51) c.expect(false, "t != 51");
    if (res.disagreement <= BigRational(1, 8)) ++ok_lw;
  }
  c.expect(ok_lw >= 18, "low-weight approximator: only " + std::to_string(ok_lw) + "/20 trials reached delta");

  EvalVec f_lb = anf_to_eval(PolyANF::monomial(10, 0b11));
  int ok_lb = 0;
  for (int outer = 0; outer < 20; ++outer) {
    Rng rng(derive_seed(708, static_cast<std::uint64_t>(outer)));
    ApproxResult res = low_bias_approximator(f_lb, 0.5, 0.125, rng, 20);
    if (res.approximator.t != 6) c.expect(false, "t != 6");
    if (res.disagreement <= BigRational(1, 8)) ++ok_lb;
  }
  c.expect(ok_lb >= 18, "low-bias approximator: only " + std::to_string(ok_lb) + "/20 trials reached delta");
  c.detail = "low-weight " + std::to_string(ok_lw) + "/20, low-bias " + std::to_string(ok_lb) + "/20";
  return c;
}

// Criterion 8: smallest_s(0.1, 1, 10^6) = 6, false at s=5, true at s=6.
Check criterion8() {
  Check c;
  SParams sp = smallest_s(0.1, 1, 1000000);
  c.expect(sp.s == 6, "s = " + std::to_string(sp.s));
  auto sides = [&](int s) {
    long long t = 2 * sp.ell + s + 1;
    double gt = sp.gamma * (1.0 + double(t) / double(sp.m - t));
    return std::pair{17.0 * (2.0 * s + 4.0) * std::pow(sp.gamma, s - 2.0),
                     0.5 * std::pow(1.0 - gt, double(t))};
  };
  auto [l5, r5] = sides(5);
  auto [l6, r6] = sides(6);
  c.expect(l5 > r5, "inequality unexpectedly holds at s=5");
  c.expect(l6 <= r6, "inequality fails at s=6");
  return c;
}

// Criterion 9: constraint certification at the paper's thresholds and
// rejection away from them.
Check criterion9() {
  Check c;
  ConstraintReport bec_ok = check_bec_constraints(1.0 / 50.0);
  c.expect(bec_ok.ok && bec_ok.worst_margin > 0.0, "BEC gamma=1/50 not certified");
  ConstraintReport bsc_ok = check_bsc_constraints(1.0 / 70.0);
  c.expect(bsc_ok.ok && bsc_ok.worst_margin > 0.0, "BSC gamma=1/70 not certified");
  c.expect(!check_bec_constraints(0.4).ok, "BEC gamma=0.4 not rejected");
  c.expect(!check_bsc_constraints(0.1).ok, "BSC gamma=0.1 not rejected");
  std::ostringstream os;
  os << "margins: BEC " << bec_ok.worst_margin << ", BSC " << bsc_ok.worst_margin;
  c.detail = os.str();
  return c;
}

// Criterion 10: BEC transition for RM(10,1), 200 seeded trials per endpoint.
Check criterion10() {
  Check c;
  CodeParams p(10, 1);
  double R = p.rate_d();
  TrialStats low = estimate_lambda(p, ChannelSpec::bec(1.0 - 8.0 * R), 200, 1010, 4);
  TrialStats high = estimate_lambda(p, ChannelSpec::bec(1.0 - 0.5 * R), 200, 1011, 4);
  c.expect(low.failure_rate <= 0.05, "failure rate " + std::to_string(low.failure_rate) + " at p = 1-8R");
  c.expect(high.failure_rate >= 0.95, "failure rate " + std::to_string(high.failure_rate) + " at p = 1-R/2");
  std::ostringstream os;
  os << "failure rates: " << low.failure_rate << " at c=8, " << high.failure_rate << " at c=1/2";
  c.detail = os.str();
  return c;
}

// Criterion 11: BSC ML decoding: RM(4,1) at p=0.01 over 500 seeded trials
// succeeds >= 99%; RM(3,1) corrects every single flip exhaustively.
Check criterion11() {
  Check c;
  TrialStats st = estimate_lambda(CodeParams(4, 1), ChannelSpec::bsc(0.01), 500, 1102, 4);
  c.expect(st.failure_rate <= 0.01, "failure rate " + std::to_string(st.failure_rate));
  CodeParams p31(3, 1);
  CodewordEnumerator en(p31);
  std::uint64_t message;
  const EvalVec* word = nullptr;
  while (en.next(message, &word)) {
    for (int i = 0; i < 8; ++i) {
      EvalVec rx = *word;
      rx.bits().flip(i);
      MlResult res = ml_decode(rx, p31);
      if (res.tie || !(res.codeword == *word)) {
        c.expect(false, "single-flip decode fails at message " + std::to_string(message));
        break;
      }
    }
  }
  return c;
}

// Criterion 12: union bounds dominate exhaustive truth at n = 8.
Check criterion12() {
  Check c;
  for (int r = 1; r <= 2; ++r) {
    CodeParams p(3, r);
    WeightProfile prof = brute_force_profile(p);
    // BEC: fraction of unrecoverable patterns at every fixed survivor count.
    for (std::uint64_t s = 1; s <= 8; ++s) {
      std::uint64_t bad = 0, total = 0;
      for (std::uint32_t mask = 0; mask < 256; ++mask) {
        if (static_cast<std::uint64_t>(std::popcount(mask)) != 8 - s) continue;
        ++total;
        ErasurePattern pat(3);
        for (int i = 0; i < 8; ++i)
          if ((mask >> i) & 1) pat.erased.set(i, true);
        if (!bec_recoverable_oracle(pat, p)) ++bad;
      }
      double truth = static_cast<double>(bad) / static_cast<double>(total);
      if (union_bound_bec(prof, s) < truth - 1e-12) {
        c.expect(false, "BEC bound below truth at r=" + std::to_string(r) + " s=" + std::to_string(s));
      }
    }
    // BSC: bad-pair counts per error weight.
    std::vector<std::uint32_t> words;
    CodewordEnumerator en(p);
    std::uint64_t message;
    const EvalVec* word = nullptr;
    while (en.next(message, &word)) {
      if (message == 0) continue;
      std::uint32_t w = 0;
      for (int i = 0; i < 8; ++i)
        if (word->get(i)) w |= 1u << i;
      words.push_back(w);
    }
    for (std::uint64_t wt = 1; wt <= 4; ++wt) {
      std::uint64_t pairs = 0;
      for (std::uint32_t v = 0; v < 256; ++v) {
        if (static_cast<std::uint64_t>(std::popcount(v)) != wt) continue;
        for (std::uint32_t cw : words)
          if (static_cast<std::uint64_t>(std::popcount(v ^ cw)) <= wt) ++pairs;
      }
      double truth = static_cast<double>(pairs) / to_double_saturating(binom(8, static_cast<long long>(wt)));
      if (union_bound_bsc(prof, wt) < truth - 1e-12) {
        c.expect(false, "BSC bound below truth at r=" + std::to_string(r) + " wt=" + std::to_string(wt));
      }
    }
  }
  return c;
}

// Criterion 13: the biased-polynomial construction at m=r=20, ell=3; at least
// half of 40 seeded samples reach bias 2^-4.
Check criterion13() {
  Check c;
  int good = 0;
  for (int i = 0; i < 40; ++i) {
    Rng rng(derive_seed(1313, static_cast<std::uint64_t>(i)));
    auto [g, b] = sample_biased_poly(20, 20, 3, rng);
    if (b >= BigRational(1, 16)) ++good;
  }
  c.expect(good >= 20, "only " + std::to_string(good) + "/40 samples reached bias 2^-4");
  c.detail = std::to_string(good) + "/40 samples at or above bias 1/16";
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    std::function<Check()> fn;
  };
  const std::vector<Entry> criteria = {
      {1, "weight-profile oracle agreement (m <= 4) and pinned counts", criterion1},
      {2, "erasure rank test == codeword-support scan (RM(3,1), RM(3,2), RM(4,1))", criterion2},
      {3, "exhaustive minimum distance = 2^-r (m <= 5, dim <= 20)", criterion3},
      {4, "bias tail m=14 r=10 eps=0.15: <= 1 exceedance in 2000 samples", criterion4},
      {5, "binomial identity + lemma A.1 + bound III on the m <= 40 grid", criterion5},
      {6, "alpha_Y <= 3.5 (100 instances) and exact expectation identity", criterion6},
      {7, "approximators reach delta in >= 18/20 seeded trials", criterion7},
      {8, "smallest_s(0.1, 1, 10^6) = 6 with s=5 failing and s=6 holding", criterion8},
      {9, "capacity constraints: ok at 1/50 and 1/70, rejected at 0.4 and 0.1", criterion9},
      {10, "BEC transition RM(10,1): <= 0.05 at c=8, >= 0.95 at c=1/2", criterion10},
      {11, "BSC ML: RM(4,1) p=0.01 success >= 0.99; RM(3,1) single flips", criterion11},
      {12, "union bounds dominate exhaustive truth at n = 8", criterion12},
      {13, "biased construction m=r=20 ell=3: >= 1/2 of samples at bias 2^-4", criterion13},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Check res;
    try {
      res = entry.fn();
    } catch (const std::exception& e) {
      res.ok = false;
      res.detail = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::ostringstream line;
    line << (res.ok ? "[PASS]" : "[FAIL]") << " criterion " << entry.number << ": " << entry.title << " ("
         << std::fixed << std::setprecision(2) << secs << "s)";
    if (!res.detail.empty()) line << " -- " << res.detail;
    std::cout << line.str() << std::endl;
    if (!res.ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 13 acceptance criteria passed" << std::endl;
  return 0;
}
