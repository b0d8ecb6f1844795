// Batch experiment driver: every module behind a reproducible subcommand.
// Output contract: a `#`-prefixed config echo followed by a deterministic
// data section (CSV) or a single JSON document with the config embedded.
// Identical configs produce byte-identical output; all randomness derives
// from the --seed flag.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rmlab/channels.hpp"
#include "rmlab/combinatorics.hpp"
#include "rmlab/derivatives.hpp"
#include "rmlab/gf2poly.hpp"
#include "rmlab/rmcode.hpp"
#include "rmlab/weightdist.hpp"

using nlohmann::json;
using namespace rmlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitUsage = 64;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Output {
  std::string subcommand;
  std::map<std::string, std::string> config;  // sorted, echoed on every run
  std::string format = "csv";
  std::string out_path;

  void set(const std::string& k, const std::string& v) { config[k] = v; }
  void set(const std::string& k, double v) { config[k] = fmt(v); }
  void set(const std::string& k, std::uint64_t v) { config[k] = std::to_string(v); }
  void set(const std::string& k, int v) { config[k] = std::to_string(v); }

  json config_json() const {
    json j = json::object();
    j["subcommand"] = subcommand;
    for (const auto& [k, v] : config) j[k] = v;
    return j;
  }

  void write_csv(const std::string& data) const {
    std::ostringstream os;
    os << "# rmlab " << subcommand << '\n';
    for (const auto& [k, v] : config) os << "# " << k << '=' << v << '\n';
    os << data;
    deliver(os.str());
  }

  void write_json(const json& data) const {
    json doc;
    doc["config"] = config_json();
    doc["data"] = data;
    deliver(doc.dump(2) + "\n");
  }

  void deliver(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file: " + out_path);
      f << text;
    }
  }
};

int thread_count(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("RMLAB_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw precondition_error("empty grid");
  return out;
}

// ---------------------------------------------------------------- weight-profile
int run_weight_profile(int m, int r, std::uint64_t trials, bool have_seed, std::uint64_t seed,
                       Output& out) {
  CodeParams p(m, r);
  out.set("m", m);
  out.set("r", r);
  if (p.dim <= kMaxEnumDim) {
    WeightProfile prof = brute_force_profile(p);
    out.set("mode", "exact");
    if (out.format == "json") {
      json rows = json::array();
      for (const auto& [w, c] : prof.counts) rows.push_back({{"weight", w}, {"count", c.str()}});
      out.write_json(rows);
    } else {
      std::ostringstream os;
      prof.to_csv(os);
      out.write_csv(os.str());
    }
    return kExitOk;
  }
  if (!have_seed || trials == 0)
    throw precondition_error("weight-profile: dim > 26, Monte Carlo mode requires --trials and --seed");
  McProfile prof = mc_profile(p, trials, seed);
  out.set("mode", "monte-carlo");
  out.set("trials", trials);
  out.set("seed", seed);
  if (out.format == "json") {
    json rows = json::array();
    for (const auto& [w, c] : prof.counts) {
      auto ci = prof.wilson(w);
      rows.push_back({{"weight", w},
                      {"count", c},
                      {"freq", static_cast<double>(c) / static_cast<double>(trials)},
                      {"wilson_lo", ci.lo},
                      {"wilson_hi", ci.hi}});
    }
    out.write_json(rows);
  } else {
    std::ostringstream os;
    os << "weight,count,freq,wilson_lo,wilson_hi\n";
    for (const auto& [w, c] : prof.counts) {
      auto ci = prof.wilson(w);
      os << w << ',' << c << ',' << fmt(static_cast<double>(c) / static_cast<double>(trials)) << ','
         << fmt(ci.lo) << ',' << fmt(ci.hi) << '\n';
    }
    out.write_csv(os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bias-tail
int run_bias_tail(int m, int r, double epsilon, std::uint64_t trials, std::uint64_t seed, Output& out) {
  BiasTailResult res = mc_bias_tail(m, r, epsilon, trials, seed);
  out.set("m", m);
  out.set("r", r);
  out.set("epsilon", epsilon);
  out.set("trials", trials);
  out.set("seed", seed);
  if (out.format == "json") {
    out.write_json({{"trials", res.trials},
                    {"exceedances", res.exceedances},
                    {"empirical_prob", res.empirical_prob},
                    {"bound", res.bound}});
  } else {
    std::ostringstream os;
    os << "trials,exceedances,empirical_prob,bound\n";
    os << res.trials << ',' << res.exceedances << ',' << fmt(res.empirical_prob) << ',' << fmt(res.bound)
       << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bounds
json report_to_json(const BoundReport& rep) {
  json j;
  j["name"] = rep.name;
  j["log2_value"] = rep.log2_value;
  j["leading_term"] = rep.leading_term;
  json slack = json::object();
  for (const auto& [k, v] : rep.slack_terms) slack[k] = v;
  j["slack_terms"] = slack;
  json inputs = json::object();
  for (const auto& [k, v] : rep.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  json aux = json::object();
  for (const auto& [k, v] : rep.aux) aux[k] = v;
  j["aux"] = aux;
  return j;
}

int run_bounds(const std::string& kind, long long m, long long r, int ell, int k, int t,
               double m4_const, Output& out) {
  out.set("kind", kind);
  out.set("m", static_cast<std::uint64_t>(m));
  out.set("r", static_cast<std::uint64_t>(r));
  json data;
  if (kind == "low-weight") {
    out.set("ell", ell);
    out.set("m4_const", m4_const);
    data = report_to_json(bound_low_weight(m, r, ell, m4_const));
  } else if (kind == "low-bias") {
    out.set("ell", ell);
    out.set("m4_const", m4_const);
    data = report_to_json(bound_low_bias(m, r, ell, m4_const));
  } else if (kind == "net-a") {
    out.set("k", k);
    out.set("t", t);
    data = {{"name", "net_A"}, {"log2_value", bound_net_A(m, r, k, t)}};
  } else if (kind == "net-a1") {
    out.set("t", t);
    data = {{"name", "net_A1"}, {"log2_value", bound_net_A1(m, r, t)}};
  } else if (kind == "recursion") {
    out.set("ell", ell);
    data = {{"name", "recursion"}, {"log2_value", bound_recursion(m, r, ell)}};
  } else if (kind == "lower-bound") {
    out.set("ell", ell);
    LowerBoundResult lb = lower_bound_log2(m, r, ell);
    data = {{"name", "lower_bound"}, {"log2_count", lb.log2_count}, {"hypothesis_met", lb.hypothesis_met}};
  } else {
    throw precondition_error("bounds: unknown --kind " + kind);
  }
  if (out.format == "json") {
    out.write_json(data);
  } else {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = data.begin(); it != data.end(); ++it)
      os << it.key() << ',' << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
         << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- lower-bound-sample
int run_lower_bound_sample(int m, int r, int ell, std::uint64_t samples, std::uint64_t seed, Output& out) {
  out.set("m", m);
  out.set("r", r);
  out.set("ell", ell);
  out.set("samples", samples);
  out.set("seed", seed);
  double threshold = std::exp2(-(ell + 1.0));
  BigRational thresh_q(threshold);
  std::uint64_t hits = 0;
  std::vector<std::pair<double, bool>> rows;
  rows.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    auto [g, b] = sample_biased_poly(m, r, ell, rng);
    bool hit = b >= thresh_q;
    hits += hit ? 1 : 0;
    rows.emplace_back(to_double(b), hit);
  }
  LowerBoundResult lb = lower_bound_log2(m, r, ell);
  out.set("log2_count_lower_bound", lb.log2_count);
  out.set("hypothesis_met", lb.hypothesis_met ? "true" : "false");
  out.set("bias_threshold", threshold);
  if (out.format == "json") {
    json arr = json::array();
    for (auto& [b, hit] : rows) arr.push_back({{"bias", b}, {"meets_threshold", hit}});
    out.write_json({{"samples", arr},
                    {"fraction_meeting_threshold", static_cast<double>(hits) / static_cast<double>(samples)}});
  } else {
    std::ostringstream os;
    os << "sample,bias,meets_threshold\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      os << i << ',' << fmt(rows[i].first) << ',' << (rows[i].second ? 1 : 0) << '\n';
    os << "# fraction_meeting_threshold=" << fmt(static_cast<double>(hits) / static_cast<double>(samples))
       << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- approx
int run_approx(const std::string& kind, int m, const std::string& f_anf, int k, double epsilon,
               double delta, int retries, std::uint64_t nsamples, std::uint64_t seed, Output& out) {
  PolyANF f = PolyANF::from_hex_list(m, f_anf);
  EvalVec fe = anf_to_eval(f);
  out.set("kind", kind);
  out.set("m", m);
  out.set("f_anf", f.to_hex_list());
  out.set("seed", seed);
  Rng rng(seed);
  json data;
  if (kind == "low-weight") {
    out.set("k", k);
    out.set("delta", delta);
    out.set("retries", retries);
    ApproxResult res = low_weight_approximator(fe, k, delta, rng, retries);
    data = {{"t", res.approximator.t},
            {"best_disagreement", to_double(res.disagreement)},
            {"retries_used", res.retries_used},
            {"per_retry", res.per_retry},
            {"achieved_delta", res.disagreement <= BigRational(delta)}};
  } else if (kind == "low-bias") {
    out.set("epsilon", epsilon);
    out.set("delta", delta);
    out.set("retries", retries);
    ApproxResult res = low_bias_approximator(fe, epsilon, delta, rng, retries);
    data = {{"t", res.approximator.t},
            {"best_disagreement", to_double(res.disagreement)},
            {"retries_used", res.retries_used},
            {"per_retry", res.per_retry},
            {"achieved_delta", res.disagreement <= BigRational(delta)}};
  } else if (kind == "weighted-sign") {
    out.set("k", k);
    out.set("samples", nsamples);
    std::vector<DirectionTuple> samples;
    samples.reserve(nsamples);
    for (std::uint64_t i = 0; i < nsamples; ++i) {
      std::vector<std::uint32_t> ys(static_cast<std::size_t>(k - 1));
      for (auto& y : ys) y = static_cast<std::uint32_t>(rng.bits(m));
      samples.emplace_back(m, std::move(ys));
    }
    WeightedSignResult res = weighted_sign_estimator(fe, k, samples);
    std::uint64_t disagree = res.sign.bits().count_xor(fe.bits());
    data = {{"alphas", res.alphas},
            {"rejected", res.rejected},
            {"disagreement", static_cast<double>(disagree) / static_cast<double>(fe.size())}};
  } else {
    throw precondition_error("approx: unknown --kind " + kind);
  }
  if (out.format == "json") {
    out.write_json(data);
  } else {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = data.begin(); it != data.end(); ++it) os << it.key() << ',' << it.value().dump() << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate / sweep
int run_simulate(const std::string& channel, int m, int r, double p, bool have_p, double c, bool have_c,
                 std::uint64_t trials, std::uint64_t seed, int threads, bool random_codeword, Output& out) {
  CodeParams params(m, r);
  ChannelKind kind = channel == "bec" ? ChannelKind::BEC : ChannelKind::BSC;
  ChannelSpec spec = ChannelSpec::bec(0.0);
  if (have_p == have_c) throw precondition_error("simulate: give exactly one of --p or --c");
  if (have_p)
    spec = kind == ChannelKind::BEC ? ChannelSpec::bec(p) : ChannelSpec::bsc(p);
  else
    spec = ChannelSpec::from_c(kind, c, params.rate_d());
  out.set("channel", channel);
  out.set("m", m);
  out.set("r", r);
  out.set("p", spec.p);
  if (have_c) out.set("c", c);
  out.set("trials", trials);
  out.set("seed", seed);
  out.set("random_codeword", random_codeword ? "true" : "false");
  TrialStats st = estimate_lambda(params, spec, trials, seed, threads, random_codeword);
  if (out.format == "json") {
    out.write_json({{"p", spec.p},
                    {"trials", st.trials},
                    {"failures", st.failures},
                    {"failure_rate", st.failure_rate},
                    {"seed", st.seed}});
  } else {
    std::ostringstream os;
    os << "p,trials,failures,failure_rate,seed\n";
    os << fmt(spec.p) << ',' << st.trials << ',' << st.failures << ',' << fmt(st.failure_rate) << ','
       << st.seed << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

int run_sweep(const std::string& channel, int m, int r, const std::string& c_grid, std::uint64_t trials,
              std::uint64_t seed, int threads, Output& out) {
  CodeParams params(m, r);
  ChannelKind kind = channel == "bec" ? ChannelKind::BEC : ChannelKind::BSC;
  std::vector<double> grid = parse_grid(c_grid);
  out.set("channel", channel);
  out.set("m", m);
  out.set("r", r);
  out.set("c_grid", c_grid);
  out.set("trials", trials);
  out.set("seed", seed);
  std::vector<SweepRow> rows = capacity_sweep(params, kind, grid, trials, seed, threads);
  if (out.format == "json") {
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back({{"c", row.c},
                     {"p", row.p},
                     {"trials", row.stats.trials},
                     {"failures", row.stats.failures},
                     {"failure_rate", row.stats.failure_rate},
                     {"seed", row.stats.seed}});
    out.write_json(arr);
  } else {
    std::ostringstream os;
    os << "c,p,trials,failures,failure_rate,seed\n";
    for (const auto& row : rows)
      os << fmt(row.c) << ',' << fmt(row.p) << ',' << row.stats.trials << ',' << row.stats.failures << ','
         << fmt(row.stats.failure_rate) << ',' << row.stats.seed << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- constraints
int run_check_constraints(const std::string& channel, double gamma, int scan_limit, Output& out) {
  ConstraintReport rep = channel == "bec" ? check_bec_constraints(gamma, scan_limit)
                                          : check_bsc_constraints(gamma, scan_limit);
  out.set("channel", channel);
  out.set("gamma", gamma);
  out.set("scan_limit", scan_limit);
  json fam = json::array();
  for (const auto& e : rep.family_minima)
    fam.push_back({{"family", e.family}, {"index", e.index}, {"margin", e.margin}});
  json data = {{"ok", rep.ok},
               {"worst_margin", rep.worst_margin},
               {"worst_family", rep.worst.family},
               {"worst_index", rep.worst.index},
               {"tail_certified", rep.tail_certified},
               {"family_minima", fam}};
  if (out.format == "json") {
    out.write_json(data);
  } else {
    std::ostringstream os;
    os << "key,value\n";
    os << "ok," << (rep.ok ? "true" : "false") << '\n';
    os << "worst_margin," << fmt(rep.worst_margin) << '\n';
    os << "worst_family," << rep.worst.family << '\n';
    os << "worst_index," << rep.worst.index << '\n';
    os << "tail_certified," << (rep.tail_certified ? "true" : "false") << '\n';
    for (const auto& e : rep.family_minima)
      os << "family" << e.family << "_min_margin," << fmt(e.margin) << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- combinatorics
int run_combinatorics(const std::string& op, long long m, long long r, int ell, int t, double p,
                      double xi, int terms, double c, double R, double gamma, Output& out) {
  out.set("op", op);
  json data;
  if (op == "binom-leq") {
    out.set("m", static_cast<std::uint64_t>(m));
    out.set("r", static_cast<std::uint64_t>(r));
    data = {{"value", binom_leq(m, r).str()}};
  } else if (op == "log2-binom-leq") {
    out.set("m", static_cast<std::uint64_t>(m));
    out.set("r", static_cast<std::uint64_t>(r));
    Log2Estimate est = log2_binom_leq(m, r);
    data = {{"log2", est.value}, {"abs_err", est.abs_err}};
  } else if (op == "entropy") {
    out.set("p", p);
    data = {{"h", binary_entropy(p)}};
  } else if (op == "entropy-taylor") {
    out.set("xi", xi);
    out.set("terms", terms);
    data = {{"value", entropy_taylor(xi, terms)}};
  } else if (op == "xi-from-capacity-gap") {
    out.set("c", c);
    out.set("R", R);
    double v = xi_from_capacity_gap(c, R);
    data = {{"xi", v}, {"p", (1.0 - v) / 2.0}};
  } else if (op == "smallest-s") {
    out.set("gamma", gamma);
    out.set("ell", ell);
    out.set("m", static_cast<std::uint64_t>(m));
    SParams sp = smallest_s(gamma, ell, m);
    data = {{"s", sp.s}, {"gamma_tilde", sp.gamma_tilde}, {"c_gamma", sp.c_gamma}, {"d_gamma", sp.d_gamma}};
  } else if (op == "lemma-a1") {
    out.set("m", static_cast<std::uint64_t>(m));
    out.set("r", static_cast<std::uint64_t>(r));
    out.set("ell", ell);
    auto [lhs, rhs] = lemma_A1_ratio(static_cast<int>(m), static_cast<int>(r), ell);
    data = {{"lhs", lhs.str()}, {"rhs_bound", rhs}, {"holds", to_double_saturating(lhs) <= rhs}};
  } else if (op == "lemma-a2") {
    out.set("m", static_cast<std::uint64_t>(m));
    out.set("r", static_cast<std::uint64_t>(r));
    out.set("t", t);
    auto [lhs, rhs] = lemma_A2_ratio(static_cast<int>(m), static_cast<int>(r), t);
    data = {{"lhs", lhs.str()}, {"rhs_bound", rhs}, {"holds", to_double_saturating(lhs) >= rhs}};
  } else {
    throw precondition_error("combinatorics: unknown --op " + op);
  }
  if (out.format == "json") {
    out.write_json(data);
  } else {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = data.begin(); it != data.end(); ++it)
      os << it.key() << ',' << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
         << '\n';
    out.write_csv(os.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmlab: Reed-Muller code laboratory"};
  app.require_subcommand(1);

  // Shared state filled by subcommand flags.
  std::string format = "csv", out_path, channel = "bec", kind, op, c_grid, f_anf;
  int m = 0, r = 0, ell = 1, k = 2, t = 1, terms = 50, retries = 20, scan_limit = 500, threads = 0;
  double epsilon = 0.5, delta = 0.125, p = 0.0, c = 1.0, R = 0.5, gamma = 0.02, m4_const = 0.0, xi = 0.5;
  std::uint64_t trials = 0, seed = 0, samples = 40;
  bool random_codeword = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* sc_profile = app.add_subcommand("weight-profile", "exact or Monte Carlo weight enumerator");
  sc_profile->add_option("--m", m)->required();
  sc_profile->add_option("--r", r)->required();
  sc_profile->add_option("--trials", trials);
  CLI::Option* profile_seed = sc_profile->add_option("--seed", seed);
  add_common(sc_profile);

  CLI::App* sc_tail = app.add_subcommand("bias-tail", "empirical bias tail vs concentration bound");
  sc_tail->add_option("--m", m)->required();
  sc_tail->add_option("--r", r)->required();
  sc_tail->add_option("--epsilon", epsilon)->required();
  sc_tail->add_option("--trials", trials)->required();
  sc_tail->add_option("--seed", seed)->required();
  add_common(sc_tail);

  CLI::App* sc_bounds = app.add_subcommand("bounds", "weight-distribution bound evaluators");
  sc_bounds->add_option("--kind", kind, "low-weight|low-bias|net-a|net-a1|recursion|lower-bound")->required();
  sc_bounds->add_option("--m", m)->required();
  sc_bounds->add_option("--r", r)->required();
  sc_bounds->add_option("--ell", ell);
  sc_bounds->add_option("--k", k);
  sc_bounds->add_option("--t", t);
  sc_bounds->add_option("--m4-const", m4_const);
  add_common(sc_bounds);

  CLI::App* sc_lbs = app.add_subcommand("lower-bound-sample", "biased-polynomial construction sampler");
  sc_lbs->add_option("--m", m)->required();
  sc_lbs->add_option("--r", r)->required();
  sc_lbs->add_option("--ell", ell)->required();
  sc_lbs->add_option("--samples", samples)->required();
  sc_lbs->add_option("--seed", seed)->required();
  add_common(sc_lbs);

  CLI::App* sc_approx = app.add_subcommand("approx", "majority-of-derivatives approximators");
  sc_approx->add_option("--kind", kind, "low-weight|low-bias|weighted-sign")->required();
  sc_approx->add_option("--m", m)->required();
  sc_approx->add_option("--f-anf", f_anf, "polynomial as sorted hex mask list, e.g. 0,3,7")->required();
  sc_approx->add_option("--k", k);
  sc_approx->add_option("--epsilon", epsilon);
  sc_approx->add_option("--delta", delta);
  sc_approx->add_option("--retries", retries);
  sc_approx->add_option("--samples", samples);
  sc_approx->add_option("--seed", seed)->required();
  add_common(sc_approx);

  CLI::App* sc_sim = app.add_subcommand("simulate", "single-point decoding failure estimate");
  sc_sim->add_option("--channel", channel)->check(CLI::IsMember({"bec", "bsc"}))->required();
  sc_sim->add_option("--m", m)->required();
  sc_sim->add_option("--r", r)->required();
  CLI::Option* sim_p = sc_sim->add_option("--p", p);
  CLI::Option* sim_c = sc_sim->add_option("--c", c);
  sc_sim->add_option("--trials", trials)->required();
  sc_sim->add_option("--seed", seed)->required();
  sc_sim->add_option("--threads", threads);
  sc_sim->add_flag("--random-codeword", random_codeword, "transmit a random codeword instead of zero");
  add_common(sc_sim);

  CLI::App* sc_sweep = app.add_subcommand("sweep", "failure-rate sweep over capacity-gap grid");
  sc_sweep->add_option("--channel", channel)->check(CLI::IsMember({"bec", "bsc"}))->required();
  sc_sweep->add_option("--m", m)->required();
  sc_sweep->add_option("--r", r)->required();
  sc_sweep->add_option("--c-grid", c_grid, "comma-separated c values")->required();
  sc_sweep->add_option("--trials", trials)->required();
  sc_sweep->add_option("--seed", seed)->required();
  sc_sweep->add_option("--threads", threads);
  add_common(sc_sweep);

  CLI::App* sc_check = app.add_subcommand("check-capacity-constraints", "certify the gamma-threshold inequalities");
  sc_check->add_option("--channel", channel)->check(CLI::IsMember({"bec", "bsc"}))->required();
  sc_check->add_option("--gamma", gamma)->required();
  sc_check->add_option("--scan-limit", scan_limit);
  add_common(sc_check);

  CLI::App* sc_comb = app.add_subcommand("combinatorics", "binomial sums, entropy, appendix solvers");
  sc_comb->add_option("--op", op,
                      "binom-leq|log2-binom-leq|entropy|entropy-taylor|xi-from-capacity-gap|smallest-s|lemma-a1|lemma-a2")
      ->required();
  long long mm = 0, rr = 0;
  sc_comb->add_option("--m", mm);
  sc_comb->add_option("--r", rr);
  sc_comb->add_option("--ell", ell);
  sc_comb->add_option("--t", t);
  sc_comb->add_option("--p", p);
  sc_comb->add_option("--xi", xi);
  sc_comb->add_option("--terms", terms);
  sc_comb->add_option("--c", c);
  sc_comb->add_option("--R", R);
  sc_comb->add_option("--gamma", gamma);
  add_common(sc_comb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return kExitUsage;
  }

  Output out;
  out.format = format;
  out.out_path = out_path;

  try {
    if (sc_profile->parsed()) {
      out.subcommand = "weight-profile";
      return run_weight_profile(m, r, trials, profile_seed->count() > 0, seed, out);
    }
    if (sc_tail->parsed()) {
      out.subcommand = "bias-tail";
      return run_bias_tail(m, r, epsilon, trials, seed, out);
    }
    if (sc_bounds->parsed()) {
      out.subcommand = "bounds";
      return run_bounds(kind, m, r, ell, k, t, m4_const, out);
    }
    if (sc_lbs->parsed()) {
      out.subcommand = "lower-bound-sample";
      return run_lower_bound_sample(m, r, ell, samples, seed, out);
    }
    if (sc_approx->parsed()) {
      out.subcommand = "approx";
      return run_approx(kind, m, f_anf, k, epsilon, delta, retries, samples, seed, out);
    }
    if (sc_sim->parsed()) {
      out.subcommand = "simulate";
      return run_simulate(channel, m, r, p, sim_p->count() > 0, c, sim_c->count() > 0, trials, seed,
                          thread_count(threads), random_codeword, out);
    }
    if (sc_sweep->parsed()) {
      out.subcommand = "sweep";
      return run_sweep(channel, m, r, c_grid, trials, seed, thread_count(threads), out);
    }
    if (sc_check->parsed()) {
      out.subcommand = "check-capacity-constraints";
      return run_check_constraints(channel, gamma, scan_limit, out);
    }
    if (sc_comb->parsed()) {
      out.subcommand = "combinatorics";
      return run_combinatorics(op, mm, rr, ell, t, p, xi, terms, c, R, gamma, out);
    }
    std::cerr << app.help() << std::flush;
    return kExitUsage;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
