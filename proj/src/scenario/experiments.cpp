#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "params.hpp"
#include "randlab/coding/kucera_gacs.hpp"
#include "randlab/fireworks/fireworks.hpp"
#include "randlab/minpair/minpair.hpp"
#include "randlab/scenario/scenario.hpp"
#include "randlab/staged/pairing.hpp"

namespace randlab::scenario {
namespace {

template <class Seq, class F>
std::string join(const Seq& items, const std::string& sep, F&& show) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    out += show(item);
    first = false;
  }
  return out;
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string yes(bool b) { return b ? "yes" : "no"; }
std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

struct Context {
  const Scenario& s;
  const ExperimentSpec& spec;
  Params p;
  ExperimentResult result;
  std::ostringstream txt;

  Context(const Scenario& sc, const ExperimentSpec& e)
      : s(sc), spec(e), p(e.params, sc.source, &sc.overrides), result{e.name, e.kind, true, "", {}, {}} {
    txt << "experiment: " << e.name << "\nkind: " << e.kind << "\n";
  }

  template <class M>
  const typename M::mapped_type& lookup(const M& map, const std::string& key, const std::string& what) {
    const auto name = p.require<std::string>(key);
    auto it = map.find(name);
    if (it == map.end()) p.fail(p.at(key), "unknown " + what + " '" + name + "'");
    return it->second;
  }

  void csv(const std::string& suffix, const std::string& content) {
    result.artifacts.push_back({spec.name + suffix + ".csv", content});
  }
  void evidence(const std::string& tag, const std::string& detail) { result.evidence.push_back({tag, detail}); }
  void check(bool ok, const std::string& what) {
    if (!ok) {
      result.pass = false;
      txt << "FAILED: " << what << "\n";
    }
  }
};

std::vector<BitString> payload_list(const Context& c) {
  return c.p.has("payloads") ? c.p.bit_list(c.p.at("payloads")) : std::vector<BitString>{};
}

fireworks::Config fireworks_config(Context& c) {
  fireworks::Config cfg;
  for (const auto& a : c.p.at("adversaries")) {
    const auto name = c.p.convert<std::string>(a);
    auto it = c.s.enumerators.find(name);
    if (it == c.s.enumerators.end()) c.p.fail(a, "unknown enumerator '" + name + "'");
    cfg.adversaries.push_back(it->second);
  }
  cfg.k = c.p.get<std::uint64_t>("k", cfg.k);
  cfg.stage_budget = c.p.get<Stage>("stage_budget", cfg.stage_budget);
  cfg.target_length = c.p.get<std::size_t>("target_length", cfg.target_length);
  cfg.universe_depth = c.p.get<std::size_t>("universe_depth", cfg.universe_depth);
  if (c.p.has("cap_bound")) {
    const YAML::Node b = c.p.at("cap_bound");
    if (b.IsSequence()) {
      cfg.cap_bound.kind = fireworks::CapBound::Kind::Explicit;
      cfg.cap_bound.explicit_log2 = c.p.convert<std::vector<unsigned>>(b);
    } else {
      const auto kind = c.p.convert<std::string>(b);
      if (kind == "paired")
        cfg.cap_bound.kind = fireworks::CapBound::Kind::Paired;
      else if (kind != "default")
        c.p.fail(b, "cap_bound must be 'default', 'paired' or a list of log2 caps");
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    c.p.fail(e.what());
  }
  c.txt << "adversaries: " << cfg.adversaries.size() << "\nk: " << cfg.k << "\ncap_bound: " << cfg.cap_bound.describe()
        << "\ncap_limits: "
        << join(std::vector<std::size_t>(cfg.adversaries.size()), " ",
                [&, e = std::size_t{0}](std::size_t) mutable { return num(cfg.cap_limit(e++)); })
        << "\nstage_budget: " << cfg.stage_budget << "\ntarget_length: " << cfg.target_length
        << "\nuniverse_depth: " << cfg.universe_depth
        << "\nbudget_covers_adversaries: " << yes(cfg.budget_covers_adversaries()) << "\n";
  return cfg;
}

void fireworks_run(Context& c) {
  const auto cfg = fireworks_config(c);
  fireworks::CapSource source = c.p.has("oracle") ? fireworks::CapSource{c.p.bits(c.p.at("oracle"))}
                                                  : fireworks::CapSource{c.p.get<std::uint64_t>(
                                                        "caps_seed", c.s.seed_for("caps:" + c.spec.name))};
  const auto run = fireworks::run_fireworks(cfg, source);
  c.txt << "caps: " << join(run.caps(), " ", num) << "\nx_prefix: " << run.x_prefix.str()
        << "\nhalted: " << yes(run.halted) << "\n";
  std::ostringstream csv;
  csv << "requirement,cap,outcome,failure,passive_guesses,active_stage,resolved_stage,check\n";
  bool settled = true;
  for (std::size_t e = 0; e < run.requirements.size(); ++e) {
    const auto& r = run.requirements[e];
    const auto check =
        fireworks::check_requirement(cfg.adversaries[e].final_set(), run.x_prefix, cfg.universe_depth);
    csv << e << ',' << r.cap << ',' << to_string(r.outcome) << ',' << to_string(r.failure) << ','
        << r.passive_guesses << ',' << opt(r.active_stage) << ',' << opt(r.resolved_stage) << ',' << to_string(check)
        << '\n';
    settled = settled && r.outcome != fireworks::Outcome::ActiveFailure &&
              r.outcome != fireworks::Outcome::Unresolved;
    if (settled) c.check(check != fireworks::Requirement::Unmet, "requirement " + num(e) + " unmet in a settled run");
  }
  c.txt << "trace:\n";
  for (const auto& ev : run.trace)
    c.txt << "  stage " << ev.stage << " R" << ev.requirement << ' ' << to_string(ev.kind) << ' ' << ev.prefix.str()
          << '\n';
  c.csv("", csv.str());
  c.result.headline = "x=" + run.x_prefix.str() + (run.failed() ? " (failed)" : "");
}

void fireworks_sweep(Context& c) {
  const auto cfg = fireworks_config(c);
  const auto sw = fireworks::sweep(cfg);
  const auto tri = fireworks::check_trichotomy(cfg, sw);
  std::ostringstream csv;
  csv << "caps,outcomes,failed\n";
  for (const auto& row : sw.rows)
    csv << join(row.caps, " ", num) << ',' << join(row.outcomes, " ", [](auto o) { return to_string(o); }) << ','
        << (row.failed ? 1 : 0) << '\n';
  c.csv("", csv.str());
  std::ostringstream hist;
  hist << "requirement,outcome,count\n";
  for (std::size_t e = 0; e < cfg.adversaries.size(); ++e)
    for (auto o : {fireworks::Outcome::PassiveSuccess, fireworks::Outcome::ActiveSuccess,
                   fireworks::Outcome::ActiveFailure, fireworks::Outcome::Unresolved})
      hist << e << ',' << to_string(o) << ','
           << std::count_if(sw.rows.begin(), sw.rows.end(), [&](const auto& r) { return r.outcomes[e] == o; })
           << '\n';
  c.csv("_histogram", hist.str());
  const bool within = sw.failure_probability <= sw.bound;
  c.txt << "cap_vectors: " << sw.rows.size() << "\nfailure_probability: " << sw.failure_probability.str()
        << "\nbound: " << sw.bound.str() << "\nwithin_bound: " << yes(within)
        << "\ntrichotomy: " << (tri.pass ? "pass" : "fail") << "\nfixings_checked: " << tri.fixings_checked << "\n";
  for (const auto& v : tri.violations) c.txt << "  violation: " << v << "\n";
  c.check(within, "failure probability above the bound");
  c.check(tri.pass, "outcome trichotomy");
  if (within && sw.bound < Dyadic::one())
    c.evidence("fireworks_bound", "failure probability " + sw.failure_probability.str() + " <= " + sw.bound.str());
  c.result.headline = "failure " + sw.failure_probability.str() + " <= " + sw.bound.str();
}

void fireworks_extract(Context& c) {
  const auto cfg = fireworks_config(c);
  const auto sets = fireworks::extract_failure_sets(cfg);
  const Dyadic combined = fireworks::combined_failure_measure(sets);
  const Dyadic exact = fireworks::exact_failure_probability(cfg);
  for (std::size_t e = 0; e < sets.size(); ++e) {
    c.txt << "e=" << e << "\n  U: " << sets[e].u.final().str() << "\n  V: " << sets[e].v.final().str()
          << "\n  measure: " << sets[e].measure.str() << "\n  bound: " << sets[e].bound.str() << "\n";
    c.check(sets[e].measure <= sets[e].bound, "failure set " + num(e) + " above 1/N");
  }
  c.txt << "combined_measure: " << combined.str() << "\nexact_failure_probability: " << exact.str() << "\n";
  c.check(combined == exact, "combined failure measure differs from the exact failure probability");
  c.result.headline = "combined " + combined.str();
}

void describe_levels(std::ostringstream& csv, const demuth::VerifyReport& r) {
  csv << "level,version_count,version_bound,measure,measure_bound,pass\n";
  for (const auto& l : r.levels)
    csv << l.level << ',' << l.count << ',' << l.count_bound << ',' << l.measure.str() << ','
        << l.measure_bound.str() << ',' << (l.pass ? "pass" : "fail") << '\n';
}

void report_check(Context& c, const demuth::ConversionCheck& chk) {
  for (const auto& f : chk.failures) c.txt << "  " << f << "\n";
  c.check(chk.pass, "conversion check");
}

void tests_convert(Context& c) {
  const auto direction = c.p.get<std::string>("direction", "d2u");
  std::ostringstream csv;
  if (direction == "d2u") {
    const auto& t = c.lookup(c.s.demuth_tests, "test", "demuth test");
    const auto out = demuth::demuth_to_diffunion(t);
    const auto v = demuth::verify_diffunion(out);
    describe_levels(csv, v);
    c.check(v.pass, "converted test fails verification");
    report_check(c, demuth::check_forward_conversion(t));
  } else if (direction == "u2d") {
    const auto& t = c.lookup(c.s.diffunion_tests, "test", "difference test");
    const auto out = demuth::diffunion_to_demuth(t);
    const auto v = demuth::verify_demuth(out);
    describe_levels(csv, v);
    c.check(v.pass, "converted test fails verification");
    report_check(c, demuth::check_converse_conversion(t));
  } else {
    c.p.fail(c.p.at("direction"), "direction must be d2u or u2d");
  }
  c.csv("", csv.str());
  c.txt << "direction: " << direction << "\nresult: " << (c.result.pass ? "pass" : "fail") << "\n";
  if (c.result.pass) c.evidence("conversion_valid", direction + " conversion verified");
  c.result.headline = direction + (c.result.pass ? " verified" : " failed");
}

void conversion_sweep(Context& c) {
  demuth::RandomTestParams rp;
  rp.levels = c.p.get<std::size_t>("levels", rp.levels);
  rp.max_bound = c.p.get<std::uint64_t>("max_bound", rp.max_bound);
  rp.depth = c.p.get<std::size_t>("depth", rp.depth);
  rp.horizon = c.p.get<Stage>("horizon", rp.horizon);
  rp.strings_per_set = c.p.get<std::size_t>("strings_per_set", rp.strings_per_set);
  const auto count = c.p.get<std::size_t>("count", 100);
  std::mt19937_64 rng(c.s.seed_for("conversion:" + c.spec.name));
  std::ostringstream csv;
  csv << "index,direction,levels,verify,conversion,detail\n";
  std::size_t passed = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto dt = demuth::random_demuth_test(rng, rp);
    const auto fwd = demuth::check_forward_conversion(dt);
    const bool v1 = demuth::verify_demuth(dt).pass;
    csv << i << ",d2u," << dt.level_count() << ',' << (v1 ? "pass" : "fail") << ',' << (fwd.pass ? "pass" : "fail")
        << ',' << (fwd.failures.empty() ? "" : fwd.failures.front()) << '\n';
    const auto ut = demuth::random_diffunion_test(rng, rp);
    const auto bwd = demuth::check_converse_conversion(ut);
    const bool v2 = demuth::verify_demuth(demuth::diffunion_to_demuth(ut)).pass;
    csv << i << ",u2d," << ut.level_count() << ',' << (v2 ? "pass" : "fail") << ',' << (bwd.pass ? "pass" : "fail")
        << ',' << (bwd.failures.empty() ? "" : bwd.failures.front()) << '\n';
    if (v1 && fwd.pass && v2 && bwd.pass) ++passed;
  }
  c.csv("", csv.str());
  c.txt << "tests_per_direction: " << count << "\nall_pass: " << yes(passed == count) << "\n";
  c.check(passed == count, num(count - passed) + " conversions failed");
  if (c.result.pass) c.evidence("conversion_valid", num(count) + " random tests per direction verified");
  c.result.headline = num(passed) + "/" + num(count) + " pass";
}

std::vector<BitString> strings_up_to(std::size_t n) {
  std::vector<BitString> out;
  for (std::uint64_t i = 0; BitString::from_nat(i).size() <= n; ++i) out.push_back(BitString::from_nat(i));
  return out;
}

void kg_roundtrip(Context& c) {
  const auto& tree = c.lookup(c.s.trees, "tree", "tree");
  const BitString sigma = c.p.bits("sigma", BitString{});
  const auto max_len = c.p.get<std::size_t>("max_payload_length", 5);
  std::ostringstream csv;
  csv << "payload,codeword,decoded,survives,ok\n";
  std::size_t ok_count = 0;
  const auto payloads = strings_up_to(max_len);
  for (const auto& xi : payloads) {
    const BitString tau = coding::kg_encode(xi, sigma, tree);
    const auto back = coding::kg_decode(tau, sigma, tree, tree.horizon());
    const bool survives = tree.survives(tau, tree.horizon());
    const bool ok = survives && back == xi;
    ok_count += ok;
    csv << xi.str() << ',' << tau.str() << ',' << (back ? back->str() : "undecodable") << ',' << yes(survives) << ','
        << yes(ok) << '\n';
  }
  c.csv("", csv.str());
  c.txt << "payloads: " << payloads.size() << "\nround_trips: " << ok_count << "\n";
  c.check(ok_count == payloads.size(), "round trip failures");
  c.result.headline = num(ok_count) + "/" + num(payloads.size()) + " round trips";
}

void kg_encode(Context& c) {
  const auto& tree = c.lookup(c.s.trees, "tree", "tree");
  const BitString sigma = c.p.bits("sigma", BitString{});
  const BitString payload = c.p.bits(c.p.at("payload"));
  const bool raw = c.p.get<bool>("raw", false);
  const BitString tau = raw ? coding::kg_encode_bits(payload, sigma, tree) : coding::kg_encode(payload, sigma, tree);
  c.txt << "sigma: " << sigma.str() << "\npayload: " << payload.str() << "\nraw: " << yes(raw)
        << "\ncodeword: " << tau.str() << "\n";
  c.result.headline = "codeword " + tau.str();
}

void kg_decode(Context& c) {
  const auto& tree = c.lookup(c.s.trees, "tree", "tree");
  const BitString sigma = c.p.bits("sigma", BitString{});
  const BitString tau = c.p.bits(c.p.at("codeword"));
  const Stage stage = c.p.get<Stage>("stage", tree.horizon());
  const bool raw = c.p.get<bool>("raw", false);
  const auto out = raw ? coding::kg_decode_bits(tau, sigma, tree, stage) : coding::kg_decode(tau, sigma, tree, stage);
  c.txt << "sigma: " << sigma.str() << "\ncodeword: " << tau.str() << "\nstage: " << stage << "\nraw: " << yes(raw)
        << "\ndecoded: " << (out ? out->str() : "undecodable") << "\n";
  c.result.headline = out ? "decoded " + out->str() : "undecodable";
}

void w2r_encode(Context& c) {
  const auto& scheme = c.lookup(c.s.schemes, "scheme", "scheme");
  const auto payloads = payload_list(c);
  const auto enc = coding::w2r_encode(payloads, scheme);
  const auto avoid = coding::avoidance(enc, scheme);
  std::ostringstream csv;
  csv << "n,payload,family,level,codeword,class_measure,avoids\n";
  for (std::size_t n = 0; n < enc.codewords.size(); ++n) {
    csv << n + 1 << ',' << payloads[n].str() << ',' << scheme.star[n] << ',' << enc.levels[n] << ','
        << enc.codewords[n].str() << ',' << enc.classes[n + 1].class_measure(scheme.horizon()).str() << ','
        << yes(avoid[n]) << '\n';
    c.check(avoid[n], "class " + num(n + 1) + " meets its family level");
  }
  c.csv("", csv.str());
  c.txt << "codeword: " << enc.codeword.str() << "\nlength: " << enc.codeword.size() << "\n";
  c.result.headline = "codeword length " + num(enc.codeword.size());
}

void w2r_decode(Context& c) {
  const auto& scheme = c.lookup(c.s.schemes, "scheme", "scheme");
  const auto payloads = payload_list(c);
  BitString xi;
  for (const auto& p : payloads) xi.append(p);
  const auto stab = coding::stabilization_stage(payloads, scheme);
  const auto enc = coding::w2r_encode(payloads, scheme);
  const Stage t_max =
      c.p.get<Stage>("tmax", static_cast<Stage>(std::max<std::size_t>(xi.size(), stab.stage) + 1));
  const auto out = coding::gamma_decode(enc.codeword, t_max, scheme);
  std::ostringstream csv;
  csv << "position,expected,decoded,defined_at,correct\n";
  std::size_t wrong = 0, wrong_late = 0, undefined = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const bool defined = i < out.output.size() && out.output[i];
    const bool correct = defined && *out.output[i] == xi[i];
    if (!defined) ++undefined;
    if (defined && !correct) {
      ++wrong;
      if (i >= stab.stage) ++wrong_late;
    }
    csv << i << ',' << xi[i] << ',' << (defined ? num(*out.output[i]) : "-") << ','
        << (defined ? num(*out.defined_at[i]) : "-") << ',' << (defined ? yes(correct) : "-") << '\n';
  }
  c.csv("", csv.str());
  c.txt << "payload_bits: " << xi.str() << "\nstabilization_stage: " << stab.stage
        << "\nper_codeword: " << join(stab.per_codeword, " ", num) << "\ntmax: " << t_max
        << "\ndisagreements: " << wrong << "\nundefined: " << undefined << "\nsub-procedures:\n";
  for (const auto& run : out.runs)
    c.txt << "  t=" << run.t << " codewords=" << run.codewords.size() << " decoded=" << run.decoded.str()
          << " levels=" << join(run.levels, ",", opt) << "\n";
  c.check(wrong_late == 0, "disagreement at or above the stabilization stage");
  c.result.headline = num(wrong) + " disagreements, N=" + num(stab.stage);
}

void w2r_claim1(Context& c) {
  std::vector<std::pair<std::string, coding::W2RScheme>> schemes;
  if (c.p.has("schemes")) {
    for (const auto& n : c.p.at("schemes")) {
      const auto name = c.p.convert<std::string>(n);
      if (!c.s.schemes.count(name)) c.p.fail(n, "unknown scheme '" + name + "'");
      schemes.emplace_back(name, c.s.schemes.at(name));
    }
  }
  std::mt19937_64 rng(c.s.seed_for("claim1:" + c.spec.name));
  const auto random_count = c.p.get<std::size_t>("random_schemes", schemes.empty() ? 30 : 0);
  for (std::size_t i = 0; i < random_count; ++i)
    schemes.emplace_back("random" + num(i), coding::random_scheme(rng, coding::SchemeParams{}));
  const auto samples = c.p.get<std::size_t>("samples", 4);
  const auto max_payloads = c.p.get<std::size_t>("max_payloads", 3);
  const auto max_length = c.p.get<std::size_t>("max_length", 4);
  std::ostringstream csv;
  csv << "scheme,sample,payloads,bits,stabilization,defined,undefined,disagreements,disagreements_at_or_above\n";
  std::size_t total = 0, bad = 0, max_n = 0;
  for (const auto& [name, scheme] : schemes) {
    for (std::size_t k = 0; k < samples; ++k) {
      std::vector<BitString> payloads;
      const std::size_t count = 1 + draw_below(rng, std::min(max_payloads, scheme.star.size()));
      for (std::size_t j = 0; j < count; ++j) payloads.push_back(random_string(rng, draw_below(rng, max_length + 1)));
      const auto chk = coding::check_decoding(payloads, scheme);
      csv << name << ',' << k << ',' << join(payloads, " ", [](const BitString& b) { return b.str(); }) << ','
          << chk.xi.size() << ',' << chk.stabilization << ',' << chk.defined << ',' << chk.undefined << ','
          << chk.disagreements << ',' << chk.disagreements_at_or_above << '\n';
      ++total;
      max_n = std::max<std::size_t>(max_n, chk.stabilization);
      if (chk.disagreements_at_or_above != 0 || chk.disagreements > chk.stabilization) ++bad;
    }
  }
  c.csv("", csv.str());
  c.txt << "schemes: " << schemes.size() << "\nsamples: " << total << "\nmax_stabilization: " << max_n
        << "\nviolations: " << bad << "\n";
  c.check(bad == 0, "errors outside the stabilization bound");
  c.result.headline = num(total) + " samples, " + num(bad) + " violations";
}

void w2r_claim2(Context& c) {
  const auto& scheme = c.lookup(c.s.schemes, "scheme", "scheme");
  const auto target = c.p.get<std::string>("target", "weakly 2-gen");
  if (std::find(interaction_columns().begin(), interaction_columns().end(), target) == interaction_columns().end())
    c.p.fail(c.p.at("target"), "unknown genericity column '" + target + "'");
  std::vector<std::pair<std::string, const DenseOpenSpec*>> opens;
  for (const auto& n : c.p.at("dense_opens")) {
    const auto name = c.p.convert<std::string>(n);
    if (!c.s.dense_opens.count(name)) c.p.fail(n, "unknown dense open '" + name + "'");
    opens.emplace_back(name, &c.s.dense_opens.at(name));
  }
  std::vector<BitString> payloads;
  std::ostringstream csv;
  csv << "step,open,n,zeta,next_payload\n";
  for (std::size_t i = 0; i < opens.size(); ++i) {
    const auto ext = coding::extend_into_open(payloads, opens[i].second->set, scheme);
    csv << i + 1 << ',' << opens[i].first << ',' << ext.n << ',' << ext.zeta.str() << ',' << ext.next_payload.str()
        << '\n';
    payloads.push_back(ext.next_payload);
  }
  const auto enc = coding::w2r_encode(payloads, scheme);
  const auto out = coding::gamma_decode(enc.codeword, static_cast<Stage>(enc.codeword.size()), scheme);
  const BitString decoded = out.defined_prefix();
  c.csv("", csv.str());
  c.txt << "codeword: " << enc.codeword.str() << "\ndecoded: " << decoded.str() << "\n";
  bool all = true;
  for (const auto& [name, d] : opens) {
    const bool in = d->set.contains_prefix_of(decoded);
    all = all && in;
    c.txt << "  " << name << " (" << d->description << "): " << (in ? "inside" : "outside") << "\n";
  }
  c.check(all, "decoded output outside some dense open");
  if (all)
    c.evidence("claim2_hit:" + target, "decoded output of a weak-2-randomness proxy codeword lies in all " + num(opens.size()) +
                                 " configured dense opens");
  c.result.headline = all ? "inside all " + num(opens.size()) : "missed";
}

void minpair_analyze(Context& c) {
  const auto& phi = c.lookup(c.s.functionals, "phi", "functional");
  const auto& psi = c.lookup(c.s.functionals, "psi", "functional");
  const BitString g = c.p.bits(c.p.at("g_prefix"));
  const BitString x = c.p.bits(c.p.at("x"));
  const auto levels = c.p.get<std::size_t>("levels", 5);

  std::ostringstream fcsv;
  fcsv << "sigma,nat,found_at,index_history,mind_changes,bound,final_value\n";
  for (std::uint64_t n = 0; n < levels; ++n) {
    const BitString sigma = BitString::from_nat(n);
    const auto fa = minpair::f_approx(phi, psi, sigma);
    fcsv << sigma.str() << ',' << n << ',' << (fa.family ? num(fa.family->found_at) : "-") << ','
         << join(fa.index_history, " ", [](const auto& h) { return num(h.second) + "@" + num(h.first); }) << ','
         << fa.mind_changes() << ',' << (std::uint64_t{1} << n) << ',' << fa.final_value().str() << '\n';
    c.check(fa.mind_changes() <= (std::uint64_t{1} << n), "mind changes above 2^N for " + sigma.str());
  }
  c.csv("_f", fcsv.str());

  const auto test = minpair::induced_demuth_test(phi, psi, levels);
  const auto report = demuth::verify_demuth(test);
  c.txt << "induced test:\n";
  for (const auto& l : report.levels)
    c.txt << "  level " << l.level << ": versions " << l.count << "/" << l.count_bound << ", measure "
          << l.measure.str() << " <= " << l.measure_bound.str() << " " << (l.pass ? "pass" : "fail") << "\n";
  c.check(report.pass, "induced test fails verify_demuth");

  std::vector<std::size_t> positions;
  if (c.p.has("positions")) {
    positions = c.p.convert<std::vector<std::size_t>>(c.p.at("positions"));
  } else {
    for (std::size_t n = 0; n <= std::min<std::size_t>(g.size(), 3); ++n) positions.push_back(n);
  }
  std::ostringstream ccsv;
  ccsv << "n,sigma,case,f_value,f_on_path,tau,x_in_level,phi_output,psi_output,disagreement\n";
  std::size_t compared = 0, disagreeing = 0;
  for (std::size_t n : positions) {
    if (n > g.size()) c.p.fail(c.p.at("positions"), "position " + num(n) + " beyond the G-prefix");
    const auto r = minpair::classify_case(phi, psi, g, x, n);
    ccsv << n << ',' << r.sigma.str() << ',' << to_string(r.kind) << ',' << r.f_value.str() << ','
         << yes(r.f_on_path) << ',' << (r.kind == minpair::Case::Two ? r.tau.str() : "-") << ','
         << (r.kind == minpair::Case::Two ? yes(r.x_in_level) : "-") << ',' << r.phi_output.str() << ','
         << r.psi_output.str() << ',' << opt(r.disagreement) << '\n';
    if (r.kind == minpair::Case::One && r.isolation) {
      c.txt << "position " << n << ": case1, tree antichain " << r.isolation->max_antichain << ", hypothesis "
            << yes(r.isolation->hypothesis) << ", onsets "
            << join(r.isolation->branches, " ", [](const auto& b) { return b.leaf.str() + ":" + num(b.onset); })
            << "\n";
      if (r.isolation->hypothesis) c.check(r.isolation->pass, "isolation structure at position " + num(n));
    }
    if (r.kind == minpair::Case::Two && !r.x_in_level && r.f_on_path) {
      ++compared;
      if (r.disagreement) ++disagreeing;
    }
  }
  c.csv("_cases", ccsv.str());
  c.txt << "case2_compared: " << compared << "\ncase2_disagreements: " << disagreeing << "\n";
  if (compared > 0 && compared == disagreeing)
    c.evidence("minpair_consistent", num(compared) + " case-2 positions, each with an explicit disagreement");
  c.result.headline = num(compared) + " case-2 comparisons, " + num(disagreeing) + " disagreements";
}

using Runner = std::function<void(Context&)>;

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> table{
      {"fireworks_run", fireworks_run},     {"fireworks_sweep", fireworks_sweep},
      {"fireworks_extract", fireworks_extract}, {"tests_convert", tests_convert},
      {"conversion_sweep", conversion_sweep}, {"kg_encode", kg_encode},
      {"kg_decode", kg_decode},             {"kg_roundtrip", kg_roundtrip},
      {"w2r_encode", w2r_encode},           {"w2r_decode", w2r_decode},
      {"w2r_claim1", w2r_claim1},           {"w2r_claim2", w2r_claim2},
      {"minpair_analyze", minpair_analyze}};
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> out;
    for (const auto& [k, r] : runners()) out.push_back(k);
    return out;
  }();
  return kinds;
}

bool ScenarioRun::pass() const {
  return std::all_of(experiments.begin(), experiments.end(), [](const auto& e) { return e.pass; });
}

ScenarioRun run_scenario(const Scenario& scenario, const std::vector<std::string>& kinds, const std::string& only) {
  ScenarioRun run{scenario.name, {}};
  for (const auto& spec : scenario.experiments) {
    if (!kinds.empty() && std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end()) continue;
    if (!only.empty() && spec.name != only) continue;
    Context c(scenario, spec);
    const auto& table = runners();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& r) { return r.first == spec.kind; });
    try {
      it->second(c);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      c.result.pass = false;
      c.result.headline = std::string("error: ") + e.what();
      c.txt << "ERROR: " << e.what() << "\n";
    }
    c.txt << "status: " << (c.result.pass ? "PASS" : "FAIL") << "\n";
    c.result.artifacts.insert(c.result.artifacts.begin(), Artifact{spec.name + ".txt", c.txt.str()});
    run.experiments.push_back(std::move(c.result));
  }
  return run;
}

}  // namespace randlab::scenario
