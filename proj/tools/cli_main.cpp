#include <CLI11.hpp>
#include <iostream>

#include "monodromy/json_io.hpp"

using namespace monodromy;

namespace {

DiscoveryMode parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return DiscoveryMode::exhaustive;
  if (mode == "scan") return DiscoveryMode::generator_scan;
  if (mode == "auto") return DiscoveryMode::automatic;
  throw error("cli: unknown mode \"" + mode + "\" (want exhaustive|scan|auto)");
}

struct CommonOpts {
  std::string out;
  std::string format = "json";
  u64 seed = 0;
  u64 ell_min = 0;
  std::string mode = "auto";

  void attach(CLI::App* cmd, bool with_mode = false) {
    cmd->add_option("--out", out, "output path (stdout when omitted)");
    cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", seed, "report seed");
    cmd->add_option("--ell-min", ell_min, "override the least analyzed prime");
    if (with_mode) cmd->add_option("--mode", mode, "exhaustive|scan|auto");
  }
  Thresholds thresholds() const {
    Thresholds th;
    th.ell_min_override = ell_min;
    return th;
  }
  void emit(json j) const { write_output(j, out, format == "text"); }
};

json stamp(json j, u64 seed) {
  json out;
  out["tool_version"] = kToolVersion;
  out["seed"] = seed;
  for (auto& [k, v] : j.items()) out[k] = v;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mod-ell monodromy invariants of finite matrix groups"};
  app.require_subcommand(1);

  // fixtures
  auto* cmd_fixtures = app.add_subcommand("fixtures", "emit a bundle from the fixture catalog");
  std::string fixture_name;
  std::vector<u64> fixture_primes;
  bool list_fixtures = false;
  CommonOpts fx;
  cmd_fixtures->add_option("--name", fixture_name, "catalog entry");
  cmd_fixtures->add_option("--primes", fixture_primes, "analysis primes")->delimiter(',');
  cmd_fixtures->add_flag("--list", list_fixtures, "list catalog names");
  fx.attach(cmd_fixtures);

  // envelope
  auto* cmd_envelope = app.add_subcommand("envelope", "semisimple envelope of one matrix group");
  std::string envelope_in;
  CommonOpts env;
  cmd_envelope->add_option("--in", envelope_in, "group JSON")->required();
  env.attach(cmd_envelope, true);

  // formchar
  auto* cmd_formchar = app.add_subcommand("formchar", "canonical formal character of weights or a lattice");
  std::string formchar_in;
  i64 formchar_bound = 0;
  CommonOpts fc;
  cmd_formchar->add_option("--in", formchar_in, "JSON with n and weights|basis")->required();
  cmd_formchar->add_option("--bound", formchar_bound, "also audit |weight entries| <= bound");
  fc.attach(cmd_formchar);

  // rank
  auto* cmd_rank = app.add_subcommand("rank", "ell-rank report of composition-factor descriptors");
  std::string rank_in;
  CommonOpts rk;
  cmd_rank->add_option("--in", rank_in, "JSON array of factor descriptors")->required();
  rk.attach(cmd_rank);

  // tame
  auto* cmd_tame = app.add_subcommand("tame", "tame-inertia character tools");
  cmd_tame->require_subcommand(1);
  auto* tame_decompose = cmd_tame->add_subcommand("decompose", "characters of a tame representation");
  std::string tame_in;
  CommonOpts td;
  tame_decompose->add_option("--in", tame_in, "TameRep JSON")->required();
  td.attach(tame_decompose);
  auto* tame_restrict = cmd_tame->add_subcommand("restrict", "ell-restricted digits of an exponent");
  u64 tr_ell = 0, tr_level = 0, tr_exponent = 0;
  CommonOpts tr;
  tame_restrict->add_option("--ell", tr_ell)->required();
  tame_restrict->add_option("--level", tr_level)->required();
  tame_restrict->add_option("--exponent", tr_exponent)->required();
  tr.attach(tame_restrict);
  auto* tame_raise = cmd_tame->add_subcommand("raise", "rewrite a character at a higher level");
  std::string raise_in;
  u64 raise_level_to = 0;
  CommonOpts trs;
  tame_raise->add_option("--in", raise_in, "TameCharacter JSON")->required();
  tame_raise->add_option("--level", raise_level_to, "target level")->required();
  trs.attach(tame_raise);
  auto* tame_serre = cmd_tame->add_subcommand("serre-check", "digit bounds against e*i");
  std::string serre_in;
  CommonOpts ts;
  tame_serre->add_option("--in", serre_in, "JSON {chars, e, i}")->required();
  ts.attach(tame_serre);
  auto* tame_rigidity = cmd_tame->add_subcommand("rigidity", "commutation rigidity verdict");
  std::string rigidity_in;
  CommonOpts tg;
  tame_rigidity->add_option("--in", rigidity_in, "JSON {rep, index, s, bound}")->required();
  tg.attach(tame_rigidity);

  // compat-check
  auto* cmd_compat = app.add_subcommand("compat-check", "characteristic-polynomial compatibility");
  std::string compat_bundle;
  CommonOpts cp;
  cmd_compat->add_option("--bundle", compat_bundle, "bundle JSON")->required();
  cp.attach(cmd_compat);

  // independence
  auto* cmd_indep = app.add_subcommand("independence", "cross-prime invariance verdict");
  std::string indep_bundle;
  CommonOpts ind;
  cmd_indep->add_option("--bundle", indep_bundle, "bundle JSON")->required();
  ind.attach(cmd_indep, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_fixtures) {
      if (list_fixtures) {
        json j;
        j["fixtures"] = fixture_names();
        fx.emit(stamp(j, fx.seed));
        return 0;
      }
      if (fixture_name.empty() || fixture_primes.empty())
        throw error("cli: fixtures needs --name and --primes (or --list)");
      SystemBundle b = gen_fixture(fixture_name, fixture_primes, fx.thresholds());
      fx.emit(bundle_to_json(b));
      return 0;
    }
    if (*cmd_envelope) {
      MatrixGroup g = group_from_json(load_json_file(envelope_in));
      PrimeReport r = analyze_group(g, env.seed, env.thresholds(), parse_mode(env.mode));
      json j = prime_report_to_json(r);
      j["label"] = g.label;
      env.emit(stamp(j, env.seed));
      return 0;
    }
    if (*cmd_formchar) {
      json in = load_json_file(formchar_in);
      if (!in.contains("n")) throw error("cli: formchar input needs n");
      u64 n = in.at("n").get<u64>();
      json j;
      if (in.contains("weights")) {
        IntMat w;
        for (auto& jr : in.at("weights")) w.push_back(jr.get<std::vector<i64>>());
        FormalCharacter out = canonical_form(annihilator_lattice(w, n), n);
        j["formal_character"] = formal_character_to_json(out);
        if (formchar_bound > 0) j["bounded"] = bounded_by(w, formchar_bound);
      } else if (in.contains("basis")) {
        IntMat basis;
        for (auto& jr : in.at("basis")) basis.push_back(jr.get<std::vector<i64>>());
        FormalCharacter out = canonical_form(basis, n);
        j["formal_character"] = formal_character_to_json(out);
      } else {
        throw error("cli: formchar input needs weights or basis");
      }
      fc.emit(stamp(j, fc.seed));
      return 0;
    }
    if (*cmd_rank) {
      auto ds = descriptors_from_json(load_json_file(rank_in));
      json j;
      j["factors"] = descriptors_to_json(ds);
      j["rank_report"] = rank_report_to_json(total_rank(ds));
      rk.emit(stamp(j, rk.seed));
      return 0;
    }
    if (*tame_decompose) {
      TameRep r = tame_rep_from_json(load_json_file(tame_in));
      json chars = json::array();
      for (auto& c : decompose_tame(r)) chars.push_back(tame_character_to_json(c));
      json j;
      j["characters"] = std::move(chars);
      td.emit(stamp(j, td.seed));
      return 0;
    }
    if (*tame_restrict) {
      json j;
      j["character"] = tame_character_to_json(restrict_digits(tr_exponent, tr_level, tr_ell));
      tr.emit(stamp(j, tr.seed));
      return 0;
    }
    if (*tame_raise) {
      TameCharacter c = tame_character_from_json(load_json_file(raise_in));
      json j;
      j["character"] = tame_character_to_json(raise_level(c, raise_level_to));
      trs.emit(stamp(j, trs.seed));
      return 0;
    }
    if (*tame_serre) {
      json in = load_json_file(serre_in);
      std::vector<TameCharacter> chars;
      for (auto& jc : in.at("chars")) chars.push_back(tame_character_from_json(jc));
      SerreBoundReport r = check_serre_bound(chars, in.at("e").get<u64>(), in.at("i").get<u64>());
      json j;
      j["pass"] = r.pass;
      j["per_character"] = r.per_character;
      ts.emit(stamp(j, ts.seed));
      return r.pass ? 0 : 1;
    }
    if (*tame_rigidity) {
      json in = load_json_file(rigidity_in);
      TameRep rep = tame_rep_from_json(in.at("rep"));
      Mat s = mat_from_json(in.at("s"));
      RigidityVerdict v = rigidity_check(rep, in.at("index").get<u64>(), s, in.at("bound").get<u64>());
      json j;
      j["verdict"] = to_string(v);
      tg.emit(stamp(j, tg.seed));
      return v == RigidityVerdict::violated ? 1 : 0;
    }
    if (*cmd_compat) {
      SystemBundle b = bundle_from_json(load_json_file(compat_bundle));
      CompatReport r = verify_compatibility(b, cp.thresholds());
      cp.emit(compat_report_to_json(r, b, cp.seed));
      return r.pass ? 0 : 1;
    }
    if (*cmd_indep) {
      SystemBundle b = bundle_from_json(load_json_file(indep_bundle));
      IndependenceReport r = check_independence(b, ind.seed, ind.thresholds(), parse_mode(ind.mode));
      ind.emit(independence_report_to_json(r, ind.seed));
      return r.verdict ? 0 : 1;
    }
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cli: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
