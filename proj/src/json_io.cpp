#include "monodromy/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace monodromy {

const char* kToolVersion = "0.1.0";

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (u64 i = 0; i < m.n; ++i) {
    json row = json::array();
    for (u64 j = 0; j < m.n; ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw error("json: matrix must be a nonempty array of rows");
  Mat m(j.size());
  for (u64 i = 0; i < m.n; ++i) {
    if (!j[i].is_array() || j[i].size() != m.n) throw error("json: matrix rows must be square");
    for (u64 jj = 0; jj < m.n; ++jj) {
      if (!j[i][jj].is_number_integer()) throw error("json: matrix entries must be integers");
      i64 v = j[i][jj].get<i64>();
      if (v < 0) throw error("json: field matrix entries must be nonnegative residues");
      m.at(i, jj) = u64(v);
    }
  }
  return m;
}

json group_to_json(const MatrixGroup& g) {
  json j;
  j["n"] = g.n;
  j["ell"] = g.ell;
  json gens = json::array();
  for (auto& m : g.generators) gens.push_back(mat_to_json(m));
  j["generators"] = std::move(gens);
  j["label"] = g.label;
  return j;
}

MatrixGroup group_from_json(const json& j) {
  MatrixGroup g;
  if (!j.contains("n") || !j.contains("ell") || !j.contains("generators"))
    throw error("json: group requires n, ell and generators");
  g.n = j.at("n").get<u64>();
  g.ell = j.at("ell").get<u64>();
  for (auto& jm : j.at("generators")) {
    Mat m = mat_from_json(jm);
    if (m.n != g.n) throw error("json: generator dimension disagrees with n");
    for (u64 e : m.a)
      if (e >= g.ell) throw error("json: generator entry not reduced mod ell");
    g.generators.push_back(std::move(m));
  }
  g.label = j.value("label", "");
  validate_group(g);
  return g;
}

namespace {

json int_matrix_to_json(const IntMat& m) {
  json out = json::array();
  for (auto& row : m) {
    json r = json::array();
    for (i64 v : row) r.push_back(v);
    out.push_back(std::move(r));
  }
  return out;
}

IntMat int_matrix_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw error(std::string("json: ") + what + " must be an array of rows");
  IntMat m;
  for (auto& jr : j) {
    if (!jr.is_array()) throw error(std::string("json: ") + what + " rows must be arrays");
    std::vector<i64> row;
    for (auto& v : jr) {
      if (!v.is_number_integer()) throw error(std::string("json: ") + what + " entries must be integers");
      row.push_back(v.get<i64>());
    }
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

json bundle_to_json(const SystemBundle& b) {
  json j;
  j["label"] = b.label;
  j["n"] = b.n;
  if (!b.integral_generators.empty()) {
    json gens = json::array();
    for (auto& g : b.integral_generators) gens.push_back(int_matrix_to_json(g));
    j["integral_generators"] = std::move(gens);
  }
  j["primes"] = b.primes;
  if (!b.per_prime_groups.empty()) {
    json groups = json::array();
    for (auto& g : b.per_prime_groups) groups.push_back(group_to_json(g));
    j["per_prime_groups"] = std::move(groups);
  }
  json words = json::array();
  for (auto& w : b.frobenius_words) {
    json jw;
    jw["word"] = w.word;
    jw["poly"] = w.poly;
    words.push_back(std::move(jw));
  }
  j["frobenius_words"] = std::move(words);
  if (!b.bad_primes.empty()) j["bad_primes"] = b.bad_primes;
  if (!b.subgroup_words.empty()) j["subgroup_words"] = b.subgroup_words;
  return j;
}

SystemBundle bundle_from_json(const json& j) {
  SystemBundle b;
  if (!j.contains("n") || !j.contains("primes")) throw error("json: bundle requires n and primes");
  b.n = j.at("n").get<u64>();
  b.label = j.value("label", "");
  b.primes = j.at("primes").get<std::vector<u64>>();
  if (j.contains("integral_generators"))
    for (auto& jg : j.at("integral_generators")) b.integral_generators.push_back(int_matrix_from_json(jg, "integral generator"));
  if (j.contains("per_prime_groups"))
    for (auto& jg : j.at("per_prime_groups")) b.per_prime_groups.push_back(group_from_json(jg));
  if (j.contains("frobenius_words")) {
    for (auto& jw : j.at("frobenius_words")) {
      FrobeniusWord w;
      w.word = jw.at("word").get<std::vector<u64>>();
      w.poly = jw.at("poly").get<std::vector<i64>>();
      b.frobenius_words.push_back(std::move(w));
    }
  }
  if (j.contains("bad_primes")) b.bad_primes = j.at("bad_primes").get<std::vector<u64>>();
  if (j.contains("subgroup_words")) b.subgroup_words = j.at("subgroup_words").get<std::vector<std::vector<u64>>>();
  return b;
}

json formal_character_to_json(const FormalCharacter& fc) {
  json j;
  j["n"] = fc.n;
  j["basis"] = int_matrix_to_json(fc.lattice_basis);
  j["canonical"] = fc.perm_canonical;
  return j;
}

FormalCharacter formal_character_from_json(const json& j) {
  FormalCharacter fc;
  fc.n = j.at("n").get<u64>();
  fc.lattice_basis = int_matrix_from_json(j.at("basis"), "lattice basis");
  fc.perm_canonical = j.value("canonical", false);
  return fc;
}

json tame_character_to_json(const TameCharacter& c) {
  json j;
  j["ell"] = c.ell;
  j["level"] = c.level;
  j["digits"] = c.digits;
  return j;
}

TameCharacter tame_character_from_json(const json& j) {
  return make_tame_character(j.at("ell").get<u64>(), j.at("level").get<u64>(),
                             j.at("digits").get<std::vector<u64>>());
}

json tame_rep_to_json(const TameRep& r) {
  json j;
  j["ell"] = r.ell;
  j["level"] = r.level;
  j["generator_image"] = mat_to_json(r.generator_image);
  return j;
}

TameRep tame_rep_from_json(const json& j) {
  TameRep r;
  r.ell = j.at("ell").get<u64>();
  r.level = j.at("level").get<u64>();
  r.generator_image = mat_from_json(j.at("generator_image"));
  return r;
}

json rank_report_to_json(const RankReport& r) {
  json j;
  j["total_rank"] = r.total_rank;
  json per = json::object();
  for (auto& [name, rk] : r.per_type) per[name] = rk;
  j["per_type"] = std::move(per);
  j["a4_parity"] = r.a4_parity;
  return j;
}

std::vector<LieFactorDescriptor> descriptors_from_json(const json& j) {
  std::vector<LieFactorDescriptor> ds;
  for (auto& jf : j) {
    LieFactorDescriptor d;
    std::string t = jf.at("type").get<std::string>();
    if (t.size() < 3 || t[1] != '_') throw error("json: factor type must look like A_1");
    d.type.family = t[0];
    d.type.rank = std::stoull(t.substr(2));
    d.twist = jf.value("twist", u64(1));
    d.f = jf.value("f", u64(1));
    d.ell = jf.at("ell").get<u64>();
    validate_descriptor(d);
    ds.push_back(d);
  }
  return ds;
}

json descriptors_to_json(const std::vector<LieFactorDescriptor>& ds) {
  json out = json::array();
  for (auto& d : ds) {
    json j;
    j["type"] = d.type.name();
    j["twist"] = d.twist;
    j["f"] = d.f;
    j["ell"] = d.ell;
    out.push_back(std::move(j));
  }
  return out;
}

json prime_report_to_json(const PrimeReport& r) {
  json j;
  j["ell"] = r.ell;
  j["unipotent_count"] = r.unipotent_count;
  j["complete"] = r.complete;
  j["exhaustive"] = r.exhaustive;
  j["algebra_dim"] = r.algebra_dim;
  j["rank"] = r.rank;
  j["splitting_degree"] = r.splitting_degree;
  json factors = json::array();
  for (auto& f : r.factors) {
    json jf;
    jf["type"] = f.type.name();
    jf["twist"] = f.twist;
    jf["f"] = f.f;
    factors.push_back(std::move(jf));
  }
  j["factors"] = std::move(factors);
  json closure = json::array();
  for (auto& t : r.closure_factors) closure.push_back(t.name());
  j["closure_factors"] = std::move(closure);
  j["cartan_matrix"] = int_matrix_to_json(r.cartan_matrix);
  j["weight_matrix"] = int_matrix_to_json(r.weight_matrix);
  j["formal_character"] = formal_character_to_json(r.fc);
  j["rank_report"] = rank_report_to_json(r.rank_report);
  j["realization"] = "lie-algebra";
  return j;
}

json independence_report_to_json(const IndependenceReport& r, u64 seed) {
  json j;
  j["tool_version"] = kToolVersion;
  j["label"] = r.label;
  j["n"] = r.n;
  j["seed"] = seed;
  j["ell_min"] = r.ell_min;
  json per = json::array();
  for (auto& p : r.per_prime) per.push_back(prime_report_to_json(p));
  j["per_prime"] = std::move(per);
  j["fc_constant"] = r.fc_constant;
  j["total_rank_constant"] = r.total_rank_constant;
  j["an_counts_constant"] = r.an_counts_constant;
  j["a4_parity_constant"] = r.a4_parity_constant;
  j["verdict"] = r.verdict;
  if (!r.verdict) {
    j["offending_prime"] = r.offending_prime;
    j["offending_reason"] = r.offending_reason;
  }
  return j;
}

json compat_report_to_json(const CompatReport& r, const SystemBundle& b, u64 seed) {
  json j;
  j["tool_version"] = kToolVersion;
  j["label"] = b.label;
  j["seed"] = seed;
  j["pass"] = r.pass;
  j["vacuous"] = r.vacuous;
  json v = json::array();
  for (auto& viol : r.violations) {
    json jv;
    jv["word_index"] = viol.word_index;
    jv["ell"] = viol.ell;
    jv["got"] = viol.got;
    jv["expected"] = viol.expected;
    v.push_back(std::move(jv));
  }
  j["violations"] = std::move(v);
  return j;
}

namespace {

void render_value(std::ostringstream& os, const json& v, int indent) {
  std::string pad(size_t(indent) * 2, ' ');
  if (v.is_object()) {
    for (auto& [k, val] : v.items()) {
      if (val.is_object() || (val.is_array() && !val.empty() && (val[0].is_object() || val[0].is_array()))) {
        os << pad << k << ":\n";
        render_value(os, val, indent + 1);
      } else {
        os << pad << k << ": " << val.dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    for (auto& item : v) {
      if (item.is_object()) {
        os << pad << "-\n";
        render_value(os, item, indent + 1);
      } else {
        os << pad << "- " << item.dump() << "\n";
      }
    }
  } else {
    os << pad << v.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  render_value(os, report, 0);
  return os.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cli: cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw error("cli: " + path + " is not valid JSON: " + e.what());
  }
  return j;
}

void write_output(const json& report, const std::string& out_path, bool as_text) {
  std::string payload = as_text ? render_text(report) : report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw error("cli: cannot write " + out_path);
  out << payload;
}

}  // namespace monodromy
