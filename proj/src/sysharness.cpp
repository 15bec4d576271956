#include "monodromy/sysharness.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace monodromy {

namespace {

u64 mix_seed(u64 seed, u64 ell) {
  u64 x = seed ^ (0x9e3779b97f4a7c15ULL * (ell + 1));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate_bundle(const SystemBundle& b, const Thresholds& th) {
  if (b.n == 0) throw error("sysharness: bundle has no dimension");
  if (b.primes.empty()) throw error("sysharness: bundle lists no primes");
  std::set<u64> bad(b.bad_primes.begin(), b.bad_primes.end());
  for (u64 ell : b.primes) {
    if (!is_prime_u64(ell)) throw error("sysharness: " + std::to_string(ell) + " is not prime");
    if (ell < th.ell_min(b.n))
      throw error("sysharness: prime " + std::to_string(ell) + " below ell_min(" + std::to_string(b.n) + ") = " + std::to_string(th.ell_min(b.n)));
    if (bad.count(ell)) throw error("sysharness: prime " + std::to_string(ell) + " is declared bad");
  }
  if (b.integral_generators.empty() && b.per_prime_groups.empty())
    throw error("sysharness: bundle carries neither integral generators nor per-prime groups");
  for (auto& g : b.per_prime_groups) {
    if (g.n != b.n) throw error("sysharness: per-prime group dimension mismatch");
    validate_group(g);
  }
  if (!b.integral_generators.empty() && !b.per_prime_groups.empty()) {
    for (auto& g : b.per_prime_groups) {
      MatrixGroup red = reduce_integral_group(b.integral_generators, b.n, g.ell, b.label);
      if (red.generators.size() != g.generators.size())
        throw error("sysharness: stored group disagrees with the reduction at " + std::to_string(g.ell));
      for (size_t i = 0; i < red.generators.size(); ++i)
        if (!(red.generators[i] == g.generators[i]))
          throw error("sysharness: stored group disagrees with the reduction at " + std::to_string(g.ell));
    }
  }
  for (auto& w : b.frobenius_words) {
    if (w.poly.empty() || w.poly.front() != 1)
      throw error("sysharness: frobenius polynomial must be monic (descending coefficients)");
    if (w.poly.size() != b.n + 1)
      throw error("sysharness: frobenius polynomial degree must equal the dimension");
    size_t gen_count = b.integral_generators.empty() ? (b.per_prime_groups.empty() ? 0 : b.per_prime_groups.front().generators.size()) : b.integral_generators.size();
    for (u64 gi : w.word)
      if (gi >= gen_count) throw error("sysharness: word references unknown generator index " + std::to_string(gi));
  }
}

MatrixGroup reduce_integral_group(const std::vector<IntMatrix>& gens, u64 n, u64 ell,
                                  const std::string& label) {
  if (!is_prime_u64(ell)) throw error("sysharness: reduction modulus is not prime");
  Field F(ell, 1, {0});
  MatrixGroup g;
  g.n = n;
  g.ell = ell;
  g.label = label;
  for (auto& im : gens) {
    if (im.size() != n) throw error("sysharness: integral generator has wrong dimension");
    Mat m(n);
    for (u64 i = 0; i < n; ++i) {
      if (im[i].size() != n) throw error("sysharness: integral generator has wrong dimension");
      for (u64 j = 0; j < n; ++j) m.at(i, j) = F.from_int(im[i][j]);
    }
    if (!mat_is_invertible(F, m))
      throw error("sysharness: generator determinant vanishes mod " + std::to_string(ell) + " (bad prime)");
    g.generators.push_back(std::move(m));
  }
  return g;
}

MatrixGroup group_for_prime(const SystemBundle& b, u64 ell) {
  MatrixGroup g;
  if (!b.integral_generators.empty()) {
    g = reduce_integral_group(b.integral_generators, b.n, ell, b.label);
  } else {
    bool found = false;
    for (auto& pg : b.per_prime_groups)
      if (pg.ell == ell) {
        g = pg;
        found = true;
        break;
      }
    if (!found) throw error("sysharness: no group stored for prime " + std::to_string(ell));
  }
  if (!b.subgroup_words.empty()) {
    Field F = g.field();
    std::vector<Mat> restricted;
    for (auto& w : b.subgroup_words) {
      Mat m = mat_identity(g.n);
      for (u64 gi : w) {
        if (gi >= g.generators.size()) throw error("sysharness: subgroup word references unknown generator");
        m = mat_mul(F, m, g.generators[gi]);
      }
      restricted.push_back(std::move(m));
    }
    g.generators = std::move(restricted);
    g.label += "-restricted";
  }
  return g;
}

MatrixGroup apply_iota(const MatrixGroup& g) {
  Field F = g.field();
  MatrixGroup out = g;
  out.label = g.label.empty() ? "iota" : g.label + "-iota";
  for (auto& m : out.generators) m = mat_inverse(F, mat_transpose(m));
  return out;
}

std::vector<u64> char_map(const Field& F, const Mat& m) {
  Poly cp = char_poly(F, m);  // ascending, monic
  std::vector<u64> out;
  for (size_t i = cp.size() - 1; i-- > 0;) out.push_back(cp[i]);
  return out;
}

CompatReport verify_compatibility(const SystemBundle& b, const Thresholds& th) {
  validate_bundle(b, th);
  CompatReport report;
  if (b.frobenius_words.empty()) {
    report.vacuous = true;
    return report;
  }
  for (u64 ell : b.primes) {
    MatrixGroup g = group_for_prime(b, ell);
    Field F = g.field();
    for (size_t wi = 0; wi < b.frobenius_words.size(); ++wi) {
      auto& fw = b.frobenius_words[wi];
      Mat m = mat_identity(b.n);
      for (u64 gi : fw.word) m = mat_mul(F, m, g.generators[gi]);
      std::vector<u64> got = char_map(F, m);
      std::vector<u64> expected;
      for (size_t i = 1; i < fw.poly.size(); ++i) expected.push_back(F.from_int(fw.poly[i]));
      if (got != expected) {
        report.pass = false;
        report.violations.push_back({wi, ell, got, expected});
      }
    }
  }
  return report;
}

std::vector<std::pair<u64, u64>> stable_an_ranks(const std::vector<LieFactorDescriptor>& ds) {
  static const std::set<u64> excluded{1, 2, 3, 4, 5, 7, 8};
  std::map<u64, u64> ranks;
  for (auto& d : ds) {
    if (d.type.family != 'A' || excluded.count(d.type.rank)) continue;
    ranks[d.type.rank] += d.f * d.type.rank;
  }
  return {ranks.begin(), ranks.end()};
}

PrimeReport analyze_group(const MatrixGroup& g, u64 seed, const Thresholds& th,
                          DiscoveryMode mode, const ExecPolicy& exec) {
  Field F = g.field();
  PrimeReport r;
  r.ell = g.ell;
  u64 prime_seed = mix_seed(seed, g.ell);
  UnipotentSet uni = order_ell_elements(g, mode, th, prime_seed, exec);
  r.unipotent_count = uni.elements.size();
  r.complete = uni.complete;
  r.exhaustive = uni.complete;
  std::vector<Mat> logs;
  for (auto& x : uni.elements) logs.push_back(trunc_log(F, x));
  LieSubalgebra s = lie_closure(F, logs, g.n);
  r.algebra_dim = s.dim;
  if (s.dim == 0) {
    r.rank = 0;
    r.weight_matrix.clear();
    r.fc = canonical_form(annihilator_lattice(IntMat{}, g.n), g.n);
    r.rank_report = total_rank({});
    return r;
  }
  SemisimpleTypeData t = identify_type(F, s, prime_seed, th);
  r.rank = t.rank;
  r.splitting_degree = t.splitting_degree;
  r.closure_factors = t.closure_factors;
  r.factors = t.rational_factors;
  r.cartan_matrix = t.cartan_matrix;
  WeightData w = weights_on_ambient(F, s, t, prime_seed, th, true);
  r.weight_matrix = w.weight_matrix;
  r.fc = canonical_form(annihilator_lattice(w.weight_matrix, g.n), g.n);
  auto ds = descriptors_from_factors(t.rational_factors, g.ell);
  r.rank_report = total_rank(ds);
  if (r.rank_report.total_rank != t.rank)
    throw error("sysharness: factor ranks disagree with the identified rank");
  return r;
}

PrimeReport analyze_prime(const SystemBundle& b, u64 ell, u64 seed, const Thresholds& th,
                          DiscoveryMode mode, const ExecPolicy& exec) {
  try {
    return analyze_group(group_for_prime(b, ell), seed, th, mode, exec);
  } catch (const error& e) {
    throw error(std::string(e.what()) + " [at ell = " + std::to_string(ell) + "]");
  }
}

IndependenceReport check_independence(const SystemBundle& b, u64 seed, const Thresholds& th,
                                      DiscoveryMode mode, const ExecPolicy& exec) {
  validate_bundle(b, th);
  if (b.primes.size() < 2) throw error("sysharness: independence check needs at least two primes");
  std::vector<u64> primes = b.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  IndependenceReport rep;
  rep.label = b.label;
  rep.n = b.n;
  rep.seed = seed;
  rep.ell_min = th.ell_min(b.n);
  rep.per_prime.resize(primes.size());

  std::vector<std::string> failures(primes.size());
  auto run_one = [&](size_t i) {
    try {
      rep.per_prime[i] = analyze_prime(b, primes[i], seed, th, mode, serial_policy());
    } catch (const error& e) {
      failures[i] = e.what();
    }
  };
  if (exec.mode == ExecMode::openmp) {
#ifdef _OPENMP
    if (exec.threads > 0) omp_set_num_threads(exec.threads);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < (long long)primes.size(); ++i) run_one(size_t(i));
#else
    for (size_t i = 0; i < primes.size(); ++i) run_one(i);
#endif
  } else {
    for (size_t i = 0; i < primes.size(); ++i) run_one(i);
  }
  for (auto& f : failures)
    if (!f.empty()) throw error(f);

  const PrimeReport& base = rep.per_prime.front();
  auto base_ds = descriptors_from_factors(base.factors, base.ell);
  auto base_an = stable_an_ranks(base_ds);
  rep.fc_constant = rep.total_rank_constant = rep.an_counts_constant = rep.a4_parity_constant = true;
  for (size_t i = 1; i < rep.per_prime.size(); ++i) {
    const PrimeReport& cur = rep.per_prime[i];
    auto note = [&](const std::string& why) {
      if (rep.offending_prime == 0) {
        rep.offending_prime = cur.ell;
        rep.offending_reason = why;
      }
    };
    if (!(cur.fc.lattice_basis == base.fc.lattice_basis)) {
      rep.fc_constant = false;
      note("formal character differs from ell = " + std::to_string(base.ell));
    }
    if (cur.rank_report.total_rank != base.rank_report.total_rank) {
      rep.total_rank_constant = false;
      note("total rank differs from ell = " + std::to_string(base.ell));
    }
    auto cur_ds = descriptors_from_factors(cur.factors, cur.ell);
    if (stable_an_ranks(cur_ds) != base_an) {
      rep.an_counts_constant = false;
      note("A_n ranks differ from ell = " + std::to_string(base.ell));
    }
    if (cur.rank_report.a4_parity != base.rank_report.a4_parity) {
      rep.a4_parity_constant = false;
      note("A_4 parity differs from ell = " + std::to_string(base.ell));
    }
  }
  rep.verdict = rep.fc_constant && rep.total_rank_constant && rep.an_counts_constant && rep.a4_parity_constant;
  return rep;
}

}  // namespace monodromy
