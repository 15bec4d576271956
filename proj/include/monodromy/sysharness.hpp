#pragma once

// Compatible families {(ell, group)}: construction from integral generators,
// characteristic-polynomial compatibility checks, the per-prime envelope
// pipeline and the cross-prime independence verdicts.

#include <string>
#include <vector>

#include "monodromy/formchar.hpp"
#include "monodromy/lierank.hpp"
#include "monodromy/nori.hpp"

namespace monodromy {

using IntMatrix = std::vector<std::vector<i64>>;  // one integer matrix

struct FrobeniusWord {
  std::vector<u64> word;  // generator indices, applied left to right
  std::vector<i64> poly;  // monic, descending coefficients (leading 1 first)
};

struct SystemBundle {
  u64 n = 0;
  std::string label;
  std::vector<IntMatrix> integral_generators;  // may be empty
  std::vector<u64> primes;
  std::vector<MatrixGroup> per_prime_groups;  // used when no integral generators
  std::vector<FrobeniusWord> frobenius_words;
  std::vector<u64> bad_primes;
  std::vector<std::vector<u64>> subgroup_words;  // optional finite-index restriction
};

// primes above ell_min, away from bad primes, groups consistent.
void validate_bundle(const SystemBundle& b, const Thresholds& th);

// Entrywise reduction; throws when a generator drops rank mod ell.
MatrixGroup reduce_integral_group(const std::vector<IntMatrix>& gens, u64 n, u64 ell,
                                  const std::string& label = "");

// The analysis group at a prime (reduction or the stored group), with the
// optional subgroup-word restriction applied.
MatrixGroup group_for_prime(const SystemBundle& b, u64 ell);

// Generators replaced by their inverse transposes.
MatrixGroup apply_iota(const MatrixGroup& g);

// Characteristic-polynomial coefficients (c_{N-1}, ..., c_0).
std::vector<u64> char_map(const Field& F, const Mat& m);

struct CompatViolation {
  size_t word_index = 0;
  u64 ell = 0;
  std::vector<u64> got;       // char_map of the word image
  std::vector<u64> expected;  // reduced rational polynomial
};

struct CompatReport {
  bool pass = true;
  bool vacuous = false;  // no words declared
  std::vector<CompatViolation> violations;
};

CompatReport verify_compatibility(const SystemBundle& b, const Thresholds& th);

struct PrimeReport {
  u64 ell = 0;
  u64 unipotent_count = 0;
  bool complete = false;
  bool exhaustive = false;
  u64 algebra_dim = 0;
  u64 rank = 0;
  u64 splitting_degree = 1;
  std::vector<SimpleType> closure_factors;
  std::vector<LieFactor> factors;
  IntMat cartan_matrix;
  IntMat weight_matrix;
  FormalCharacter fc;
  RankReport rank_report;
};

// order-ell discovery -> logs -> closure -> identification -> weights ->
// canonical formal character -> rank bookkeeping.
PrimeReport analyze_group(const MatrixGroup& g, u64 seed, const Thresholds& th,
                          DiscoveryMode mode = DiscoveryMode::automatic,
                          const ExecPolicy& exec = {});

// The same pipeline on the bundle's group at a prime.  Errors carry the prime.
PrimeReport analyze_prime(const SystemBundle& b, u64 ell, u64 seed, const Thresholds& th,
                          DiscoveryMode mode = DiscoveryMode::automatic,
                          const ExecPolicy& exec = {});

struct IndependenceReport {
  std::string label;
  u64 n = 0;
  u64 seed = 0;
  u64 ell_min = 0;
  std::vector<PrimeReport> per_prime;  // ascending ell
  bool fc_constant = false;
  bool total_rank_constant = false;
  bool an_counts_constant = false;
  bool a4_parity_constant = false;
  bool verdict = false;
  u64 offending_prime = 0;  // 0 when nothing failed
  std::string offending_reason;
};

// Requires at least two primes.  Per-prime analyses run through the parallel
// kernel when the policy allows; reports merge in ascending ell.
IndependenceReport check_independence(const SystemBundle& b, u64 seed, const Thresholds& th,
                                      DiscoveryMode mode = DiscoveryMode::automatic,
                                      const ExecPolicy& exec = {});

// rk^{A_n} for the n with an ell-independence guarantee (n not in
// {1,2,3,4,5,7,8}), listed as (n, rank) pairs with positive rank.
std::vector<std::pair<u64, u64>> stable_an_ranks(const std::vector<LieFactorDescriptor>& ds);

// Shipped fixture catalog.
std::vector<std::string> fixture_names();
SystemBundle gen_fixture(const std::string& name, const std::vector<u64>& primes,
                         const Thresholds& th = {});

}  // namespace monodromy
