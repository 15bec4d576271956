#include <doctest.h>

#include <random>

#include "monodromy/json_io.hpp"
#include "monodromy/sysharness.hpp"
#include "oracles.hpp"

using namespace monodromy;

namespace {

Thresholds default_th() { return Thresholds{}; }

}  // namespace

TEST_CASE("reduce_integral_group reduces entrywise and flags bad primes") {
  std::vector<IntMatrix> gens{{{1, 1}, {0, 1}}, {{1, 0}, {1, 1}}};
  MatrixGroup g = reduce_integral_group(gens, 2, 7);
  CHECK(g.generators[0].at(0, 1) == 1);
  CHECK(g.generators[1].at(1, 0) == 1);
  // negative entries reduce into canonical residues
  MatrixGroup h = reduce_integral_group({{{-1, 0}, {0, -1}}}, 2, 7);
  CHECK(h.generators[0].at(0, 0) == 6);

  CHECK_THROWS_WITH_AS(reduce_integral_group({{{2, 0}, {0, 1}}}, 2, 2), doctest::Contains("bad prime"), error);
}

TEST_CASE("sym3 reduction gives a 4-dimensional group over GF(11)") {
  SystemBundle b = gen_fixture("sym3", {11, 13});
  MatrixGroup g = group_for_prime(b, 11);
  CHECK(g.n == 4);
  CHECK(g.ell == 11);
  CHECK(g.generators.size() == 2);
  Field F = g.field();
  for (auto& m : g.generators) CHECK(mat_is_invertible(F, m));
}

TEST_CASE("apply_iota is an involution and preserves orthogonal matrices") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11});
  MatrixGroup g = group_for_prime(b, 7);
  MatrixGroup gi = apply_iota(g);
  MatrixGroup gii = apply_iota(gi);
  for (size_t i = 0; i < g.generators.size(); ++i) CHECK(gii.generators[i] == g.generators[i]);

  // a permutation matrix is orthogonal: fixed by iota
  MatrixGroup perm;
  perm.n = 2;
  perm.ell = 7;
  Mat p(2);
  p.at(0, 1) = 1;
  p.at(1, 0) = 1;
  perm.generators = {p};
  CHECK(apply_iota(perm).generators[0] == p);
}

TEST_CASE("char_map coefficient conventions") {
  Field F = ext_field(7, 1);
  CHECK(char_map(F, mat_identity(2)) == std::vector<u64>{5, 1});  // x^2 - 2x + 1
  Mat d(2);
  d.at(0, 0) = 2;
  d.at(1, 1) = 3;
  // -(a+d) = -5, ad = 6
  CHECK(char_map(F, d) == std::vector<u64>{2, 6});
  // companion of x^2 + 3x + 4
  Mat c(2);
  c.at(0, 1) = F.neg(4);
  c.at(1, 0) = 1;
  c.at(1, 1) = F.neg(3);
  CHECK(char_map(F, c) == std::vector<u64>{3, 4});
}

TEST_CASE("verify_compatibility passes on integral fixtures at every prime") {
  std::vector<std::pair<std::string, std::vector<u64>>> cases{
      {"sl2-std", {7, 11, 13}}, {"sym2", {7, 11, 13}}, {"sym3", {11, 13, 17}}, {"sl2xsl2", {11, 13, 17}}};
  for (auto& [name, primes] : cases) {
    SystemBundle b = gen_fixture(name, primes);
    CompatReport r = verify_compatibility(b, default_th());
    CHECK(r.pass);
    CHECK(!r.vacuous);
    CHECK(r.violations.empty());
  }
}

TEST_CASE("compatibility property: reduction commutes with char_poly on random words") {
  SystemBundle b = gen_fixture("sym2", {7, 11, 13, 17});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<u64> word;
    for (int i = 0; i < 4; ++i) word.push_back(rng() % 2);
    // integer product, exactly
    IntMatrix prod{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (u64 gi : word) {
      const IntMatrix& g = b.integral_generators[gi];
      IntMatrix next(3, std::vector<i64>(3, 0));
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          for (int j = 0; j < 3; ++j) next[i][j] += prod[i][k] * g[k][j];
      prod = next;
    }
    for (u64 ell : b.primes) {
      Field F(ell, 1, {0});
      MatrixGroup g = group_for_prime(b, ell);
      Mat m = mat_identity(3);
      for (u64 gi : word) m = mat_mul(F, m, g.generators[gi]);
      Mat reduced(3);
      for (u64 i = 0; i < 3; ++i)
        for (u64 j = 0; j < 3; ++j) reduced.at(i, j) = F.from_int(prod[i][j]);
      CHECK(reduced == m);
      CHECK(char_poly(F, reduced) == char_poly(F, m));
    }
  }
}

TEST_CASE("tampered bundles produce a one-line violation") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11});
  // edit one entry of the stored reduction at 11
  b.per_prime_groups.clear();
  for (u64 ell : b.primes) b.per_prime_groups.push_back(group_for_prime(b, ell));
  b.integral_generators.clear();
  b.per_prime_groups[1].generators[0].at(0, 1) = 2;
  CompatReport r = verify_compatibility(b, default_th());
  CHECK(!r.pass);
  // the edited generator stays unipotent, so only the product word notices
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].ell == 11);
  CHECK(r.violations[0].word_index == 1);
}

TEST_CASE("empty word list passes vacuously with a flag") {
  SystemBundle b = gen_fixture("weil-res-sl2", {11, 13});
  CompatReport r = verify_compatibility(b, default_th());
  CHECK(r.pass);
  CHECK(r.vacuous);
}

TEST_CASE("analyze_prime on the SL_2 fixture at 7") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11});
  PrimeReport r = analyze_prime(b, 7, 0, default_th());
  CHECK(r.ell == 7);
  CHECK(r.unipotent_count == 48);
  CHECK(r.complete);
  CHECK(r.algebra_dim == 3);
  CHECK(r.rank == 1);
  REQUIRE(r.factors.size() == 1);
  CHECK(r.factors[0].type == SimpleType{'A', 1});
  CHECK(r.fc.lattice_basis == IntMat{{1, 1}});
  CHECK(r.rank_report.total_rank == 1);
  // group order predicted from the identified type equals the enumeration
  auto ds = descriptors_from_factors(r.factors, 7);
  CHECK(envelope_points_order(ds) == 336);
}

TEST_CASE("analyze_prime on the sym2 fixture at 11") {
  SystemBundle b = gen_fixture("sym2", {11, 13});
  PrimeReport r = analyze_prime(b, 11, 0, default_th());
  CHECK(r.algebra_dim == 3);
  CHECK(r.rank == 1);
  // annihilator basis {(1,0,1),(0,1,0)}; its least permutation image puts the
  // tied coordinates first (frozen from the exhaustive canonicalization)
  CHECK(annihilator_lattice(r.weight_matrix, 3) == IntMat{{1, 0, 1}, {0, 1, 0}});
  CHECK(r.fc.lattice_basis == IntMat{{1, 0, 0}, {0, 1, 1}});
  CHECK(r.rank_report.total_rank == 1);
}

TEST_CASE("analyze_prime on a torus-only group") {
  SystemBundle b = gen_fixture("torus-adversarial", {7, 11, 13});
  // the largest prime carries the torus
  PrimeReport r = analyze_prime(b, 13, 0, default_th());
  CHECK(r.unipotent_count == 0);
  CHECK(r.algebra_dim == 0);
  CHECK(r.rank == 0);
  CHECK(r.rank_report.total_rank == 0);
  CHECK(r.fc.lattice_basis == IntMat{{1, 0}, {0, 1}});  // full lattice
}

TEST_CASE("analyze_prime annotates errors with the prime") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11});
  Thresholds th;
  th.bfs_cap = 10;
  try {
    analyze_prime(b, 11, 0, th, DiscoveryMode::exhaustive);
    CHECK(false);
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("ell = 11") != std::string::npos);
  }
}

TEST_CASE("weil-res fixture: rank two, A_1 factor with f = 2") {
  SystemBundle b = gen_fixture("weil-res-sl2", {11, 13});
  PrimeReport r = analyze_prime(b, 11, 0, default_th());
  CHECK(r.algebra_dim == 6);
  CHECK(r.rank == 2);
  REQUIRE(r.factors.size() == 1);
  CHECK(r.factors[0].type == SimpleType{'A', 1});
  CHECK(r.factors[0].f == 2);
  CHECK(r.factors[0].twist == 1);
  CHECK(r.closure_factors.size() == 2);
  CHECK(r.rank_report.total_rank == 2);
  // same canonical formal character as the split sl2 x sl2 block
  SystemBundle blk = gen_fixture("sl2xsl2", {11, 13});
  PrimeReport rb = analyze_prime(blk, 11, 0, default_th());
  CHECK(rb.fc.lattice_basis == r.fc.lattice_basis);
  // but the composition factors differ
  auto d_weil = descriptors_from_factors(r.factors, 11);
  auto d_blk = descriptors_from_factors(rb.factors, 11);
  CHECK(composition_factors(d_weil[0])[0] == "PSL_2(121)");
  CHECK(composition_factors(d_blk[0])[0] == "PSL_2(11)");
}

TEST_CASE("check_independence verdict true on sl2-std across primes") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11, 13});
  IndependenceReport r = check_independence(b, 0, default_th());
  CHECK(r.verdict);
  CHECK(r.fc_constant);
  CHECK(r.total_rank_constant);
  CHECK(r.an_counts_constant);
  CHECK(r.a4_parity_constant);
  CHECK(r.offending_prime == 0);
  for (auto& p : r.per_prime) {
    CHECK(p.rank_report.total_rank == 1);
    CHECK(p.fc.lattice_basis == IntMat{{1, 1}});
  }
}

TEST_CASE("check_independence flags the adversarial prime") {
  SystemBundle b = gen_fixture("torus-adversarial", {7, 11, 13});
  IndependenceReport r = check_independence(b, 0, default_th());
  CHECK(!r.verdict);
  CHECK(r.offending_prime == 13);
  CHECK(!r.fc_constant);
}

TEST_CASE("check_independence needs two primes") {
  SystemBundle b = gen_fixture("sl2-std", {7});
  CHECK_THROWS_AS(check_independence(b, 0, default_th()), error);
}

TEST_CASE("iota-transformed fixtures keep the formal character") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11});
  for (u64 ell : b.primes) {
    MatrixGroup g = group_for_prime(b, ell);
    PrimeReport r0 = analyze_group(g, 0, default_th());
    PrimeReport r1 = analyze_group(apply_iota(g), 0, default_th());
    CHECK(r0.fc.lattice_basis == r1.fc.lattice_basis);
  }
}

TEST_CASE("bundle validation rejects small primes, bad primes, unknown fixtures") {
  CHECK_THROWS_WITH_AS(gen_fixture("sl2-std", {5, 7}), doctest::Contains("ell_min"), error);
  CHECK_THROWS_WITH_AS(gen_fixture("nope", {7, 11}), doctest::Contains("unknown fixture"), error);
  SystemBundle b = gen_fixture("sl2-std", {7, 11});
  b.bad_primes = {11};
  CHECK_THROWS_WITH_AS(validate_bundle(b, default_th()), doctest::Contains("bad"), error);
  b.bad_primes.clear();
  b.frobenius_words[0].word = {9};
  CHECK_THROWS_WITH_AS(validate_bundle(b, default_th()), doctest::Contains("unknown generator"), error);
}

TEST_CASE("subgroup words restrict the analyzed group") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11});
  b.subgroup_words = {{0, 0}, {1, 1}};  // squares of the generators still give SL_2
  PrimeReport r = analyze_prime(b, 7, 0, default_th());
  CHECK(r.algebra_dim == 3);
  CHECK(r.rank == 1);
}

TEST_CASE("bundle JSON round trip") {
  SystemBundle b = gen_fixture("sym3", {11, 13});
  json j = bundle_to_json(b);
  SystemBundle b2 = bundle_from_json(j);
  CHECK(b2.n == b.n);
  CHECK(b2.label == b.label);
  CHECK(b2.primes == b.primes);
  CHECK(b2.integral_generators == b.integral_generators);
  REQUIRE(b2.frobenius_words.size() == b.frobenius_words.size());
  CHECK(b2.frobenius_words[0].poly == b.frobenius_words[0].poly);
  // spec example form parses
  json spec = json::parse(R"({"n":2, "integral_generators":[[[1,1],[0,1]],[[1,0],[1,1]]],
    "primes":[7,11,13], "frobenius_words":[{"word":[0],"poly":[1,-2,1]}], "label":"sl2-std"})");
  SystemBundle b3 = bundle_from_json(spec);
  CHECK(b3.n == 2);
  CHECK(verify_compatibility(b3, default_th()).pass);
}

TEST_CASE("group JSON matches the spec surface") {
  json spec = json::parse(R"({"n": 2, "ell": 7,
    "generators": [[[1,1],[0,1]], [[1,0],[1,1]]], "label": "sl2-std"})");
  MatrixGroup g = group_from_json(spec);
  CHECK(g.n == 2);
  CHECK(g.ell == 7);
  CHECK(g.label == "sl2-std");
  json round = group_to_json(g);
  CHECK(round == spec);
}
