#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "monodromy/formchar.hpp"

using namespace monodromy;

namespace {

// oracle: canonical form by plain exhaustive minimum over all n! permutations
IntMat exhaustive_canonical(const IntMat& basis, u64 n) {
  std::vector<u64> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  IntMat best;
  bool have = false;
  do {
    IntMat cand = hnf(permute_columns(hnf(basis, n), perm), n);
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

IntMat random_weights(u64 rows, u64 n, u64 seed, i64 bound = 3) {
  std::mt19937_64 rng(seed);
  IntMat w(rows, std::vector<i64>(n));
  for (auto& r : w)
    for (auto& x : r) x = i64(rng() % (2 * u64(bound) + 1)) - bound;
  return w;
}

}  // namespace

TEST_CASE("annihilator of a single weight row") {
  // weights (1, -1): condition m1 = m2
  IntMat lat = annihilator_lattice({{1, -1}}, 2);
  CHECK(lat == IntMat{{1, 1}});
}

TEST_CASE("annihilator of sym2 weights, frozen from integer-kernel oracle") {
  // weights (2, 0, -2): kernel has rank 2; HNF basis {(1,0,1),(0,1,0)}
  IntMat lat = annihilator_lattice({{2, 0, -2}}, 3);
  CHECK(lat == IntMat{{1, 0, 1}, {0, 1, 0}});
}

TEST_CASE("annihilator with no conditions is the full lattice") {
  IntMat lat = annihilator_lattice(IntMat{}, 3);
  CHECK(lat == IntMat{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("annihilator vanishing only at zero") {
  // rows (1,-1) and (1,1): kernel {0}
  IntMat lat = annihilator_lattice({{1, -1}, {1, 1}}, 2);
  CHECK(lat.empty());
}

TEST_CASE("annihilator basis really annihilates") {
  for (u64 seed = 0; seed < 40; ++seed) {
    u64 n = 2 + seed % 4;
    u64 r = 1 + seed % 3;
    IntMat w = random_weights(r, n, seed);
    IntMat lat = annihilator_lattice(w, n);
    for (auto& m : lat)
      for (u64 i = 0; i < r; ++i) {
        i64 acc = 0;
        for (u64 j = 0; j < n; ++j) acc += w[i][j] * m[j];
        CHECK(acc == 0);
      }
    // rank of weights + kernel rank = n
    IntMat wh = hnf(w, n);
    CHECK(wh.size() + lat.size() == n);
  }
}

TEST_CASE("hnf is idempotent and canonical per lattice") {
  for (u64 seed = 0; seed < 40; ++seed) {
    u64 n = 2 + seed % 4;
    IntMat basis = random_weights(1 + seed % 3, n, seed * 17 + 1);
    IntMat h = hnf(basis, n);
    CHECK(hnf(h, n) == h);
    // shuffling and row-mixing the basis leaves the HNF unchanged
    IntMat mixed = h;
    if (mixed.size() >= 2) {
      for (u64 j = 0; j < n; ++j) mixed[0][j] += 3 * mixed[1][j];
      std::swap(mixed[0], mixed[1]);
    }
    CHECK(hnf(mixed, n) == h);
  }
}

TEST_CASE("canonical_form matches the exhaustive permutation oracle") {
  for (u64 seed = 0; seed < 60; ++seed) {
    u64 n = 2 + seed % 4;  // up to 5
    IntMat basis = random_weights(1 + seed % n, n, seed * 31 + 7, 2);
    FormalCharacter fc = canonical_form(basis, n);
    CHECK(fc.lattice_basis == exhaustive_canonical(basis, n));
    CHECK(fc.perm_canonical);
  }
}

TEST_CASE("canonical_form is idempotent and permutation invariant") {
  std::mt19937_64 rng(5);
  for (u64 seed = 0; seed < 40; ++seed) {
    u64 n = 2 + seed % 4;
    IntMat basis = random_weights(1 + seed % n, n, seed * 13 + 3, 2);
    FormalCharacter fc = canonical_form(basis, n);
    CHECK(canonical_form(fc.lattice_basis, n).lattice_basis == fc.lattice_basis);
    std::vector<u64> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FormalCharacter fp = canonical_form(permute_columns(basis, perm), n);
    CHECK(fp.lattice_basis == fc.lattice_basis);
  }
}

TEST_CASE("canonical_form spec examples") {
  // {(1,1)} is fixed by the swap
  CHECK(canonical_form({{1, 1}}, 2).lattice_basis == IntMat{{1, 1}});
  // {(1,-1)} and its permutation agree
  CHECK(canonical_form({{1, -1}}, 2).lattice_basis == canonical_form({{-1, 1}}, 2).lattice_basis);
  // {(2,1,0)} vs permuted {(0,1,2)}
  CHECK(canonical_form({{2, 1, 0}}, 3).lattice_basis == canonical_form({{0, 1, 2}}, 3).lattice_basis);
}

TEST_CASE("canonical_form dimension cap") {
  CHECK_THROWS_AS(canonical_form({{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}}, 13), error);
}

TEST_CASE("same_formal_character semantics") {
  // standard vs dual weights of sl_2
  FormalCharacter std2 = canonical_form(annihilator_lattice({{1, -1}}, 2), 2);
  FormalCharacter dual = canonical_form(annihilator_lattice({{-1, 1}}, 2), 2);
  CHECK(same_formal_character(std2, dual));

  // SL_2 torus diag(t, 1/t) vs scalar torus diag(t, t): distinct
  FormalCharacter scalar = canonical_form(annihilator_lattice({{1, 1}}, 2), 2);
  CHECK(!same_formal_character(std2, scalar));

  FormalCharacter three = canonical_form(annihilator_lattice({{1, -1, 0}}, 3), 3);
  CHECK_THROWS_AS(same_formal_character(std2, three), error);
}

TEST_CASE("same_formal_character is an equivalence on a random population") {
  std::vector<FormalCharacter> pop;
  for (u64 seed = 0; seed < 12; ++seed)
    pop.push_back(canonical_form(random_weights(2, 4, seed * 3), 4));
  for (auto& a : pop) CHECK(same_formal_character(a, a));
  for (auto& a : pop)
    for (auto& b : pop) CHECK(same_formal_character(a, b) == same_formal_character(b, a));
  for (auto& a : pop)
    for (auto& b : pop)
      for (auto& c : pop)
        if (same_formal_character(a, b) && same_formal_character(b, c)) CHECK(same_formal_character(a, c));
}

TEST_CASE("negating weights preserves the annihilator exactly") {
  for (u64 seed = 0; seed < 50; ++seed) {
    u64 n = 2 + seed % 5;
    IntMat w = random_weights(1 + seed % 3, n, seed * 7 + 11);
    IntMat neg = w;
    for (auto& row : neg)
      for (auto& x : row) x = -x;
    CHECK(annihilator_lattice(w, n) == annihilator_lattice(neg, n));
  }
}

TEST_CASE("column permutation of weights permutes the annihilator") {
  std::mt19937_64 rng(99);
  for (u64 seed = 0; seed < 30; ++seed) {
    u64 n = 3 + seed % 3;
    IntMat w = random_weights(2, n, seed * 41 + 5);
    std::vector<u64> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FormalCharacter a = canonical_form(annihilator_lattice(w, n), n);
    FormalCharacter b = canonical_form(annihilator_lattice(permute_columns(w, perm), n), n);
    CHECK(a.lattice_basis == b.lattice_basis);
  }
}

TEST_CASE("bounded_by") {
  CHECK(bounded_by({{1, -1}}, 2));
  CHECK(!bounded_by({{2, 0, -2}}, 1));
  CHECK(bounded_by({{3, 1, -1, -3}}, 3));
  // monotone in the bound
  IntMat w = random_weights(2, 4, 123, 5);
  for (i64 c = 1; c < 7; ++c)
    if (bounded_by(w, c)) CHECK(bounded_by(w, c + 1));
}
