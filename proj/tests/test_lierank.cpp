#include <doctest.h>

#include "monodromy/lierank.hpp"
#include "oracles.hpp"

using namespace monodromy;

namespace {

LieFactorDescriptor desc(char fam, u64 rank, u64 twist, u64 f, u64 ell) {
  return LieFactorDescriptor{SimpleType{fam, rank}, twist, f, ell};
}

}  // namespace

TEST_CASE("composition factor names follow the table") {
  CHECK(composition_factors(desc('A', 1, 1, 1, 7)) == std::vector<std::string>{"PSL_2(7)", "cyclic"});
  CHECK(composition_factors(desc('A', 2, 2, 1, 7)) == std::vector<std::string>{"2A_2(49)", "cyclic"});
  CHECK(composition_factors(desc('D', 4, 3, 1, 7)) == std::vector<std::string>{"3D_4(343)", "cyclic"});
  CHECK(composition_factors(desc('B', 2, 1, 1, 11)) == std::vector<std::string>{"B_2(11)", "cyclic"});
  CHECK(composition_factors(desc('A', 1, 1, 2, 5)) == std::vector<std::string>{"PSL_2(25)", "cyclic"});
}

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(composition_factors(desc('A', 1, 2, 1, 7)), error);   // no twisted A_1
  CHECK_THROWS_AS(composition_factors(desc('B', 2, 2, 1, 7)), error);   // no twisted B
  CHECK_THROWS_AS(composition_factors(desc('D', 5, 3, 1, 7)), error);   // triality only on D_4
  CHECK_THROWS_AS(composition_factors(desc('E', 7, 2, 1, 7)), error);
  CHECK_THROWS_AS(composition_factors(desc('A', 1, 1, 1, 3)), error);   // ell < 5
  CHECK_THROWS_AS(composition_factors(desc('C', 2, 1, 1, 7)), error);   // C starts at rank 3
  CHECK_NOTHROW(composition_factors(desc('D', 4, 2, 1, 7)));
  CHECK_NOTHROW(composition_factors(desc('E', 6, 2, 1, 7)));
}

TEST_CASE("g_type_rank follows f * rank") {
  std::vector<LieFactorDescriptor> fs{desc('A', 1, 1, 1, 7)};
  CHECK(g_type_rank(fs, SimpleType{'A', 1}) == 1);
  std::vector<LieFactorDescriptor> fs2{desc('A', 1, 1, 2, 7)};
  CHECK(g_type_rank(fs2, SimpleType{'A', 1}) == 2);
  CHECK(g_type_rank(fs2, SimpleType{'B', 2}) == 0);
}

TEST_CASE("total_rank aggregates and reports per type") {
  // Weil-restriction shape: one A_1 factor with f = 2
  RankReport weil = total_rank({desc('A', 1, 1, 2, 7)});
  CHECK(weil.total_rank == 2);
  RankReport single = total_rank({desc('A', 1, 1, 1, 7)});
  CHECK(single.total_rank == 1);
  RankReport empty = total_rank({});
  CHECK(empty.total_rank == 0);
  CHECK(empty.a4_parity == 0);

  RankReport mixed = total_rank({desc('A', 1, 1, 1, 7), desc('A', 2, 1, 1, 7), desc('A', 1, 1, 1, 7)});
  CHECK(mixed.total_rank == 4);
  REQUIRE(mixed.per_type.size() == 2);
  CHECK(mixed.per_type[0] == std::pair<std::string, u64>{"A_1", 2});
  CHECK(mixed.per_type[1] == std::pair<std::string, u64>{"A_2", 2});
}

TEST_CASE("total rank is additive over concatenation") {
  std::vector<LieFactorDescriptor> a{desc('A', 1, 1, 1, 7), desc('B', 2, 1, 1, 7)};
  std::vector<LieFactorDescriptor> b{desc('A', 4, 1, 1, 7), desc('A', 1, 1, 3, 7)};
  std::vector<LieFactorDescriptor> both = a;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(total_rank(both).total_rank == total_rank(a).total_rank + total_rank(b).total_rank);
}

TEST_CASE("A_4 parity counts f modulo 2") {
  CHECK(total_rank({desc('A', 4, 1, 1, 11)}).a4_parity == 1);
  CHECK(total_rank({desc('A', 4, 1, 2, 11)}).a4_parity == 0);
  CHECK(total_rank({desc('A', 4, 1, 1, 11), desc('A', 4, 1, 1, 11)}).a4_parity == 0);
}

TEST_CASE("table route agrees with the adjoint-group route") {
  // PSL_2(ell^2): table gives f = 2 with rank 1; adjoint route f' = 2, rank 1
  CHECK(total_rank({desc('A', 1, 1, 2, 7)}).total_rank == rank_via_adjoint(2, 1));
  // split A_2 over the prime field
  CHECK(total_rank({desc('A', 2, 1, 1, 7)}).total_rank == rank_via_adjoint(1, 2));
}

TEST_CASE("chevalley_order closed forms") {
  CHECK(chevalley_order(SimpleType{'A', 1}, 5) == 120);
  CHECK(chevalley_order(SimpleType{'A', 1}, 13) == 2184);
  CHECK(chevalley_order(SimpleType{'A', 2}, 2) == 168);
  // |Sp_4(q)| = q^4 (q^2-1)(q^4-1)
  CHECK(chevalley_order(SimpleType{'B', 2}, 2) == 720);
  CHECK(chevalley_order(SimpleType{'B', 2}, 3) == 51840);
  CHECK_THROWS_AS(chevalley_order(SimpleType{'G', 2}, 5), error);
}

TEST_CASE("chevalley_order matches BFS enumeration") {
  // SL_2 over small fields, including extension fields
  for (u64 q : {u64(2), u64(3), u64(5), u64(7)}) {
    Field F = ext_field(q, 1);
    u64 bfs = oracles::bfs_group_order(F, 2, oracles::sl_generators(F, 2), 200000);
    CHECK(bfs == chevalley_order(SimpleType{'A', 1}, q));
  }
  {
    Field F9 = ext_field(3, 2);
    u64 bfs = oracles::bfs_group_order(F9, 2, oracles::sl_generators(F9, 2), 10000);
    CHECK(bfs == chevalley_order(SimpleType{'A', 1}, 9));  // 720
  }
  {
    Field F = ext_field(2, 1);
    u64 bfs = oracles::bfs_group_order(F, 3, oracles::sl_generators(F, 3), 10000);
    CHECK(bfs == chevalley_order(SimpleType{'A', 2}, 2));  // 168
    u64 bfs4 = oracles::bfs_group_order(F, 4, oracles::sl_generators(F, 4), 100000);
    CHECK(bfs4 == chevalley_order(SimpleType{'A', 3}, 2));  // 20160
  }
  {
    Field F = ext_field(3, 1);
    u64 bfs = oracles::bfs_group_order(F, 3, oracles::sl_generators(F, 3), 10000);
    CHECK(bfs == chevalley_order(SimpleType{'A', 2}, 3));  // 5616
  }
  {
    // Sp_4 generated by all symplectic transvections
    Field F2 = ext_field(2, 1);
    CHECK(oracles::bfs_group_order(F2, 4, oracles::sp4_transvections(F2), 10000) ==
          chevalley_order(SimpleType{'B', 2}, 2));
    Field F3 = ext_field(3, 1);
    CHECK(oracles::bfs_group_order(F3, 4, oracles::sp4_transvections(F3), 100000) ==
          chevalley_order(SimpleType{'B', 2}, 3));
  }
}

TEST_CASE("envelope points order multiplies factor orders") {
  CHECK(envelope_points_order({desc('A', 1, 1, 1, 7)}) == 336);
  CHECK(envelope_points_order({desc('A', 1, 1, 2, 7)}) == chevalley_order(SimpleType{'A', 1}, 49));
  CHECK(envelope_points_order({desc('A', 1, 1, 1, 7), desc('A', 1, 1, 1, 7)}) == 336 * 336);
  CHECK(envelope_points_order({}) == 1);
}
