#include <doctest.h>

#include "monodromy/sysharness.hpp"

using namespace monodromy;

// The OpenMP kernels must be bit-identical to their serial references.

TEST_CASE("order-ell filter: serial and openmp agree element by element") {
  SystemBundle b = gen_fixture("sl2-std", {7, 11, 13});
  for (u64 ell : b.primes) {
    MatrixGroup g = group_for_prime(b, ell);
    auto elements = enumerate_group(g, 100000);
    auto serial = filter_order_ell(g.field(), elements, serial_policy());
    auto parallel = filter_order_ell(g.field(), elements, ExecPolicy{ExecMode::openmp, 2});
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
  }
}

TEST_CASE("order_ell_elements: exhaustive discovery agrees across exec modes") {
  SystemBundle b = gen_fixture("sym2", {7, 11});
  Thresholds th;
  for (u64 ell : b.primes) {
    MatrixGroup g = group_for_prime(b, ell);
    UnipotentSet s = order_ell_elements(g, DiscoveryMode::exhaustive, th, 0, serial_policy());
    UnipotentSet p = order_ell_elements(g, DiscoveryMode::exhaustive, th, 0, ExecPolicy{});
    REQUIRE(s.elements.size() == p.elements.size());
    for (size_t i = 0; i < s.elements.size(); ++i) CHECK(s.elements[i] == p.elements[i]);
  }
}

TEST_CASE("independence sweep: serial and openmp reports coincide") {
  SystemBundle b = gen_fixture("sym2", {7, 11, 13});
  IndependenceReport s = check_independence(b, 3, Thresholds{}, DiscoveryMode::automatic, serial_policy());
  IndependenceReport p = check_independence(b, 3, Thresholds{}, DiscoveryMode::automatic, ExecPolicy{ExecMode::openmp, 2});
  CHECK(s.verdict == p.verdict);
  REQUIRE(s.per_prime.size() == p.per_prime.size());
  for (size_t i = 0; i < s.per_prime.size(); ++i) {
    CHECK(s.per_prime[i].ell == p.per_prime[i].ell);
    CHECK(s.per_prime[i].unipotent_count == p.per_prime[i].unipotent_count);
    CHECK(s.per_prime[i].fc.lattice_basis == p.per_prime[i].fc.lattice_basis);
    CHECK(s.per_prime[i].weight_matrix == p.per_prime[i].weight_matrix);
    CHECK(s.per_prime[i].rank_report.total_rank == p.per_prime[i].rank_report.total_rank);
  }
}
