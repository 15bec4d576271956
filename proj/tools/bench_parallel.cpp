// Times the data-parallel kernels against their serial references on the
// heaviest enumerable fixtures: the order-ell filter over a fully enumerated
// group and the per-prime independence sweep.

#include <chrono>
#include <cstdio>

#include "monodromy/sysharness.hpp"

using namespace monodromy;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds(t0, std::chrono::steady_clock::now());
}

}  // namespace

int main() {
  Thresholds th;
  th.bfs_cap = 2'000'000;

  std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

  {
    SystemBundle b = gen_fixture("sl2xsl2", {11, 13}, th);
    MatrixGroup g = group_for_prime(b, 11);
    Field F = g.field();
    std::vector<Mat> elements = enumerate_group(g, th.bfs_cap);
    std::vector<Mat> serial_out, parallel_out;
    double ts = timed([&] { serial_out = filter_order_ell(F, elements, serial_policy()); });
    double tp = timed([&] { parallel_out = filter_order_ell(F, elements, ExecPolicy{}); });
    bool same = serial_out.size() == parallel_out.size();
    for (size_t i = 0; same && i < serial_out.size(); ++i) same = serial_out[i] == parallel_out[i];
    std::printf("%-34s %10.3f %10.3f %7.2fx  %s\n", "order-ell filter (sl2xsl2 @ 11)", ts, tp,
                ts / tp, same ? "identical" : "MISMATCH");
    if (!same) return 1;
  }

  {
    SystemBundle b = gen_fixture("sym3", {11, 13, 17, 19, 23, 29, 31}, th);
    IndependenceReport rs, rp;
    double ts = timed([&] { rs = check_independence(b, 0, th, DiscoveryMode::automatic, serial_policy()); });
    double tp = timed([&] { rp = check_independence(b, 0, th, DiscoveryMode::automatic, ExecPolicy{}); });
    bool same = rs.verdict == rp.verdict && rs.per_prime.size() == rp.per_prime.size();
    for (size_t i = 0; same && i < rs.per_prime.size(); ++i)
      same = rs.per_prime[i].fc.lattice_basis == rp.per_prime[i].fc.lattice_basis &&
             rs.per_prime[i].unipotent_count == rp.per_prime[i].unipotent_count;
    std::printf("%-34s %10.3f %10.3f %7.2fx  %s\n", "per-prime sweep (sym3, 7 primes)", ts, tp,
                ts / tp, same ? "identical" : "MISMATCH");
    if (!same) return 1;
  }
  return 0;
}
