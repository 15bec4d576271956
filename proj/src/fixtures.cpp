#include "monodromy/sysharness.hpp"

#include <algorithm>

namespace monodromy {

namespace {

const IntMatrix kE2{{1, 1}, {0, 1}};
const IntMatrix kF2{{1, 0}, {1, 1}};

// symmetric-square action on (e1^2, e1 e2, e2^2)
IntMatrix sym2(const IntMatrix& g) {
  i64 a = g[0][0], b = g[0][1], c = g[1][0], d = g[1][1];
  return {{a * a, a * b, b * b},
          {2 * a * c, a * d + b * c, 2 * b * d},
          {c * c, c * d, d * d}};
}

// symmetric-cube action on (e1^3, e1^2 e2, e1 e2^2, e2^3)
IntMatrix sym3(const IntMatrix& g) {
  i64 a = g[0][0], b = g[0][1], c = g[1][0], d = g[1][1];
  return {{a * a * a, a * a * b, a * b * b, b * b * b},
          {3 * a * a * c, a * a * d + 2 * a * b * c, 2 * a * b * d + b * b * c, 3 * b * b * d},
          {3 * a * c * c, 2 * a * c * d + b * c * c, a * d * d + 2 * b * c * d, 3 * b * d * d},
          {c * c * c, c * c * d, c * d * d, d * d * d}};
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  size_t n = a.size() + b.size();
  IntMatrix m(n, std::vector<i64>(n, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) m[i][j] = a[i][j];
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) m[a.size() + i][a.size() + j] = b[i][j];
  return m;
}

const IntMatrix kI2{{1, 0}, {0, 1}};

// 2x2 regular-representation block of z in GF(ell^2) on the power basis
Mat regular_block(const Field& E, u64 z) {
  Mat m(2);
  for (u64 j = 0; j < 2; ++j) {
    u64 xj = j == 0 ? 1 : E.ell();  // encoding of the element x
    std::vector<u64> c = E.to_coeffs(E.mul(z, xj));
    m.at(0, j) = c[0];
    m.at(1, j) = c[1];
  }
  return m;
}

// elementary SL_2(GF(ell^2)) generators pushed down to GL_4(GF(ell))
MatrixGroup weil_res_group(u64 ell, u64 field_cap) {
  Field E = ext_field(ell, 2, field_cap);
  u64 one = 1;
  u64 x = E.ell();
  MatrixGroup g;
  g.n = 4;
  g.ell = ell;
  g.label = "weil-res-sl2";
  for (bool lower : {false, true}) {
    for (u64 z : {one, x}) {
      Mat blk = regular_block(E, z);
      Mat m = mat_identity(4);
      for (u64 i = 0; i < 2; ++i)
        for (u64 j = 0; j < 2; ++j) {
          if (lower)
            m.at(2 + i, j) = blk.at(i, j);
          else
            m.at(i, 2 + j) = blk.at(i, j);
        }
      g.generators.push_back(std::move(m));
    }
  }
  return g;
}

MatrixGroup torus_group(u64 ell) {
  Field F(ell, 1, {0});
  MatrixGroup g;
  g.n = 2;
  g.ell = ell;
  g.label = "diag-torus";
  Mat m(2);
  u64 gen = F.generator();
  m.at(0, 0) = gen;
  m.at(1, 1) = F.inv(gen);
  g.generators.push_back(std::move(m));
  return g;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"sl2-std", "sym2", "sym3", "sl2xsl2", "weil-res-sl2", "torus-adversarial"};
}

SystemBundle gen_fixture(const std::string& name, const std::vector<u64>& primes,
                         const Thresholds& th) {
  SystemBundle b;
  b.label = name;
  b.primes = primes;
  if (name == "sl2-std") {
    b.n = 2;
    b.integral_generators = {kE2, kF2};
    b.frobenius_words = {{{0}, {1, -2, 1}}, {{0, 1}, {1, -3, 1}}};
  } else if (name == "sym2") {
    b.n = 3;
    b.integral_generators = {sym2(kE2), sym2(kF2)};
    b.frobenius_words = {{{0}, {1, -3, 3, -1}}, {{0, 1}, {1, -8, 8, -1}}};
  } else if (name == "sym3") {
    b.n = 4;
    b.integral_generators = {sym3(kE2), sym3(kF2)};
    b.frobenius_words = {{{0}, {1, -4, 6, -4, 1}}, {{0, 1}, {1, -21, 56, -21, 1}}};
  } else if (name == "sl2xsl2") {
    b.n = 4;
    b.integral_generators = {block_diag(kE2, kI2), block_diag(kF2, kI2), block_diag(kI2, kE2),
                             block_diag(kI2, kF2)};
    b.frobenius_words = {{{0}, {1, -4, 6, -4, 1}}, {{0, 1, 2, 3}, {1, -6, 11, -6, 1}}};
  } else if (name == "weil-res-sl2") {
    b.n = 4;
    for (u64 ell : primes) b.per_prime_groups.push_back(weil_res_group(ell, th.field_cap));
  } else if (name == "torus-adversarial") {
    b.n = 2;
    if (primes.size() < 2) throw error("sysharness: torus-adversarial needs at least two primes");
    u64 odd_one_out = *std::max_element(primes.begin(), primes.end());
    for (u64 ell : primes) {
      if (ell == odd_one_out)
        b.per_prime_groups.push_back(torus_group(ell));
      else {
        MatrixGroup g = reduce_integral_group({kE2, kF2}, 2, ell, "sl2-std");
        b.per_prime_groups.push_back(std::move(g));
      }
    }
  } else {
    throw error("sysharness: unknown fixture \"" + name + "\"");
  }
  validate_bundle(b, th);
  return b;
}

}  // namespace monodromy
