#include "oracles.hpp"

#include <random>
#include <set>

namespace oracles {

using namespace monodromy;

namespace {

// rank by plain forward elimination without pivot normalization
u64 naive_rank(const Field& F, std::vector<std::vector<u64>> rows) {
  u64 rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols; ++c) {
    size_t sel = SIZE_MAX;
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel == SIZE_MAX) continue;
    std::swap(rows[sel], rows[rank]);
    for (size_t r = sel + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      u64 factor = F.mul(rows[r][c], F.inv(rows[rank][c]));
      for (size_t j = c; j < cols; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

namespace {

// first maximal independent subset of the pool, by naive elimination
std::vector<Mat> select_independent(const Field& F, const std::vector<Mat>& pool) {
  std::vector<Mat> chosen;
  std::vector<std::vector<u64>> rows;
  for (auto& m : pool) {
    rows.emplace_back(m.a.begin(), m.a.end());
    if (naive_rank(F, rows) == rows.size())
      chosen.push_back(m);
    else
      rows.pop_back();
  }
  return chosen;
}

}  // namespace

u64 bracket_closure_dim(const Field& F, const std::vector<Mat>& seeds, u64 n) {
  if (seeds.empty()) return 0;
  std::vector<Mat> spanning = select_independent(F, seeds);
  while (true) {
    std::vector<Mat> pool = spanning;
    for (auto& a : spanning)
      for (auto& b : spanning) pool.push_back(mat_sub(F, mat_mul(F, a, b), mat_mul(F, b, a)));
    std::vector<Mat> next = select_independent(F, pool);
    if (next.size() == spanning.size()) break;
    spanning = std::move(next);
    if (spanning.size() > n * n) throw error("oracle: closure escaped gl_n");
  }
  return spanning.size();
}

u64 dlog_power_table(const Field& F, u64 a, u64 g) {
  u64 cur = 1;
  for (u64 e = 0; e < F.order(); ++e) {
    if (cur == a) return e;
    cur = F.mul(cur, g);
  }
  throw error("oracle: element not a power of the base");
}

std::vector<u64> least_irreducible_quadratic(u64 ell) {
  Field F(ell, 1, {0});
  for (u64 b = 0; b < ell; ++b) {
    for (u64 c0 = 0; c0 < ell; ++c0) {
      // encode-ordered: candidate value c0 + ell*b; scan in that order
      u64 bb = (c0 + ell * b) / ell;  // == b
      u64 cc = (c0 + ell * b) % ell;  // == c0
      bool has_root = false;
      for (u64 x = 0; x < ell && !has_root; ++x) {
        u64 v = F.add(F.add(F.mul(x, x), F.mul(bb, x)), cc);
        if (v == 0) has_root = true;
      }
      if (!has_root) return {cc, bb};
    }
  }
  throw error("oracle: no irreducible quadratic found");
}

u64 bfs_group_order(const Field& F, u64 n, const std::vector<Mat>& gens, u64 cap) {
  std::set<std::vector<u64>> seen;
  std::vector<std::vector<u64>> queue;
  Mat id = mat_identity(n);
  seen.insert(id.a);
  queue.push_back(id.a);
  for (size_t head = 0; head < queue.size(); ++head) {
    Mat cur(n);
    cur.a = queue[head];
    for (auto& g : gens) {
      Mat next = mat_mul(F, cur, g);
      if (seen.insert(next.a).second) {
        if (seen.size() > cap) throw error("oracle: BFS cap exceeded");
        queue.push_back(next.a);
      }
    }
  }
  return seen.size();
}

std::vector<Mat> sl_generators(const Field& F, u64 n) {
  std::vector<Mat> gens;
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j) {
      if (i == j) continue;
      Mat m = mat_identity(n);
      m.at(i, j) = 1;
      gens.push_back(std::move(m));
    }
  // for extension fields add the generator-scaled transvections
  if (F.degree() > 1 || F.order() > 2) {
    u64 g = F.generator();
    for (u64 i = 0; i < n; ++i)
      for (u64 j = 0; j < n; ++j) {
        if (i == j) continue;
        Mat m = mat_identity(n);
        m.at(i, j) = g;
        gens.push_back(std::move(m));
      }
  }
  return gens;
}

std::vector<Mat> sp4_transvections(const Field& F) {
  // standard form J(e1,e3) = J(e2,e4) = 1, antisymmetric
  const u64 n = 4;
  std::vector<std::vector<i64>> Js{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
  Mat J(n);
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j) J.at(i, j) = F.from_int(Js[i][j]);
  std::vector<Mat> out;
  // all nonzero directions v, all nonzero lambda: T(x) = x + lambda <x,v> v
  std::vector<u64> v(n);
  u64 q = F.order();
  u64 total = 1;
  for (u64 i = 0; i < n; ++i) total *= q;
  for (u64 code = 1; code < total; ++code) {
    u64 t = code;
    for (u64 i = 0; i < n; ++i) {
      v[i] = t % q;
      t /= q;
    }
    for (u64 lambda = 1; lambda < q; ++lambda) {
      Mat m = mat_identity(n);
      // column j of the correction: lambda * (J v)_j ... T(e_j) = e_j + lambda <e_j, v> v
      for (u64 j = 0; j < n; ++j) {
        u64 pairing = 0;  // <e_j, v> = sum_k J[j][k] v[k]
        for (u64 k = 0; k < n; ++k) pairing = F.add(pairing, F.mul(J.at(j, k), v[k]));
        u64 c = F.mul(lambda, pairing);
        for (u64 i = 0; i < n; ++i) m.at(i, j) = F.add(m.at(i, j), F.mul(c, v[i]));
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

Mat random_invertible(const Field& F, u64 n, u64 seed) {
  std::mt19937_64 rng(seed);
  while (true) {
    Mat m(n);
    for (auto& e : m.a) e = rng() % F.order();
    if (mat_is_invertible(F, m)) return m;
  }
}

std::vector<Mat> centralizer_basis(const Field& F, const Mat& M) {
  const u64 n = M.n;
  // rows of the linear map X -> XM - MX on the n^2 coordinates of X
  std::vector<std::vector<u64>> rows;
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j) {
      std::vector<u64> row(n * n, 0);
      // (XM)_{ij} = sum_k X_{ik} M_{kj};  (MX)_{ij} = sum_k M_{ik} X_{kj}
      for (u64 k = 0; k < n; ++k) {
        row[i * n + k] = F.add(row[i * n + k], M.at(k, j));
        row[k * n + j] = F.sub(row[k * n + j], M.at(i, k));
      }
      rows.push_back(std::move(row));
    }
  // kernel by the naive elimination in this file
  std::vector<std::vector<u64>> work = rows;
  // reduced echelon with own bookkeeping
  std::vector<u64> pivots;
  size_t r = 0;
  size_t cols = n * n;
  for (size_t c = 0; c < cols && r < work.size(); ++c) {
    size_t sel = SIZE_MAX;
    for (size_t i = r; i < work.size(); ++i)
      if (work[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == SIZE_MAX) continue;
    std::swap(work[sel], work[r]);
    u64 inv = F.inv(work[r][c]);
    for (size_t j = 0; j < cols; ++j) work[r][j] = F.mul(work[r][j], inv);
    for (size_t i = 0; i < work.size(); ++i) {
      if (i == r || work[i][c] == 0) continue;
      u64 f = work[i][c];
      for (size_t j = 0; j < cols; ++j) work[i][j] = F.sub(work[i][j], F.mul(f, work[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  work.resize(r);
  std::vector<bool> is_piv(cols, false);
  for (u64 p : pivots) is_piv[p] = true;
  std::vector<Mat> basis;
  for (size_t c = 0; c < cols; ++c) {
    if (is_piv[c]) continue;
    std::vector<u64> v(cols, 0);
    v[c] = 1;
    for (size_t rr = 0; rr < pivots.size(); ++rr) {
      u64 val = work[rr][c];
      if (val) v[pivots[rr]] = F.neg(val);
    }
    Mat m(n);
    m.a = std::move(v);
    basis.push_back(std::move(m));
  }
  return basis;
}

Mat random_nilpotent(const Field& F, u64 n, u64 seed) {
  if (n < 2) throw error("oracle: no nonzero nilpotents in dimension 1");
  std::mt19937_64 rng(seed);
  Mat upper(n);
  bool nonzero = false;
  while (!nonzero) {
    for (u64 i = 0; i < n; ++i)
      for (u64 j = i + 1; j < n; ++j) {
        upper.at(i, j) = rng() % F.order();
        nonzero |= upper.at(i, j) != 0;
      }
  }
  Mat p = random_invertible(F, n, seed ^ 0x777);
  return mat_mul(F, mat_mul(F, p, upper), mat_inverse(F, p));
}

}  // namespace oracles
