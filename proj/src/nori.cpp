#include "monodromy/nori.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace monodromy {

namespace {

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Key128 {
  u64 lo = 0, hi = 0;
  bool operator==(const Key128& o) const { return lo == o.lo && hi == o.hi; }
};

struct Key128Hash {
  size_t operator()(const Key128& k) const {
    return size_t(splitmix64(k.lo) ^ (splitmix64(k.hi + 0x1234567) << 1 | (k.hi & 1)));
  }
};

struct Packer {
  u64 n = 0, q = 0;

  Key128 pack(const Mat& m) const {
    u128 acc = 0;
    for (size_t i = m.a.size(); i-- > 0;) acc = acc * q + m.a[i];
    return {u64(acc), u64(acc >> 64)};
  }
  Mat unpack(const Key128& k) const {
    u128 acc = (u128(k.hi) << 64) | k.lo;
    Mat m(n);
    for (size_t i = 0; i < m.a.size(); ++i) {
      m.a[i] = u64(acc % q);
      acc /= q;
    }
    return m;
  }
  bool representable() const {
    long double bits = n * n * std::log2l((long double)q);
    return bits <= 127.0L;
  }
};

}  // namespace

void validate_group(const MatrixGroup& g) {
  if (g.n == 0 || g.n > 16) throw error("nori: ambient dimension out of the supported range");
  if (!is_prime_u64(g.ell)) throw error("nori: ell is not prime");
  Field F = g.field();
  for (auto& m : g.generators) {
    if (m.n != g.n) throw error("nori: generator has wrong dimension");
    for (u64 e : m.a)
      if (e >= g.ell) throw error("nori: generator entry not reduced mod ell");
    if (!mat_is_invertible(F, m)) throw error("nori: generator is singular");
  }
}

std::vector<Mat> enumerate_subgroup(const Field& F, u64 n, const std::vector<Mat>& gens, u64 cap) {
  Packer pk{n, F.order()};
  if (!pk.representable()) throw error("nori: group elements too wide to enumerate");
  std::unordered_set<Key128, Key128Hash> seen;
  std::vector<Key128> order;
  Key128 id = pk.pack(mat_identity(n));
  seen.insert(id);
  order.push_back(id);
  for (size_t head = 0; head < order.size(); ++head) {
    Mat cur = pk.unpack(order[head]);
    for (auto& g : gens) {
      Key128 next = pk.pack(mat_mul(F, cur, g));
      if (seen.insert(next).second) {
        if (order.size() + 1 > cap) throw error("nori: enumeration exceeds the cap of " + std::to_string(cap));
        order.push_back(next);
      }
    }
  }
  std::vector<Mat> out;
  out.reserve(order.size());
  for (auto& k : order) out.push_back(pk.unpack(k));
  return out;
}

std::vector<Mat> enumerate_group(const MatrixGroup& g, u64 cap) {
  validate_group(g);
  return enumerate_subgroup(g.field(), g.n, g.generators, cap);
}

std::pair<u64, u64> PackedGroup::pack(const Mat& m) const {
  Packer pk{n, q};
  Key128 k = pk.pack(m);
  return {k.hi, k.lo};
}

Mat PackedGroup::element(size_t i) const {
  Packer pk{n, q};
  return pk.unpack(Key128{sorted[i].second, sorted[i].first});
}

bool PackedGroup::contains(const Mat& m) const {
  auto key = pack(m);
  return std::binary_search(sorted.begin(), sorted.end(), key);
}

PackedGroup enumerate_packed(const Field& F, u64 n, const std::vector<Mat>& gens, u64 cap) {
  Packer pk{n, F.order()};
  if (!pk.representable()) throw error("nori: group elements too wide to enumerate");
  std::unordered_set<Key128, Key128Hash> seen;
  seen.reserve(std::min<u64>(cap, u64(1) << 21));
  std::vector<Key128> order;
  Key128 id = pk.pack(mat_identity(n));
  seen.insert(id);
  order.push_back(id);
  for (size_t head = 0; head < order.size(); ++head) {
    Mat cur = pk.unpack(order[head]);
    for (auto& g : gens) {
      Key128 next = pk.pack(mat_mul(F, cur, g));
      if (seen.insert(next).second) {
        if (order.size() + 1 > cap) throw error("nori: enumeration exceeds the cap of " + std::to_string(cap));
        order.push_back(next);
      }
    }
  }
  seen.clear();
  PackedGroup out;
  out.n = n;
  out.q = F.order();
  out.sorted.reserve(order.size());
  for (auto& k : order) out.sorted.emplace_back(k.hi, k.lo);
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

std::vector<Mat> filter_order_ell(const Field& F, const std::vector<Mat>& elements,
                                  const ExecPolicy& exec) {
  const u64 ell = F.ell();
  std::vector<char> keep(elements.size(), 0);
  auto test = [&](size_t i) {
    const Mat& x = elements[i];
    if (mat_is_identity(x)) return char(0);
    return char(mat_is_identity(mat_pow(F, x, ell)) ? 1 : 0);
  };
  if (exec.mode == ExecMode::openmp) {
#ifdef _OPENMP
    if (exec.threads > 0) omp_set_num_threads(exec.threads);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)elements.size(); ++i) keep[size_t(i)] = test(size_t(i));
#else
    for (size_t i = 0; i < elements.size(); ++i) keep[i] = test(i);
#endif
  } else {
    for (size_t i = 0; i < elements.size(); ++i) keep[i] = test(i);
  }
  std::vector<Mat> out;
  for (size_t i = 0; i < elements.size(); ++i)
    if (keep[i]) out.push_back(elements[i]);
  return out;
}

namespace {

// packed exhaustive pass: enumerate and filter without materializing the group
UnipotentSet exhaustive_unipotents(const MatrixGroup& g, const Thresholds& th, const ExecPolicy& exec) {
  Field F = g.field();
  PackedGroup pg = enumerate_packed(F, g.n, g.generators, th.bfs_cap);
  const u64 ell = g.ell;
  std::vector<char> keep(pg.size(), 0);
  auto test = [&](size_t i) {
    Mat x = pg.element(i);
    if (mat_is_identity(x)) return char(0);
    return char(mat_is_identity(mat_pow(F, x, ell)) ? 1 : 0);
  };
  if (exec.mode == ExecMode::openmp) {
#ifdef _OPENMP
    if (exec.threads > 0) omp_set_num_threads(exec.threads);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)pg.size(); ++i) keep[size_t(i)] = test(size_t(i));
#else
    for (size_t i = 0; i < pg.size(); ++i) keep[i] = test(i);
#endif
  } else {
    for (size_t i = 0; i < pg.size(); ++i) keep[i] = test(i);
  }
  UnipotentSet out;
  out.complete = true;
  for (size_t i = 0; i < pg.size(); ++i)
    if (keep[i]) out.elements.push_back(pg.element(i));
  return out;
}

UnipotentSet scan_unipotents(const MatrixGroup& g, u64 seed) {
  Field F = g.field();
  const u64 n = g.n;
  // exponent of the prime-to-ell part of GL_n(F_ell) divides lcm(ell^d - 1)
  u64 L = 1;
  u64 p = 1;
  for (u64 d = 1; d <= n; ++d) {
    if (p > (u64(1) << 62) / g.ell || L > (u64(1) << 62) / (p * g.ell))
      throw error("nori: scan mode exponent overflow at this dimension");
    p *= g.ell;
    L = std::lcm(L, p - 1);
  }
  std::vector<Mat> words;
  for (auto& a : g.generators) words.push_back(a);
  size_t g1 = words.size();
  for (size_t i = 0; i < g1 && words.size() < 220; ++i)
    for (size_t j = 0; j < g1 && words.size() < 220; ++j) words.push_back(mat_mul(F, words[i], words[j]));
  size_t g2 = words.size();
  for (size_t i = 0; i < g1 && words.size() < 220; ++i)
    for (size_t j = g1; j < g2 && words.size() < 220; ++j) words.push_back(mat_mul(F, words[i], words[j]));
  std::mt19937_64 rng(splitmix64(seed) ^ 0xabcdef12345ULL);
  auto random_word = [&](u64 len) {
    Mat w = mat_identity(n);
    for (u64 i = 0; i < len; ++i) w = mat_mul(F, w, g.generators[rng() % g.generators.size()]);
    return w;
  };
  for (int i = 0; i < 24 && !g.generators.empty(); ++i) words.push_back(random_word(4 + rng() % 5));

  std::vector<Mat> found;
  auto add_unique = [&](const Mat& x) {
    for (auto& y : found)
      if (y == x) return;
    found.push_back(x);
  };
  for (auto& w : words) {
    Mat x = mat_pow(F, w, L);  // kills the semisimple part, keeps the ell-part
    if (!mat_is_identity(x)) {
      if (!mat_is_identity(mat_pow(F, x, g.ell)))
        throw error("nori: scan produced an element of order divisible by ell^2");
      add_unique(x);
    }
  }
  // random conjugates widen the sample
  std::vector<Mat> base = found;
  for (auto& x : base) {
    for (int i = 0; i < 8 && !g.generators.empty(); ++i) {
      Mat c = random_word(3 + rng() % 4);
      add_unique(mat_mul(F, mat_mul(F, c, x), mat_inverse(F, c)));
    }
  }
  UnipotentSet out;
  out.elements = std::move(found);
  out.complete = false;
  return out;
}

}  // namespace

UnipotentSet order_ell_elements(const MatrixGroup& g, DiscoveryMode mode, const Thresholds& th,
                                u64 seed, const ExecPolicy& exec) {
  validate_group(g);
  if (mode == DiscoveryMode::exhaustive) return exhaustive_unipotents(g, th, exec);
  if (mode == DiscoveryMode::generator_scan) return scan_unipotents(g, seed);
  try {
    return exhaustive_unipotents(g, th, exec);
  } catch (const error&) {
    return scan_unipotents(g, seed);
  }
}

Mat trunc_log(const Field& F, const Mat& x) {
  const u64 n = x.n;
  if (F.ell() <= n) throw error("nori: trunc_log requires ell > matrix dimension");
  Mat nil = mat_sub(F, x, mat_identity(n));
  if (!mat_is_identity(mat_add(F, mat_pow(F, nil, n), mat_identity(n))))
    throw error("nori: trunc_log input is not unipotent");
  // log(1 + n) = sum_{i>=1} (-1)^(i+1) n^i / i, truncating at nilpotency
  Mat acc(n);
  Mat power = nil;
  for (u64 i = 1; i < n; ++i) {
    u64 coeff = F.inv(F.from_int(i64(i)));
    if (i % 2 == 0) coeff = F.neg(coeff);
    acc = mat_add(F, acc, mat_scal(F, coeff, power));
    power = mat_mul(F, power, nil);
  }
  return acc;
}

Mat trunc_exp(const Field& F, const Mat& nil, u64 t) {
  const u64 n = nil.n;
  if (F.ell() <= n) throw error("nori: trunc_exp requires ell > matrix dimension");
  Mat zero(n);
  if (mat_pow(F, nil, n) != zero) throw error("nori: trunc_exp input is not nilpotent");
  Mat acc = mat_identity(n);
  Mat term = mat_identity(n);  // carries t^i * nil^i
  u64 factorial_inv = 1;
  for (u64 i = 1; i < n; ++i) {
    term = mat_scal(F, t, mat_mul(F, term, nil));
    factorial_inv = F.mul(factorial_inv, F.inv(F.from_int(i64(i))));
    acc = mat_add(F, acc, mat_scal(F, factorial_inv, term));
  }
  return acc;
}

LieSubalgebra lie_closure(const Field& F, const std::vector<Mat>& nilpotents, u64 n) {
  std::vector<std::vector<u64>> rows;
  std::vector<Mat> span;
  auto try_add = [&](const Mat& m) {
    std::vector<std::vector<u64>> test = rows;
    test.emplace_back(m.a.begin(), m.a.end());
    if (rref(F, test).size() > rows.size()) {
      rows = std::move(test);
      span.push_back(m);
      return true;
    }
    return false;
  };
  for (auto& m : nilpotents) {
    if (m.n != n) throw error("nori: lie_closure input has wrong dimension");
    try_add(m);
  }
  for (size_t i = 0; i < span.size(); ++i)
    for (size_t j = 0; j < i; ++j) try_add(mat_bracket(F, span[i], span[j]));

  // deterministic basis: reduced echelon rows turned back into matrices
  LieSubalgebra s;
  s.ambient_dim = n;
  s.dim = rows.size();
  for (auto& r : rows) {
    Mat m(n);
    std::copy(r.begin(), r.end(), m.a.begin());
    s.basis.push_back(std::move(m));
  }
  return s;
}

bool is_bracket_closed(const Field& F, const LieSubalgebra& s) {
  std::vector<std::vector<u64>> rows;
  for (auto& b : s.basis) rows.emplace_back(b.a.begin(), b.a.end());
  rref(F, rows);
  for (size_t i = 0; i < s.basis.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      Mat br = mat_bracket(F, s.basis[i], s.basis[j]);
      std::vector<std::vector<u64>> test = rows;
      test.emplace_back(br.a.begin(), br.a.end());
      if (rref(F, test).size() > rows.size()) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ identify_type

namespace {

// RREF basis bookkeeping: express vectors of the span in basis coordinates.
struct SpanCoords {
  std::vector<std::vector<u64>> rows;  // RREF rows, length n*n
  std::vector<u64> pivots;

  static SpanCoords of(const Field& F, const LieSubalgebra& s) {
    SpanCoords sc;
    for (auto& b : s.basis) sc.rows.emplace_back(b.a.begin(), b.a.end());
    sc.pivots = rref(F, sc.rows);
    if (sc.rows.size() != s.basis.size()) throw error("nori: Lie algebra basis is dependent");
    return sc;
  }

  // coordinates over any extension E of the base field
  std::vector<u64> coords(const Field& E, const std::vector<u64>& vec) const {
    std::vector<u64> c(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) c[i] = vec[pivots[i]];
    // verify the vector lies in the span
    std::vector<u64> recon(vec.size(), 0);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (c[i] == 0) continue;
      for (size_t j = 0; j < vec.size(); ++j) recon[j] = E.add(recon[j], E.mul(c[i], rows[i][j]));
    }
    if (recon != vec) throw error("nori: vector escapes the Lie algebra span");
    return c;
  }
};

struct AdContext {
  u64 dim = 0;
  std::vector<Mat> ad;  // ad[i] = matrix of [b_i, -] in basis coordinates

  static AdContext of(const Field& F, const LieSubalgebra& s, const SpanCoords& sc) {
    AdContext cx;
    cx.dim = s.dim;
    cx.ad.assign(s.dim, Mat(s.dim));
    for (u64 i = 0; i < s.dim; ++i) {
      for (u64 j = 0; j < s.dim; ++j) {
        Mat br = mat_bracket(F, s.basis[i], s.basis[j]);
        std::vector<u64> v(br.a.begin(), br.a.end());
        std::vector<u64> c = sc.coords(F, v);
        for (u64 k = 0; k < s.dim; ++k) cx.ad[i].at(k, j) = c[k];
      }
    }
    return cx;
  }

  // [u, v] in coordinates, over an extension E
  std::vector<u64> bracket(const Field& E, const std::vector<u64>& u, const std::vector<u64>& v) const {
    std::vector<u64> out(dim, 0);
    for (u64 i = 0; i < dim; ++i) {
      if (u[i] == 0) continue;
      for (u64 k = 0; k < dim; ++k) {
        u64 acc = 0;
        for (u64 j = 0; j < dim; ++j) {
          u64 a = ad[i].at(k, j);
          if (a && v[j]) acc = E.add(acc, E.mul(a, v[j]));
        }
        out[k] = E.add(out[k], E.mul(u[i], acc));
      }
    }
    return out;
  }
};

std::vector<std::vector<u64>> kernel_of_rows(const Field& F, std::vector<std::vector<u64>> rows, size_t width) {
  std::vector<u64> piv = rref(F, rows);
  std::vector<bool> is_piv(width, false);
  for (u64 p : piv) is_piv[p] = true;
  std::vector<std::vector<u64>> basis;
  for (size_t c = 0; c < width; ++c) {
    if (is_piv[c]) continue;
    std::vector<u64> v(width, 0);
    v[c] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(rows[r][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

struct RegularDraw {
  std::vector<u64> coeffs;  // element of the algebra
  Mat ad_mat;               // over the prime field
  u64 rank = 0;
  u64 splitting_degree = 1;
  Poly semisimple_part;     // char poly / t^rank, squarefree
};

std::optional<RegularDraw> draw_regular(const Field& F, const AdContext& cx, u64 seed,
                                        const Thresholds& th) {
  std::mt19937_64 rng(splitmix64(seed));
  std::optional<RegularDraw> best;
  for (u64 attempt = 0; attempt < th.retry_budget; ++attempt) {
    std::vector<u64> c(cx.dim);
    bool nonzero = false;
    for (auto& x : c) {
      x = rng() % F.ell();
      nonzero |= (x != 0);
    }
    if (!nonzero) continue;
    Mat A(cx.dim);
    for (u64 i = 0; i < cx.dim; ++i)
      if (c[i])
        for (u64 rc = 0; rc < cx.dim * cx.dim; ++rc) A.a[rc] = F.add(A.a[rc], F.mul(c[i], cx.ad[i].a[rc]));
    Poly cp = char_poly(F, A);
    u64 val = 0;
    while (val < cp.size() && cp[val] == 0) ++val;
    if (val == 0 || val >= cp.size()) continue;
    Poly g(cp.begin() + val, cp.end());
    Poly dg = poly_derivative(F, g);
    if (dg.empty() || poly_gcd(F, g, dg).size() != 1) continue;  // repeated nonzero eigenvalue
    if (cx.dim - mat_rank(F, A) != val) continue;                // not semisimple at 0
    std::vector<u64> degs = poly_factor_degrees(F, g);
    u64 k = 1;
    for (u64 d : degs) k = std::lcm(k, d);
    // splitting field must stay within the cap
    {
      long double sz = 1;
      bool fits = true;
      for (u64 i = 0; i < k; ++i) {
        sz *= (long double)F.ell();
        if (sz > (long double)th.field_cap) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
    }
    if (!best || std::make_pair(val, k) < std::make_pair(best->rank, best->splitting_degree)) {
      RegularDraw rd;
      rd.coeffs = std::move(c);
      rd.ad_mat = std::move(A);
      rd.rank = val;
      rd.splitting_degree = k;
      rd.semisimple_part = std::move(g);
      best = std::move(rd);
    }
  }
  return best;
}

i64 lift_prime_value(const Field& E, u64 v, const char* what) {
  if (!E.in_prime_subfield(v)) throw error(std::string("nori: ") + what + " is not in the prime subfield");
  return E.symmetric_lift(v);
}

}  // namespace

SemisimpleTypeData identify_type(const Field& F, const LieSubalgebra& s, u64 seed,
                                 const Thresholds& th) {
  SemisimpleTypeData out;
  if (s.dim == 0) return out;
  if (F.ell() < th.ell_min(s.ambient_dim))
    throw error("nori: ell = " + std::to_string(F.ell()) + " below ell_min(" + std::to_string(s.ambient_dim) + ") = " + std::to_string(th.ell_min(s.ambient_dim)));
  SpanCoords sc = SpanCoords::of(F, s);
  AdContext cx = AdContext::of(F, s, sc);

  // Killing form nondegeneracy
  {
    const u64 d = s.dim;
    Mat K(d);
    for (u64 i = 0; i < d; ++i)
      for (u64 j = 0; j < d; ++j) {
        u64 acc = 0;
        for (u64 a = 0; a < d; ++a)
          for (u64 b = 0; b < d; ++b) acc = F.add(acc, F.mul(cx.ad[i].at(a, b), cx.ad[j].at(b, a)));
        K.at(i, j) = acc;
      }
    if (mat_rank(F, K) != d)
      throw error("nori: Killing form degenerate — not semisimple at this ell");
  }

  auto rd = draw_regular(F, cx, seed, th);
  if (!rd) throw error("nori: no regular semisimple element found within the retry budget");
  const u64 r = rd->rank;
  const u64 d = s.dim;
  Field E = ext_field(F.ell(), rd->splitting_degree, th.field_cap);

  // root eigenvalues and eigenvectors of ad(x) over the splitting field
  std::vector<u64> lambdas = poly_roots(E, rd->semisimple_part);
  if (lambdas.size() != d - r) throw error("nori: splitting field failed to split the root values");
  std::map<u64, int> lambda_index;
  for (size_t i = 0; i < lambdas.size(); ++i) lambda_index[lambdas[i]] = int(i);
  std::vector<std::vector<u64>> root_vec(lambdas.size());
  for (size_t i = 0; i < lambdas.size(); ++i) {
    Mat Al(d);
    for (u64 rc = 0; rc < d * d; ++rc) Al.a[rc] = rd->ad_mat.a[rc];
    for (u64 k = 0; k < d; ++k) Al.at(k, k) = E.sub(Al.at(k, k), lambdas[i]);
    auto ker = mat_kernel(E, Al);
    if (ker.size() != 1) throw error("nori: root space is not one-dimensional");
    root_vec[i] = ker[0];
  }
  // eigenvalue multiset must be symmetric
  for (u64 l : lambdas)
    if (!lambda_index.count(E.neg(l))) throw error("nori: root values not symmetric under negation");

  // coroots, normalized so the root takes value 2
  std::vector<std::vector<u64>> coroot(lambdas.size());
  auto eigen_scalar = [&](const std::vector<u64>& w, const std::vector<u64>& v) {
    // w = c * v expected; returns c
    size_t j = 0;
    while (j < v.size() && v[j] == 0) ++j;
    if (j == v.size()) throw error("nori: zero eigenvector");
    u64 c = E.mul(w[j], E.inv(v[j]));
    for (size_t t = 0; t < v.size(); ++t)
      if (w[t] != E.mul(c, v[t])) throw error("nori: vector is not an eigenvector");
    return c;
  };
  for (size_t i = 0; i < lambdas.size(); ++i) {
    int ni = lambda_index.at(E.neg(lambdas[i]));
    std::vector<u64> h = cx.bracket(E, root_vec[i], root_vec[size_t(ni)]);
    std::vector<u64> w = cx.bracket(E, h, root_vec[i]);
    u64 c = eigen_scalar(w, root_vec[i]);
    if (c == 0) throw error("nori: degenerate root pair");
    u64 scale = E.mul(E.from_int(2), E.inv(c));
    for (auto& x : h) x = E.mul(x, scale);
    coroot[i] = std::move(h);
  }

  // independent coroot basis (greedy, deterministic by eigenvalue order)
  std::vector<int> basis_roots;
  {
    std::vector<std::vector<u64>> rows;
    for (size_t i = 0; i < lambdas.size() && basis_roots.size() < r; ++i) {
      std::vector<std::vector<u64>> test = rows;
      test.push_back(coroot[i]);
      if (rref(E, test).size() > rows.size()) {
        rows = std::move(test);
        basis_roots.push_back(int(i));
      }
    }
    if (basis_roots.size() != r) throw error("nori: coroots do not span the Cartan subalgebra");
  }

  // integer pairing table and coordinates
  const size_t m = lambdas.size();
  RootSet rs;
  rs.v.assign(m, std::vector<i64>(r));
  rs.pairing.assign(m, std::vector<i64>(m));
  {
    // pairing of every root with every coroot
    for (size_t b = 0; b < m; ++b) {
      for (size_t a = 0; a < m; ++a) {
        std::vector<u64> w = cx.bracket(E, coroot[b], root_vec[a]);
        u64 c = eigen_scalar(w, root_vec[a]);
        rs.pairing[a][b] = lift_prime_value(E, c, "root/coroot pairing");
      }
    }
    for (size_t a = 0; a < m; ++a)
      for (size_t k = 0; k < r; ++k) rs.v[a][k] = rs.pairing[a][size_t(basis_roots[k])];
    std::set<std::vector<i64>> distinct(rs.v.begin(), rs.v.end());
    if (distinct.size() != m) throw error("nori: root coordinates are not faithful");
  }

  BaseData base = find_base(rs);
  if (base.simple.size() != r) throw error("nori: base size disagrees with the rank");
  IntMat cart = cartan_of(rs, base.simple);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      i64 e = cart[i][j];
      bool ok = (i == j) ? (e == 2) : (e == 0 || e == -1 || e == -2 || e == -3);
      if (!ok) throw error("nori: Cartan matrix entry out of range");
    }

  auto dyn_comps = dynkin_components(cart);
  auto root_comps = root_components(rs);
  std::vector<int> root_comp_of(m);
  for (size_t c = 0; c < root_comps.size(); ++c)
    for (int a : root_comps[c]) root_comp_of[size_t(a)] = int(c);
  if (dyn_comps.size() != root_comps.size())
    throw error("nori: component structures disagree");

  struct Component {
    SimpleType type;
    std::vector<int> simple_canonical;  // root indices in catalog order
    int root_comp = 0;
  };
  std::vector<Component> comps;
  for (auto& nodes : dyn_comps) {
    ComponentClass cc = classify_component(cart, nodes);
    Component c;
    c.type = cc.type;
    for (size_t k = 0; k < nodes.size(); ++k)
      c.simple_canonical.push_back(base.simple[size_t(nodes[size_t(cc.canonical_order[k])])]);
    c.root_comp = root_comp_of[size_t(c.simple_canonical[0])];
    comps.push_back(std::move(c));
  }

  // Frobenius permutation of roots through eigenvalues
  std::vector<int> frob(m);
  for (size_t a = 0; a < m; ++a) {
    auto it = lambda_index.find(E.frobenius(lambdas[a]));
    if (it == lambda_index.end()) throw error("nori: root values are not Frobenius-stable");
    frob[a] = it->second;
  }
  // induced permutation on components
  std::vector<int> comp_image(comps.size());
  {
    std::vector<int> comp_of_rc(root_comps.size(), -1);
    for (size_t ci = 0; ci < comps.size(); ++ci) comp_of_rc[size_t(comps[ci].root_comp)] = int(ci);
    for (size_t ci = 0; ci < comps.size(); ++ci) {
      int target_rc = root_comp_of[size_t(frob[size_t(comps[ci].simple_canonical[0])])];
      for (int a : root_comps[size_t(comps[ci].root_comp)])
        if (root_comp_of[size_t(frob[size_t(a)])] != target_rc)
          throw error("nori: Frobenius does not permute the components");
      comp_image[ci] = comp_of_rc[size_t(target_rc)];
    }
  }
  // orbits -> rational factors
  std::vector<bool> visited(comps.size(), false);
  std::vector<LieFactor> rational;
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    if (visited[ci]) continue;
    std::vector<int> orbit;
    int cur = int(ci);
    while (!visited[size_t(cur)]) {
      visited[size_t(cur)] = true;
      orbit.push_back(cur);
      cur = comp_image[size_t(cur)];
    }
    for (int oc : orbit)
      if (!(comps[size_t(oc)].type == comps[size_t(ci)].type))
        throw error("nori: Frobenius orbit mixes distinct simple types");
    u64 f = orbit.size();
    std::vector<int> pif(m);
    for (size_t a = 0; a < m; ++a) {
      int x = int(a);
      for (u64 step = 0; step < f; ++step) x = frob[size_t(x)];
      pif[a] = x;
    }
    int twist = diagram_automorphism_order(rs, base, root_comps[size_t(comps[ci].root_comp)],
                                           comps[ci].simple_canonical, pif);
    rational.push_back(LieFactor{comps[ci].type, u64(twist), f});
  }
  std::sort(rational.begin(), rational.end());

  // canonical ordering of components for reporting
  std::vector<size_t> comp_order(comps.size());
  std::iota(comp_order.begin(), comp_order.end(), 0);
  std::sort(comp_order.begin(), comp_order.end(), [&](size_t a, size_t b) {
    if (!(comps[a].type == comps[b].type)) return comps[a].type < comps[b].type;
    return comps[a].simple_canonical[0] < comps[b].simple_canonical[0];
  });

  out.rank = r;
  out.splitting_degree = rd->splitting_degree;
  for (size_t oi : comp_order) out.closure_factors.push_back(comps[oi].type);
  out.rational_factors = std::move(rational);
  // block-diagonal canonical Cartan matrix
  {
    out.cartan_matrix.assign(r, std::vector<i64>(r, 0));
    size_t off = 0;
    for (size_t oi : comp_order) {
      IntMat blk = catalog_cartan(comps[oi].type);
      for (size_t i = 0; i < blk.size(); ++i)
        for (size_t j = 0; j < blk.size(); ++j) out.cartan_matrix[off + i][off + j] = blk[i][j];
      off += blk.size();
    }
  }
  // coroot matrices in canonical order
  const u64 n = s.ambient_dim;
  for (size_t oi : comp_order) {
    for (int root_idx : comps[oi].simple_canonical) {
      Mat M(n);
      for (u64 bi = 0; bi < d; ++bi) {
        u64 cihere = coroot[size_t(root_idx)][bi];
        if (!cihere) continue;
        for (u64 rc = 0; rc < n * n; ++rc) M.a[rc] = E.add(M.a[rc], E.mul(cihere, s.basis[bi].a[rc]));
      }
      out.cartan_basis.push_back(std::move(M));
    }
  }
  return out;
}

// ------------------------------------------------------------ weights

namespace {

struct EigenLeaf {
  std::vector<std::vector<u64>> rows;  // basis of the subspace over E
  std::vector<u64> values;             // one eigenvalue per processed matrix
};

// restriction of M to the span of `rows` (RREF rows assumed)
Mat restrict_to(const Field& E, const Mat& M, const std::vector<std::vector<u64>>& rows,
                const std::vector<u64>& pivots) {
  const size_t k = rows.size();
  const u64 n = M.n;
  Mat R(k);
  for (size_t j = 0; j < k; ++j) {
    std::vector<u64> img(n, 0);
    for (u64 a = 0; a < n; ++a) {
      u64 acc = 0;
      for (u64 b = 0; b < n; ++b) acc = E.add(acc, E.mul(M.at(a, b), rows[j][b]));
      img[a] = acc;
    }
    std::vector<u64> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = img[pivots[i]];
    std::vector<u64> recon(n, 0);
    for (size_t i = 0; i < k; ++i)
      for (u64 b = 0; b < n; ++b) recon[b] = E.add(recon[b], E.mul(c[i], rows[i][b]));
    if (recon != img) throw error("nori: matrix does not preserve the eigenspace");
    for (size_t i = 0; i < k; ++i) R.at(i, j) = c[i];
  }
  return R;
}

// split the leaves by eigenvalues of M drawn from `candidates`
std::vector<EigenLeaf> refine(const Field& E, std::vector<EigenLeaf> leaves, const Mat& M,
                              const std::vector<u64>& candidates) {
  std::vector<EigenLeaf> out;
  for (auto& leaf : leaves) {
    std::vector<std::vector<u64>> rows = leaf.rows;
    std::vector<u64> piv = rref(E, rows);
    Mat R = restrict_to(E, M, rows, piv);
    size_t found = 0;
    for (u64 lam : candidates) {
      Mat Rl = R;
      for (u64 i = 0; i < R.n; ++i) Rl.at(i, i) = E.sub(Rl.at(i, i), lam);
      auto ker = mat_kernel(E, Rl);
      if (ker.empty()) continue;
      EigenLeaf nl;
      nl.values = leaf.values;
      nl.values.push_back(lam);
      for (auto& kv : ker) {
        std::vector<u64> vec(rows.empty() ? 0 : rows[0].size(), 0);
        for (size_t i = 0; i < rows.size(); ++i)
          for (size_t b = 0; b < vec.size(); ++b) vec[b] = E.add(vec[b], E.mul(kv[i], rows[i][b]));
        nl.rows.push_back(std::move(vec));
      }
      found += nl.rows.size();
      out.push_back(std::move(nl));
    }
    if (found != rows.size()) throw error("nori: eigenvalue candidates fail to split a subspace");
  }
  return out;
}

}  // namespace

WeightData weights_on_ambient(const Field& F, const LieSubalgebra& s, const SemisimpleTypeData& t,
                              u64 seed, const Thresholds& th, bool cross_check) {
  WeightData out;
  const u64 n = s.ambient_dim;
  out.eigen_degree = t.splitting_degree;
  if (t.rank == 0) {
    out.weight_matrix.clear();
    return out;
  }
  Field E = ext_field(F.ell(), t.splitting_degree, th.field_cap);
  std::vector<u64> prime_candidates(F.ell());
  for (u64 i = 0; i < F.ell(); ++i) prime_candidates[i] = i;

  std::vector<EigenLeaf> leaves(1);
  for (u64 i = 0; i < n; ++i) {
    std::vector<u64> e(n, 0);
    e[i] = 1;
    leaves[0].rows.push_back(std::move(e));
  }
  for (auto& H : t.cartan_basis) leaves = refine(E, std::move(leaves), H, prime_candidates);

  std::vector<std::vector<i64>> columns;
  i64 bound = th.weight_bound(n);
  for (auto& leaf : leaves) {
    std::vector<i64> w(t.rank);
    for (u64 i = 0; i < t.rank; ++i) {
      i64 v = E.symmetric_lift(leaf.values[i]);
      if (v > bound || v < -bound)
        throw error("nori: weight lift exceeds the bound (ell too small for faithful lifting)");
      w[i] = v;
    }
    for (size_t c = 0; c < leaf.rows.size(); ++c) columns.push_back(w);
  }
  if (columns.size() != n) throw error("nori: weight multiplicities do not sum to the dimension");
  std::sort(columns.begin(), columns.end());
  out.weight_matrix.assign(t.rank, std::vector<i64>(n));
  for (u64 i = 0; i < t.rank; ++i)
    for (u64 j = 0; j < n; ++j) out.weight_matrix[i][j] = columns[j][i];
  // trace of every Cartan element on the ambient space vanishes
  for (u64 i = 0; i < t.rank; ++i) {
    i64 sum = 0;
    for (u64 j = 0; j < n; ++j) sum += out.weight_matrix[i][j];
    if (sum != 0) throw error("nori: weight columns do not sum to zero");
  }
  if (cross_check) {
    SemisimpleTypeData t2 = identify_type(F, s, splitmix64(seed ^ 0x5eedc0de), th);
    WeightData w2 = weights_on_ambient(F, s, t2, seed, th, false);
    FormalCharacter a = canonical_form(annihilator_lattice(out.weight_matrix, n), n);
    FormalCharacter b = canonical_form(annihilator_lattice(w2.weight_matrix, n), n);
    if (!(a.lattice_basis == b.lattice_basis))
      throw error("nori: weight lifting disagrees across independent Cartan draws");
  }
  return out;
}

// ------------------------------------------------------------ invariants

namespace {

u64 pow_u64(u64 b, u64 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

InvariantSpace invariant_subspace(const Field& F, const LieSubalgebra& s, u64 tensor_degree,
                                  const Thresholds& th) {
  const u64 n = s.ambient_dim;
  if (tensor_degree == 0) throw error("nori: tensor degree must be positive");
  u64 total = 0;
  for (u64 d = 1; d <= tensor_degree; ++d) {
    total += pow_u64(n, d);
    if (total > th.tensor_dim_cap) throw error("nori: tensor space exceeds the budget");
  }
  InvariantSpace W;
  W.tensor_degree = tensor_degree;
  W.ambient_dim = n;
  W.total_dim = total;
  u64 offset = 0;
  for (u64 d = 1; d <= tensor_degree; ++d) {
    const u64 dim = pow_u64(n, d);
    // common kernel of the derivation action of every basis element
    std::vector<std::vector<u64>> stacked;
    for (auto& b : s.basis) {
      // rows of the action matrix on V^(x)d
      for (u64 row = 0; row < dim; ++row) {
        std::vector<u64> out_row(dim, 0);
        // derivation: sum over positions of b acting in that slot
        // decode row multi-index
        for (u64 pos = 0; pos < d; ++pos) {
          // row index: digits base n, position pos
          u64 rest = row;
          std::vector<u64> idx(d);
          for (u64 t = 0; t < d; ++t) {
            idx[d - 1 - t] = rest % n;
            rest /= n;
          }
          u64 ri = idx[pos];
          for (u64 cj = 0; cj < n; ++cj) {
            u64 v = b.at(ri, cj);
            if (!v) continue;
            idx[pos] = cj;
            u64 col = 0;
            for (u64 t = 0; t < d; ++t) col = col * n + idx[t];
            out_row[col] = F.add(out_row[col], v);
            idx[pos] = ri;
          }
        }
        stacked.push_back(std::move(out_row));
      }
    }
    std::vector<std::vector<u64>> ker =
        s.basis.empty() ? std::vector<std::vector<u64>>() : kernel_of_rows(F, std::move(stacked), dim);
    if (s.basis.empty()) {
      // zero algebra: everything is invariant
      ker.assign(dim, std::vector<u64>(dim, 0));
      for (u64 i = 0; i < dim; ++i) ker[i][i] = 1;
    }
    for (auto& v : ker) {
      std::vector<u64> big(total, 0);
      std::copy(v.begin(), v.end(), big.begin() + i64(offset));
      W.basis.push_back(std::move(big));
    }
    offset += dim;
  }
  // reduced echelon basis, so actions can be expressed directly against it
  rref(F, W.basis);
  return W;
}

std::vector<u64> tensor_apply(const Field& F, const Mat& g, const std::vector<u64>& u_vec,
                              u64 n, u64 tensor_degree) {
  std::vector<u64> out(u_vec.size(), 0);
  u64 offset = 0;
  for (u64 d = 1; d <= tensor_degree; ++d) {
    const u64 dim = pow_u64(n, d);
    std::vector<u64> block(u_vec.begin() + i64(offset), u_vec.begin() + i64(offset + dim));
    // contract one tensor slot at a time
    for (u64 pos = 0; pos < d; ++pos) {
      std::vector<u64> next(dim, 0);
      u64 stride = pow_u64(n, d - 1 - pos);
      u64 outer = pow_u64(n, pos);
      for (u64 o = 0; o < outer; ++o) {
        for (u64 i = 0; i < n; ++i) {
          for (u64 j = 0; j < n; ++j) {
            u64 gij = g.at(i, j);
            if (!gij) continue;
            u64 src_base = (o * n + j) * stride;
            u64 dst_base = (o * n + i) * stride;
            for (u64 t = 0; t < stride; ++t)
              next[dst_base + t] = F.add(next[dst_base + t], F.mul(gij, block[src_base + t]));
          }
        }
      }
      block = std::move(next);
    }
    std::copy(block.begin(), block.end(), out.begin() + i64(offset));
    offset += dim;
  }
  return out;
}

bool fixes_invariant_space(const Field& F, const Mat& g, const InvariantSpace& w) {
  for (auto& v : w.basis)
    if (tensor_apply(F, g, v, w.ambient_dim, w.tensor_degree) != v) return false;
  return true;
}

Mat action_on_invariant_space(const Field& F, const Mat& g, const InvariantSpace& w) {
  std::vector<std::vector<u64>> rows = w.basis;
  std::vector<u64> piv = rref(F, rows);
  if (rows.size() != w.basis.size()) throw error("nori: invariant space basis is dependent");
  Mat R(w.basis.size());
  for (size_t j = 0; j < w.basis.size(); ++j) {
    std::vector<u64> img = tensor_apply(F, g, w.basis[j], w.ambient_dim, w.tensor_degree);
    std::vector<u64> c(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) c[i] = img[piv[i]];
    std::vector<u64> recon(img.size(), 0);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t b = 0; b < img.size(); ++b) recon[b] = F.add(recon[b], F.mul(c[i], rows[i][b]));
    if (recon != img) throw error("nori: element does not preserve the invariant space");
    for (size_t i = 0; i < rows.size(); ++i) R.at(i, j) = c[i];
  }
  return R;
}

// ------------------------------------------------------------ envelope

EnvelopeWeights assemble_envelope(const Field& F, const LieSubalgebra& s,
                                  const SemisimpleTypeData& t,
                                  const std::vector<Mat>& central, const Thresholds& th) {
  const u64 n = s.ambient_dim;
  for (auto& z : central) {
    for (auto& b : s.basis) {
      Mat br = mat_bracket(F, z, b);
      if (br != Mat(n)) throw error("nori: central element does not commute with the Lie algebra");
    }
    if (!mat_is_semisimple(F, z)) throw error("nori: central element is not semisimple");
  }
  // common splitting field for the Cartan and the central spectra
  u64 k_total = std::max<u64>(t.splitting_degree, 1);
  std::vector<Poly> zpolys;
  for (auto& z : central) {
    Poly cp = char_poly(F, z);
    for (u64 dd : poly_factor_degrees(F, cp)) k_total = std::lcm(k_total, dd);
    zpolys.push_back(std::move(cp));
  }
  Field E = ext_field(F.ell(), k_total, th.field_cap);
  FieldEmbedding emb = FieldEmbedding::make(ext_field(F.ell(), t.splitting_degree, th.field_cap), E);

  std::vector<u64> prime_candidates(F.ell());
  for (u64 i = 0; i < F.ell(); ++i) prime_candidates[i] = i;

  std::vector<EigenLeaf> leaves(1);
  for (u64 i = 0; i < n; ++i) {
    std::vector<u64> e(n, 0);
    e[i] = 1;
    leaves[0].rows.push_back(std::move(e));
  }
  for (auto& H : t.cartan_basis) {
    Mat He(n);
    for (u64 rc = 0; rc < n * n; ++rc) He.a[rc] = emb.map(H.a[rc]);
    leaves = refine(E, std::move(leaves), He, prime_candidates);
  }
  std::vector<u64> orders;
  for (size_t zi = 0; zi < central.size(); ++zi) {
    std::vector<u64> roots = poly_roots(E, zpolys[zi]);
    u64 o = 1;
    for (u64 rt : roots) o = std::lcm(o, E.element_order(rt));
    if (o < th.central_order_min)
      throw error("nori: central generator order " + std::to_string(o) + " too small to lift");
    orders.push_back(o);
    leaves = refine(E, std::move(leaves), central[zi], roots);
  }
  // assemble columns: rank coroot rows + one row per central generator
  const u64 rows_total = t.rank + central.size();
  std::vector<std::vector<i64>> columns;
  i64 bound = th.weight_bound(n);
  for (auto& leaf : leaves) {
    std::vector<i64> col(rows_total);
    for (u64 i = 0; i < t.rank; ++i) {
      i64 v = E.symmetric_lift(leaf.values[i]);
      if (v > bound || v < -bound) throw error("nori: weight lift exceeds the bound");
      col[i] = v;
    }
    for (size_t zi = 0; zi < central.size(); ++zi) {
      u64 o = orders[zi];
      u64 mu = E.pow(E.generator(), (E.order() - 1) / o);
      u64 dl = discrete_log_in_subgroup(E, leaf.values[t.rank + zi], mu, o);
      i64 v = i64(dl);
      if (v > i64(o / 2)) v -= i64(o);
      col[t.rank + zi] = v;
    }
    for (size_t c = 0; c < leaf.rows.size(); ++c) columns.push_back(col);
  }
  if (columns.size() != n) throw error("nori: envelope eigenvectors do not span the space");
  std::sort(columns.begin(), columns.end());
  EnvelopeWeights out;
  out.central_orders = std::move(orders);
  out.weight_matrix.assign(rows_total, std::vector<i64>(n));
  for (u64 i = 0; i < rows_total; ++i)
    for (u64 j = 0; j < n; ++j) out.weight_matrix[i][j] = columns[j][i];
  return out;
}

}  // namespace monodromy
