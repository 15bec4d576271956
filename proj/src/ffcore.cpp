#include "monodromy/ffcore.hpp"

#include <algorithm>
#include <unordered_map>

namespace monodromy {

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------- Field

Field::Field(u64 ell, u64 degree, std::vector<u64> modulus_low_coeffs)
    : ell_(ell), deg_(degree), mod_(std::move(modulus_low_coeffs)) {
  if (!is_prime_u64(ell_)) throw error("ffcore: ell = " + std::to_string(ell_) + " is not prime");
  if (deg_ < 1) throw error("ffcore: field degree must be >= 1");
  if (mod_.size() != deg_) throw error("ffcore: modulus has wrong degree");
  q_ = 1;
  for (u64 i = 0; i < deg_; ++i) {
    if (q_ > (u64(1) << 40)) throw error("ffcore: field too large");
    q_ *= ell_;
  }
  for (u64 c : mod_)
    if (c >= ell_) throw error("ffcore: modulus coefficient out of range");
}

u64 Field::from_int(i64 v) const {
  i64 m = i64(ell_);
  i64 r = v % m;
  if (r < 0) r += m;
  return u64(r);
}

i64 Field::symmetric_lift(u64 a) const {
  if (!in_prime_subfield(a)) throw error("ffcore: symmetric lift of a non-prime-subfield element");
  i64 v = i64(a);
  if (v > i64(ell_ / 2)) v -= i64(ell_);
  return v;
}

std::vector<u64> Field::to_coeffs(u64 a) const {
  std::vector<u64> c(deg_);
  for (u64 i = 0; i < deg_; ++i) {
    c[i] = a % ell_;
    a /= ell_;
  }
  return c;
}

u64 Field::from_coeffs(const std::vector<u64>& c) const {
  u64 a = 0;
  for (u64 i = c.size(); i-- > 0;) {
    if (c[i] >= ell_) throw error("ffcore: coefficient out of range");
    a = a * ell_ + c[i];
  }
  return a;
}

u64 Field::add(u64 a, u64 b) const {
  if (deg_ == 1) {
    u64 s = a + b;
    return s >= ell_ ? s - ell_ : s;
  }
  u64 out = 0, p = 1;
  for (u64 i = 0; i < deg_; ++i) {
    u64 s = a % ell_ + b % ell_;
    if (s >= ell_) s -= ell_;
    out += s * p;
    a /= ell_;
    b /= ell_;
    p *= ell_;
  }
  return out;
}

u64 Field::neg(u64 a) const {
  if (deg_ == 1) return a == 0 ? 0 : ell_ - a;
  u64 out = 0, p = 1;
  for (u64 i = 0; i < deg_; ++i) {
    u64 c = a % ell_;
    out += (c == 0 ? 0 : ell_ - c) * p;
    a /= ell_;
    p *= ell_;
  }
  return out;
}

u64 Field::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 Field::mul(u64 a, u64 b) const {
  if (deg_ == 1) return (a * b) % ell_;
  if (a == 0 || b == 0) return 0;
  // schoolbook product then reduction by the monic modulus
  u64 k = deg_;
  std::vector<u64> ca = to_coeffs(a), cb = to_coeffs(b);
  std::vector<u64> prod(2 * k - 1, 0);
  for (u64 i = 0; i < k; ++i) {
    if (ca[i] == 0) continue;
    for (u64 j = 0; j < k; ++j) prod[i + j] += ca[i] * cb[j];
  }
  for (u64 d = 2 * k - 2; d >= k; --d) {
    u64 c = prod[d] % ell_;
    if (c) {
      // x^d = x^(d-k) * (x^k) = -x^(d-k) * mod_(x)
      for (u64 j = 0; j < k; ++j) {
        if (mod_[j]) prod[d - k + j] += c * (ell_ - mod_[j]);
      }
    }
    if (d == k) break;
  }
  u64 out = 0, p = 1;
  for (u64 i = 0; i < k; ++i) {
    out += (prod[i] % ell_) * p;
    p *= ell_;
  }
  return out;
}

u64 Field::pow(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Field::inv(u64 a) const {
  if (a == 0) throw error("ffcore: inverse of zero");
  return pow(a, q_ - 2);
}

u64 Field::element_order(u64 a) const {
  if (a == 0) throw error("ffcore: order of zero");
  u64 ord = q_ - 1;
  for (u64 p : prime_factors(q_ - 1)) {
    while (ord % p == 0 && pow(a, ord / p) == 1) ord /= p;
  }
  return ord;
}

bool Field::is_generator(u64 g) const {
  if (g == 0) return false;
  for (u64 p : prime_factors(q_ - 1))
    if (pow(g, (q_ - 1) / p) == 1) return false;
  return q_ > 2 || g == 1;
}

u64 Field::generator() const {
  if (gen_) return gen_;
  for (u64 g = 1; g < q_; ++g) {
    if (is_generator(g)) {
      gen_ = g;
      return gen_;
    }
  }
  throw error("ffcore: no generator found");
}

Field ext_field(u64 ell, u64 degree, u64 field_cap) {
  if (!is_prime_u64(ell)) throw error("ffcore: ell = " + std::to_string(ell) + " is not prime");
  if (degree < 1) throw error("ffcore: degree must be positive");
  u64 q = 1;
  for (u64 i = 0; i < degree; ++i) {
    q *= ell;
    if (q > field_cap) throw error("ffcore: field GF(" + std::to_string(ell) + "^" + std::to_string(degree) + ") exceeds cap");
  }
  if (degree == 1) return Field(ell, 1, {0});
  // least monic irreducible by integer encoding of the low coefficients
  Field Fp(ell, 1, {0});
  u64 bound = q;  // ell^degree encodings
  for (u64 enc = 1; enc < bound; ++enc) {
    std::vector<u64> low(degree);
    u64 t = enc;
    for (u64 i = 0; i < degree; ++i) {
      low[i] = t % ell;
      t /= ell;
    }
    Poly f = low;
    f.push_back(1);  // monic x^degree + ...
    if (poly_is_irreducible(Fp, f)) return Field(ell, degree, low);
  }
  throw error("ffcore: no irreducible polynomial found");  // unreachable
}

// ---------------------------------------------------------------- polynomials

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0;
    u64 y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  return poly_trim(r);
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0;
    u64 y = i < b.size() ? b[i] : 0;
    r[i] = F.sub(x, y);
  }
  return poly_trim(r);
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return poly_trim(r);
}

Poly poly_mod(const Field& F, Poly a, const Poly& m) {
  a = poly_trim(std::move(a));
  Poly mm = poly_trim(m);
  if (mm.empty()) throw error("ffcore: polynomial mod zero");
  u64 lead_inv = F.inv(mm.back());
  while (a.size() >= mm.size()) {
    u64 c = F.mul(a.back(), lead_inv);
    size_t shift = a.size() - mm.size();
    if (c != 0) {
      for (size_t i = 0; i < mm.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, mm[i]));
    }
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

Poly poly_monic(const Field& F, Poly a) {
  a = poly_trim(std::move(a));
  if (a.empty()) return a;
  u64 inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

Poly poly_derivative(const Field& F, const Poly& a) {
  Poly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], F.from_int(i64(i % F.ell()))));
  return poly_trim(r);
}

u64 poly_eval(const Field& F, const Poly& p, u64 x) {
  u64 r = 0;
  for (size_t i = p.size(); i-- > 0;) r = F.add(F.mul(r, x), p[i]);
  return r;
}

Poly poly_xpow_mod(const Field& F, u64 e, const Poly& m) {
  Poly base = poly_mod(F, Poly{0, 1}, m);
  Poly r = poly_mod(F, Poly{1}, m);
  while (e) {
    if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
    base = poly_mod(F, poly_mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

namespace {

Poly poly_pow_mod(const Field& F, Poly base, u64 e, const Poly& m) {
  Poly r = poly_mod(F, Poly{1}, m);
  base = poly_mod(F, std::move(base), m);
  while (e) {
    if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
    base = poly_mod(F, poly_mul(F, base, base), m);
    e >>= 1;
  }
  return r;
}

// x^(ell^steps) mod m by iterated ell-th powers (the exponent itself may not
// fit an integer)
Poly frobenius_iterate(const Field& F, Poly start, u64 steps, const Poly& m) {
  Poly cur = poly_mod(F, std::move(start), m);
  for (u64 i = 0; i < steps; ++i) cur = poly_pow_mod(F, cur, F.ell(), m);
  return cur;
}

}  // namespace

bool poly_is_irreducible(const Field& F, const Poly& f) {
  Poly g = poly_trim(f);
  u64 n = g.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  // x^(ell^n) == x mod f, and x^(ell^(n/p)) - x coprime to f for prime p | n
  Poly xq = frobenius_iterate(F, Poly{0, 1}, n, g);
  if (poly_trim(poly_sub(F, xq, Poly{0, 1})) != Poly{}) return false;
  for (u64 p : prime_factors(n)) {
    Poly xs = poly_sub(F, frobenius_iterate(F, Poly{0, 1}, n / p, g), Poly{0, 1});
    Poly d = poly_gcd(F, g, xs);
    if (d.size() != 1) return false;
  }
  return true;
}

namespace {
// squarefree part; handles the f' == 0 case (perfect ell-th powers)
Poly poly_radical(const Field& F, Poly f) {
  f = poly_monic(F, std::move(f));
  if (f.size() <= 1) return f;
  Poly d = poly_derivative(F, f);
  if (d.empty()) {
    // f(x) = g(x^ell) with g made of the same coefficients (prime field:
    // c^(1/ell) = c); recurse on g
    Poly g;
    for (size_t i = 0; i < f.size(); i += F.ell()) g.push_back(f[i]);
    return poly_radical(F, g);
  }
  Poly g = poly_gcd(F, f, d);
  if (g.size() == 1) return f;
  // f / g, then recurse to strip deeper multiplicities
  // polynomial division (exact)
  Poly quot;
  Poly rem = f;
  u64 lead_inv = F.inv(g.back());
  quot.assign(f.size() - g.size() + 1, 0);
  while (rem.size() >= g.size() && !rem.empty()) {
    u64 c = F.mul(rem.back(), lead_inv);
    size_t shift = rem.size() - g.size();
    quot[shift] = c;
    for (size_t i = 0; i < g.size(); ++i) rem[shift + i] = F.sub(rem[shift + i], F.mul(c, g[i]));
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  Poly rad_quot = poly_radical(F, poly_trim(quot));
  Poly rg = poly_radical(F, g);
  // radical(f) = radical(f/g) * (radical(g) / gcd of the two), lcm-style
  Poly common = poly_gcd(F, rad_quot, rg);
  Poly lcm = rad_quot;
  if (common.size() > 1) {
    // divide rg by common then multiply
    Poly q2(rg.size() - common.size() + 1, 0);
    Poly r2 = rg;
    u64 li = F.inv(common.back());
    while (r2.size() >= common.size() && !r2.empty()) {
      u64 c = F.mul(r2.back(), li);
      size_t shift = r2.size() - common.size();
      q2[shift] = c;
      for (size_t i = 0; i < common.size(); ++i) r2[shift + i] = F.sub(r2[shift + i], F.mul(c, common[i]));
      while (!r2.empty() && r2.back() == 0) r2.pop_back();
    }
    lcm = poly_mul(F, lcm, poly_trim(q2));
  } else {
    lcm = poly_mul(F, lcm, rg);
  }
  return poly_monic(F, lcm);
}
}  // namespace

std::vector<u64> poly_factor_degrees(const Field& F, Poly f) {
  f = poly_monic(F, poly_trim(std::move(f)));
  if (f.size() <= 1) return {};
  std::vector<u64> degs;
  // strip multiplicities first: degrees reported with multiplicity via
  // repeated radical passes
  while (f.size() > 1) {
    Poly rad = poly_radical(F, f);
    // distinct-degree factorization of rad
    Poly work = rad;
    Poly frob{0, 1};  // x^(ell^d) mod work, advanced one Frobenius per step
    for (u64 d = 1; work.size() > 1 && d <= work.size() - 1; ++d) {
      frob = frobenius_iterate(F, std::move(frob), 1, work);
      Poly xq = frob;
      Poly g = poly_gcd(F, work, poly_sub(F, xq, Poly{0, 1}));
      if (g.size() > 1) {
        u64 count = (g.size() - 1) / d;
        for (u64 i = 0; i < count; ++i) degs.push_back(d);
        // work /= g
        Poly q(work.size() - g.size() + 1, 0);
        Poly r = work;
        u64 li = F.inv(g.back());
        while (r.size() >= g.size() && !r.empty()) {
          u64 c = F.mul(r.back(), li);
          size_t shift = r.size() - g.size();
          q[shift] = c;
          for (size_t i = 0; i < g.size(); ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, g[i]));
          while (!r.empty() && r.back() == 0) r.pop_back();
        }
        work = poly_trim(q);
      }
    }
    // f /= rad (exact division) to expose remaining multiplicity
    Poly q(f.size() - rad.size() + 1, 0);
    Poly r = f;
    u64 li = F.inv(rad.back());
    while (r.size() >= rad.size() && !r.empty()) {
      u64 c = F.mul(r.back(), li);
      size_t shift = r.size() - rad.size();
      q[shift] = c;
      for (size_t i = 0; i < rad.size(); ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, rad[i]));
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    f = poly_trim(q);
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

std::vector<u64> poly_roots(const Field& F, const Poly& f) {
  std::vector<u64> roots;
  Poly g = poly_trim(f);
  if (g.empty()) throw error("ffcore: roots of the zero polynomial");
  for (u64 x = 0; x < F.order(); ++x)
    if (poly_eval(F, g, x) == 0) roots.push_back(x);
  return roots;
}

// ---------------------------------------------------------------- matrices

Mat mat_identity(u64 n) {
  Mat I(n);
  for (u64 i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

bool mat_is_identity(const Mat& m) {
  for (u64 i = 0; i < m.n; ++i)
    for (u64 j = 0; j < m.n; ++j)
      if (m.at(i, j) != (i == j ? u64(1) : u64(0))) return false;
  return true;
}

Mat mat_add(const Field& F, const Mat& A, const Mat& B) {
  Mat C(A.n);
  for (u64 i = 0; i < A.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
  return C;
}

Mat mat_sub(const Field& F, const Mat& A, const Mat& B) {
  Mat C(A.n);
  for (u64 i = 0; i < A.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
  return C;
}

Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
  const u64 n = A.n;
  Mat C(n);
  if (F.degree() == 1 && F.ell() < (u64(1) << 24)) {
    // accumulate raw products, reduce once per entry; safe while n*ell^2 < 2^63
    const u64 ell = F.ell();
    for (u64 i = 0; i < n; ++i) {
      u64* crow = &C.a[i * n];
      for (u64 k = 0; k < n; ++k) {
        u64 v = A.a[i * n + k];
        if (!v) continue;
        const u64* brow = &B.a[k * n];
        for (u64 j = 0; j < n; ++j) crow[j] += v * brow[j];
      }
      for (u64 j = 0; j < n; ++j) crow[j] %= ell;
    }
    return C;
  }
  if (F.degree() == 1) {
    const u64 ell = F.ell();
    for (u64 i = 0; i < n; ++i) {
      for (u64 k = 0; k < n; ++k) {
        u64 v = A.a[i * n + k];
        if (!v) continue;
        const u64* brow = &B.a[k * n];
        u64* crow = &C.a[i * n];
        for (u64 j = 0; j < n; ++j) crow[j] = (crow[j] + v * brow[j]) % ell;
      }
    }
    return C;
  }
  for (u64 i = 0; i < n; ++i)
    for (u64 k = 0; k < n; ++k) {
      u64 v = A.at(i, k);
      if (!v) continue;
      for (u64 j = 0; j < n; ++j) C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(k, j)));
    }
  return C;
}

Mat mat_scal(const Field& F, u64 c, const Mat& A) {
  Mat C(A.n);
  for (u64 i = 0; i < A.a.size(); ++i) C.a[i] = F.mul(c, A.a[i]);
  return C;
}

Mat mat_pow(const Field& F, Mat A, u64 e) {
  Mat R = mat_identity(A.n);
  while (e) {
    if (e & 1) R = mat_mul(F, R, A);
    A = mat_mul(F, A, A);
    e >>= 1;
  }
  return R;
}

Mat mat_transpose(const Mat& A) {
  Mat T(A.n);
  for (u64 i = 0; i < A.n; ++i)
    for (u64 j = 0; j < A.n; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

Mat mat_bracket(const Field& F, const Mat& A, const Mat& B) {
  return mat_sub(F, mat_mul(F, A, B), mat_mul(F, B, A));
}

Mat mat_inverse(const Field& F, const Mat& A) {
  const u64 n = A.n;
  Mat aug = A;
  Mat inv = mat_identity(n);
  for (u64 col = 0; col < n; ++col) {
    u64 piv = col;
    while (piv < n && aug.at(piv, col) == 0) ++piv;
    if (piv == n) throw error("ffcore: matrix not invertible");
    if (piv != col) {
      for (u64 j = 0; j < n; ++j) {
        std::swap(aug.a[piv * n + j], aug.a[col * n + j]);
        std::swap(inv.a[piv * n + j], inv.a[col * n + j]);
      }
    }
    u64 d = F.inv(aug.at(col, col));
    for (u64 j = 0; j < n; ++j) {
      aug.at(col, j) = F.mul(aug.at(col, j), d);
      inv.at(col, j) = F.mul(inv.at(col, j), d);
    }
    for (u64 r = 0; r < n; ++r) {
      if (r == col) continue;
      u64 f = aug.at(r, col);
      if (!f) continue;
      for (u64 j = 0; j < n; ++j) {
        aug.at(r, j) = F.sub(aug.at(r, j), F.mul(f, aug.at(col, j)));
        inv.at(r, j) = F.sub(inv.at(r, j), F.mul(f, inv.at(col, j)));
      }
    }
  }
  return inv;
}

bool mat_is_invertible(const Field& F, Mat A) {
  u64 n = A.n;
  return mat_rank(F, std::move(A)) == n;
}

std::vector<u64> rref(const Field& F, std::vector<std::vector<u64>>& rows) {
  std::vector<u64> pivots;
  if (rows.empty()) return pivots;
  size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[r]);
    u64 d = F.inv(rows[r][c]);
    for (size_t j = c; j < cols; ++j) rows[r][j] = F.mul(rows[r][j], d);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      u64 f = rows[i][c];
      for (size_t j = c; j < cols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<std::vector<u64>> mat_kernel(const Field& F, const Mat& A) {
  const u64 n = A.n;
  std::vector<std::vector<u64>> rows(n, std::vector<u64>(n));
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j) rows[i][j] = A.at(i, j);
  std::vector<u64> piv = rref(F, rows);
  std::vector<bool> is_piv(n, false);
  for (u64 p : piv) is_piv[p] = true;
  std::vector<std::vector<u64>> basis;
  for (u64 c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    std::vector<u64> v(n, 0);
    v[c] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(rows[r][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

u64 mat_rank(const Field& F, Mat A) {
  std::vector<std::vector<u64>> rows(A.n, std::vector<u64>(A.n));
  for (u64 i = 0; i < A.n; ++i)
    for (u64 j = 0; j < A.n; ++j) rows[i][j] = A.at(i, j);
  return rref(F, rows).size();
}

Poly char_poly(const Field& F, const Mat& M) {
  const u64 n = M.n;
  if (n == 0) return Poly{1};
  // Samuelson-Berkowitz: iteratively combine principal submatrices through
  // Toeplitz products; division-free.
  std::vector<u64> p{1, F.neg(M.at(0, 0))};  // descending coeffs of 1x1
  for (u64 k = 2; k <= n; ++k) {
    u64 m = k - 1;  // previous size
    u64 a = M.at(m, m);
    // s_j = R * Mprev^j * C for j = 0..m-1
    std::vector<u64> s(m);
    std::vector<u64> v(m);
    for (u64 i = 0; i < m; ++i) v[i] = M.at(i, m);  // C
    for (u64 j = 0; j < m; ++j) {
      u64 acc = 0;
      for (u64 i = 0; i < m; ++i) acc = F.add(acc, F.mul(M.at(m, i), v[i]));  // R * v
      s[j] = acc;
      if (j + 1 < m) {
        std::vector<u64> nv(m, 0);
        for (u64 i = 0; i < m; ++i) {
          u64 t = 0;
          for (u64 c = 0; c < m; ++c) t = F.add(t, F.mul(M.at(i, c), v[c]));
          nv[i] = t;
        }
        v = std::move(nv);
      }
    }
    // first column of the (k+1) x k Toeplitz: [1, -a, -s_0, ..., -s_{m-1}]
    std::vector<u64> col(k + 1);
    col[0] = 1;
    col[1] = F.neg(a);
    for (u64 j = 0; j < m; ++j) col[j + 2] = F.neg(s[j]);
    std::vector<u64> np(k + 1, 0);
    for (u64 i = 0; i <= k; ++i) {
      u64 acc = 0;
      for (u64 j = 0; j < k && j <= i; ++j) acc = F.add(acc, F.mul(col[i - j], p[j]));
      np[i] = acc;
    }
    p = std::move(np);
  }
  // p is descending (p[0] = 1); convert to ascending
  Poly out(p.rbegin(), p.rend());
  return out;
}

Poly min_poly(const Field& F, const Mat& M) {
  const u64 n = M.n;
  Poly mp{1};
  // lcm of annihilators of Krylov sequences of the standard basis vectors
  for (u64 start = 0; start < n; ++start) {
    // check whether mp already annihilates e_start
    {
      std::vector<u64> acc(n, 0);
      std::vector<u64> v(n, 0);
      v[start] = 1;
      for (size_t d = 0; d < mp.size(); ++d) {
        if (mp[d]) {
          for (u64 i = 0; i < n; ++i) acc[i] = F.add(acc[i], F.mul(mp[d], v[i]));
        }
        if (d + 1 < mp.size()) {
          std::vector<u64> nv(n, 0);
          for (u64 i = 0; i < n; ++i) {
            u64 t = 0;
            for (u64 j = 0; j < n; ++j) t = F.add(t, F.mul(M.at(i, j), v[j]));
            nv[i] = t;
          }
          v = std::move(nv);
        }
      }
      bool zero = true;
      for (u64 x : acc)
        if (x) {
          zero = false;
          break;
        }
      if (zero) continue;
    }
    // annihilator of the Krylov orbit of e_start: rows [v | M v | ...]
    std::vector<std::vector<u64>> rows;
    std::vector<std::vector<u64>> iterates;
    std::vector<u64> v(n, 0);
    v[start] = 1;
    Poly ann;
    for (u64 d = 0; d <= n; ++d) {
      iterates.push_back(v);
      std::vector<std::vector<u64>> test = iterates;
      std::vector<u64> piv = rref(F, test);
      if (piv.size() < iterates.size()) {
        // dependency: express last iterate in terms of the earlier ones
        size_t m = iterates.size() - 1;
        std::vector<std::vector<u64>> sys(n, std::vector<u64>(m + 1));
        for (size_t c = 0; c < m; ++c)
          for (u64 i = 0; i < n; ++i) sys[i][c] = iterates[c][i];
        for (u64 i = 0; i < n; ++i) sys[i][m] = iterates[m][i];
        std::vector<u64> p2 = rref(F, sys);
        std::vector<u64> coef(m, 0);
        for (size_t r2 = 0; r2 < p2.size(); ++r2)
          if (p2[r2] < m) coef[p2[r2]] = sys[r2][m];
        ann.assign(m + 1, 0);
        ann[m] = 1;
        for (size_t c = 0; c < m; ++c) ann[c] = F.neg(coef[c]);
        break;
      }
      std::vector<u64> nv(n, 0);
      for (u64 i = 0; i < n; ++i) {
        u64 t = 0;
        for (u64 j = 0; j < n; ++j) t = F.add(t, F.mul(M.at(i, j), v[j]));
        nv[i] = t;
      }
      v = std::move(nv);
    }
    // mp = lcm(mp, ann)
    Poly g = poly_gcd(F, mp, ann);
    // mp * (ann / g)
    Poly q(ann.size() - g.size() + 1, 0);
    Poly r = ann;
    u64 li = F.inv(g.back());
    while (r.size() >= g.size() && !r.empty()) {
      u64 c = F.mul(r.back(), li);
      size_t shift = r.size() - g.size();
      q[shift] = c;
      for (size_t i = 0; i < g.size(); ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, g[i]));
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    mp = poly_mul(F, mp, poly_trim(q));
    if (mp.size() == n + 1) break;  // cannot grow further
  }
  return poly_monic(F, mp);
}

bool mat_is_semisimple(const Field& F, const Mat& M) {
  Poly mp = min_poly(F, M);
  Poly d = poly_derivative(F, mp);
  if (d.empty()) return false;  // ell-th power factor present
  return poly_gcd(F, mp, d).size() == 1;
}

// ---------------------------------------------------------------- dlog

u64 discrete_log(u64 a, u64 g, const Field& F, u64 field_cap) {
  if (F.order() > field_cap) throw error("ffcore: field too large for discrete log");
  if (a == 0) throw error("ffcore: discrete log of zero");
  if (!F.is_generator(g)) throw error("ffcore: base is not a generator");
  return discrete_log_in_subgroup(F, a, g, F.order() - 1);
}

FieldEmbedding FieldEmbedding::make(const Field& from, const Field& to) {
  FieldEmbedding e(from, to);
  if (from == to) {
    e.identity_ = true;
    return e;
  }
  if (to.degree() % from.degree() != 0)
    throw error("ffcore: no embedding between these fields");
  Poly mod = from.modulus();
  mod.push_back(1);  // monic source modulus, prime-subfield coefficients
  std::vector<u64> roots = poly_roots(to, mod);
  if (roots.empty()) throw error("ffcore: source modulus has no root in the target field");
  u64 r = roots.front();
  e.root_powers_.assign(from.degree(), 1);
  for (u64 i = 1; i < from.degree(); ++i) e.root_powers_[i] = to.mul(e.root_powers_[i - 1], r);
  return e;
}

u64 FieldEmbedding::map(u64 a) const {
  if (identity_) return a;
  std::vector<u64> c = from_.to_coeffs(a);
  u64 out = 0;
  for (u64 i = 0; i < from_.degree(); ++i)
    if (c[i]) out = to_.add(out, to_.mul(c[i], root_powers_[i]));
  return out;
}

u64 discrete_log_in_subgroup(const Field& F, u64 a, u64 g, u64 order) {
  if (a == 0) throw error("ffcore: discrete log of zero");
  u64 m = 1;
  while (m * m < order) ++m;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = F.mul(cur, g);
  }
  u64 giant = F.pow(F.inv(g), m);
  cur = a;
  for (u64 i = 0; i * m <= order; ++i) {
    auto it = baby.find(cur);
    if (it != baby.end()) {
      u64 x = i * m + it->second;
      if (F.pow(g, x) != a) throw error("ffcore: element not in the subgroup generated by the base");
      return x % order;
    }
    cur = F.mul(cur, giant);
  }
  throw error("ffcore: element not in the subgroup generated by the base");
}

}  // namespace monodromy
