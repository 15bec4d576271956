#pragma once

// Exact arithmetic over GF(ell^k) for small prime powers, dense matrices,
// characteristic polynomials and discrete logarithms.
//
// Field elements are encoded as a single uint64_t in [0, ell^k): the value
// sum_i c_i * ell^i encodes the residue class of c_0 + c_1*x + ... modulo the
// field's defining polynomial.  The prime subfield is exactly the encodings
// below ell, so prime-field scalars embed into extensions unchanged.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace monodromy {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

bool is_prime_u64(u64 n);

// Ascending prime factorization (with multiplicity collapsed), trial division.
std::vector<u64> prime_factors(u64 n);

// Polynomials over the prime subfield or an extension are coefficient vectors
// in ascending degree with no trailing zeros; {} is the zero polynomial.
using Poly = std::vector<u64>;

class Field {
public:
  // GF(ell) when degree == 1; GF(ell^degree) with the canonical modulus
  // otherwise (least monic irreducible, see ext_field).
  Field(u64 ell, u64 degree, std::vector<u64> modulus_low_coeffs);

  u64 ell() const { return ell_; }
  u64 degree() const { return deg_; }
  u64 order() const { return q_; }  // ell^degree
  // Non-leading coefficients of the monic modulus, ascending; for degree 1
  // this is {0}, i.e. the polynomial x - 0.
  const std::vector<u64>& modulus() const { return mod_; }

  u64 add(u64 a, u64 b) const;
  u64 sub(u64 a, u64 b) const;
  u64 neg(u64 a) const;
  u64 mul(u64 a, u64 b) const;
  u64 inv(u64 a) const;
  u64 pow(u64 a, u64 e) const;
  u64 frobenius(u64 a) const { return pow(a, ell_); }

  u64 from_int(i64 v) const;        // reduce an integer into the prime subfield
  bool in_prime_subfield(u64 a) const { return a < ell_; }
  // Symmetric representative in (-ell/2, ell/2] of a prime-subfield element.
  i64 symmetric_lift(u64 a) const;

  // Multiplicative order of a nonzero element.
  u64 element_order(u64 a) const;
  bool is_generator(u64 g) const;
  // Least primitive element under the integer encoding; cached.
  u64 generator() const;

  std::vector<u64> to_coeffs(u64 a) const;
  u64 from_coeffs(const std::vector<u64>& c) const;

  bool operator==(const Field& o) const {
    return ell_ == o.ell_ && deg_ == o.deg_ && mod_ == o.mod_;
  }

private:
  u64 ell_, deg_, q_;
  std::vector<u64> mod_;
  mutable u64 gen_ = 0;  // 0 = not yet computed
};

// Deterministic field constructor.  degree-1 fields use the modulus x - 0;
// higher degrees pick the monic irreducible of least integer encoding.
// Throws on non-prime ell or when ell^k exceeds the cap.
Field ext_field(u64 ell, u64 degree, u64 field_cap = u64(1) << 31);

// --- polynomial helpers (coefficients live in F) ---

Poly poly_trim(Poly p);
Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
Poly poly_mod(const Field& F, Poly a, const Poly& m);
// Monic gcd.
Poly poly_gcd(const Field& F, Poly a, Poly b);
Poly poly_derivative(const Field& F, const Poly& a);
Poly poly_monic(const Field& F, Poly a);
u64 poly_eval(const Field& F, const Poly& p, u64 x);
// x^e mod m.
Poly poly_xpow_mod(const Field& F, u64 e, const Poly& m);
bool poly_is_irreducible(const Field& F, const Poly& f);
// Degrees of the irreducible factors of f (with multiplicity), ascending.
std::vector<u64> poly_factor_degrees(const Field& F, Poly f);
// All roots of f in F (each listed once), ascending by encoding.
std::vector<u64> poly_roots(const Field& F, const Poly& f);

// --- dense matrices ---

struct Mat {
  u64 n = 0;
  std::vector<u64> a;  // row-major, n*n entries

  Mat() = default;
  explicit Mat(u64 dim) : n(dim), a(dim * dim, 0) {}
  u64& at(u64 i, u64 j) { return a[i * n + j]; }
  u64 at(u64 i, u64 j) const { return a[i * n + j]; }
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
};

Mat mat_identity(u64 n);
bool mat_is_identity(const Mat& m);
Mat mat_add(const Field& F, const Mat& A, const Mat& B);
Mat mat_sub(const Field& F, const Mat& A, const Mat& B);
Mat mat_mul(const Field& F, const Mat& A, const Mat& B);
Mat mat_scal(const Field& F, u64 c, const Mat& A);
Mat mat_pow(const Field& F, Mat A, u64 e);
Mat mat_transpose(const Mat& A);
Mat mat_bracket(const Field& F, const Mat& A, const Mat& B);  // AB - BA
// Throws monodromy::error when singular.
Mat mat_inverse(const Field& F, const Mat& A);
bool mat_is_invertible(const Field& F, Mat A);
// Row-reduce the rows in place to reduced echelon form; returns pivot columns.
std::vector<u64> rref(const Field& F, std::vector<std::vector<u64>>& rows);
// Basis of the right kernel {v : Av = 0}, reduced echelon over F.
std::vector<std::vector<u64>> mat_kernel(const Field& F, const Mat& A);
u64 mat_rank(const Field& F, Mat A);

// Monic characteristic polynomial det(xI - M), ascending coefficients;
// division-free (Samuelson-Berkowitz), valid over any Field.
Poly char_poly(const Field& F, const Mat& M);
// Minimal polynomial (monic), via Krylov annihilators.
Poly min_poly(const Field& F, const Mat& M);
// Semisimple <=> minimal polynomial squarefree.
bool mat_is_semisimple(const Field& F, const Mat& M);

// Baby-step/giant-step discrete log: least x in [0, ord(g)) with g^x = a.
// Requires g to generate the multiplicative group; field order capped.
u64 discrete_log(u64 a, u64 g, const Field& F, u64 field_cap = u64(1) << 31);
// Discrete log inside the cyclic subgroup generated by g of known order.
u64 discrete_log_in_subgroup(const Field& F, u64 a, u64 g, u64 order);

// Embedding GF(ell^a) -> GF(ell^b) for a | b, determined by the least root of
// the source modulus in the target.  Prime-subfield encodings map unchanged.
class FieldEmbedding {
public:
  static FieldEmbedding make(const Field& from, const Field& to);
  u64 map(u64 a) const;

private:
  Field from_, to_;
  std::vector<u64> root_powers_;  // root^0 .. root^(deg_from - 1) in `to`
  bool identity_ = false;
  FieldEmbedding(Field f, Field t) : from_(std::move(f)), to_(std::move(t)) {}
};

}  // namespace monodromy
