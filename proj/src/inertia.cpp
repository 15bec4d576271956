#include "monodromy/inertia.hpp"

#include <algorithm>
#include <numeric>

namespace monodromy {

namespace {

u64 pow_u64_checked(u64 b, u64 e) {
  u128 r = 1;
  for (u64 i = 0; i < e; ++i) {
    r *= b;
    if (r > u128(UINT64_MAX)) throw error("inertia: overflow computing ell^level");
  }
  return u64(r);
}

}  // namespace

TameCharacter make_tame_character(u64 ell, u64 level, std::vector<u64> digits) {
  if (!is_prime_u64(ell)) throw error("inertia: ell is not prime");
  if (level == 0) throw error("inertia: level must be positive");
  if (digits.size() != level) throw error("inertia: digit vector has wrong length");
  bool all_top = true;
  for (u64 d : digits) {
    if (d >= ell) throw error("inertia: digit out of range");
    if (d != ell - 1) all_top = false;
  }
  if (all_top) std::fill(digits.begin(), digits.end(), 0);
  return TameCharacter{ell, level, std::move(digits)};
}

u64 character_exponent(const TameCharacter& c) {
  u64 e = 0, p = 1;
  for (u64 i = 0; i < c.level; ++i) {
    e += c.digits[i] * p;
    p *= c.ell;
  }
  return e;
}

TameCharacter restrict_digits(u64 e, u64 d, u64 ell) {
  if (!is_prime_u64(ell)) throw error("inertia: ell is not prime");
  if (d == 0) throw error("inertia: level must be positive");
  u64 modulus = pow_u64_checked(ell, d) - 1;
  e %= modulus;  // representative in [0, ell^d - 2] avoids the all-top pattern
  std::vector<u64> digits(d);
  for (u64 i = 0; i < d; ++i) {
    digits[i] = e % ell;
    e /= ell;
  }
  return make_tame_character(ell, d, std::move(digits));
}

u64 character_value(const TameCharacter& c, const Field& E, u64 x) {
  if (x == 0) throw error("inertia: character evaluated at zero");
  return E.pow(x, character_exponent(c));
}

std::vector<TameCharacter> decompose_tame(const TameRep& r, u64 field_cap) {
  if (!is_prime_u64(r.ell)) throw error("inertia: ell is not prime");
  Field F(r.ell, 1, {0});
  const Mat& M = r.generator_image;
  if (M.n == 0) throw error("inertia: empty representation");
  if (!mat_is_semisimple(F, M))
    throw error("inertia: generator image has order divisible by ell");
  Poly cp = char_poly(F, M);
  for (u64 deg : poly_factor_degrees(F, cp))
    if (r.level % deg != 0)
      throw error("inertia: eigenvalues do not lie in the level-" + std::to_string(r.level) + " field");
  Field E = ext_field(r.ell, r.level, field_cap);
  u64 gen = E.generator();
  // roots with multiplicity by repeated division
  std::vector<TameCharacter> out;
  Poly work = cp;
  for (u64 x = 0; x < E.order() && work.size() > 1; ++x) {
    while (work.size() > 1 && poly_eval(E, work, x) == 0) {
      if (x == 0) throw error("inertia: generator image is singular");
      u64 e = discrete_log(x, gen, E, field_cap);
      out.push_back(restrict_digits(e, r.level, r.ell));
      // divide by (t - x)
      Poly q(work.size() - 1);
      u64 carry = 0;
      for (size_t i = work.size(); i-- > 1;) {
        carry = E.add(work[i], E.mul(carry, x));
        q[i - 1] = carry;
      }
      work = std::move(q);
    }
  }
  if (out.size() != M.n) throw error("inertia: characteristic polynomial did not split at this level");
  std::sort(out.begin(), out.end());
  return out;
}

TameCharacter raise_level(const TameCharacter& c, u64 target_level) {
  if (target_level % c.level != 0)
    throw error("inertia: source level " + std::to_string(c.level) + " does not divide target level " + std::to_string(target_level));
  u64 big = pow_u64_checked(c.ell, target_level) - 1;
  u64 small = pow_u64_checked(c.ell, c.level) - 1;
  u128 e = u128(character_exponent(c)) * (big / small);
  return restrict_digits(u64(e % big), target_level, c.ell);
}

SerreBoundReport check_serre_bound(const std::vector<TameCharacter>& chars, u64 e, u64 i) {
  SerreBoundReport report;
  for (auto& c : chars) {
    bool ok = true;
    for (u64 d : c.digits)
      if (d > e * i) ok = false;
    report.per_character.push_back(ok);
    report.pass = report.pass && ok;
  }
  return report;
}

std::string to_string(RigidityVerdict v) {
  switch (v) {
    case RigidityVerdict::confirmed: return "confirmed";
    case RigidityVerdict::hypothesis_not_met: return "hypothesis-not-met";
    case RigidityVerdict::violated: return "violated";
  }
  return "?";
}

RigidityVerdict rigidity_check(const TameRep& f, u64 subgroup_index, const Mat& s, u64 c,
                               u64 field_cap) {
  Field F(f.ell, 1, {0});
  if (!mat_is_semisimple(F, s)) throw error("inertia: rigidity witness is not semisimple");
  u64 group_order = pow_u64_checked(f.ell, f.level) - 1;
  if (subgroup_index == 0 || group_order % subgroup_index != 0)
    throw error("inertia: subgroup index does not divide the group order");
  // digit bound of the representation
  for (auto& ch : decompose_tame(f, field_cap))
    for (u64 d : ch.digits)
      if (d > c) return RigidityVerdict::hypothesis_not_met;
  if (c * subgroup_index > f.ell - 1) return RigidityVerdict::hypothesis_not_met;
  Mat gH = mat_pow(F, f.generator_image, subgroup_index);
  if (mat_bracket(F, s, gH) != Mat(s.n)) return RigidityVerdict::hypothesis_not_met;
  // conclusion: s must commute with the full image
  if (mat_bracket(F, s, f.generator_image) == Mat(s.n)) return RigidityVerdict::confirmed;
  return RigidityVerdict::violated;
}

TameRep multiplication_rep(u64 ell, u64 d, u64 field_cap) {
  Field E = ext_field(ell, d, field_cap);
  u64 g = E.generator();
  Mat M(d);
  // column j = coefficients of g * x^j on the power basis 1, x, ..., x^(d-1)
  for (u64 j = 0; j < d; ++j) {
    u64 xj = d == 1 ? 1 : E.pow(ell, j);  // encoding of the element x is ell
    std::vector<u64> coeffs = E.to_coeffs(E.mul(g, xj));
    for (u64 i = 0; i < d; ++i) M.at(i, j) = coeffs[i];
  }
  return TameRep{ell, d, std::move(M)};
}

}  // namespace monodromy
