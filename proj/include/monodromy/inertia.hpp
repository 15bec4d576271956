#pragma once

// Tame-inertia character arithmetic: ell-restricted digit vectors, eigenvalue
// decomposition of tame representations, level raising along norm maps,
// digit-bound auditing and the rigidity check.

#include <string>
#include <vector>

#include "monodromy/ffcore.hpp"

namespace monodromy {

struct TameCharacter {
  u64 ell = 0;
  u64 level = 0;
  std::vector<u64> digits;  // length `level`, entries in [0, ell-1], never all ell-1

  bool operator==(const TameCharacter& o) const {
    return ell == o.ell && level == o.level && digits == o.digits;
  }
  bool operator<(const TameCharacter& o) const { return digits < o.digits; }
};

// Validates and normalizes (the all-(ell-1) pattern collapses to all-zero).
TameCharacter make_tame_character(u64 ell, u64 level, std::vector<u64> digits);

// sum digits_i * ell^i, the exponent mod ell^level - 1.
u64 character_exponent(const TameCharacter& c);

// Unique ell-restricted digit vector of e mod (ell^d - 1).
TameCharacter restrict_digits(u64 e, u64 d, u64 ell);

// Value of the character on x in GF(ell^level)^* (encoding arithmetic in E,
// which may be GF(ell^level) or any extension containing x).
u64 character_value(const TameCharacter& c, const Field& E, u64 x);

struct TameRep {
  u64 ell = 0;
  u64 level = 0;
  Mat generator_image;  // over GF(ell); order prime to ell dividing ell^level - 1
};

// Eigenvalue decomposition over GF(ell^level): one character per eigenvalue
// with multiplicity, digits via discrete log against the canonical generator.
std::vector<TameCharacter> decompose_tame(const TameRep& r, u64 field_cap = u64(1) << 31);

// Same character values through the norm map, rewritten at level D (d | D).
TameCharacter raise_level(const TameCharacter& c, u64 target_level);

struct SerreBoundReport {
  bool pass = true;
  std::vector<bool> per_character;
};

// Every digit within [0, e*i].
SerreBoundReport check_serre_bound(const std::vector<TameCharacter>& chars, u64 e, u64 i);

enum class RigidityVerdict { confirmed, hypothesis_not_met, violated };

std::string to_string(RigidityVerdict v);

// If the digit bound c and subgroup index m satisfy c*m <= ell-1 and the
// semisimple s commutes with the index-m subgroup's image, s must commute
// with the image of the whole cyclic group.
RigidityVerdict rigidity_check(const TameRep& f, u64 subgroup_index, const Mat& s, u64 c,
                               u64 field_cap = u64(1) << 31);

// Multiplication action of the canonical generator of GF(ell^d)^* on itself
// as a d-dimensional GF(ell)-space (fixture for decompose_tame).
TameRep multiplication_rep(u64 ell, u64 d, u64 field_cap = u64(1) << 31);

}  // namespace monodromy
