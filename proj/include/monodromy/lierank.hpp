#pragma once

// The composition-factor table for finite groups of Lie type and the
// bookkeeping of g-type and total ell-ranks.

#include <string>
#include <vector>

#include "monodromy/nori.hpp"
#include "monodromy/rootsys.hpp"

namespace monodromy {

struct LieFactorDescriptor {
  SimpleType type;  // type of the ambient almost-simple group over F_q
  u64 twist = 1;    // 1 (split), 2 or 3 (Steinberg twists)
  u64 f = 1;        // q = ell^f
  u64 ell = 0;
};

// twist-2 only for A_n (n >= 2), D_n, E_6; twist-3 only for D_4; ell >= 5
void validate_descriptor(const LieFactorDescriptor& d);

// The non-cyclic composition factor name plus the marker "cyclic".
std::vector<std::string> composition_factors(const LieFactorDescriptor& d);

// Sum of f * rank(g) over the factors of type g.
u64 g_type_rank(const std::vector<LieFactorDescriptor>& factors, const SimpleType& g);

struct RankReport {
  u64 total_rank = 0;
  std::vector<std::pair<std::string, u64>> per_type;  // sorted by type name
  u64 a4_parity = 0;                                  // parity of rk^{A_4} / 4
};

RankReport total_rank(const std::vector<LieFactorDescriptor>& factors);

// Alternative route through the adjoint-group formulation: f' * closure rank.
u64 rank_via_adjoint(u64 f_prime, u64 closure_rank);

// |G^sc(F_q)| for split simply connected A_n, B_n, C_n, D_n.
u64 chevalley_order(const SimpleType& t, u64 q);

// Points of the identified envelope: product of the factor orders
// (split factors only; a factor of orbit length f lives over GF(ell^f)).
u64 envelope_points_order(const std::vector<LieFactorDescriptor>& factors);

// Descriptor list out of the identified rational factors.
std::vector<LieFactorDescriptor> descriptors_from_factors(const std::vector<LieFactor>& factors,
                                                          u64 ell);

}  // namespace monodromy
