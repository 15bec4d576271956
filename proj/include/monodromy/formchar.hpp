#pragma once

// Formal characters as integer annihilator lattices in Z^N, canonical modulo
// coordinate permutation.  A lattice is stored by its row-style Hermite normal
// form: independent rows, positive pivots, entries above each pivot reduced to
// [0, pivot).  That form is unique per lattice, so equality of formal
// characters reduces to equality of canonicalized bases.

#include <cstdint>
#include <vector>

#include "monodromy/ffcore.hpp"

namespace monodromy {

using IntMat = std::vector<std::vector<i64>>;  // rows

struct FormalCharacter {
  u64 n = 0;                // ambient dimension
  IntMat lattice_basis;     // HNF rows; empty = zero lattice
  bool perm_canonical = false;

  bool operator==(const FormalCharacter& o) const {
    return n == o.n && lattice_basis == o.lattice_basis && perm_canonical == o.perm_canonical;
  }
};

// Row-style Hermite normal form of the lattice spanned by the rows.
// Dependent rows are dropped.
IntMat hnf(IntMat rows, u64 n);

// Basis of {m in Z^n : weights * m = 0}, i.e. the integer vectors annihilating
// every weight row; result in HNF.  r = 0 gives the full lattice Z^n.
IntMat annihilator_lattice(const IntMat& weights, u64 n);

// Least HNF basis over all coordinate permutations.  Exact for n <= 12; the
// permutation search is pruned by intrinsic per-coordinate signatures and by
// coordinate transpositions that stabilize the lattice.
FormalCharacter canonical_form(const IntMat& basis, u64 n);

// Canonical forms must agree; ambient dimensions must match (else error).
bool same_formal_character(const FormalCharacter& a, const FormalCharacter& b);

// Every entry of the weight matrix bounded by C in absolute value.
bool bounded_by(const IntMat& weights, i64 c);

// Apply a coordinate permutation: column j of the result is column perm[j] of
// the input rows.
IntMat permute_columns(const IntMat& rows, const std::vector<u64>& perm);

}  // namespace monodromy
