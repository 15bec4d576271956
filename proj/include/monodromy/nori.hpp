#pragma once

// Semisimple envelopes of finite matrix groups over prime fields: order-ell
// element discovery, truncated exp/log, Lie-algebra generation, simple-type
// identification through root-space decomposition, integer weight extraction,
// invariant tensor subspaces and envelope assembly with central tori.

#include <optional>
#include <string>
#include <vector>

#include "monodromy/ffcore.hpp"
#include "monodromy/formchar.hpp"
#include "monodromy/parallel.hpp"
#include "monodromy/rootsys.hpp"

namespace monodromy {

// Configurable replacements for the theory's non-effective constants.
struct Thresholds {
  u64 bfs_cap = 1'000'000;          // exhaustive enumeration bound
  u64 field_cap = u64(1) << 31;     // largest splitting/discrete-log field
  u64 retry_budget = 32;            // regular-element draws
  u64 tensor_dim_cap = 4096;        // dim of the tensor sum U
  u64 central_order_min = 2;        // least usable central-generator order
  u64 ell_min_override = 0;         // 0 = use the default formula
  i64 weight_bound_override = 0;    // 0 = ambient dimension

  u64 ell_min(u64 n) const {
    if (ell_min_override) return ell_min_override;
    return std::max(2 * n, u64(7));
  }
  i64 weight_bound(u64 n) const { return weight_bound_override ? weight_bound_override : i64(n); }
};

struct MatrixGroup {
  u64 n = 0;
  u64 ell = 0;
  std::vector<Mat> generators;
  std::string label;

  Field field() const { return Field(ell, 1, {0}); }
};

// Throws unless all generators are square of the right size and invertible.
void validate_group(const MatrixGroup& g);

// Full BFS enumeration (elements in discovery order); throws when the group
// exceeds `cap`.  Materializes matrices — intended for small groups.
std::vector<Mat> enumerate_group(const MatrixGroup& g, u64 cap);

// Subgroup generated by `gens` inside the ambient field, cap-guarded.
std::vector<Mat> enumerate_subgroup(const Field& F, u64 n, const std::vector<Mat>& gens, u64 cap);

// Memory-lean enumeration: elements packed into 128 bits, kept sorted.
struct PackedGroup {
  u64 n = 0;
  u64 q = 0;
  std::vector<std::pair<u64, u64>> sorted;

  size_t size() const { return sorted.size(); }
  std::pair<u64, u64> pack(const Mat& m) const;
  Mat element(size_t i) const;
  bool contains(const Mat& m) const;
};
PackedGroup enumerate_packed(const Field& F, u64 n, const std::vector<Mat>& gens, u64 cap);

struct UnipotentSet {
  std::vector<Mat> elements;  // x != I with x^ell = 1
  bool complete = false;
};

enum class DiscoveryMode { exhaustive, generator_scan, automatic };

// Find the order-ell elements.  Exhaustive mode enumerates the group and
// filters (the filter is the data-parallel kernel); generator-scan projects
// short words and random conjugates onto their ell-parts and never claims
// completeness.  Automatic tries exhaustive and falls back to the scan.
UnipotentSet order_ell_elements(const MatrixGroup& g, DiscoveryMode mode, const Thresholds& th,
                                u64 seed, const ExecPolicy& exec = {});

// Filter x != I with x^ell = 1 out of an element list, preserving order.
std::vector<Mat> filter_order_ell(const Field& F, const std::vector<Mat>& elements,
                                  const ExecPolicy& exec);

// log of a unipotent matrix (truncated series; requires ell > n).
Mat trunc_log(const Field& F, const Mat& x);
// exp(t * n) for nilpotent n (truncated series; requires ell > n).
Mat trunc_exp(const Field& F, const Mat& nil, u64 t);

struct LieSubalgebra {
  u64 ambient_dim = 0;
  std::vector<Mat> basis;  // reduced echelon form as vectorized rows
  u64 dim = 0;
};

// Smallest bracket-closed subspace containing the inputs.
LieSubalgebra lie_closure(const Field& F, const std::vector<Mat>& nilpotents, u64 n);

bool is_bracket_closed(const Field& F, const LieSubalgebra& s);

struct LieFactor {
  SimpleType type;  // type of one almost-simple component over the closure
  u64 twist = 1;    // 1, 2 or 3
  u64 f = 1;        // Frobenius orbit length: the factor lives over GF(ell^f)

  bool operator<(const LieFactor& o) const {
    if (!(type == o.type)) return type < o.type;
    if (twist != o.twist) return twist < o.twist;
    return f < o.f;
  }
  bool operator==(const LieFactor& o) const {
    return type == o.type && twist == o.twist && f == o.f;
  }
};

struct SemisimpleTypeData {
  u64 rank = 0;
  std::vector<Mat> cartan_basis;            // simple coroots over the splitting field
  std::vector<SimpleType> closure_factors;  // component types over the closure, sorted
  std::vector<LieFactor> rational_factors;  // Frobenius-orbit-grouped, sorted
  IntMat cartan_matrix;                     // canonical block-diagonal form
  u64 splitting_degree = 1;
};

// Cartan subalgebra by random regular semisimple element, root-space
// decomposition over the splitting field, catalog classification.
// Requires ell >= th.ell_min(ambient) and a nondegenerate Killing form.
SemisimpleTypeData identify_type(const Field& F, const LieSubalgebra& s, u64 seed,
                                 const Thresholds& th);

struct WeightData {
  IntMat weight_matrix;  // rank x N; column j = weight of the j-th eigenvector
  u64 eigen_degree = 1;  // degree of the eigenbasis field over GF(ell)
};

// Integer weights of the identified Cartan on the ambient space, symmetric
// residue lifting validated against th.weight_bound and cross-checked with an
// independent Cartan draw.
WeightData weights_on_ambient(const Field& F, const LieSubalgebra& s, const SemisimpleTypeData& t,
                              u64 seed, const Thresholds& th, bool cross_check = true);

struct InvariantSpace {
  std::vector<std::vector<u64>> basis;  // vectors in U = V + V^2 + ... + V^c
  u64 tensor_degree = 0;
  u64 ambient_dim = 0;   // N
  u64 total_dim = 0;     // dim U
};

// Common kernel of the induced Lie-algebra action on the tensor sum.
InvariantSpace invariant_subspace(const Field& F, const LieSubalgebra& s, u64 tensor_degree,
                                  const Thresholds& th);

// Action of a group element on the tensor sum, applied to a vector of U.
std::vector<u64> tensor_apply(const Field& F, const Mat& g, const std::vector<u64>& u_vec,
                              u64 n, u64 tensor_degree);
// True when g fixes every basis vector of the invariant space.
bool fixes_invariant_space(const Field& F, const Mat& g, const InvariantSpace& w);
// Matrix of g acting on the invariant space; throws if g does not preserve it.
Mat action_on_invariant_space(const Field& F, const Mat& g, const InvariantSpace& w);

struct EnvelopeWeights {
  IntMat weight_matrix;            // (rank + #central) x N
  std::vector<u64> central_orders;
};

// Augment the torus weights with discrete-log rows of commuting semisimple
// central generators; the combined matrix feeds the formal-character lattice.
EnvelopeWeights assemble_envelope(const Field& F, const LieSubalgebra& s,
                                  const SemisimpleTypeData& t,
                                  const std::vector<Mat>& central, const Thresholds& th);

}  // namespace monodromy
