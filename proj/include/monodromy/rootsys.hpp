#pragma once

// Exact integer root-system combinatorics: base finding, Cartan matrices,
// Dynkin classification against the simple-type catalog, and reduction of
// root-system automorphisms to diagram automorphisms (for twist detection).
//
// A RootSet carries faithful integer coordinates for each root (pairings with
// some spanning set of coroots) together with the full pairing table
// pairing[a][b] = <alpha_a, alpha_b^vee>.

#include <string>
#include <vector>

#include "monodromy/formchar.hpp"

namespace monodromy {

struct SimpleType {
  char family = 'A';  // 'A'..'G'
  u64 rank = 0;

  bool operator==(const SimpleType& o) const { return family == o.family && rank == o.rank; }
  bool operator<(const SimpleType& o) const {
    return family != o.family ? family < o.family : rank < o.rank;
  }
  std::string name() const { return std::string(1, family) + "_" + std::to_string(rank); }
};

bool valid_simple_type(const SimpleType& t);

struct RootSet {
  std::vector<std::vector<i64>> v;        // coordinates, one row per root
  std::vector<std::vector<i64>> pairing;  // pairing[a][b] = <alpha_a, alpha_b^vee>

  size_t size() const { return v.size(); }
  // index of a coordinate vector, or -1
  int index_of(const std::vector<i64>& vec) const;
  // s_b(alpha_a) as a root index; throws if the image is not a root
  int reflect(int a, int b) const;
};

struct BaseData {
  std::vector<int> simple;     // indices of the simple roots, in discovery order
  std::vector<bool> positive;  // per root
};

// Deterministic choice of a positive system and its base.
BaseData find_base(const RootSet& rs);

// cartan[i][j] = <alpha_{simple[j]}, alpha_{simple[i]}^vee>
IntMat cartan_of(const RootSet& rs, const std::vector<int>& simple);

// Connected components of the "pairing != 0" graph on all roots.
std::vector<std::vector<int>> root_components(const RootSet& rs);

// Connected components of the Dynkin diagram (indices into `simple`).
std::vector<std::vector<int>> dynkin_components(const IntMat& cartan);

// Catalog Cartan matrix in Bourbaki numbering; throws on invalid type.
IntMat catalog_cartan(const SimpleType& t);

// Match a connected Cartan matrix against the catalog.  Returns the type and
// the node order realizing the catalog form (canonical_order[k] = index into
// `nodes` placed at catalog position k).
struct ComponentClass {
  SimpleType type;
  std::vector<int> canonical_order;
};
ComponentClass classify_component(const IntMat& cartan, const std::vector<int>& nodes);

// Full root set generated from a Cartan matrix by reflection closure; the
// coordinates are pairings with the simple coroots.
RootSet generate_root_set(const IntMat& cartan);

// Order (1, 2 or 3) of the diagram automorphism induced by a root-system
// automorphism `pi` (a permutation of all roots, given as image indices) that
// stabilizes the component containing `base_of_component`.  The automorphism
// is composed with the unique Weyl element returning pi(base) to the base.
int diagram_automorphism_order(const RootSet& rs, const BaseData& base,
                               const std::vector<int>& component_roots,
                               const std::vector<int>& base_of_component,
                               const std::vector<int>& pi);

}  // namespace monodromy
