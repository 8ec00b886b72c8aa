#pragma once

#include <vector>

#include "fusion.h"
#include "group_ops.h"

namespace fusionkit {

// Exact equality of two systems over the same concrete group: same element
// table, same conjugacy classes, same automorphism sets.  Meaningful because
// element indexing is canonical for a fixed degree, so independently built
// systems over equal subgroups are directly comparable.
bool same_system(const FusionSystem& a, const FusionSystem& b);

// The abstract automorphism group of a node's subgroup, as value maps there.
std::vector<ValueMap> aut_all_maps(const FusionSystem& F, int node,
                                   uint64_t aut_cap = 10000);

// All isomorphisms of src onto dst; empty unless the nodes share a class.
std::vector<ValueMap> iso_set(const FusionSystem& F, int src, int dst);

// Value maps at a node turned into a permutation group on member positions,
// and back.  Round trips through subgroups of the abstract Aut(P).
PermGroup maps_as_position_group(const FusionSystem& F, int node,
                                 const std::vector<ValueMap>& maps);
std::vector<ValueMap> position_group_maps(const FusionSystem& F, int node,
                                          const PermGroup& g);

// The full subcategory over the subgroup at s0_node: all morphisms of F
// between subgroups of S0.
FusionSystem restricted_system(const FusionSystem& F, int s0_node);

// K below is a subgroup of Aut(Q) given as value maps at qnode; lists that
// are not composition closed are closed first.

struct KNormalizedCheck {
  bool fully = true;
  // A conjugate with a strictly larger twisted K-normalizer, when not fully.
  int better_node = -1;
  ValueMap better_map;  // isomorphism qnode -> better_node
};
KNormalizedCheck check_fully_k_normalized(const FusionSystem& F, int qnode,
                                          const std::vector<ValueMap>& K);
bool is_fully_k_normalized(const FusionSystem& F, int qnode,
                           const std::vector<ValueMap>& K);

// N_F^K(Q) over N_S^K(Q) = {g in N_S(Q) : c_g on Q lies in K}.  Morphisms
// P -> R are the restrictions of maps PQ -> RQ that send Q to itself with
// restriction in K and P into N_S^K(Q).  Errors unless Q is fully
// K-normalized.  For group-backed systems with an enumerable N_G(Q) the
// result is rebuilt from N_G^K(Q) and the two are required to match.
FusionSystem normalizer_system(const FusionSystem& F, int qnode,
                               const std::vector<ValueMap>& K);
// K = Aut(Q) and K = 1.
FusionSystem normalizer_system(const FusionSystem& F, int qnode);
FusionSystem centralizer_system(const FusionSystem& F, int qnode);

// F/Q for strongly closed Q.  Morphisms are the projections of morphisms
// between preimages; strong closure makes every such projection well defined.
struct QuotientSystem {
  FusionSystem sys;
  int qnode = -1;
  std::vector<int> elem_image;  // element index in F.tbl -> index in sys.tbl
};
QuotientSystem quotient_system(const FusionSystem& F, int qnode);

// P/Q is fully normalized in F/Q exactly when P is fully normalized in F;
// verified over every node above Q.  Requires F saturated.
bool quotient_normalized_correspondence(const FusionSystem& F,
                                        const QuotientSystem& q);

// F1 x F2 over S1 x S2 on disjoint supports: morphisms are the restrictions
// of pairs of morphisms to subgroups of the direct product.
FusionSystem product_system(const FusionSystem& a, const FusionSystem& b,
                            const FusionLimits& lim = {});

}  // namespace fusionkit
