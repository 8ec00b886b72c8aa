#pragma once

#include <optional>
#include <vector>

#include "aut_group.h"
#include "fusion.h"

namespace fusionkit {

// Aut(S, F) and Out(S, F) for a saturated system.  An automorphism of S
// preserves fusion exactly when it carries the automorphism sets of the
// essential classes and of S into the system; sufficiency comes from the
// decomposition of every morphism through those sets.
struct FusionAutResult {
  std::vector<ValueMap> aut_sf;           // Aut(S, F) as maps on S, sorted
  uint64_t aut_f_s_order = 0;             // |Aut_F(S)|
  uint64_t out_order = 0;                 // |Out(S, F)| = |Aut(S,F)| / |Aut_F(S)|
  std::vector<uint64_t> out_elem_orders;  // element orders in Out(S, F), sorted
};
FusionAutResult fusion_preserving_auts(const FusionSystem& F);

struct IsoWitness {
  std::vector<Perm> dom_gens;  // generating sequence of the first Sylow group
  GenImageMap images;          // images in the second one
};

// An isomorphism of saturated fusion systems, as a group isomorphism of the
// Sylow groups carrying one morphism set onto the other.  Absence is
// certified: either the fingerprints differ, or every group isomorphism was
// tried and none preserves fusion.
std::optional<IsoWitness> find_isomorphism(const FusionSystem& a, const FusionSystem& b);
bool is_isomorphic(const FusionSystem& a, const FusionSystem& b);

// One admissible automorphism-group enlargement at one class: a subgroup
// A of Aut(rep) with Aut_S(rep) a proper Sylow p-subgroup of A and A/Inn
// having a strongly p-embedded subgroup.  These are the only assignments a
// saturated system can realize at its essential classes.
struct EssentialCandidate {
  int rep = -1;
  std::vector<ValueMap> auts;  // the subgroup A, sorted
};

struct CandidateSystem {
  FusionSystem sys;
  std::vector<int> chosen;  // per candidate class: -1 = none, else option index
  bool saturated = false;
};

struct CandidateSearch {
  // one entry per class that admits at least one candidate, ascending rep
  std::vector<std::vector<EssentialCandidate>> options;
  std::vector<CandidateSystem> systems;  // all assignment combinations
};

// Exhaustive search over S: every combination of candidate assignments,
// each generated and saturation-checked.  The empty combination (the inner
// system) is always present.
CandidateSearch enumerate_candidate_systems(const PermGroup& S, int p,
                                            const FusionLimits& lim = {});

}  // namespace fusionkit
