#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perm.h"
#include "perm_group.h"

namespace fusionkit {

// One conjugation constraint: g * x * g^-1 must land in `targets`.
// Targets are pre-filtered to the cycle type of x by the engine, which makes
// the pointwise equations on supp(x) a complete test.
struct ConjConstraint {
  Perm x;
  std::vector<Perm> targets;
};

// DFS over a stabilizer chain whose base starts with every point the
// constraints mention.  Whole cosets prefix * G_cut are emitted once the
// constrained points are decided; every solution lies in exactly one emitted
// coset.  emit returns false to stop the search.
//
// Throws CapacityError if more than node_cap nodes are visited.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& m) : std::runtime_error(m) {}
};

struct ConjSearchResult {
  // Coset representatives found (prefix perms).
  std::vector<Perm> reps;
  // Generators of the pointwise stabilizer subgroup G_cut.
  std::vector<Perm> cut_gens;
};

void conj_search(const PermGroup& G, const std::vector<ConjConstraint>& constraints,
                 const std::function<bool(const Perm&)>& emit,
                 std::vector<Perm>* cut_gens_out, uint64_t node_cap = 50000000);

// N_G(P); P given by generators plus its full element list.
PermGroup bt_normalizer(const PermGroup& G, const std::vector<Perm>& p_gens,
                        const std::vector<Perm>& p_elems);
// C_G of a list of permutations (pointwise).
PermGroup bt_centralizer(const PermGroup& G, const std::vector<Perm>& xs);
// Some g with g P g^-1 = Q exactly, or nullopt.  q_elems is Q's element list.
std::optional<Perm> bt_conjugator(const PermGroup& G, const std::vector<Perm>& p_gens,
                                  const std::vector<Perm>& q_elems);

}  // namespace fusionkit
