#pragma once

#include <optional>
#include <vector>

#include "backtrack.h"
#include "perm.h"
#include "perm_group.h"

namespace fusionkit {

// Groups up to this order are handled by scanning all elements; larger ones
// go through the chain backtrack.
constexpr uint64_t kBruteGroupCap = 100000;

// N_G(P,Q) = {g : g P g^-1 <= Q} as representatives * N_G(P); the
// representatives biject with the subgroups of Q that P maps onto.
struct TransporterSet {
  std::vector<Perm> reps;
  PermGroup stabilizer;  // N_G(P)
};

PermGroup normalizer(const PermGroup& G, const PermGroup& P);
PermGroup centralizer(const PermGroup& G, const PermGroup& H);
PermGroup centralizer(const PermGroup& G, const Perm& x);
PermGroup center(const PermGroup& G);
// Some g with g P g^-1 = Q, or nullopt.  |P| must equal |Q|.
std::optional<Perm> conjugator(const PermGroup& G, const PermGroup& P, const PermGroup& Q);
TransporterSet transporter(const PermGroup& G, const PermGroup& P, const PermGroup& Q);

// Brute-force counterparts used as oracles; require |G| <= kBruteGroupCap.
PermGroup brute_normalizer(const PermGroup& G, const PermGroup& P);
PermGroup brute_centralizer(const PermGroup& G, const std::vector<Perm>& xs);
std::optional<Perm> brute_conjugator(const PermGroup& G, const PermGroup& P, const PermGroup& Q);

PermGroup sylow_subgroup(const PermGroup& G, int p);
// Sylow p-subgroup containing the p-subgroup P0.
PermGroup sylow_containing(const PermGroup& G, int p, const PermGroup& P0);

// O^p(G): smallest normal subgroup with p-group quotient.
PermGroup op_power_residual(const PermGroup& G, int p);
// O^{p'}(G): smallest normal subgroup of index prime to p.
PermGroup opprime_residual(const PermGroup& G, int p);
// O_p(G): largest normal p-subgroup.
PermGroup op_core(const PermGroup& G, int p);
// O_{p'}(G): largest normal subgroup of order prime to p.
// Requires |G| <= kBruteGroupCap (works from conjugacy classes).
PermGroup opprime_core(const PermGroup& G, int p);

// Classes listed by their lexicographically least member; each class sorted.
std::vector<std::vector<Perm>> conjugacy_classes(const PermGroup& G);

// Enumerates the smaller side and filters; cap guards the enumeration.
PermGroup intersection(const PermGroup& A, const PermGroup& B, uint64_t cap = 200000);

// G/N as a permutation group on the left cosets of N, with projection.
struct Quotient {
  PermGroup group;           // acts on coset ids; order = [G:N]
  std::vector<Perm> reps;    // coset representatives, reps[0] = id
  Perm project(const Perm& g) const;  // image of g as a coset permutation

  // internal data
  std::vector<Perm> n_elems;      // element list of N when small, else empty
  PermGroup n_group = PermGroup::trivial(0);
  std::vector<int> key_base;
  int degree_src = 0;
};
Quotient quotient_group(const PermGroup& G, const PermGroup& N, uint64_t index_cap = 4096);

}  // namespace fusionkit
