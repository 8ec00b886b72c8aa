#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aut_group.h"
#include "fusion.h"

namespace fusionkit {

// P is quasicentric in G when the p-power residual of C_G(P) has order prime
// to p.
bool is_quasicentric(const PermGroup& G, const PermGroup& P, int p);

enum class LinkingObjects { Centric, Quasicentric };

// Transporter-quotient category over a family of subgroup nodes of a
// group-backed system: Mor(P,Q) = N_G(P,Q)/O^p(C_G(P)).  Only the counting
// data is materialized; the construction verifies the coset-count identity,
// the composition condition on the residuals, surjectivity onto the fusion
// hom sets, and the Sylow property at fully normalized objects.
struct LinkingSystem {
  int p = 2;
  std::vector<int> objects;                      // node ids, ascending
  std::vector<uint64_t> cprime_order;            // |O^p(C_G(P))|
  std::vector<uint64_t> aut_order;               // |Aut_L(P)|
  std::vector<std::vector<uint64_t>> mor_count;  // indexed like objects
  int object_index(int node) const;
};

LinkingSystem build_linking(const FusionSystem& F,
                            LinkingObjects sel = LinkingObjects::Centric);

// Essential classes that can carry kernel data: e0 keeps the classes whose
// center has more Aut_S- than Aut_F-fixed points, ehat0 the members of e0
// that are centralizers of fully centralized elementary abelian subgroups.
// Each list holds one fully normalized node per class.
struct KernelProbeSets {
  std::vector<int> essentials;
  std::vector<int> e0;
  std::vector<int> ehat0;
};
KernelProbeSets kernel_probe_sets(const FusionSystem& F);

// Conjugating elements of an automorphism of G fixing S pointwise, measured
// at the ehat0 nodes: at each node, g_P is the element of the Aut_S-fixed
// part of Z(P) whose conjugation action on N_G(P) agrees with gamma modulo
// O^p(C_G(P)).  trivial reports whether the induced isotypical class is the
// identity.  gamma is given by images of dom_gens, a generating sequence of
// the backing group.
struct KernelElementData {
  std::vector<int> nodes;
  std::vector<Perm> g_values;
  bool trivial = false;
};
KernelElementData kernel_element_data(const FusionSystem& F,
                                      const std::vector<Perm>& dom_gens,
                                      const GenImageMap& gamma);

struct OuterClassReport {
  GenImageMap rep;                   // S-preserving representative
  bool restriction_inner = false;    // restriction to S lies in Aut_F(S)
  int restriction_class = -1;        // id among the distinct restriction images
  std::vector<Perm> g_values;        // per ehat0 node; kernel classes only
  bool kappa_trivial = false;
};

// Automorphism transfer data of a group-backed system: the outer classes of
// the backing group, their restrictions to S modulo the fusion
// automorphisms, and the kernel analysis with its realized count and
// constraint-enumeration bound.
struct MuKappaReport {
  std::vector<Perm> dom_gens;  // generating sequence the maps are written over
  uint64_t aut_g_order = 0;
  uint64_t out_g_order = 0;
  uint64_t aut_gs_order = 0;  // automorphisms preserving S
  bool exact_sequence_ok = false;
  uint64_t out_sf_order = 0;
  uint64_t restriction_kernel = 0;
  uint64_t restriction_image = 0;
  KernelProbeSets probes;
  uint64_t ker_mu_lower = 0;  // realized kernel classes
  uint64_t ker_mu_upper = 0;  // constraint enumeration bound
  uint64_t kappa_kernel = 0;
  uint64_t out_typ_lower = 0;
  uint64_t out_typ_upper = 0;
  bool kappa_injective = false;
  bool mu_injective = false;
  // "isomorphism", "injective", "non-injective" or "ambiguous" when the two
  // kernel bounds disagree; never silently resolved.
  std::string kappa_verdict;
  std::vector<OuterClassReport> classes;
};

MuKappaReport mu_kappa_report(const FusionSystem& F);

// |Out(G)| * |N_G(S)| == |Aut(G,S)| * |Z(G)| for S a Sylow p-subgroup.
bool outer_exact_sequence_check(const PermGroup& G, int p);

}  // namespace fusionkit
