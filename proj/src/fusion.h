#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aut_group.h"
#include "group_table.h"
#include "perm_group.h"
#include "plattice.h"

namespace fusionkit {

// Size limits shared by the fusion-system builders.  Exceeding one raises
// CapacityError (backtrack.h).
struct FusionLimits {
  uint64_t max_s_order = 512;
  // Bound on the total isomorphism count, summed over classes as
  // |class|^2 * |Aut|.  Also caps any single automorphism-set closure.
  uint64_t max_morphisms = 1000000;
  uint64_t max_aut_bruteforce = 10000;
  size_t lattice_node_cap = 20000;
};

// A morphism out of a lattice node is stored by images: img[i] is the
// element index of the image of the i-th entry of the node's sorted member
// list.  Every stored map is injective with image again a node, so maps
// compose by position lookup.
using ValueMap = std::vector<uint16_t>;

// Position of x in a sorted member list, -1 if absent.
int member_pos(const std::vector<uint16_t>& mem, uint16_t x);

ValueMap vm_identity(const std::vector<uint16_t>& members);
// Sorted member list of the image.
std::vector<uint16_t> vm_image(const ValueMap& m);
// outer after inner; inner lands in mem_mid, outer is aligned with mem_mid.
ValueMap vm_compose(const std::vector<uint16_t>& mem_mid, const ValueMap& outer,
                    const ValueMap& inner);
// Map defined on the image of m, sending images back to mem_src entries.
ValueMap vm_inverse(const std::vector<uint16_t>& mem_src, const ValueMap& m);
// Restriction to mem_sub, a subset of mem_src.
ValueMap vm_restrict(const std::vector<uint16_t>& mem_src, const ValueMap& m,
                     const std::vector<uint16_t>& mem_sub);
// x -> s x s^-1 on the given members.
ValueMap vm_conj(const STable& tbl, const std::vector<uint16_t>& members, int s);
int vm_apply(const std::vector<uint16_t>& mem_src, const ValueMap& m, uint16_t x);

struct InjHom {
  int src = -1;  // domain node
  int dst = -1;  // node carrying exactly the image
  ValueMap map;
};

// Breadth-first tree edge of the decomposition search: the state was reached
// from prev (a map out of the same source) by one restricted automorphism.
struct AlperinEdge {
  ValueMap prev;
  int e_node = -1;  // -1 marks the root state
  ValueMap aut;
};

// One conjugacy class of subgroups in the fusion system.
struct FClass {
  std::vector<int> nodes;        // ascending lattice node ids
  int rep = -1;                  // fully normalized member
  std::vector<ValueMap> to_rep;  // to_rep[i] : nodes[i] -> rep
  std::vector<ValueMap> auts;    // Aut at rep, sorted
  uint64_t aut_order = 0;
  bool centric = false;
  bool radical = false;
  bool essential = false;
  std::vector<char> fully_normalized;   // aligned with nodes
  std::vector<char> fully_centralized;  // aligned with nodes
};

struct FusionSystem {
  int p = 0;
  PermGroup S = PermGroup::trivial(0);
  STable tbl;
  Lattice lat;
  bool group_backed = false;
  PermGroup G = PermGroup::trivial(0);  // meaningful iff group_backed
  FusionLimits limits;

  std::vector<FClass> classes;
  std::vector<int> class_of;      // node id -> class index
  std::vector<int> pos_in_class;  // node id -> position in that class

  const std::vector<uint16_t>& members(int node) const { return lat.node(node).members; }
  int top() const { return lat.top(); }
  const FClass& cls(int node) const { return classes[class_of[node]]; }
  bool is_fully_normalized(int node) const;
  bool is_fully_centralized(int node) const;
  // Sum over classes of |class|^2 * |Aut|.
  uint64_t iso_count() const;

  // The automorphism set at an arbitrary node, transported from the class
  // rep; sorted, memoized.
  const std::vector<ValueMap>& auts_at(int node) const;
  // The isomorphism from src onto the image of m composed with inclusion
  // into dst; src and the image must both lie inside dst.
  // All morphisms src -> dst: every isomorphism of src onto a node inside
  // dst.  Deterministic order: image nodes ascending, maps sorted.
  std::vector<InjHom> hom_set(int src, int dst) const;
  uint64_t hom_count(int src, int dst) const;
  bool contains_hom(int src, const ValueMap& m) const;
  int image_node(int src, const ValueMap& m) const;
  // Map of src into the rep of its class.
  const ValueMap& witness(int node) const;

  std::vector<uint16_t> element_orbit(uint16_t x) const;
  bool is_strongly_closed(int node) const;

  // caches
  mutable std::map<int, std::vector<ValueMap>> auts_memo_;
  mutable std::map<uint16_t, std::vector<uint16_t>> orbit_memo_;
  mutable std::map<int, std::map<std::pair<int, ValueMap>, AlperinEdge>> alperin_memo_;
};

// Automorphisms fed to generated_system: the subgroup generated by
// domain_gens together with automorphisms of it, given by generator images.
struct AutAssignment {
  std::vector<Perm> domain_gens;
  std::vector<GenImageMap> auts;
};

// The fusion system of G on a Sylow p-subgroup (computed when absent).
FusionSystem fusion_from_group(const PermGroup& G, int p, const PermGroup* sylow = nullptr,
                               const FusionLimits& lim = {});

// Smallest fusion system over S containing S-conjugation and the assigned
// automorphisms.  No assignments gives the inner system of S.
FusionSystem generated_system(const PermGroup& S, int p,
                              const std::vector<AutAssignment>& assignments,
                              const FusionLimits& lim = {});

namespace detail {
// An isomorphism arrow between nodes; the target is the image of the map.
struct Arrow {
  int src = -1;
  ValueMap map;
};
// Shared back end: classes are the connected components of the arrow graph,
// witnesses come from a spanning tree, automorphism sets from closing the
// loop maps at each root.  Conjugation arrows by generators of S are always
// added, so the result contains the inner system.
FusionSystem assemble_system(const PermGroup& S, int p, STable tbl, Lattice lat,
                             const std::vector<Arrow>& arrows, bool group_backed,
                             const PermGroup* G, const FusionLimits& lim);
}  // namespace detail

struct SaturationViolation {
  std::string axiom;  // "I" or "II"
  int node = -1;      // the subgroup at fault (axiom I) or the domain (II)
  int target = -1;    // image node for axiom II
  ValueMap map;       // failing morphism for axiom II
  std::string detail;
};

struct SaturationReport {
  bool saturated = true;
  std::vector<SaturationViolation> violations;
};

// Both saturation axioms, checked exhaustively: the Sylow condition at every
// fully normalized subgroup, the extension condition for every morphism onto
// a fully centralized subgroup.
SaturationReport check_saturation(const FusionSystem& F, size_t max_violations = 1);
bool is_saturated(const FusionSystem& F);

// Whether the outer automorphism group has a strongly p-embedded subgroup,
// decided on the commuting graph of its order-p subgroups: disconnected
// if and only if one exists.  Vertices are the order-p subgroups, with an
// edge when two of them generate a p-group.
bool has_strongly_p_embedded(const PermGroup& gamma, int p);

struct AlperinStep {
  int node = -1;  // an essential class rep or the top node
  ValueMap aut;   // automorphism at that node
};

struct AlperinWord {
  bool ok = false;
  std::vector<AlperinStep> steps;  // applied left to right
};

// Writes an isomorphism as a composite of restrictions of automorphisms of
// essential subgroups and of S.  Succeeds on every morphism of a saturated
// system.
AlperinWord alperin_decompose(const FusionSystem& F, int src, const ValueMap& m);
// Evaluates a word on a domain node; returns false on a domain mismatch.
bool alperin_recompose(const FusionSystem& F, int src, const AlperinWord& w, ValueMap& out);

// Largest subgroup normal in the whole system; requires saturation.
int op_node(const FusionSystem& F);
// Largest subgroup on which every morphism extends to one acting as the
// identity; requires saturation.
int z_node(const FusionSystem& F);
// Generated by all s^-1 t over fused pairs (s, t).
int focal_node(const FusionSystem& F);
// Generated by all s^-1 a(s) with a ranging over O^p of the automorphism
// group at each subgroup.
int hyperfocal_node(const FusionSystem& F);
std::vector<int> strongly_closed_nodes(const FusionSystem& F);

// Strongly closed and contained in every centric radical subgroup; for a
// saturated system this is equivalent to being normal in it.
bool is_normal_in(const FusionSystem& F, int node);
// The extension definitions verified directly on automorphism generators of
// the essential classes and S; requires saturation.
bool is_normal_by_extension(const FusionSystem& F, int node);
bool is_central_in(const FusionSystem& F, int node);

// O_p, O^p and O^{p'} of the automorphism set at a node, as value maps there.
std::vector<ValueMap> aut_op_core(const FusionSystem& F, int node);
std::vector<ValueMap> aut_op_residual(const FusionSystem& F, int node);
std::vector<ValueMap> aut_opprime_residual(const FusionSystem& F, int node);
// {c_g : g in N_S(node)}, sorted.
std::vector<ValueMap> aut_s_maps(const FusionSystem& F, int node);

// Membership of a in O_p of the automorphism set at a node, decided layer by
// layer on the upper central series of the subgroup.
bool op_membership_by_layers(const FusionSystem& F, int node, const ValueMap& a);

// Shape summary used to compare systems cheaply and to trace reductions.
struct SystemFingerprint {
  uint64_t s_order = 0;
  int class_count = 0;
  // per class (size, aut order, centric, radical, essential), sorted
  std::vector<std::array<uint64_t, 5>> shape;
  bool operator==(const SystemFingerprint&) const = default;
  std::string to_string() const;
};
SystemFingerprint system_fingerprint(const FusionSystem& F);

}  // namespace fusionkit
