#include "doctest.h"
#include "fusion_search.h"

#include <algorithm>
#include <set>

#include "catalog.h"
#include "fusion_ops.h"
#include "group_ops.h"

using namespace fusionkit;

namespace {

FusionSystem sym4_system() { return fusion_from_group(symmetric(4), 2); }
FusionSystem alt6_system() { return fusion_from_group(alternating(6), 2); }

// Oracle: an automorphism of S preserves fusion when it carries every single
// morphism of the system to a morphism of the system.
bool oracle_preserves(const FusionSystem& F, const ValueMap& beta) {
  const auto& mem = F.members(F.top());
  auto apply = [&](uint16_t x) { return beta[member_pos(mem, x)]; };
  for (int n = 0; n < F.lat.node_count(); ++n) {
    std::vector<uint16_t> im;
    for (uint16_t x : F.members(n)) im.push_back(apply(x));
    std::sort(im.begin(), im.end());
    int bn = F.lat.node_of(im);
    if (bn < 0) return false;
    for (const InjHom& h : F.hom_set(n, F.top())) {
      ValueMap t(im.size());
      for (size_t i = 0; i < im.size(); ++i) {
        uint16_t x = F.members(n)[i];
        t[member_pos(im, apply(x))] = apply(h.map[i]);
      }
      if (!F.contains_hom(bn, t)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("fusion-preserving automorphisms match the morphism-level oracle") {
  for (FusionSystem F : {sym4_system(), alt6_system(),
                         fusion_from_group(alternating(4), 2),
                         fusion_from_group(symmetric(3), 3)}) {
    FusionAutResult r = fusion_preserving_auts(F);
    std::set<ValueMap> expect;
    for (const ValueMap& beta : aut_all_maps(F, F.top()))
      if (oracle_preserves(F, beta)) expect.insert(beta);
    CHECK(std::set<ValueMap>(r.aut_sf.begin(), r.aut_sf.end()) == expect);
    CHECK(r.aut_f_s_order == F.cls(F.top()).aut_order);
    CHECK(r.out_order * r.aut_f_s_order == r.aut_sf.size());
    CHECK(r.out_elem_orders.size() == r.out_order);
  }
}

TEST_CASE("outer fusion automorphism groups of the small examples") {
  // the dihedral Sylow group has one outer class, and it swaps the two Klein
  // subgroups; only the A6 system is symmetric in them
  FusionAutResult s4 = fusion_preserving_auts(sym4_system());
  CHECK(s4.out_order == 1);
  FusionAutResult a6 = fusion_preserving_auts(alt6_system());
  CHECK(a6.out_order == 2);
  CHECK(a6.out_elem_orders == std::vector<uint64_t>{1, 2});
}

TEST_CASE("isomorphism search with certificates") {
  FusionSystem F1 = sym4_system();
  FusionSystem F2 = fusion_from_group(symmetric(4), 2, &F1.S);
  std::optional<IsoWitness> w = find_isomorphism(F1, F2);
  REQUIRE(w.has_value());
  CHECK(PermGroup::generated(F1.S.degree(), w->dom_gens).order() == F1.S.order());
  CHECK(PermGroup::generated(F2.S.degree(), w->images.img).order() == F2.S.order());

  // same Sylow group, different fusion: certified by fingerprints
  CHECK_FALSE(is_isomorphic(F1, generated_system(F1.S, 2, {})));
  CHECK_FALSE(is_isomorphic(F1, alt6_system()));
}

TEST_CASE("the alternating and projective systems on eight points agree") {
  FusionSystem A = alt6_system();
  FusionSystem L = fusion_from_group(psl2(7), 2);
  CHECK(L.S.order() == 8);
  CHECK(is_isomorphic(A, L));
  CHECK(is_isomorphic(L, A));
}

TEST_CASE("inner systems compare by Sylow type") {
  FusionSystem d = generated_system(dihedral_2group(3), 2, {});
  FusionSystem q = generated_system(quaternion_2group(3), 2, {});
  CHECK_FALSE(is_isomorphic(d, q));
  FusionSystem c1 = generated_system(cyclic_group(4), 2, {});
  FusionSystem c2 = generated_system(cyclic_group(4), 2, {});
  CHECK(is_isomorphic(c1, c2));
}

TEST_CASE("candidate enumeration over the dihedral group of order eight") {
  CandidateSearch cs = enumerate_candidate_systems(dihedral_2group(3), 2);
  // the two Klein classes each admit exactly the full symmetric action
  REQUIRE(cs.options.size() == 2);
  CHECK(cs.options[0].size() == 1);
  CHECK(cs.options[1].size() == 1);
  for (const auto& opts : cs.options) CHECK(opts[0].auts.size() == 6);
  REQUIRE(cs.systems.size() == 4);
  for (const CandidateSystem& c : cs.systems) CHECK(c.saturated);

  FusionSystem A = alt6_system();
  FusionSystem S4 = sym4_system();
  int both = 0, single = 0, none = 0;
  for (const CandidateSystem& c : cs.systems) {
    int k = 0;
    for (int x : c.chosen)
      if (x >= 0) ++k;
    if (k == 2) {
      ++both;
      CHECK(is_isomorphic(c.sys, A));
    } else if (k == 1) {
      ++single;
      CHECK(is_isomorphic(c.sys, S4));
    } else {
      ++none;
      CHECK(same_system(c.sys, generated_system(c.sys.S, 2, {})));
    }
  }
  CHECK(both == 1);
  CHECK(single == 2);
  CHECK(none == 1);
}

TEST_CASE("groups with rigid automorphisms admit no candidates") {
  CandidateSearch c4 = enumerate_candidate_systems(cyclic_group(4), 2);
  CHECK(c4.options.empty());
  CHECK(c4.systems.size() == 1);
  // quaternion: the top class would need a strongly 2-embedded quotient and
  // has none, the cyclic subgroups have 2-group automorphisms
  CandidateSearch q8 = enumerate_candidate_systems(quaternion_2group(3), 2);
  CHECK(q8.options.empty());
  // elementary abelian: enlargements at the top are not essential ones
  CandidateSearch v4 = enumerate_candidate_systems(elem_abelian(2, 2), 2);
  CHECK(v4.options.empty());
}
