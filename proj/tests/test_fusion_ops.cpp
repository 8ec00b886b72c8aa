#include "doctest.h"
#include "fusion_ops.h"

#include <algorithm>
#include <set>

#include "backtrack.h"
#include "catalog.h"
#include "group_ops.h"

using namespace fusionkit;

namespace {

// First node whose subgroup is a non-cyclic group of order 4.
int some_klein_node(const FusionSystem& F) {
  for (int n = 0; n < F.lat.node_count(); ++n) {
    const auto& mem = F.members(n);
    if (mem.size() != 4) continue;
    if (F.tbl.elem_order(mem[1]) == 2 && F.tbl.elem_order(mem[2]) == 2 &&
        F.tbl.elem_order(mem[3]) == 2)
      return n;
  }
  return -1;
}

FusionSystem sym4_system() { return fusion_from_group(symmetric(4), 2); }
FusionSystem alt6_system() { return fusion_from_group(alternating(6), 2); }

FusionSystem inner_system_of(const FusionSystem& F) {
  return generated_system(F.S, F.p, {});
}

}  // namespace

TEST_CASE("same_system separates rebuilt, generated and inner systems") {
  FusionSystem F1 = sym4_system();
  FusionSystem F2 = fusion_from_group(symmetric(4), 2, &F1.S);
  CHECK(same_system(F1, F2));
  CHECK(same_system(F1, F1));
  FusionSystem inner = inner_system_of(F1);
  CHECK_FALSE(same_system(F1, inner));
  FusionSystem A = alt6_system();
  CHECK_FALSE(same_system(F1, A));
}

TEST_CASE("iso_set matches the hom-set filtered to full images") {
  for (FusionSystem F : {sym4_system(), alt6_system()}) {
    for (const FClass& c : F.classes) {
      for (int src : c.nodes) {
        uint64_t found = 0;
        for (int dst : c.nodes) {
          std::vector<ValueMap> isos = iso_set(F, src, dst);
          CHECK(isos.size() == c.auts.size());
          std::set<ValueMap> expect;
          for (const InjHom& h : F.hom_set(src, dst))
            if (h.dst == dst) expect.insert(h.map);
          CHECK(std::set<ValueMap>(isos.begin(), isos.end()) == expect);
          found += isos.size();
        }
        CHECK(found == c.nodes.size() * c.auts.size());
      }
    }
    CHECK(iso_set(F, F.lat.bottom(), F.top()).empty());
  }
}

TEST_CASE("aut_all_maps gives the abstract automorphism group at a node") {
  FusionSystem F = sym4_system();
  int v = some_klein_node(F);
  REQUIRE(v >= 0);
  std::vector<ValueMap> all = aut_all_maps(F, v);
  CHECK(all.size() == 6);  // Aut of a Klein four group
  for (const ValueMap& a : F.auts_at(v))
    CHECK(std::binary_search(all.begin(), all.end(), a));
  PermGroup pos = maps_as_position_group(F, v, all);
  CHECK(pos.order() == 6);
  CHECK(position_group_maps(F, v, pos) == all);
}

TEST_CASE("restricted_system is the full subcategory, by definition") {
  FusionSystem F = sym4_system();
  // restriction to S itself reproduces the system
  CHECK(same_system(restricted_system(F, F.top()), F));

  FusionSystem A = alt6_system();
  // restrict to a Klein subgroup of the A6 Sylow group
  int t = some_klein_node(A);
  REQUIRE(t >= 0);
  FusionSystem R = restricted_system(A, t);
  CHECK(R.S.order() == 4);
  // every morphism of R is a morphism of A with image inside T, and the
  // counts agree node by node
  for (int n = 0; n < R.lat.node_count(); ++n) {
    std::vector<uint16_t> omem;
    for (uint16_t x : R.members(n))
      omem.push_back(static_cast<uint16_t>(A.tbl.index_of(R.tbl.element(x))));
    std::sort(omem.begin(), omem.end());
    int on = A.lat.node_of(omem);
    REQUIRE(on >= 0);
    uint64_t expect = 0;
    for (const InjHom& h : A.hom_set(on, A.top())) {
      bool inside = true;
      for (uint16_t y : h.map)
        if (member_pos(A.members(t), y) < 0) inside = false;
      if (!inside) continue;
      ++expect;
      ValueMap m(h.map.size());
      for (size_t i = 0; i < h.map.size(); ++i) {
        int ni = R.tbl.index_of(A.tbl.element(h.map[i]));
        REQUIRE(ni >= 0);
        m[i] = static_cast<uint16_t>(ni);
      }
      CHECK(R.contains_hom(n, m));
    }
    CHECK(R.hom_count(n, R.top()) == expect);
  }
  // inside T every involution is fused, so R has one class per order
  CHECK(R.classes.size() == 3);
}

TEST_CASE("full and trivial twisting reduce to the plain normalization flags") {
  for (FusionSystem F : {sym4_system(), alt6_system(),
                         fusion_from_group(alternating(4), 2)}) {
    for (int n = 0; n < F.lat.node_count(); ++n) {
      std::vector<ValueMap> full = aut_all_maps(F, n);
      CHECK(is_fully_k_normalized(F, n, full) == F.is_fully_normalized(n));
      std::vector<ValueMap> triv{vm_identity(F.members(n))};
      CHECK(is_fully_k_normalized(F, n, triv) == F.is_fully_centralized(n));
    }
  }
}

TEST_CASE("check_fully_k_normalized reports a better conjugate") {
  FusionSystem F = sym4_system();
  int bad = -1;
  for (int n = 0; n < F.lat.node_count() && bad < 0; ++n)
    if (!F.is_fully_normalized(n)) bad = n;
  REQUIRE(bad >= 0);
  KNormalizedCheck chk = check_fully_k_normalized(F, bad, aut_all_maps(F, bad));
  CHECK_FALSE(chk.fully);
  REQUIRE(chk.better_node >= 0);
  CHECK(F.class_of[chk.better_node] == F.class_of[bad]);
  CHECK(F.lat.node(chk.better_node).normalizer >= 0);
  CHECK(F.members(F.lat.node(chk.better_node).normalizer).size() >
        F.members(F.lat.node(bad).normalizer).size());
  CHECK(vm_image(chk.better_map) == F.members(chk.better_node));
  CHECK_THROWS_AS(normalizer_system(F, bad), std::invalid_argument);
}

TEST_CASE("normalizer system of a normal subgroup is the whole system") {
  FusionSystem F = sym4_system();
  int v = op_node(F);
  REQUIRE(F.members(v).size() == 4);
  // the group cross-check inside normalizer_system also exercises this
  FusionSystem N = normalizer_system(F, v);
  CHECK(same_system(N, F));

  FusionSystem A4 = fusion_from_group(alternating(4), 2);
  CHECK(same_system(normalizer_system(A4, op_node(A4)), A4));
}

TEST_CASE("centralizer of the center and twisted normalizers collapse to the inner system") {
  FusionSystem F = sym4_system();
  int z = -1;
  for (int n = 0; n < F.lat.node_count(); ++n)
    if (F.members(n) == F.members(F.lat.node(F.top()).center)) z = n;
  REQUIRE(z >= 0);
  FusionSystem C = centralizer_system(F, z);
  CHECK(same_system(C, inner_system_of(F)));

  // K = the conjugation action of S on its normal Klein subgroup
  int v = op_node(F);
  FusionSystem NK = normalizer_system(F, v, aut_s_maps(F, v));
  CHECK(same_system(NK, inner_system_of(F)));
}

TEST_CASE("centralizer of the trivial subgroup rebuilds the whole system") {
  FusionSystem F = sym4_system();
  FusionSystem C = centralizer_system(F, F.lat.bottom());
  CHECK(same_system(C, F));
}

TEST_CASE("normalizer systems agree with the fusion of the group normalizer") {
  // A6 at p = 2: both Klein subgroups are normal in S, their normalizers in
  // G have order 24, and the normalizer systems have the shape of the fusion
  // system of the symmetric group on four points.
  FusionSystem A = alt6_system();
  FusionSystem S4 = sym4_system();
  int seen = 0;
  for (const FClass& c : A.classes) {
    if (!c.essential) continue;
    ++seen;
    FusionSystem N = normalizer_system(A, c.rep);  // cross-checked internally
    CHECK(N.S.order() == 8);
    CHECK(N.classes.size() == 7);
    CHECK(system_fingerprint(N) == system_fingerprint(S4));
  }
  CHECK(seen == 2);
}

TEST_CASE("quotients by strongly closed subgroups") {
  FusionSystem F = sym4_system();
  std::vector<int> sc = strongly_closed_nodes(F);
  // bottom, the normal Klein subgroup, and S itself
  CHECK(sc.size() == 3);
  int v = op_node(F);
  CHECK(std::find(sc.begin(), sc.end(), v) != sc.end());

  QuotientSystem q = quotient_system(F, v);  // saturation asserted inside
  CHECK(q.sys.S.order() == 2);
  CHECK(q.sys.classes.size() == 2);
  for (const FClass& c : q.sys.classes) CHECK(c.aut_order == 1);
  CHECK(quotient_normalized_correspondence(F, q));

  // by the trivial subgroup: same shape as F
  QuotientSystem q1 = quotient_system(F, F.lat.bottom());
  CHECK(system_fingerprint(q1.sys) == system_fingerprint(F));
  CHECK(quotient_normalized_correspondence(F, q1));

  // by S: one class, trivial automorphisms
  QuotientSystem qs = quotient_system(F, F.top());
  CHECK(qs.sys.classes.size() == 1);
  CHECK(qs.sys.S.order() == 1);

  // a central order-2 subgroup of S is not strongly closed here
  int zn = -1;
  for (int n = 0; n < F.lat.node_count(); ++n)
    if (F.members(n) == F.members(F.lat.node(F.top()).center)) zn = n;
  REQUIRE(zn >= 0);
  CHECK_FALSE(F.is_strongly_closed(zn));
  CHECK_THROWS_AS(quotient_system(F, zn), std::invalid_argument);
}

TEST_CASE("quotient correspondence holds for every strongly closed subgroup") {
  for (FusionSystem F : {sym4_system(), alt6_system()}) {
    for (int n : strongly_closed_nodes(F)) {
      QuotientSystem q = quotient_system(F, n);
      CHECK(quotient_normalized_correspondence(F, q));
    }
  }
}

TEST_CASE("product system equals the fusion system of the direct product") {
  PermGroup g1 = symmetric(4);
  PermGroup g2 = symmetric(3);
  FusionSystem F1 = fusion_from_group(g1, 2);
  FusionSystem F2 = fusion_from_group(g2, 2);
  FusionSystem P = product_system(F1, F2);
  CHECK(P.S.order() == 16);

  PermGroup g = direct_product(g1, g2);
  FusionSystem FG = fusion_from_group(g, 2, &P.S);
  CHECK(same_system(P, FG));

  // componentwise distinguished subgroups
  int opn = op_node(P);
  CHECK(P.members(opn).size() == 8);  // Klein x C2
  int zn = z_node(P);
  CHECK(P.members(zn).size() == 2);  // 1 x C2
  int fn = focal_node(P);
  CHECK(P.members(fn).size() == 4);  // Klein x 1
  uint64_t hyp = P.members(hyperfocal_node(P)).size();
  CHECK(hyp == 4);
}

TEST_CASE("product of a system with a point is the system itself in shape") {
  FusionSystem F1 = sym4_system();
  FusionSystem F2 = fusion_from_group(cyclic_group(2), 2);
  FusionSystem P = product_system(F1, F2);
  CHECK(P.S.order() == 16);
  FusionSystem FG = fusion_from_group(direct_product(symmetric(4), cyclic_group(2)), 2, &P.S);
  CHECK(same_system(P, FG));
  CHECK(is_saturated(P));
}

TEST_CASE("product capacity guard") {
  FusionSystem A = alt6_system();
  FusionLimits lim;
  lim.max_s_order = 16;
  CHECK_THROWS_AS(product_system(A, A, lim), CapacityError);
}
