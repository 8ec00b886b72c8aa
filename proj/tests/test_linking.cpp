#include "doctest.h"
#include "linking.h"

#include <algorithm>

#include "catalog.h"
#include "group_ops.h"

using namespace fusionkit;

namespace {

FusionSystem alt6_system() { return fusion_from_group(alternating(6), 2); }
FusionSystem sym4_system() { return fusion_from_group(symmetric(4), 2); }

// |N_G(P,Q)| by scanning the whole group.
uint64_t brute_transporter_order(const PermGroup& G, const PermGroup& P,
                                 const PermGroup& Q) {
  uint64_t n = 0;
  G.for_each_element([&](const Perm& g) {
    bool ok = true;
    for (const Perm& x : P.generators())
      if (!Q.contains(x.conjugated_by(g))) {
        ok = false;
        break;
      }
    if (ok) ++n;
    return true;
  });
  return n;
}

}  // namespace

TEST_CASE("quasicentric test on the alternating group on six points") {
  PermGroup G = alternating(6);
  CHECK_FALSE(is_quasicentric(G, PermGroup::trivial(6), 2));
  PermGroup Z = PermGroup::generated(6, {Perm::parse_cycles("(1 2)(3 4)", 6)});
  CHECK(is_quasicentric(G, Z, 2));

  // centric implies quasicentric
  FusionSystem F = alt6_system();
  for (const FClass& c : F.classes)
    if (c.centric) CHECK(is_quasicentric(G, F.lat.node_group(c.rep), 2));
}

TEST_CASE("centric linking data of the alternating group on six points") {
  FusionSystem F = alt6_system();
  LinkingSystem L = build_linking(F);
  // the two Klein classes, the cyclic order-4 subgroup and S itself
  CHECK(L.objects.size() == 4);

  for (size_t i = 0; i < L.objects.size(); ++i) {
    size_t sz = F.members(L.objects[i]).size();
    if (sz == 4 && F.cls(L.objects[i]).aut_order == 6) CHECK(L.aut_order[i] == 24);
    if (sz == 8) CHECK(L.aut_order[i] == 8);
    CHECK(L.cprime_order[i] == 1);
  }

  // coset counts against a whole-group scan
  for (size_t i = 0; i < L.objects.size(); ++i) {
    PermGroup P = F.lat.node_group(L.objects[i]);
    for (size_t j = 0; j < L.objects.size(); ++j) {
      PermGroup Q = F.lat.node_group(L.objects[j]);
      CHECK(L.mor_count[i][j] * L.cprime_order[i] ==
            brute_transporter_order(F.G, P, Q));
    }
  }
}

TEST_CASE("quasicentric object family") {
  for (FusionSystem F : {alt6_system(), sym4_system()}) {
    LinkingSystem L = build_linking(F, LinkingObjects::Quasicentric);
    // every nontrivial subgroup here has a p-group centralizer
    CHECK(static_cast<int>(L.objects.size()) == F.lat.node_count() - 1);
    CHECK(L.object_index(F.lat.bottom()) == -1);
    CHECK(L.object_index(F.top()) == static_cast<int>(L.objects.size()) - 1);
  }
}

TEST_CASE("kernel probe sets") {
  FusionSystem A = alt6_system();
  KernelProbeSets pa = kernel_probe_sets(A);
  CHECK(pa.essentials.size() == 2);
  CHECK(pa.e0 == pa.essentials);
  CHECK(pa.ehat0 == pa.e0);
  for (int n : pa.ehat0) CHECK(A.members(n).size() == 4);

  FusionSystem P = sym4_system();
  KernelProbeSets pp = kernel_probe_sets(P);
  CHECK(pp.essentials.size() == 1);
  CHECK(pp.e0 == pp.essentials);
  CHECK(pp.ehat0 == pp.e0);

  FusionSystem inner = fusion_from_group(dihedral_2group(3), 2);
  KernelProbeSets pi = kernel_probe_sets(inner);
  CHECK(pi.essentials.empty());
  CHECK(pi.e0.empty());
  CHECK(pi.ehat0.empty());
}

TEST_CASE("conjugating elements of the field automorphism") {
  // the Sylow subgroup generated by the two distinguished Klein subgroups
  std::vector<Perm> sgens = {
      Perm::parse_cycles("(1 2)(3 4)", 6), Perm::parse_cycles("(1 3)(2 4)", 6),
      Perm::parse_cycles("(3 4)(5 6)", 6)};
  PermGroup S = PermGroup::generated(6, sgens);
  REQUIRE(S.order() == 8);
  PermGroup G = alternating(6);
  FusionSystem F = fusion_from_group(G, 2, &S);

  Perm g = Perm::parse_cycles("(5 6)", 6);
  GenImageMap gamma;
  for (const Perm& x : G.generators()) gamma.img.push_back(x.conjugated_by(g));

  KernelElementData kd = kernel_element_data(F, G.generators(), gamma);
  REQUIRE(kd.nodes.size() == 2);
  CHECK_FALSE(kd.trivial);

  int t1 = F.tbl.index_of(Perm::parse_cycles("(1 3)(2 4)", 6));
  int t2 = F.tbl.index_of(Perm::parse_cycles("(3 4)(5 6)", 6));
  REQUIRE(t1 >= 0);
  REQUIRE(t2 >= 0);
  Perm x = Perm::parse_cycles("(1 2)(3 4)", 6);
  bool seen1 = false, seen2 = false;
  for (size_t i = 0; i < kd.nodes.size(); ++i) {
    const auto& mem = F.members(kd.nodes[i]);
    if (std::binary_search(mem.begin(), mem.end(), static_cast<uint16_t>(t1))) {
      CHECK(kd.g_values[i].is_identity());
      seen1 = true;
    }
    if (std::binary_search(mem.begin(), mem.end(), static_cast<uint16_t>(t2))) {
      CHECK(kd.g_values[i] == x);
      seen2 = true;
    }
  }
  CHECK(seen1);
  CHECK(seen2);

  // the identity automorphism measures trivially
  GenImageMap ident;
  for (const Perm& gg : G.generators()) ident.img.push_back(gg);
  KernelElementData kid = kernel_element_data(F, G.generators(), ident);
  CHECK(kid.trivial);
  for (const Perm& v : kid.g_values) CHECK(v.is_identity());
}

TEST_CASE("automorphism transfer report for the alternating group") {
  MuKappaReport R = mu_kappa_report(alt6_system());
  CHECK(R.out_g_order == 4);
  CHECK(R.aut_gs_order == 32);
  CHECK(R.exact_sequence_ok);
  CHECK(R.out_sf_order == 2);
  CHECK(R.restriction_kernel == 2);
  CHECK(R.restriction_image == 2);
  CHECK(R.probes.ehat0.size() == 2);
  CHECK(R.ker_mu_lower == 2);
  CHECK(R.ker_mu_upper == 2);
  CHECK(R.kappa_kernel == 1);
  CHECK(R.kappa_injective);
  CHECK_FALSE(R.mu_injective);
  CHECK(R.kappa_verdict == "isomorphism");
  CHECK(R.out_typ_lower == 4);
  CHECK(R.out_typ_upper == 4);
  CHECK(R.classes.size() == 4);

  int kernel_classes = 0, nontrivial_kernel = 0;
  for (const OuterClassReport& oc : R.classes) {
    if (!oc.restriction_inner) {
      CHECK(oc.g_values.empty());
      continue;
    }
    ++kernel_classes;
    REQUIRE(oc.g_values.size() == 2);
    if (!oc.kappa_trivial) {
      ++nontrivial_kernel;
      int ids = 0;
      for (const Perm& v : oc.g_values) ids += v.is_identity();
      CHECK(ids == 1);
    }
  }
  CHECK(kernel_classes == 2);
  CHECK(nontrivial_kernel == 1);
}

TEST_CASE("automorphism transfer report for the symmetric group on four points") {
  MuKappaReport R = mu_kappa_report(sym4_system());
  CHECK(R.out_g_order == 1);
  CHECK(R.out_sf_order == 1);
  CHECK(R.restriction_kernel == 1);
  CHECK(R.ker_mu_lower == 1);
  CHECK(R.ker_mu_upper == 1);
  CHECK(R.kappa_injective);
  CHECK(R.mu_injective);
  CHECK(R.kappa_verdict == "isomorphism");
  CHECK(R.classes.size() == 1);
  CHECK(R.classes[0].kappa_trivial);
}

TEST_CASE("degenerate report over a plain 2-group") {
  MuKappaReport R = mu_kappa_report(fusion_from_group(dihedral_2group(3), 2));
  CHECK(R.out_g_order == 2);
  CHECK(R.out_sf_order == 2);
  CHECK(R.restriction_kernel == 1);
  CHECK(R.restriction_image == 2);
  CHECK(R.probes.ehat0.empty());
  CHECK(R.ker_mu_lower == 1);
  CHECK(R.ker_mu_upper == 1);
  CHECK(R.kappa_verdict == "isomorphism");
}

TEST_CASE("interval verdict when the backing group cannot realize the kernel") {
  // same fusion system as the alternating group on six points, but the
  // smaller outer automorphism group only realizes half of the kernel bound
  MuKappaReport R = mu_kappa_report(fusion_from_group(psl2(7), 2));
  CHECK(R.out_g_order == 2);
  CHECK(R.out_sf_order == 2);
  CHECK(R.restriction_kernel == 1);
  CHECK(R.restriction_image == 2);
  CHECK(R.ker_mu_lower == 1);
  CHECK(R.ker_mu_upper == 2);
  CHECK(R.kappa_verdict == "ambiguous");
  CHECK(R.out_typ_lower == 2);
  CHECK(R.out_typ_upper == 4);
}

TEST_CASE("outer exact sequence counts") {
  CHECK(outer_exact_sequence_check(alternating(6), 2));
  CHECK(outer_exact_sequence_check(symmetric(4), 2));
  CHECK(outer_exact_sequence_check(dihedral_2group(3), 2));
  CHECK(outer_exact_sequence_check(symmetric(3), 3));
  CHECK(outer_exact_sequence_check(psl2(7), 2));
}
