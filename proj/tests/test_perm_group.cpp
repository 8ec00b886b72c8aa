#include "doctest.h"
#include "perm_group.h"

#include <algorithm>
#include <set>

#include "catalog.h"

using namespace fusionkit;

namespace {
PermGroup s4() { return symmetric(4); }
PermGroup a4() { return alternating(4); }
}  // namespace

TEST_CASE("orders and membership") {
  PermGroup g = s4();
  CHECK(g.order() == 24);
  CHECK(g.contains(Perm::parse_cycles("(1 2 3 4)", 4)));
  CHECK(g.contains(Perm(4)));
  PermGroup a = a4();
  CHECK(a.order() == 12);
  CHECK(a.contains(Perm::parse_cycles("(1 2 3)", 4)));
  CHECK_FALSE(a.contains(Perm::parse_cycles("(1 2)", 4)));
  CHECK(a.is_subgroup_of(g));
  CHECK_FALSE(g.is_subgroup_of(a));
}

TEST_CASE("element enumeration is complete and deterministic") {
  PermGroup g = s4();
  std::vector<Perm> e1 = g.elements();
  CHECK(e1.size() == 24);
  std::set<Perm> uniq(e1.begin(), e1.end());
  CHECK(uniq.size() == 24);
  // rebuilt group enumerates in the same order
  PermGroup g2 = PermGroup::generated(4, g.generators());
  CHECK(g2.elements() == e1);
  // early stop
  int count = 0;
  g.for_each_element([&](const Perm&) { return ++count < 5; });
  CHECK(count == 5);
}

TEST_CASE("base prefix changes the chain, not the group") {
  PermGroup g = s4();
  PermGroup h = g.with_base_prefix({3, 2});
  CHECK(h.order() == 24);
  CHECK(h.chain()[0].base_point == 3);
  for (const Perm& x : g.elements()) CHECK(h.contains(x));
  CHECK(g.same_group(h));
}

TEST_CASE("sift recognizes membership") {
  PermGroup a = a4();
  CHECK(a.sift(Perm::parse_cycles("(1 2 3)", 4)).is_identity());
  CHECK_FALSE(a.sift(Perm::parse_cycles("(1 2)", 4)).is_identity());
}

TEST_CASE("p-group and abelian predicates") {
  CHECK(dihedral_2group(3).is_pgroup(2));
  CHECK_FALSE(s4().is_pgroup(2));
  CHECK_FALSE(s4().is_abelian());
  CHECK(elem_abelian(2, 2).is_abelian());
  CHECK(cyclic_group(9).is_pgroup(3));
}

TEST_CASE("join and normal closure") {
  PermGroup v = PermGroup::generated(
      4, {Perm::parse_cycles("(1 2)(3 4)", 4), Perm::parse_cycles("(1 3)(2 4)", 4)});
  CHECK(v.order() == 4);
  PermGroup j = join(v, {Perm::parse_cycles("(1 2 3)", 4)});
  CHECK(j.order() == 12);
  // normal closure of a transposition in S_4 is all of S_4
  PermGroup nc = normal_closure(s4(), {Perm::parse_cycles("(1 2)", 4)});
  CHECK(nc.order() == 24);
  // of a 3-cycle: A_4
  CHECK(normal_closure(s4(), {Perm::parse_cycles("(1 2 3)", 4)}).order() == 12);
}

TEST_CASE("derived subgroups of small groups") {
  CHECK(derived_subgroup(s4()).order() == 12);      // A_4
  CHECK(derived_subgroup(a4()).order() == 4);       // V_4
  CHECK(derived_subgroup(dihedral_2group(3)).order() == 2);
  CHECK(derived_subgroup(elem_abelian(2, 3)).order() == 1);
}

TEST_CASE("conjugated group") {
  PermGroup v = PermGroup::generated(
      4, {Perm::parse_cycles("(1 2)", 4)});
  Perm g = Perm::parse_cycles("(2 3)", 4);
  PermGroup w = v.conjugated(g);
  CHECK(w.order() == 2);
  CHECK(w.contains(Perm::parse_cycles("(1 3)", 4)));
}

TEST_CASE("p_part and p_valuation") {
  CHECK(p_part(360, 2) == 8);
  CHECK(p_part(360, 3) == 9);
  CHECK(p_part(360, 5) == 5);
  CHECK(p_valuation(360, 2) == 3);
  CHECK(p_valuation(7, 2) == 0);
  CHECK(p_part(1, 2) == 1);
}
