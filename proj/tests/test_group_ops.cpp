#include "doctest.h"
#include "group_ops.h"

#include <algorithm>
#include <set>

#include "catalog.h"

using namespace fusionkit;

TEST_CASE("centers of small groups") {
  CHECK(center(dihedral_2group(3)).order() == 2);
  CHECK(center(quaternion_2group(3)).order() == 2);
  CHECK(center(alternating(4)).order() == 1);
  CHECK(center(elem_abelian(2, 3)).order() == 8);
  CHECK(center(symmetric(4)).order() == 1);
}

TEST_CASE("sylow subgroups have the right order and are p-groups") {
  struct Row {
    PermGroup g;
    int p;
    uint64_t want;
  };
  Row rows[] = {{symmetric(4), 2, 8},   {symmetric(4), 3, 3},  {alternating(6), 2, 8},
                {alternating(6), 3, 9}, {alternating(5), 5, 5}, {psl2(7), 2, 8}};
  for (const Row& r : rows) {
    PermGroup s = sylow_subgroup(r.g, r.p);
    CHECK(s.order() == r.want);
    CHECK(s.is_pgroup(r.p));
    CHECK(s.is_subgroup_of(r.g));
  }
}

TEST_CASE("sylow_containing extends a p-subgroup") {
  PermGroup g = alternating(6);
  PermGroup p0 = PermGroup::generated(6, {Perm::parse_cycles("(1 2)(3 4)", 6)});
  PermGroup s = sylow_containing(g, 2, p0);
  CHECK(s.order() == 8);
  CHECK(p0.is_subgroup_of(s));
  CHECK(s.is_subgroup_of(g));
}

TEST_CASE("power residuals") {
  CHECK(op_power_residual(symmetric(4), 2).order() == 12);   // A_4
  CHECK(op_power_residual(symmetric(3), 3).order() == 6);    // S_3 itself
  CHECK(op_power_residual(alternating(4), 2).order() == 12); // no 2-group quotient
  CHECK(op_power_residual(alternating(4), 3).order() == 4);  // V_4
  CHECK(opprime_residual(symmetric(3), 3).order() == 3);     // C_3
  CHECK(opprime_residual(symmetric(4), 2).order() == 24);    // no odd-index normal
  CHECK(opprime_residual(alternating(6), 2).order() == 360); // simple
}

TEST_CASE("p-cores") {
  CHECK(op_core(symmetric(4), 2).order() == 4);  // V_4
  CHECK(op_core(symmetric(3), 3).order() == 3);
  CHECK(op_core(alternating(5), 2).order() == 1);
  CHECK(op_core(dihedral_2group(3), 2).order() == 8);
  CHECK(opprime_core(symmetric(3), 2).order() == 3);
  CHECK(opprime_core(symmetric(4), 2).order() == 1);
  CHECK(opprime_core(alternating(6), 3).order() == 1);
}

TEST_CASE("conjugacy classes of S_4") {
  auto cls = conjugacy_classes(symmetric(4));
  CHECK(cls.size() == 5);
  std::multiset<size_t> sizes;
  size_t total = 0;
  for (const auto& c : cls) {
    sizes.insert(c.size());
    total += c.size();
    // members share the class's cycle type
    for (const Perm& x : c) CHECK(x.cycle_type() == c.front().cycle_type());
  }
  CHECK(total == 24);
  CHECK(sizes == std::multiset<size_t>{1, 3, 6, 6, 8});
}

TEST_CASE("intersection") {
  PermGroup d8 = sylow_subgroup(symmetric(4), 2);
  PermGroup a4 = alternating(4);
  PermGroup v = intersection(d8, a4);
  CHECK(v.order() == 4);
  for (const Perm& x : v.elements()) {
    CHECK(d8.contains(x));
    CHECK(a4.contains(x));
  }
}

TEST_CASE("quotient by V_4 in S_4 and A_4") {
  PermGroup v = PermGroup::generated(
      4, {Perm::parse_cycles("(1 2)(3 4)", 4), Perm::parse_cycles("(1 3)(2 4)", 4)});
  Quotient q = quotient_group(symmetric(4), v);
  CHECK(q.group.order() == 6);
  CHECK_FALSE(q.group.is_abelian());  // S_3
  // projection is a homomorphism
  std::vector<Perm> some = symmetric(4).elements();
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j)
      CHECK(q.project(some[i] * some[j]) == q.project(some[i]) * q.project(some[j]));
  // kernel
  for (const Perm& x : v.elements()) CHECK(q.project(x).is_identity());
  CHECK_FALSE(q.project(Perm::parse_cycles("(1 2)", 4)).is_identity());

  Quotient q2 = quotient_group(alternating(4), v);
  CHECK(q2.group.order() == 3);
}

TEST_CASE("quotient respects the index cap") {
  CHECK_THROWS_AS(quotient_group(alternating(6), PermGroup::trivial(6), 64), CapacityError);
}
