#include "doctest.h"
#include "catalog.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "aut_group.h"
#include "group_ops.h"
#include "perm_group.h"

using namespace fusionkit;

namespace {

// (involutions, order-4 elements, order-8 elements): separates the three
// nonabelian types of order 16 with a cyclic subgroup of index 2.
std::map<uint64_t, int> order_profile(const PermGroup& g) {
  std::map<uint64_t, int> prof;
  g.for_each_element([&](const Perm& x) {
    ++prof[x.order()];
    return true;
  });
  return prof;
}

}  // namespace

TEST_CASE("catalog constructors have the advertised orders") {
  for (const CatalogEntry& e : catalog_entries()) {
    GroupSpec s = group_from_selector(e.selector);
    CHECK(s.group.order() == e.expected_order);
  }
}

TEST_CASE("base families") {
  CHECK(alternating(5).order() == 60);
  CHECK(symmetric(6).order() == 720);
  CHECK(cyclic_group(12).order() == 12);
  CHECK(elem_abelian(3, 2).order() == 9);
  CHECK(elem_abelian(3, 2).is_abelian());
  CHECK(dihedral_2group(4).order() == 16);
  CHECK(semidihedral_2group(4).order() == 16);
  CHECK(quaternion_2group(4).order() == 16);
  CHECK(psl2(5).order() == 60);
  CHECK(psl2(7).order() == 168);
  CHECK(psl2(9).order() == 360);
  CHECK(m11().order() == 7920);
}

TEST_CASE("order-16 two-generator types are mutually non-isomorphic") {
  auto d = order_profile(dihedral_2group(4));
  auto sd = order_profile(semidihedral_2group(4));
  auto q = order_profile(quaternion_2group(4));
  CHECK(d[2] == 9);
  CHECK(sd[2] == 5);
  CHECK(q[2] == 1);
  CHECK(sd[4] == 6);
  CHECK(sd[8] == 4);
}

TEST_CASE("quaternion groups have a unique involution") {
  for (int k : {3, 4, 5}) {
    auto prof = order_profile(quaternion_2group(k));
    CHECK(prof[2] == 1);
  }
}

TEST_CASE("a Sylow 2-subgroup of PSL_2(7) is dihedral of order 8") {
  PermGroup s = sylow_subgroup(psl2(7), 2);
  CHECK(s.order() == 8);
  auto prof = order_profile(s);
  CHECK(prof[2] == 5);  // D_8: five involutions; Q_8 has one, C_8 one
  std::vector<Perm> dg;
  CHECK(for_each_isomorphism(dihedral_2group(3), s, dg,
                             [](const GenImageMap&) { return true; }));
}

TEST_CASE("a Sylow 2-subgroup of M_11 is semidihedral of order 16") {
  PermGroup s = sylow_subgroup(m11(), 2);
  CHECK(s.order() == 16);
  auto prof = order_profile(s);
  CHECK(prof[2] == 5);
  CHECK(prof[8] == 4);
  std::vector<Perm> dg;
  CHECK(for_each_isomorphism(semidihedral_2group(4), s, dg,
                             [](const GenImageMap&) { return true; }));
}

TEST_CASE("simplicity probes") {
  for (PermGroup g : {alternating(5), alternating(6), psl2(7), m11()}) {
    // normal closure of any single nontrivial class member is everything
    auto cls = conjugacy_classes(g);
    for (const auto& c : cls) {
      if (c.front().is_identity()) continue;
      CHECK(normal_closure(g, {c.front()}).order() == g.order());
    }
  }
}

TEST_CASE("psl2 rejects bad parameters") {
  CHECK_THROWS(psl2(8));   // even
  CHECK_THROWS(psl2(6));   // not a prime power
  CHECK_THROWS(psl2(1));
}

TEST_CASE("direct products act on disjoint supports") {
  PermGroup g = direct_product(symmetric(3), cyclic_group(4));
  CHECK(g.order() == 24);
  CHECK(g.degree() == 7);
  PermGroup h = direct_product(alternating(6), alternating(6));
  CHECK(h.order() == 360ull * 360ull);
  CHECK(h.degree() == 12);
}

TEST_CASE("selectors parse") {
  CHECK(group_from_selector("alt:6").group.order() == 360);
  CHECK(group_from_selector("sym:4").group.order() == 24);
  CHECK(group_from_selector("cyclic:8").group.order() == 8);
  CHECK(group_from_selector("dihedral:3").group.order() == 8);
  CHECK(group_from_selector("semidihedral:4").group.order() == 16);
  CHECK(group_from_selector("quaternion:3").group.order() == 8);
  CHECK(group_from_selector("elemabelian:2:3").group.order() == 8);
  CHECK(group_from_selector("psl2:7").group.order() == 168);
  CHECK(group_from_selector("m11").group.order() == 7920);
  CHECK_THROWS_AS(group_from_selector("nope:3"), std::invalid_argument);
  CHECK_THROWS_AS(group_from_selector("alt:x"), std::invalid_argument);
  CHECK_THROWS_AS(group_from_selector(""), std::invalid_argument);
}

TEST_CASE("group files parse") {
  const char* text =
      "# sample\n"
      "degree: 6\n"
      "p: 2\n"
      "generators:\n"
      "(1 2 3)\n"
      "(2 3 4 5 6)\n";
  GroupSpec s = parse_group_file_text(text);
  CHECK(s.group.degree() == 6);
  CHECK(s.group.order() == 360);  // these generate A_6
  REQUIRE(s.file_p.has_value());
  CHECK(*s.file_p == 2);

  // p line is optional
  GroupSpec t = parse_group_file_text("degree: 3\ngenerators:\n(1 2 3)\n");
  CHECK(t.group.order() == 3);
  CHECK_FALSE(t.file_p.has_value());

  CHECK_THROWS_AS(parse_group_file_text("generators:\n(1 2)\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_file_text("degree: 4\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_file_text("degree: 4\ngenerators:\n(1 9)\n"),
                  std::invalid_argument);
}

TEST_CASE("file selector reads from disk") {
  std::string path = "/tmp/fusionkit_test_group.txt";
  {
    std::ofstream f(path);
    f << "degree: 4\np: 2\ngenerators:\n(1 2)(3 4)\n(1 3)(2 4)\n";
  }
  GroupSpec s = group_from_selector("file:" + path);
  CHECK(s.group.order() == 4);
  std::remove(path.c_str());
  CHECK_THROWS_AS(group_from_selector("file:/tmp/definitely_missing_98765.txt"),
                  std::invalid_argument);
}
