#include "doctest.h"
#include "plattice.h"

#include <algorithm>
#include <set>

#include "catalog.h"
#include "group_ops.h"

using namespace fusionkit;

namespace {

std::set<std::vector<uint16_t>> lattice_member_sets(const Lattice& lat) {
  std::set<std::vector<uint16_t>> out;
  for (int i = 0; i < lat.node_count(); ++i) out.insert(lat.node(i).members);
  return out;
}

}  // namespace

TEST_CASE("D_8 has ten subgroups in eight conjugacy classes") {
  Lattice lat = Lattice::build(dihedral_2group(3), 2);
  CHECK(lat.node_count() == 10);
  CHECK(lat.s_classes().size() == 8);
}

TEST_CASE("lattices agree with the brute-force subgroup scan") {
  struct Row {
    PermGroup g;
    int p;
  };
  Row rows[] = {{dihedral_2group(3), 2}, {quaternion_2group(3), 2},
                {elem_abelian(2, 3), 2}, {semidihedral_2group(4), 2},
                {dihedral_2group(4), 2}, {cyclic_group(8), 2},
                {elem_abelian(3, 2), 3}, {cyclic_group(9), 3},
                {quaternion_2group(4), 2}};
  for (const Row& r : rows) {
    Lattice lat = Lattice::build(r.g, r.p);
    STable t = STable::build(r.g);
    auto brute = brute_subgroups(t);
    std::set<std::vector<uint16_t>> want(brute.begin(), brute.end());
    CHECK(lattice_member_sets(lat) == want);
  }
}

TEST_CASE("node annotations are consistent") {
  Lattice lat = Lattice::build(semidihedral_2group(4), 2);
  const PermGroup& s = lat.group();
  for (int i = 0; i < lat.node_count(); ++i) {
    const SubgroupRef& nd = lat.node(i);
    PermGroup p = lat.node_group(i);
    CHECK(p.order() == nd.order);
    // canonical generators generate the node
    std::vector<uint16_t> gen(nd.canonical_gens.begin(), nd.canonical_gens.end());
    CHECK(lat.table().closure(gen) == nd.members);
    // N, C, Z agree with direct computation
    CHECK(lat.node(nd.normalizer).order == normalizer(s, p).order());
    CHECK(lat.node(nd.centralizer).order == centralizer(s, p).order());
    CHECK(lat.node(nd.center).order == center(p).order());
    // node_of round-trips
    CHECK(lat.node_of(nd.members) == i);
  }
  CHECK(lat.node(lat.top()).order == 16);
  CHECK(lat.node(lat.bottom()).order == 1);
}

TEST_CASE("conjugacy classes carry valid witnesses") {
  Lattice lat = Lattice::build(dihedral_2group(4), 2);
  for (const SClass& c : lat.s_classes()) {
    for (size_t i = 0; i < c.nodes.size(); ++i) {
      // nodes[i] = s * rep * s^-1
      const auto& rep_members = lat.node(c.rep).members;
      CHECK(lat.conj_members(rep_members, c.conj_by[i]) == lat.node(c.nodes[i]).members);
    }
    // class ids match
    for (int n : c.nodes) CHECK(lat.node(n).class_id == lat.node(c.rep).class_id);
  }
}

TEST_CASE("containment edges are a transitive reduction") {
  Lattice lat = Lattice::build(dihedral_2group(3), 2);
  for (int i = 0; i < lat.node_count(); ++i) {
    for (int m : lat.maximal_subgroups(i)) {
      CHECK(lat.subset(m, i));
      CHECK(lat.node(m).order * 2 == lat.node(i).order);
    }
    for (int m : lat.minimal_overgroups(i)) CHECK(lat.subset(i, m));
    // sub_nodes lists every proper subgroup node
    int below = 0;
    for (int j = 0; j < lat.node_count(); ++j)
      if (j != i && lat.subset(j, i)) ++below;
    CHECK(static_cast<int>(lat.sub_nodes(i).size()) == below);
  }
}

TEST_CASE("C_2 x C_2 has five subgroups and three 2-factor splittings") {
  Lattice lat = Lattice::build(elem_abelian(2, 2), 2);
  CHECK(lat.node_count() == 5);
  auto fs = direct_factorizations(lat);
  int two = 0, one = 0;
  for (const auto& f : fs) {
    if (f.size() == 2) ++two;
    if (f.size() == 1) ++one;
  }
  CHECK(two == 3);
  CHECK(one == 1);
  CHECK(fs.size() == 4);
}

TEST_CASE("D_8 splits only trivially") {
  Lattice lat = Lattice::build(dihedral_2group(3), 2);
  auto fs = direct_factorizations(lat);
  CHECK(fs.size() == 1);
  CHECK(fs[0] == std::vector<int>{lat.top()});
}

TEST_CASE("products factor as expected") {
  PermGroup g = direct_product(dihedral_2group(3), cyclic_group(2));
  Lattice lat = Lattice::build(g, 2);
  auto fs = direct_factorizations(lat);
  // some splitting with factor orders {8,2} exists
  bool found = false;
  for (const auto& f : fs) {
    if (f.size() != 2) continue;
    std::multiset<uint64_t> ords;
    for (int n : f) ords.insert(lat.node(n).order);
    if (ords == std::multiset<uint64_t>{2, 8}) found = true;
  }
  CHECK(found);
}

TEST_CASE("upper central series of D_16") {
  auto ucs = upper_central_series(dihedral_2group(4));
  REQUIRE(ucs.size() == 3);
  CHECK(ucs[0].order() == 2);
  CHECK(ucs[1].order() == 4);
  CHECK(ucs[2].order() == 16);
}

TEST_CASE("lattice requires a p-group") {
  CHECK_THROWS(Lattice::build(symmetric(3), 2));
}
