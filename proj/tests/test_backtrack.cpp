#include "doctest.h"
#include "backtrack.h"

#include <optional>
#include <set>

#include "catalog.h"
#include "group_ops.h"

using namespace fusionkit;

namespace {

PermGroup klein_t1(int degree) {
  return PermGroup::generated(degree, {Perm::parse_cycles("(1 2)(3 4)", degree),
                                       Perm::parse_cycles("(1 3)(2 4)", degree)});
}

PermGroup klein_t2(int degree) {
  return PermGroup::generated(degree, {Perm::parse_cycles("(1 2)(3 4)", degree),
                                       Perm::parse_cycles("(1 2)(5 6)", degree)});
}

}  // namespace

TEST_CASE("normalizer matches brute force") {
  for (const PermGroup& g : {symmetric(4), alternating(5), alternating(6)}) {
    PermGroup p = PermGroup::generated(
        g.degree(), {Perm::parse_cycles("(1 2)(3 4)", g.degree())});
    PermGroup n1 = bt_normalizer(g, p.generators(), p.elements());
    PermGroup n2 = brute_normalizer(g, p);
    CHECK(n1.order() == n2.order());
    CHECK(n1.same_group(n2));
  }
}

TEST_CASE("centralizer matches brute force") {
  for (const PermGroup& g : {symmetric(4), alternating(6), dihedral_2group(4)}) {
    Perm x = g.generators()[0];
    PermGroup c1 = bt_centralizer(g, {x});
    PermGroup c2 = brute_centralizer(g, {x});
    CHECK(c1.same_group(c2));
  }
}

TEST_CASE("conjugator matches brute force and verifies") {
  PermGroup g = alternating(6);
  PermGroup p = klein_t1(6);
  // an A_6-conjugate of T_1
  Perm s = Perm::parse_cycles("(1 5 6)", 6);
  PermGroup q = p.conjugated(s);
  auto w = bt_conjugator(g, p.generators(), q.elements());
  REQUIRE(w.has_value());
  CHECK(p.conjugated(*w).same_group(q));
  auto wb = brute_conjugator(g, p, q);
  REQUIRE(wb.has_value());
  CHECK(p.conjugated(*wb).same_group(q));
}

TEST_CASE("the two Klein subgroups of A_6 are not conjugate") {
  PermGroup g = alternating(6);
  PermGroup t1 = klein_t1(6);
  PermGroup t2 = klein_t2(6);
  CHECK(t1.order() == 4);
  CHECK(t2.order() == 4);
  CHECK_FALSE(bt_conjugator(g, t1.generators(), t2.elements()).has_value());
  CHECK_FALSE(brute_conjugator(g, t1, t2).has_value());
  CHECK(transporter(g, t1, t2).reps.empty());
}

TEST_CASE("N and C of the first Klein subgroup of A_6") {
  PermGroup g = alternating(6);
  PermGroup t1 = klein_t1(6);
  CHECK(normalizer(g, t1).order() == 24);
  CHECK(centralizer(g, t1).same_group(t1));
}

TEST_CASE("transporter covers exactly the subgroup-mapping elements") {
  PermGroup g = symmetric(4);
  PermGroup p = PermGroup::generated(4, {Perm::parse_cycles("(1 2)", 4)});
  PermGroup q = PermGroup::generated(
      4, {Perm::parse_cycles("(1 2)", 4), Perm::parse_cycles("(3 4)", 4)});
  TransporterSet t = transporter(g, p, q);
  // expand reps * N_G(P) and compare against a direct scan
  std::set<Perm> covered;
  for (const Perm& r : t.reps)
    for (const Perm& n : t.stabilizer.elements()) covered.insert(r * n);
  std::set<Perm> expect;
  for (const Perm& x : g.elements()) {
    bool ok = true;
    for (const Perm& pg : p.generators())
      if (!q.contains(pg.conjugated_by(x))) ok = false;
    if (ok) expect.insert(x);
  }
  CHECK(covered == expect);
  CHECK_FALSE(expect.empty());
}

TEST_CASE("conj_search respects the node cap") {
  PermGroup g = alternating(6);
  PermGroup p = klein_t1(6);
  CHECK_THROWS_AS(
      {
        std::vector<ConjConstraint> cs;
        for (const Perm& x : p.generators()) cs.push_back({x, g.elements()});
        conj_search(g, cs, [](const Perm&) { return true; }, nullptr, 2);
      },
      CapacityError);
}
