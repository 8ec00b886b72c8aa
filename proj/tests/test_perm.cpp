#include "doctest.h"
#include "perm.h"

#include <stdexcept>

using namespace fusionkit;

TEST_CASE("cycle notation parses and round-trips") {
  Perm p = Perm::parse_cycles("(1 2 3)(4 5)", 6);
  CHECK(p[0] == 1);
  CHECK(p[1] == 2);
  CHECK(p[2] == 0);
  CHECK(p[3] == 4);
  CHECK(p[4] == 3);
  CHECK(p[5] == 5);
  CHECK(p.to_cycles() == "(1 2 3)(4 5)");
  CHECK(Perm::parse_cycles(p.to_cycles(), 6) == p);

  Perm id = Perm::parse_cycles("()", 4);
  CHECK(id.is_identity());
  CHECK(id.to_cycles() == "()");

  // whitespace and comma tolerance
  CHECK(Perm::parse_cycles(" ( 1 2 )( 3 4 ) ", 4) == Perm::parse_cycles("(1,2)(3,4)", 4));
}

TEST_CASE("cycle notation rejects malformed input") {
  CHECK_THROWS_AS(Perm::parse_cycles("(1 2", 4), std::invalid_argument);
  CHECK_THROWS_AS(Perm::parse_cycles("(1 5)", 4), std::invalid_argument);
  CHECK_THROWS_AS(Perm::parse_cycles("(0 1)", 4), std::invalid_argument);
  CHECK_THROWS_AS(Perm::parse_cycles("(1 2)(2 3)", 4), std::invalid_argument);
  CHECK_THROWS_AS(Perm::parse_cycles("1 2 3", 4), std::invalid_argument);
}

TEST_CASE("composition, inverse, power, order") {
  Perm a = Perm::parse_cycles("(1 2 3)", 5);
  Perm b = Perm::parse_cycles("(3 4 5)", 5);
  // (a*b)(x) = a(b(x))
  for (int x = 0; x < 5; ++x) CHECK((a * b)[x] == a[b[x]]);
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.power(3).is_identity());
  CHECK(a.power(-1) == a.inverse());
  CHECK(a.order() == 3);
  CHECK((a * b).order() == 5);
  CHECK(Perm::parse_cycles("(1 2 3)(4 5)", 6).order() == 6);
}

TEST_CASE("conjugation relabels cycles") {
  Perm x = Perm::parse_cycles("(1 2)(3 4)", 6);
  Perm g = Perm::parse_cycles("(1 5)", 6);
  Perm y = x.conjugated_by(g);
  CHECK(y == g * x * g.inverse());
  CHECK(y == Perm::parse_cycles("(5 2)(3 4)", 6));
  CHECK(y.cycle_type() == x.cycle_type());
}

TEST_CASE("cycle_type, support, extended") {
  Perm p = Perm::parse_cycles("(1 2 3)(4 5)", 7);
  CHECK(p.cycle_type() == std::vector<int>{3, 2});
  CHECK(p.support() == std::vector<int>{0, 1, 2, 3, 4});
  Perm q = p.extended(9);
  CHECK(q.degree() == 9);
  for (int x = 0; x < 7; ++x) CHECK(q[x] == p[x]);
  CHECK(q[7] == 7);
  CHECK(q[8] == 8);
}
