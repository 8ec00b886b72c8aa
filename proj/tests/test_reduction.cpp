#include "doctest.h"
#include "reduction.h"

#include <algorithm>

#include "fusion_search.h"
#include "catalog.h"
#include "group_ops.h"

using namespace fusionkit;

namespace {

FusionSystem sym3_at3() { return fusion_from_group(symmetric(3), 3); }
FusionSystem sym4_system() { return fusion_from_group(symmetric(4), 2); }
FusionSystem alt4_system() { return fusion_from_group(alternating(4), 2); }
FusionSystem alt6_system() { return fusion_from_group(alternating(6), 2); }
FusionSystem sym6_system() { return fusion_from_group(symmetric(6), 2); }

FusionSystem inner_system_of(const FusionSystem& F) {
  return generated_system(F.S, F.p, {});
}

}  // namespace

TEST_CASE("opprime subsystem of the symmetric group on three points at p=3") {
  FusionSystem F = sym3_at3();
  CHECK(F.S.order() == 3);
  CHECK(F.cls(F.top()).aut_order == 2);

  OpPrimeResult r = opprime_subsystem(F);
  CHECK(r.sys.S.order() == 3);
  CHECK(r.sys.cls(r.sys.top()).aut_order == 1);
  CHECK(r.gamma_order == 1);
  CHECK(same_system(r.sys, inner_system_of(F)));

  // idempotent once the residual fills every automorphism group
  OpPrimeResult r2 = opprime_subsystem(r.sys);
  CHECK(same_system(r2.sys, r.sys));
  CHECK(r2.gamma_order == 1);
}

TEST_CASE("opprime subsystem fixes systems whose automorphisms have no odd quotient") {
  FusionSystem A = alt6_system();
  OpPrimeResult r = opprime_subsystem(A);
  CHECK(same_system(r.sys, A));
  // Aut_F(S) is inner here, so the index invariant is trivial
  CHECK(r.gamma_order == 1);

  FusionSystem P = sym4_system();
  OpPrimeResult rp = opprime_subsystem(P);
  CHECK(same_system(rp.sys, P));
  CHECK(rp.gamma_order == 1);
}

TEST_CASE("oppower subsystem of the symmetric group on four points") {
  FusionSystem F = sym4_system();
  FusionSystem F0 = oppower_subsystem(F);
  // the hyperfocal subgroup is the normal Klein four group, and the
  // subsystem is the fusion of the alternating group on it
  CHECK(F0.S.order() == 4);
  CHECK(F0.classes.size() == 3);
  CHECK(F0.cls(F0.top()).aut_order == 3);
  FusionSystem A4 = alt4_system();
  CHECK(is_isomorphic(F0, A4));

  // fixed point from here on
  FusionSystem F1 = oppower_subsystem(F0);
  CHECK(same_system(F1, F0));
}

TEST_CASE("reduced reports") {
  ReducedReport a = reduced_report(alt6_system());
  CHECK(a.op_trivial);
  CHECK(a.oppower_full);
  CHECK(a.opprime_full);
  CHECK(a.reduced());

  ReducedReport s = reduced_report(sym4_system());
  CHECK_FALSE(s.op_trivial);
  CHECK_FALSE(s.reduced());

  FusionSystem inner = inner_system_of(sym4_system());
  ReducedReport i = reduced_report(inner);
  CHECK_FALSE(i.op_trivial);
  CHECK_FALSE(i.oppower_full);
  CHECK(i.opprime_full);
  CHECK_FALSE(i.reduced());
}

TEST_CASE("constrained systems reduce to the trivial system") {
  FusionSystem cases[] = {sym4_system(), alt4_system(), sym3_at3(),
                          inner_system_of(sym4_system())};
  for (const FusionSystem& F : cases) {
    CHECK(is_constrained(F));
    ReductionTrace tr = reduce(F);
    CHECK(tr.trivial);
    CHECK(tr.result.S.order() == 1);
    REQUIRE(!tr.steps.empty());
    CHECK(tr.steps.front().op == "op-core-centralizer-quotient");
  }

  FusionSystem A = alt6_system();
  CHECK_FALSE(is_constrained(A));
  ReductionTrace tr = reduce(A);
  CHECK_FALSE(tr.trivial);
  CHECK(tr.steps.empty());
  CHECK(same_system(tr.result, A));
}

TEST_CASE("the symmetric group on six points reduces to the alternating fusion") {
  FusionSystem F = sym6_system();
  CHECK(F.S.order() == 16);
  ReductionTrace tr = reduce(F);
  CHECK_FALSE(tr.trivial);
  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.steps[0].op == "O^p");
  CHECK(tr.steps[0].before.s_order == 16);
  CHECK(tr.steps[0].after.s_order == 8);
  CHECK(tr.result.S.order() == 8);

  FusionSystem A = alt6_system();
  CHECK(is_isomorphic(tr.result, A));
  CHECK(is_reduced(tr.result));

  // reducing the result again changes nothing
  ReductionTrace again = reduce(tr.result);
  CHECK(again.steps.empty());
  CHECK(same_system(again.result, tr.result));
}

TEST_CASE("reduction does not depend on the alternation order here") {
  CHECK(reduction_order_independent(sym4_system()));
  CHECK(reduction_order_independent(alt6_system()));
  CHECK(reduction_order_independent(sym6_system()));
  CHECK(reduction_order_independent(sym3_at3()));
  CHECK(reduction_order_independent(inner_system_of(alt6_system())));
}

TEST_CASE("products factor back into their components") {
  FusionSystem A = alt6_system();
  FusionSystem P = product_system(A, A);
  CHECK(P.S.order() == 64);

  // componentwise behaviour of the three operators
  CHECK(op_node(P) == P.lat.bottom());
  CHECK(same_system(oppower_subsystem(P), P));
  CHECK(same_system(opprime_subsystem(P).sys, P));
  CHECK(is_reduced(P));

  Factorization fz = factorize(P);
  REQUIRE(fz.factors.size() == 2);
  SystemFingerprint want = system_fingerprint(A);
  for (size_t i = 0; i < fz.factors.size(); ++i) {
    CHECK(fz.supports[i].size() == 8);
    CHECK(system_fingerprint(fz.factors[i]) == want);
    CHECK(is_isomorphic(fz.factors[i], A));
  }
  // the supports overlap only in the identity
  std::vector<uint16_t> common;
  std::set_intersection(fz.supports[0].begin(), fz.supports[0].end(),
                        fz.supports[1].begin(), fz.supports[1].end(),
                        std::back_inserter(common));
  CHECK(common.size() == 1);
}

TEST_CASE("factorize handles irreducible input and refuses unreduced input") {
  FusionSystem A = alt6_system();
  Factorization fz = factorize(A);
  REQUIRE(fz.factors.size() == 1);
  CHECK(same_system(fz.factors[0], A));
  CHECK(fz.supports[0].size() == A.tbl.size());

  CHECK_THROWS_AS((void)factorize(sym4_system()), std::invalid_argument);
}
