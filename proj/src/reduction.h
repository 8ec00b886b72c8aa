#pragma once

#include <string>
#include <vector>

#include "fusion.h"
#include "fusion_ops.h"

namespace fusionkit {

// O^{p'}(F): the smallest saturated subsystem of index prime to p.  When
// the groups O^{p'}(Aut_F(P)) are not all full, candidates are searched by
// the automorphism group left at S: the closure of the residuals together
// with a candidate group is accepted when it is saturated and reproduces
// exactly that group at S, and the minimal accepted candidate is the
// subsystem.  Containments are verified node by node in both directions.
struct OpPrimeResult {
  FusionSystem sys;
  uint64_t gamma_order = 0;  // |Out_{F0}(S)|, the index datum of the subsystem
};
OpPrimeResult opprime_subsystem(const FusionSystem& F);

// O^p(F): the smallest subsystem of p-power index, over the hyperfocal
// subgroup, generated by the groups O^p(Aut_F(P)).  Equals F exactly when
// the focal subgroup is all of S.  Verified like the prime-to-p case; for
// group-backed systems with |S| <= 32 the result is compared against the
// fusion system of O^p(G).
FusionSystem oppower_subsystem(const FusionSystem& F);

struct ReducedReport {
  bool op_trivial = false;    // O_p(F) = 1
  bool oppower_full = false;  // O^p(F) = F, equivalently foc(F) = S
  bool opprime_full = false;  // O^{p'}(F) = F
  bool reduced() const { return op_trivial && oppower_full && opprime_full; }
};
ReducedReport reduced_report(const FusionSystem& F);
bool is_reduced(const FusionSystem& F);

struct ReductionStep {
  std::string op;  // "op-core-centralizer-quotient", "O^p" or "O^{p'}"
  SystemFingerprint before, after;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  FusionSystem result;
  bool trivial = false;  // the reduction collapsed to the one-point system
};

// The reduction of a saturated system: quotient the centralizer of O_p(F)
// by its center, then alternate O^p and O^{p'} to a fixed point.  The p-core
// is verified trivial after every step.  opprime_first swaps the alternation
// order, which is not known to be harmless in general; reduce always reports
// which order it used through the step list.
ReductionTrace reduce(const FusionSystem& F, bool opprime_first = false);

// Runs both alternation orders and compares the outcomes up to isomorphism.
bool reduction_order_independent(const FusionSystem& F);

// O_p(F) centric; for saturated F this is equivalent to a trivial reduction.
bool is_constrained(const FusionSystem& F);

struct Factorization {
  // ordered by |S_i|, then fingerprint, then support
  std::vector<FusionSystem> factors;
  // member lists of the factor supports inside F, aligned with factors
  std::vector<std::vector<uint16_t>> supports;
};

// The finest direct factorization of a reduced system along strongly closed
// direct factors of S.  The morphism sets are verified to split exactly:
// every morphism is a restriction of a tuple of factor morphisms and
// conversely.  Refuses systems that are not reduced.
Factorization factorize(const FusionSystem& F);

}  // namespace fusionkit
