#pragma once

#include <string>

#include "json.hpp"

#include "fusion.h"
#include "linking.h"
#include "reduction.h"

namespace fusionkit {

// JSON report builders.  Shared conventions: every top-level document has a
// "schema": 1 field, group orders are decimal strings, group elements are
// rendered in cycle notation.  Documents parse back to equal json values.

nlohmann::json fingerprint_json(const SystemFingerprint& fp);

// Order and canonical generators of a lattice node.
nlohmann::json node_json(const FusionSystem& F, int node);

// The conjugacy class table: per class its size, the subgroup order, the
// fusion automorphism order and the centric/radical/essential flags.
nlohmann::json classes_json(const FusionSystem& F);

nlohmann::json trace_json(const ReductionTrace& tr);

nlohmann::json linking_json(const MuKappaReport& r, const FusionSystem& F);

// Full structural report of one system: class table, focal and hyperfocal
// subgroups, the normal and central cores, saturation, the reducedness
// breakdown, constraint, essential classes and the reduction trace.  The
// linking pointer, when non-null, embeds the automorphism transfer data.
nlohmann::json analysis_report(const FusionSystem& F, const std::string& input,
                               const MuKappaReport* linking, double timing_ms);

nlohmann::json reduce_report(const FusionSystem& F, const ReductionTrace& tr,
                             const std::string& input, double timing_ms);

// Isomorphism verdict for two systems, with the witness generator images
// when one exists.  Absence is certified by the underlying search.
nlohmann::json compare_report(const FusionSystem& a, const FusionSystem& b,
                              const std::string& input_a,
                              const std::string& input_b, double timing_ms);

nlohmann::json linking_report(const FusionSystem& F, const MuKappaReport& r,
                              const std::string& input, double timing_ms);

nlohmann::json catalog_report();

}  // namespace fusionkit
