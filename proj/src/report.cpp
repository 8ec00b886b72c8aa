#include "report.h"

#include "catalog.h"
#include "fusion_search.h"

namespace fusionkit {

using nlohmann::json;

namespace {

std::string dec(uint64_t n) { return std::to_string(n); }

json cycles(const Perm& g) { return g.to_cycles(); }

json perm_list(const std::vector<Perm>& v) {
  json a = json::array();
  for (const auto& g : v) a.push_back(cycles(g));
  return a;
}

json gen_list(const FusionSystem& F, int node) {
  json a = json::array();
  for (uint16_t x : F.lat.node(node).canonical_gens)
    a.push_back(cycles(F.tbl.element(x)));
  return a;
}

}  // namespace

json fingerprint_json(const SystemFingerprint& fp) {
  json shape = json::array();
  for (const auto& row : fp.shape) {
    json r = json::array();
    for (uint64_t v : row) r.push_back(dec(v));
    shape.push_back(r);
  }
  return json{{"s_order", dec(fp.s_order)},
              {"class_count", fp.class_count},
              {"shape", shape},
              {"summary", fp.to_string()}};
}

json node_json(const FusionSystem& F, int node) {
  return json{{"order", dec(F.lat.node(node).order)},
              {"generators", gen_list(F, node)}};
}

json classes_json(const FusionSystem& F) {
  json a = json::array();
  for (const auto& c : F.classes) {
    a.push_back(json{{"size", static_cast<int>(c.nodes.size())},
                     {"subgroup_order", dec(F.lat.node(c.rep).order)},
                     {"rep_generators", gen_list(F, c.rep)},
                     {"aut_order", dec(c.aut_order)},
                     {"centric", c.centric},
                     {"radical", c.radical},
                     {"essential", c.essential}});
  }
  return a;
}

json trace_json(const ReductionTrace& tr) {
  json steps = json::array();
  for (const auto& st : tr.steps) {
    steps.push_back(json{{"op", st.op},
                         {"before", fingerprint_json(st.before)},
                         {"after", fingerprint_json(st.after)}});
  }
  return json{{"steps", steps},
              {"trivial", tr.trivial},
              {"result", fingerprint_json(system_fingerprint(tr.result))}};
}

json linking_json(const MuKappaReport& r, const FusionSystem& F) {
  json probes = json::object();
  auto nodes = [&](const std::vector<int>& v) {
    json a = json::array();
    for (int n : v) a.push_back(node_json(F, n));
    return a;
  };
  probes["essentials"] = nodes(r.probes.essentials);
  probes["e0"] = nodes(r.probes.e0);
  probes["ehat0"] = nodes(r.probes.ehat0);

  json classes = json::array();
  for (const auto& c : r.classes) {
    json e = json{{"rep_images", perm_list(c.rep.img)},
                  {"restriction_inner", c.restriction_inner},
                  {"restriction_class", c.restriction_class},
                  {"kappa_trivial", c.kappa_trivial}};
    e["g_values"] = perm_list(c.g_values);
    classes.push_back(e);
  }

  return json{{"dom_gens", perm_list(r.dom_gens)},
              {"aut_g_order", dec(r.aut_g_order)},
              {"out_g_order", dec(r.out_g_order)},
              {"aut_gs_order", dec(r.aut_gs_order)},
              {"exact_sequence_ok", r.exact_sequence_ok},
              {"out_sf_order", dec(r.out_sf_order)},
              {"restriction_kernel", dec(r.restriction_kernel)},
              {"restriction_image", dec(r.restriction_image)},
              {"probes", probes},
              {"ker_mu_lower", dec(r.ker_mu_lower)},
              {"ker_mu_upper", dec(r.ker_mu_upper)},
              {"kappa_kernel", dec(r.kappa_kernel)},
              {"out_typ_lower", dec(r.out_typ_lower)},
              {"out_typ_upper", dec(r.out_typ_upper)},
              {"kappa_injective", r.kappa_injective},
              {"mu_injective", r.mu_injective},
              {"kappa_verdict", r.kappa_verdict},
              {"classes", classes}};
}

json analysis_report(const FusionSystem& F, const std::string& input,
                     const MuKappaReport* linking, double timing_ms) {
  json doc{{"schema", 1},
           {"command", "analyze"},
           {"input", input},
           {"p", F.p},
           {"degree", F.S.degree()},
           {"s_order", dec(F.S.order())},
           {"group_backed", F.group_backed}};
  if (F.group_backed) doc["g_order"] = dec(F.G.order());
  doc["classes"] = classes_json(F);
  doc["fingerprint"] = fingerprint_json(system_fingerprint(F));

  doc["focal"] = node_json(F, focal_node(F));
  doc["hyperfocal"] = node_json(F, hyperfocal_node(F));

  json essentials = json::array();
  for (const auto& c : F.classes)
    if (c.essential) essentials.push_back(node_json(F, c.rep));
  doc["essential_classes"] = essentials;

  const bool sat = is_saturated(F);
  doc["saturated"] = sat;
  if (sat) {
    doc["op_core"] = node_json(F, op_node(F));
    doc["central_core"] = node_json(F, z_node(F));
    ReducedReport rr = reduced_report(F);
    doc["reduced"] = json{{"op_trivial", rr.op_trivial},
                          {"oppower_full", rr.oppower_full},
                          {"opprime_full", rr.opprime_full},
                          {"reduced", rr.reduced()}};
    doc["constrained"] = is_constrained(F);
    doc["reduction"] = trace_json(reduce(F));
  } else {
    doc["op_core"] = nullptr;
    doc["central_core"] = nullptr;
    doc["reduced"] = nullptr;
    doc["constrained"] = nullptr;
    doc["reduction"] = nullptr;
  }
  doc["linking"] = linking ? linking_json(*linking, F) : json(nullptr);
  doc["timing_ms"] = timing_ms;
  return doc;
}

json reduce_report(const FusionSystem& F, const ReductionTrace& tr,
                   const std::string& input, double timing_ms) {
  return json{{"schema", 1},
              {"command", "reduce"},
              {"input", input},
              {"p", F.p},
              {"s_order", dec(F.S.order())},
              {"start", fingerprint_json(system_fingerprint(F))},
              {"trace", trace_json(tr)},
              {"timing_ms", timing_ms}};
}

json compare_report(const FusionSystem& a, const FusionSystem& b,
                    const std::string& input_a, const std::string& input_b,
                    double timing_ms) {
  auto w = find_isomorphism(a, b);
  json witness = nullptr;
  if (w) {
    witness = json{{"dom_gens", perm_list(w->dom_gens)},
                   {"images", perm_list(w->images.img)}};
  }
  return json{{"schema", 1},
              {"command", "compare"},
              {"input_a", input_a},
              {"input_b", input_b},
              {"p", a.p},
              {"fingerprint_a", fingerprint_json(system_fingerprint(a))},
              {"fingerprint_b", fingerprint_json(system_fingerprint(b))},
              {"isomorphic", w.has_value()},
              {"witness", witness},
              {"timing_ms", timing_ms}};
}

json linking_report(const FusionSystem& F, const MuKappaReport& r,
                    const std::string& input, double timing_ms) {
  return json{{"schema", 1},
              {"command", "linking"},
              {"input", input},
              {"p", F.p},
              {"s_order", dec(F.S.order())},
              {"report", linking_json(r, F)},
              {"timing_ms", timing_ms}};
}

json catalog_report() {
  json entries = json::array();
  for (const auto& e : catalog_entries()) {
    entries.push_back(json{{"selector", e.selector},
                           {"summary", e.summary},
                           {"order", dec(e.expected_order)},
                           {"default_p", e.default_p},
                           {"heavy", e.heavy}});
  }
  return json{{"schema", 1}, {"command", "catalog"}, {"entries", entries}};
}

}  // namespace fusionkit
