#include "fusion_search.h"

#include <algorithm>
#include <stdexcept>

#include "backtrack.h"
#include "fusion_ops.h"
#include "group_ops.h"
#include "plattice.h"

namespace fusionkit {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(std::string("fusion_search: ") + msg);
}

// Nodes whose automorphism sets generate all morphisms: the essential class
// representatives and S.
std::vector<int> generating_nodes(const FusionSystem& F) {
  std::vector<int> keys;
  for (const FClass& c : F.classes)
    if (c.essential) keys.push_back(c.rep);
  keys.push_back(F.top());
  return keys;
}

// Whether the element bijection given by apply carries the morphisms of a
// into morphisms of b.  With equal fingerprints the morphism counts agree,
// so containment of the generating automorphism sets settles equality.
bool transports_fusion(const FusionSystem& a, const FusionSystem& b,
                       const std::function<int(uint16_t)>& apply) {
  for (int e : generating_nodes(a)) {
    const auto& mem = a.members(e);
    std::vector<uint16_t> im(mem.size());
    for (size_t i = 0; i < mem.size(); ++i) {
      int y = apply(mem[i]);
      if (y < 0) return false;
      im[i] = static_cast<uint16_t>(y);
    }
    std::sort(im.begin(), im.end());
    int bn = b.lat.node_of(im);
    if (bn < 0) return false;
    const std::vector<ValueMap>& bauts = b.auts_at(bn);
    if (bauts.size() != a.auts_at(e).size()) return false;
    for (const ValueMap& al : a.auts_at(e)) {
      ValueMap t(im.size());
      for (size_t i = 0; i < mem.size(); ++i) {
        int from = apply(mem[i]);
        int to = apply(static_cast<uint16_t>(vm_apply(mem, al, mem[i])));
        if (from < 0 || to < 0) return false;
        t[member_pos(im, static_cast<uint16_t>(from))] = static_cast<uint16_t>(to);
      }
      if (!std::binary_search(bauts.begin(), bauts.end(), t)) return false;
    }
  }
  return true;
}

}  // namespace

FusionAutResult fusion_preserving_auts(const FusionSystem& F) {
  AutGroup ag = automorphism_group(F.S, F.limits.max_aut_bruteforce);
  const auto& mem = F.members(F.top());

  FusionAutResult res;
  for (const GenImageMap& a : ag.auts) {
    ValueMap beta(mem.size());
    bool ok = true;
    for (size_t i = 0; i < mem.size() && ok; ++i) {
      int idx = F.tbl.index_of(ag.apply(a, F.tbl.element(mem[i])));
      if (idx < 0) ok = false;
      else beta[i] = static_cast<uint16_t>(idx);
    }
    require(ok, "automorphism image leaves the element table");
    auto apply = [&](uint16_t x) { return static_cast<int>(beta[member_pos(mem, x)]); };
    if (transports_fusion(F, F, apply)) res.aut_sf.push_back(std::move(beta));
  }
  std::sort(res.aut_sf.begin(), res.aut_sf.end());
  res.aut_f_s_order = F.cls(F.top()).aut_order;

  // Out(S, F) as a quotient on positions in aut_sf
  int deg = static_cast<int>(res.aut_sf.size());
  auto pos_perm = [&](const ValueMap& a) {
    std::vector<int> img(deg);
    for (int j = 0; j < deg; ++j) {
      ValueMap c = vm_compose(mem, a, res.aut_sf[j]);
      auto it = std::lower_bound(res.aut_sf.begin(), res.aut_sf.end(), c);
      require(it != res.aut_sf.end() && *it == c, "fusion-preserving set not closed");
      img[j] = static_cast<int>(it - res.aut_sf.begin());
    }
    return Perm(img);
  };
  PermGroup all = PermGroup::trivial(deg);
  for (const ValueMap& a : res.aut_sf) {
    Perm g = pos_perm(a);
    if (!all.contains(g)) all = join(all, {g});
  }
  PermGroup inner = PermGroup::trivial(deg);
  for (const ValueMap& a : F.auts_at(F.top())) {
    Perm g = pos_perm(a);
    if (!inner.contains(g)) inner = join(inner, {g});
  }
  require(all.order() == res.aut_sf.size(), "fusion-preserving action is not regular");
  Quotient q = quotient_group(all, inner);
  res.out_order = q.group.order();
  for (const Perm& g : q.group.elements()) res.out_elem_orders.push_back(g.order());
  std::sort(res.out_elem_orders.begin(), res.out_elem_orders.end());
  return res;
}

std::optional<IsoWitness> find_isomorphism(const FusionSystem& a, const FusionSystem& b) {
  if (a.p != b.p) return std::nullopt;
  if (!(system_fingerprint(a) == system_fingerprint(b))) return std::nullopt;

  std::vector<Perm> dom;
  std::optional<IsoWitness> found;
  ElementTable et;
  bool have_table = false;
  for_each_isomorphism(a.S, b.S, dom, [&](const GenImageMap& gim) {
    if (!have_table) {
      et = ElementTable::build(a.S, dom);
      have_table = true;
    }
    auto apply = [&](uint16_t x) {
      return b.tbl.index_of(et.apply(gim.img, a.tbl.element(x), b.S.degree()));
    };
    if (!transports_fusion(a, b, apply)) return false;
    found = IsoWitness{dom, gim};
    return true;
  });
  return found;
}

bool is_isomorphic(const FusionSystem& a, const FusionSystem& b) {
  return find_isomorphism(a, b).has_value();
}

CandidateSearch enumerate_candidate_systems(const PermGroup& S, int p,
                                            const FusionLimits& lim) {
  FusionSystem inner = generated_system(S, p, {});
  CandidateSearch out;

  for (const FClass& c : inner.classes) {
    int rep = c.rep;
    PermGroup P = inner.lat.node_group(rep);
    if (P.is_trivial()) continue;
    AutGroup ag = automorphism_group(P, lim.max_aut_bruteforce);
    bool ppower = true;
    for (uint64_t n = ag.aut_order; n > 1; n /= p) {
      if (n % p != 0) {
        ppower = false;
        break;
      }
    }
    if (ppower) continue;  // no room for a larger group with the same Sylow part

    // positions of the abstract automorphisms of P
    std::vector<ValueMap> all = aut_all_maps(inner, rep, lim.max_aut_bruteforce);
    if (all.size() > 64)
      throw CapacityError("fusion_search: |Aut(P)| too large for candidate enumeration");
    PermGroup apos = maps_as_position_group(inner, rep, all);
    require(apos.order() == all.size(), "automorphism action is not faithful");
    STable atbl = STable::build(apos);

    // index the sorted map list by the position permutation
    const auto& mem = inner.members(rep);
    auto map_of = [&](int ai) {
      const Perm& q = atbl.element(ai);
      ValueMap m(mem.size());
      for (size_t i = 0; i < mem.size(); ++i) m[i] = mem[q[static_cast<int>(i)]];
      return m;
    };
    auto index_of_map = [&](const ValueMap& m) {
      std::vector<int> img(mem.size());
      for (size_t i = 0; i < mem.size(); ++i) img[i] = member_pos(mem, m[i]);
      return atbl.index_of(Perm(img));
    };

    std::vector<uint16_t> aut_s, inn;
    for (const ValueMap& m : aut_s_maps(inner, rep))
      aut_s.push_back(static_cast<uint16_t>(index_of_map(m)));
    std::sort(aut_s.begin(), aut_s.end());
    for (uint16_t x : mem) {
      int i = index_of_map(vm_conj(inner.tbl, mem, x));
      inn.push_back(static_cast<uint16_t>(i));
    }
    std::sort(inn.begin(), inn.end());
    inn.erase(std::unique(inn.begin(), inn.end()), inn.end());

    uint64_t sp = 1;
    for (uint64_t n = aut_s.size(); n % p == 0; n /= p) sp *= p;
    require(sp == aut_s.size(), "inner automorphism group is not a p-group");

    std::vector<EssentialCandidate> opts;
    for (const auto& h : brute_subgroups(atbl)) {
      if (h.size() <= aut_s.size()) continue;
      if (!std::includes(h.begin(), h.end(), aut_s.begin(), aut_s.end())) continue;
      uint64_t hp = 1;
      for (uint64_t n = h.size(); n % p == 0; n /= p) hp *= p;
      if (hp != aut_s.size()) continue;  // Aut_S must stay Sylow
      std::vector<Perm> hgens, igens;
      for (uint16_t x : h) hgens.push_back(atbl.element(x));
      for (uint16_t x : inn) igens.push_back(atbl.element(x));
      PermGroup hg = PermGroup::generated(apos.degree(), hgens);
      PermGroup ig = PermGroup::generated(apos.degree(), igens);
      Quotient q = quotient_group(hg, ig);
      if (!has_strongly_p_embedded(q.group, p)) continue;
      EssentialCandidate cand;
      cand.rep = rep;
      for (uint16_t x : h) cand.auts.push_back(map_of(x));
      std::sort(cand.auts.begin(), cand.auts.end());
      opts.push_back(std::move(cand));
    }
    if (!opts.empty()) out.options.push_back(std::move(opts));
  }

  // all combinations, including the empty one
  std::vector<int> chosen(out.options.size(), -1);
  while (true) {
    std::vector<AutAssignment> assigns;
    for (size_t i = 0; i < chosen.size(); ++i) {
      if (chosen[i] < 0) continue;
      const EssentialCandidate& cand = out.options[i][chosen[i]];
      const auto& mem = inner.members(cand.rep);
      AutAssignment as;
      std::vector<uint16_t> gens = inner.lat.node(cand.rep).canonical_gens;
      for (uint16_t g : gens) as.domain_gens.push_back(inner.tbl.element(g));
      for (const ValueMap& m : cand.auts) {
        GenImageMap gim;
        for (uint16_t g : gens)
          gim.img.push_back(inner.tbl.element(vm_apply(mem, m, g)));
        as.auts.push_back(std::move(gim));
      }
      assigns.push_back(std::move(as));
    }
    CandidateSystem cs;
    cs.sys = generated_system(S, p, assigns, lim);
    cs.chosen = chosen;
    cs.saturated = is_saturated(cs.sys);
    out.systems.push_back(std::move(cs));

    size_t i = 0;
    for (; i < chosen.size(); ++i) {
      if (chosen[i] + 1 < static_cast<int>(out.options[i].size())) {
        ++chosen[i];
        break;
      }
      chosen[i] = -1;
    }
    if (i == chosen.size()) break;
  }
  return out;
}

}  // namespace fusionkit
