#include "reduction.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "fusion_search.h"
#include "group_ops.h"
#include "plattice.h"

namespace fusionkit {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(std::string("reduction: ") + msg);
}

AutAssignment assignment_from_maps(const FusionSystem& F, int node,
                                   const std::vector<ValueMap>& maps) {
  AutAssignment as;
  const auto& mem = F.members(node);
  const std::vector<uint16_t>& gens = F.lat.node(node).canonical_gens;
  for (uint16_t g : gens) as.domain_gens.push_back(F.tbl.element(g));
  for (const ValueMap& m : maps) {
    GenImageMap gim;
    for (uint16_t g : gens) gim.img.push_back(F.tbl.element(vm_apply(mem, m, g)));
    as.auts.push_back(std::move(gim));
  }
  return as;
}

// Generator maps of O^p respectively O^{p'} of the automorphism group at a
// node, empty when that residual is trivial.
std::vector<ValueMap> residual_generator_maps(const FusionSystem& F, int node,
                                              bool prime, bool* full) {
  PermGroup A = maps_as_position_group(F, node, F.auts_at(node));
  PermGroup R = prime ? opprime_residual(A, F.p) : op_power_residual(A, F.p);
  if (full) *full = (R.order() == A.order());
  const auto& mem = F.members(node);
  std::vector<ValueMap> out;
  if (R.order() == 1) return out;
  for (const Perm& g : R.generators()) {
    if (g.is_identity()) continue;
    ValueMap m(mem.size());
    for (size_t i = 0; i < mem.size(); ++i) m[i] = mem[g[static_cast<int>(i)]];
    out.push_back(std::move(m));
  }
  return out;
}

// to_new[x] = index of the ambient element x in the subsystem table, -1 when
// it lies outside; both tables are in canonical order, so the translation is
// monotone on the common elements.
std::vector<int> table_translation(const FusionSystem& F, const FusionSystem& sub) {
  std::vector<int> to_new(F.tbl.size(), -1);
  for (int i = 0; i < sub.tbl.size(); ++i) {
    int oi = F.tbl.index_of(sub.tbl.element(i));
    require(oi >= 0, "subsystem element missing from the ambient table");
    to_new[oi] = i;
  }
  return to_new;
}

// The generator maps recorded at ambient nodes must appear in the closure's
// automorphism sets, which gives the defining containments O^..(Aut_F(P))
// within Aut_{F0}(P).
void verify_containments(const FusionSystem& F, const FusionSystem& F0,
                         const std::vector<std::pair<int, std::vector<ValueMap>>>& checks) {
  std::vector<int> to_new = table_translation(F, F0);
  for (const auto& [node, maps] : checks) {
    std::vector<uint16_t> nm;
    for (uint16_t x : F.members(node)) {
      require(to_new[x] >= 0, "assigned subgroup left the subsystem");
      nm.push_back(static_cast<uint16_t>(to_new[x]));
    }
    int n0 = F0.lat.node_of(nm);
    require(n0 >= 0, "assigned subgroup is not a subsystem node");
    const std::vector<ValueMap>& have = F0.auts_at(n0);
    for (const ValueMap& m : maps) {
      ValueMap t(m.size());
      for (size_t i = 0; i < m.size(); ++i) t[i] = static_cast<uint16_t>(to_new[m[i]]);
      require(std::binary_search(have.begin(), have.end(), t),
              "residual automorphism missing from the closure");
    }
  }
  // the closure must stay inside the ambient system
  for (const FClass& c : F0.classes) {
    std::vector<uint16_t> om;
    for (uint16_t x : F0.members(c.rep)) {
      int oi = F.tbl.index_of(F0.tbl.element(x));
      require(oi >= 0, "closure node leaves the ambient table");
      om.push_back(static_cast<uint16_t>(oi));
    }
    int on = F.lat.node_of(om);
    require(on >= 0, "closure node missing from the ambient lattice");
    const std::vector<ValueMap>& big = F.auts_at(on);
    for (const ValueMap& a : c.auts) {
      ValueMap t(a.size());
      for (size_t i = 0; i < a.size(); ++i)
        t[i] = static_cast<uint16_t>(F.tbl.index_of(F0.tbl.element(a[i])));
      require(std::binary_search(big.begin(), big.end(), t),
              "closure produced a morphism outside the system");
    }
  }
}

// Every subgroup of a small permutation group, ascending by order with a
// deterministic tie order.
std::vector<PermGroup> small_subgroups(const PermGroup& g) {
  require(g.order() <= 512, "subgroup enumeration cap exceeded");
  std::vector<Perm> elems = g.elements();
  std::sort(elems.begin(), elems.end());
  std::map<std::vector<Perm>, PermGroup> seen;
  std::vector<std::vector<Perm>> work;
  auto add = [&](PermGroup h) {
    std::vector<Perm> k = h.elements();
    std::sort(k.begin(), k.end());
    if (seen.count(k)) return;
    work.push_back(k);
    seen.emplace(std::move(k), std::move(h));
  };
  add(PermGroup::trivial(g.degree()));
  for (size_t i = 0; i < work.size(); ++i) {
    std::vector<Perm> cur = work[i];
    for (const Perm& e : elems) {
      if (std::binary_search(cur.begin(), cur.end(), e)) continue;
      std::vector<Perm> gens = cur;
      gens.push_back(e);
      add(PermGroup::generated(g.degree(), gens));
    }
  }
  std::vector<std::pair<std::vector<Perm>, PermGroup>> items;
  for (auto& [k, h] : seen) items.emplace_back(k, std::move(h));
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) {
              if (a.second.order() != b.second.order())
                return a.second.order() < b.second.order();
              return a.first < b.first;
            });
  std::vector<PermGroup> out;
  for (auto& it : items) out.push_back(std::move(it.second));
  return out;
}

// Minimal saturated subsystem of index prime to p when some automorphism
// group has a proper prime-to-p residual.  The subsystems of that index
// correspond to the subgroups of Aut_F(S) between a fixed normal subgroup
// and the whole group, measured by their image over the inner maps, and for
// each the subsystem is the closure of the residuals together with that
// automorphism group.  Candidates are tried in ascending order; one is
// accepted when its closure is saturated and reproduces exactly the
// candidate at S, which by uniqueness of the subsystem with a given
// automorphism group at S identifies it.  The minimal accepted order must
// carry exactly one candidate, the minimal subsystem.
FusionSystem minimal_prime_index_subsystem(
    const FusionSystem& F, const std::vector<AutAssignment>& assigns,
    const std::vector<std::pair<int, std::vector<ValueMap>>>& checks) {
  int top = F.top();
  const auto& mem = F.members(top);
  PermGroup A = maps_as_position_group(F, top, F.auts_at(top));

  // every candidate closure contains the inner maps and the residual at S
  std::vector<Perm> base_gens;
  for (const Perm& g : maps_as_position_group(F, top, aut_s_maps(F, top)).generators())
    base_gens.push_back(g);
  for (const Perm& g : opprime_residual(A, F.p).generators()) base_gens.push_back(g);
  PermGroup B = PermGroup::generated(A.degree(), base_gens);

  // B is normal in A, so the quotient acts regularly on its cosets and an
  // element is recovered from the image of the identity coset
  Quotient q = quotient_group(A, B);

  std::vector<FusionSystem> accepted;
  uint64_t accepted_order = 0;
  for (const PermGroup& H : small_subgroups(q.group)) {
    if (!accepted.empty() && H.order() > accepted_order) break;
    std::vector<Perm> pre = base_gens;
    for (const Perm& h : H.generators()) pre.push_back(q.reps[h[0]]);
    PermGroup P = PermGroup::generated(A.degree(), pre);

    std::vector<ValueMap> tmaps;
    for (const Perm& g : P.generators()) {
      if (g.is_identity()) continue;
      ValueMap m(mem.size());
      for (size_t i = 0; i < mem.size(); ++i) m[i] = mem[g[static_cast<int>(i)]];
      tmaps.push_back(std::move(m));
    }
    std::vector<AutAssignment> as = assigns;
    if (!tmaps.empty()) as.push_back(assignment_from_maps(F, top, tmaps));

    FusionSystem C = generated_system(F.S, F.p, as, F.limits);
    if (!check_saturation(C).saturated) continue;
    std::vector<ValueMap> want = position_group_maps(F, top, P);
    std::sort(want.begin(), want.end());
    std::vector<ValueMap> have = C.auts_at(C.top());
    std::sort(have.begin(), have.end());
    if (have != want) continue;
    verify_containments(F, C, checks);
    accepted_order = H.order();
    accepted.push_back(std::move(C));
  }
  require(!accepted.empty(), "no subsystem of index prime to p was accepted");
  require(accepted.size() == 1,
          "minimal subsystem of index prime to p is ambiguous");
  return std::move(accepted[0]);
}

// True when a fusion rebuild of a residual of G is cheap enough to serve as
// a cross-check.
bool group_check_feasible(const FusionSystem& F) {
  return F.group_backed && F.G.order() <= 1000000 && F.S.order() <= 256;
}

}  // namespace

OpPrimeResult opprime_subsystem(const FusionSystem& F) {
  bool all_full = true;
  std::vector<AutAssignment> assigns;
  std::vector<std::pair<int, std::vector<ValueMap>>> checks;
  for (int n = 0; n < F.lat.node_count(); ++n) {
    bool full = false;
    std::vector<ValueMap> maps = residual_generator_maps(F, n, true, &full);
    if (!full) all_full = false;
    if (maps.empty()) continue;
    assigns.push_back(assignment_from_maps(F, n, maps));
    checks.emplace_back(n, std::move(maps));
  }

  OpPrimeResult res;
  if (all_full) {
    res.sys = F;
  } else {
    res.sys = minimal_prime_index_subsystem(F, assigns, checks);
  }
  if (group_check_feasible(F)) {
    PermGroup R = opprime_residual(F.G, F.p);
    FusionSystem FG = fusion_from_group(R, F.p, &F.S, F.limits);
    require(same_system(FG, res.sys), "O^{p'} subsystem disagrees with the group");
  }
  uint64_t inn =
      F.members(F.top()).size() / F.members(F.lat.node(F.top()).center).size();
  res.gamma_order = res.sys.cls(res.sys.top()).aut_order / inn;
  return res;
}

FusionSystem oppower_subsystem(const FusionSystem& F) {
  int foc = focal_node(F);
  if (foc == F.top()) {
    // the focal subgroup fills S exactly when F has no proper subsystem of
    // p-power index
    if (group_check_feasible(F)) {
      PermGroup R = op_power_residual(F.G, F.p);
      FusionSystem FG = fusion_from_group(R, F.p, &F.S, F.limits);
      require(same_system(FG, F), "O^p fixed point disagrees with the group");
    }
    return F;
  }
  int hyp = hyperfocal_node(F);
  std::vector<int> nodes = F.lat.sub_nodes(hyp);
  nodes.push_back(hyp);
  std::vector<AutAssignment> assigns;
  std::vector<std::pair<int, std::vector<ValueMap>>> checks;
  for (int n : nodes) {
    std::vector<ValueMap> maps = residual_generator_maps(F, n, false, nullptr);
    if (maps.empty()) continue;
    assigns.push_back(assignment_from_maps(F, n, maps));
    checks.emplace_back(n, std::move(maps));
  }
  PermGroup S0 = F.lat.node_group(hyp);
  FusionSystem F0 = generated_system(S0, F.p, assigns, F.limits);
  require(check_saturation(F0).saturated, "O^p closure is not saturated");
  verify_containments(F, F0, checks);
  if (group_check_feasible(F)) {
    PermGroup R = op_power_residual(F.G, F.p);
    FusionSystem FG = fusion_from_group(R, F.p, &S0, F.limits);
    require(same_system(FG, F0), "O^p subsystem disagrees with the group");
  }
  return F0;
}

ReducedReport reduced_report(const FusionSystem& F) {
  ReducedReport r;
  r.op_trivial = (op_node(F) == F.lat.bottom());
  r.oppower_full = (focal_node(F) == F.top());
  bool all_full = true;
  for (const FClass& c : F.classes) {
    PermGroup A = maps_as_position_group(F, c.rep, c.auts);
    if (opprime_residual(A, F.p).order() != A.order()) {
      all_full = false;
      break;
    }
  }
  r.opprime_full = all_full || same_system(opprime_subsystem(F).sys, F);
  return r;
}

bool is_reduced(const FusionSystem& F) { return reduced_report(F).reduced(); }

ReductionTrace reduce(const FusionSystem& F, bool opprime_first) {
  ReductionTrace tr;
  FusionSystem cur = F;
  int q = op_node(cur);
  if (q != cur.lat.bottom()) {
    SystemFingerprint before = system_fingerprint(cur);
    FusionSystem cz = centralizer_system(cur, q);
    // the center of the core, in the centralizer system's coordinates
    std::vector<uint16_t> zm;
    for (uint16_t x : cur.members(cur.lat.node(q).center)) {
      int ni = cz.tbl.index_of(cur.tbl.element(x));
      require(ni >= 0, "center of the core left the centralizer");
      zm.push_back(static_cast<uint16_t>(ni));
    }
    std::sort(zm.begin(), zm.end());
    int zn = cz.lat.node_of(zm);
    require(zn >= 0, "center of the core is not a centralizer node");
    require(cz.is_strongly_closed(zn),
            "center of the core is not strongly closed in the centralizer");
    if (zn == cz.lat.bottom()) cur = std::move(cz);
    else cur = quotient_system(cz, zn).sys;
    tr.steps.push_back({"op-core-centralizer-quotient", before, system_fingerprint(cur)});
    require(op_node(cur) == cur.lat.bottom(), "p-core survived the first step");
  }

  for (int round = 0;; ++round) {
    require(round < 64, "reduction did not terminate");
    bool changed = false;
    for (int k = 0; k < 2; ++k) {
      bool power = (k == 0) != opprime_first;
      SystemFingerprint before = system_fingerprint(cur);
      FusionSystem next = power ? oppower_subsystem(cur) : opprime_subsystem(cur).sys;
      if (same_system(next, cur)) continue;
      cur = std::move(next);
      tr.steps.push_back({power ? "O^p" : "O^{p'}", before, system_fingerprint(cur)});
      require(op_node(cur) == cur.lat.bottom(), "p-core appeared during the alternation");
      changed = true;
    }
    if (!changed) break;
  }
  tr.trivial = (cur.S.order() == 1);
  tr.result = std::move(cur);
  return tr;
}

bool reduction_order_independent(const FusionSystem& F) {
  ReductionTrace a = reduce(F, false);
  ReductionTrace b = reduce(F, true);
  if (a.trivial || b.trivial) return a.trivial == b.trivial;
  return is_isomorphic(a.result, b.result);
}

bool is_constrained(const FusionSystem& F) { return F.cls(op_node(F)).centric; }

namespace {

// Exact splitting of the morphism sets along an internal factorization: at
// every node, the restrictions of tuples of factor morphisms give precisely
// the morphisms out of that node.
void verify_split(const FusionSystem& F, const std::vector<int>& fac) {
  int m = static_cast<int>(fac.size());
  if (m <= 1) return;
  int n_elems = F.tbl.size();
  int e0 = F.tbl.index_of(Perm(F.S.degree()));
  require(e0 >= 0, "identity missing from the table");

  // coordinates of every element along the factors
  std::vector<std::vector<uint16_t>> coords(n_elems, std::vector<uint16_t>(m));
  {
    std::vector<size_t> idx(m, 0);
    std::vector<char> seen(n_elems, 0);
    size_t total = 0;
    while (true) {
      int acc = e0;
      for (int i = 0; i < m; ++i) acc = F.tbl.mul(acc, F.members(fac[i])[idx[i]]);
      require(!seen[acc], "factor products repeat an element");
      seen[acc] = 1;
      ++total;
      for (int i = 0; i < m; ++i) coords[acc][i] = F.members(fac[i])[idx[i]];
      int k = 0;
      for (; k < m; ++k) {
        if (++idx[k] < F.members(fac[k]).size()) break;
        idx[k] = 0;
      }
      if (k == m) break;
    }
    require(total == static_cast<size_t>(n_elems), "factors do not span the group");
  }

  for (int n = 0; n < F.lat.node_count(); ++n) {
    const auto& mem = F.members(n);
    // projections
    std::vector<std::vector<uint16_t>> pm(m);
    for (int i = 0; i < m; ++i) {
      for (uint16_t x : mem) pm[i].push_back(coords[x][i]);
      std::sort(pm[i].begin(), pm[i].end());
      pm[i].erase(std::unique(pm[i].begin(), pm[i].end()), pm[i].end());
    }
    std::vector<std::vector<InjHom>> homs(m);
    for (int i = 0; i < m; ++i) {
      int pn = F.lat.node_of(pm[i]);
      require(pn >= 0, "projection is not a subgroup node");
      homs[i] = F.hom_set(pn, fac[i]);
      require(!homs[i].empty(), "projection admits no factor morphisms");
    }
    std::set<ValueMap> combined;
    std::vector<size_t> sel(m, 0);
    while (true) {
      ValueMap t(mem.size());
      for (size_t j = 0; j < mem.size(); ++j) {
        int acc = e0;
        for (int i = 0; i < m; ++i) {
          int pos = member_pos(pm[i], coords[mem[j]][i]);
          acc = F.tbl.mul(acc, homs[i][sel[i]].map[pos]);
        }
        t[j] = static_cast<uint16_t>(acc);
      }
      combined.insert(std::move(t));
      int k = 0;
      for (; k < m; ++k) {
        if (++sel[k] < homs[k].size()) break;
        sel[k] = 0;
      }
      if (k == m) break;
    }
    std::set<ValueMap> expect;
    for (const InjHom& h : F.hom_set(n, F.top())) expect.insert(h.map);
    require(combined == expect, "morphisms do not split along the factors");
  }
}

}  // namespace

Factorization factorize(const FusionSystem& F) {
  if (!is_reduced(F))
    throw std::invalid_argument("reduction: factorize requires a reduced system");
  std::vector<std::vector<int>> good;
  for (const std::vector<int>& d : direct_factorizations(F.lat)) {
    bool ok = true;
    for (int n : d)
      if (!F.is_strongly_closed(n)) ok = false;
    if (ok) good.push_back(d);
  }
  require(!good.empty(), "no strongly closed factorization found");
  size_t best = 0;
  for (const auto& d : good) best = std::max(best, d.size());
  std::vector<const std::vector<int>*> finest;
  for (const auto& d : good)
    if (d.size() == best) finest.push_back(&d);
  require(finest.size() == 1, "finest strongly closed factorization is not unique");
  const std::vector<int>& fac = *finest[0];

  verify_split(F, fac);

  struct Item {
    FusionSystem sys;
    std::vector<uint16_t> support;
    std::string key;
  };
  std::vector<Item> items;
  for (int n : fac) {
    Item it;
    it.sys = restricted_system(F, n);
    it.support = F.members(n);
    it.key = system_fingerprint(it.sys).to_string();
    items.push_back(std::move(it));
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.sys.S.order() != b.sys.S.order()) return a.sys.S.order() < b.sys.S.order();
    if (a.key != b.key) return a.key < b.key;
    return a.support < b.support;
  });
  Factorization out;
  for (Item& it : items) {
    out.factors.push_back(std::move(it.sys));
    out.supports.push_back(std::move(it.support));
  }
  return out;
}

}  // namespace fusionkit
