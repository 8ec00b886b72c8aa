#include "fusion_ops.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "aut_group.h"
#include "backtrack.h"

namespace fusionkit {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(std::string("fusion_ops: ") + msg);
}

// A subgroup of S rebuilt as a standalone group, with element-index
// translation in both directions.  Both tables list elements in the
// lexicographic order of their image vectors, so the translation is
// monotone and member lists keep their relative order.
struct SubSystemBase {
  PermGroup S0 = PermGroup::trivial(0);
  STable tbl;
  Lattice lat;
  std::vector<uint16_t> to_old;  // new element index -> old
  std::vector<int> to_new;       // old element index -> new, -1 outside
};

SubSystemBase rebuild_subgroup(const FusionSystem& F, int node) {
  SubSystemBase b;
  b.S0 = F.lat.node_group(node);
  b.tbl = STable::build(b.S0);
  b.lat = Lattice::build(b.S0, F.p, F.limits.lattice_node_cap);
  b.to_old.resize(b.tbl.size());
  b.to_new.assign(F.tbl.size(), -1);
  for (int i = 0; i < b.tbl.size(); ++i) {
    int oi = F.tbl.index_of(b.tbl.element(i));
    require(oi >= 0, "subgroup element missing from the ambient table");
    b.to_old[i] = static_cast<uint16_t>(oi);
    b.to_new[oi] = i;
  }
  return b;
}

std::vector<uint16_t> translate_sorted(const std::vector<uint16_t>& mem,
                                       const std::vector<uint16_t>& to_old) {
  std::vector<uint16_t> out(mem.size());
  for (size_t i = 0; i < mem.size(); ++i) out[i] = to_old[mem[i]];
  return out;
}

}  // namespace

bool same_system(const FusionSystem& a, const FusionSystem& b) {
  if (a.p != b.p) return false;
  if (a.S.degree() != b.S.degree()) return false;
  if (a.tbl.size() != b.tbl.size()) return false;
  for (int i = 0; i < a.tbl.size(); ++i)
    if (!(a.tbl.element(i) == b.tbl.element(i))) return false;
  // identical element tables give identical lattices
  if (a.lat.node_count() != b.lat.node_count()) return false;
  if (a.classes.size() != b.classes.size()) return false;
  std::map<std::vector<int>, const FClass*> bc;
  for (const FClass& c : b.classes) bc[c.nodes] = &c;
  for (const FClass& c : a.classes) {
    auto it = bc.find(c.nodes);
    if (it == bc.end()) return false;
    // equal node sets force the same fully normalized rep, so the sorted
    // automorphism lists are directly comparable
    if (it->second->rep != c.rep) return false;
    if (it->second->auts != c.auts) return false;
  }
  return true;
}

PermGroup maps_as_position_group(const FusionSystem& F, int node,
                                 const std::vector<ValueMap>& maps) {
  const auto& mem = F.members(node);
  int deg = static_cast<int>(mem.size());
  std::vector<Perm> gens;
  gens.reserve(maps.size());
  for (const ValueMap& m : maps) {
    std::vector<int> img(deg);
    for (int i = 0; i < deg; ++i) {
      int pos = member_pos(mem, m[i]);
      require(pos >= 0, "map does not fix the subgroup");
      img[i] = pos;
    }
    gens.push_back(Perm(img));
  }
  return PermGroup::generated(deg, gens);
}

std::vector<ValueMap> position_group_maps(const FusionSystem& F, int node,
                                          const PermGroup& g) {
  const auto& mem = F.members(node);
  std::vector<ValueMap> out;
  out.reserve(g.order());
  for (const Perm& q : g.elements()) {
    ValueMap m(mem.size());
    for (size_t i = 0; i < mem.size(); ++i) m[i] = mem[q[static_cast<int>(i)]];
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ValueMap> aut_all_maps(const FusionSystem& F, int node, uint64_t aut_cap) {
  PermGroup P = F.lat.node_group(node);
  AutGroup ag = automorphism_group(P, aut_cap);
  const auto& mem = F.members(node);
  std::vector<ValueMap> out;
  out.reserve(ag.aut_order);
  for (const GenImageMap& a : ag.auts) {
    ValueMap m(mem.size());
    for (size_t i = 0; i < mem.size(); ++i) {
      Perm im = ag.apply(a, F.tbl.element(mem[i]));
      int idx = F.tbl.index_of(im);
      require(idx >= 0, "automorphism image leaves the table");
      m[i] = static_cast<uint16_t>(idx);
    }
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ValueMap> iso_set(const FusionSystem& F, int src, int dst) {
  if (F.class_of[src] != F.class_of[dst]) return {};
  const FClass& c = F.cls(src);
  const auto& memr = F.members(c.rep);
  const ValueMap& wsrc = F.witness(src);
  ValueMap winv = vm_inverse(F.members(dst), F.witness(dst));
  std::vector<ValueMap> out;
  out.reserve(c.auts.size());
  for (const ValueMap& a : c.auts) {
    ValueMap t = vm_compose(memr, winv, a);
    out.push_back(vm_compose(memr, t, wsrc));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FusionSystem restricted_system(const FusionSystem& F, int s0_node) {
  SubSystemBase b = rebuild_subgroup(F, s0_node);
  std::map<int, std::vector<InjHom>> homs;
  std::vector<detail::Arrow> arrows;
  for (int n = 0; n < b.lat.node_count(); ++n) {
    std::vector<uint16_t> omem = translate_sorted(b.lat.node(n).members, b.to_old);
    int on = F.lat.node_of(omem);
    require(on >= 0, "subgroup of S0 missing from the ambient lattice");
    auto it = homs.find(on);
    if (it == homs.end()) it = homs.emplace(on, F.hom_set(on, F.top())).first;
    for (const InjHom& h : it->second) {
      ValueMap m(h.map.size());
      bool inside = true;
      for (size_t i = 0; i < h.map.size() && inside; ++i) {
        int ni = b.to_new[h.map[i]];
        if (ni < 0) inside = false;
        else m[i] = static_cast<uint16_t>(ni);
      }
      if (inside) arrows.push_back({n, std::move(m)});
    }
  }
  return detail::assemble_system(b.S0, F.p, std::move(b.tbl), std::move(b.lat), arrows,
                                 false, nullptr, F.limits);
}

namespace {

std::vector<ValueMap> close_map_set(const FusionSystem& F, int qnode,
                                    const std::vector<ValueMap>& K) {
  return position_group_maps(F, qnode, maps_as_position_group(F, qnode, K));
}

// |{g in N_S(node) : c_g on the node lies in K}|; K sorted.
size_t twisted_normalizer_size(const FusionSystem& F, int node,
                               const std::vector<ValueMap>& K) {
  const auto& mem = F.members(node);
  size_t count = 0;
  for (uint16_t x : F.members(F.lat.node(node).normalizer))
    if (std::binary_search(K.begin(), K.end(), vm_conj(F.tbl, mem, x))) ++count;
  return count;
}

}  // namespace

KNormalizedCheck check_fully_k_normalized(const FusionSystem& F, int qnode,
                                          const std::vector<ValueMap>& K_in) {
  std::vector<ValueMap> K = close_map_set(F, qnode, K_in);
  const auto& memq = F.members(qnode);
  size_t base = twisted_normalizer_size(F, qnode, K);
  KNormalizedCheck res;
  for (int qs : F.cls(qnode).nodes) {
    for (const ValueMap& phi : iso_set(F, qnode, qs)) {
      // transport K along phi
      ValueMap phinv = vm_inverse(memq, phi);
      std::vector<ValueMap> KT;
      KT.reserve(K.size());
      for (const ValueMap& k : K) {
        ValueMap t = vm_compose(memq, phi, k);
        KT.push_back(vm_compose(memq, t, phinv));
      }
      std::sort(KT.begin(), KT.end());
      if (twisted_normalizer_size(F, qs, KT) > base) {
        res.fully = false;
        res.better_node = qs;
        res.better_map = phi;
        return res;
      }
    }
  }
  return res;
}

bool is_fully_k_normalized(const FusionSystem& F, int qnode,
                           const std::vector<ValueMap>& K) {
  return check_fully_k_normalized(F, qnode, K).fully;
}

FusionSystem normalizer_system(const FusionSystem& F, int qnode,
                               const std::vector<ValueMap>& K_in) {
  std::vector<ValueMap> K = close_map_set(F, qnode, K_in);
  {
    KNormalizedCheck chk = check_fully_k_normalized(F, qnode, K);
    if (!chk.fully)
      throw std::invalid_argument(
          "fusion_ops: subgroup is not fully normalized for the given "
          "automorphisms; a better conjugate is node " +
          std::to_string(chk.better_node));
  }
  const auto& memq = F.members(qnode);

  // N_S^K(Q)
  std::vector<uint16_t> skmem;
  for (uint16_t x : F.members(F.lat.node(qnode).normalizer))
    if (std::binary_search(K.begin(), K.end(), vm_conj(F.tbl, memq, x)))
      skmem.push_back(x);
  int sknode = F.lat.node_of(skmem);
  require(sknode >= 0, "twisted normalizer is not a subgroup");

  SubSystemBase b = rebuild_subgroup(F, sknode);
  std::map<int, std::vector<InjHom>> homs;
  std::vector<detail::Arrow> arrows;
  for (int n = 0; n < b.lat.node_count(); ++n) {
    std::vector<uint16_t> omem = translate_sorted(b.lat.node(n).members, b.to_old);
    std::vector<uint16_t> seed = omem;
    seed.insert(seed.end(), memq.begin(), memq.end());
    int opq = F.lat.node_of(F.tbl.closure(seed));
    require(opq >= 0, "PQ missing from the ambient lattice");
    const auto& mempq = F.members(opq);
    auto it = homs.find(opq);
    if (it == homs.end()) it = homs.emplace(opq, F.hom_set(opq, F.top())).first;
    std::set<ValueMap> seen;
    for (const InjHom& h : it->second) {
      ValueMap rq = vm_restrict(mempq, h.map, memq);
      if (vm_image(rq) != memq) continue;
      if (!std::binary_search(K.begin(), K.end(), rq)) continue;
      ValueMap rp = vm_restrict(mempq, h.map, omem);
      bool inside = true;
      ValueMap m(rp.size());
      for (size_t i = 0; i < rp.size() && inside; ++i) {
        if (!std::binary_search(skmem.begin(), skmem.end(), rp[i])) inside = false;
        else m[i] = static_cast<uint16_t>(b.to_new[rp[i]]);
      }
      if (inside && seen.insert(m).second) arrows.push_back({n, std::move(m)});
    }
  }
  PermGroup S0 = b.S0;
  FusionSystem result = detail::assemble_system(S0, F.p, std::move(b.tbl),
                                                std::move(b.lat), arrows, false,
                                                nullptr, F.limits);

  // Independent rebuild from the group when F came from one and the ambient
  // normalizer is small enough to enumerate.
  if (F.group_backed) {
    PermGroup Qg = F.lat.node_group(qnode);
    PermGroup NG = Qg.is_trivial() ? F.G : normalizer(F.G, Qg);
    if (NG.order() <= kBruteGroupCap) {
      PermGroup H = PermGroup::trivial(F.G.degree());
      NG.for_each_element([&](const Perm& g) {
        if (H.contains(g)) return true;
        ValueMap c(memq.size());
        bool ok = true;
        for (size_t i = 0; i < memq.size() && ok; ++i) {
          int idx = F.tbl.index_of(F.tbl.element(memq[i]).conjugated_by(g));
          if (idx < 0) ok = false;
          else c[i] = static_cast<uint16_t>(idx);
        }
        if (ok && std::binary_search(K.begin(), K.end(), c)) H = join(H, {g});
        return true;
      });
      uint64_t ppart = 1;
      for (uint64_t h = H.order(); h % F.p == 0; h /= F.p) ppart *= F.p;
      require(ppart == S0.order(), "twisted normalizer is not Sylow in N_G^K(Q)");
      FusionSystem FG = fusion_from_group(H, F.p, &S0, F.limits);
      require(same_system(FG, result), "normalizer system disagrees with the group");
    }
  }
  return result;
}

FusionSystem normalizer_system(const FusionSystem& F, int qnode) {
  return normalizer_system(F, qnode, aut_all_maps(F, qnode, F.limits.max_aut_bruteforce));
}

FusionSystem centralizer_system(const FusionSystem& F, int qnode) {
  return normalizer_system(F, qnode, {vm_identity(F.members(qnode))});
}

QuotientSystem quotient_system(const FusionSystem& F, int qnode) {
  if (!F.is_strongly_closed(qnode))
    throw std::invalid_argument("fusion_ops: quotient by a subgroup that is not strongly closed");
  PermGroup Qg = F.lat.node_group(qnode);
  Quotient qt = quotient_group(F.S, Qg);
  STable t0 = STable::build(qt.group);
  Lattice l0 = Lattice::build(qt.group, F.p, F.limits.lattice_node_cap);

  QuotientSystem out;
  out.qnode = qnode;
  out.elem_image.assign(F.tbl.size(), -1);
  std::vector<int> pre_rep(t0.size(), -1);  // one ambient preimage per image
  for (int i = 0; i < F.tbl.size(); ++i) {
    int ni = t0.index_of(qt.project(F.tbl.element(i)));
    require(ni >= 0, "projected element missing from the quotient table");
    out.elem_image[i] = ni;
    if (pre_rep[ni] < 0) pre_rep[ni] = i;
  }

  std::map<int, std::vector<InjHom>> homs;
  std::vector<detail::Arrow> arrows;
  for (int n = 0; n < l0.node_count(); ++n) {
    const auto& nmem = l0.node(n).members;
    // full preimage of the subgroup at n
    std::vector<uint16_t> omem;
    for (int i = 0; i < F.tbl.size(); ++i)
      if (std::binary_search(nmem.begin(), nmem.end(),
                             static_cast<uint16_t>(out.elem_image[i])))
        omem.push_back(static_cast<uint16_t>(i));
    int on = F.lat.node_of(omem);
    require(on >= 0, "preimage missing from the ambient lattice");
    auto it = homs.find(on);
    if (it == homs.end()) it = homs.emplace(on, F.hom_set(on, F.top())).first;
    std::set<ValueMap> seen;
    for (const InjHom& h : it->second) {
      // strong closure of Q makes h coset-preserving, so projecting one
      // preimage representative per member determines the map
      ValueMap m(nmem.size());
      for (size_t j = 0; j < nmem.size(); ++j) {
        int r = pre_rep[nmem[j]];
        int pos = member_pos(omem, static_cast<uint16_t>(r));
        m[j] = static_cast<uint16_t>(out.elem_image[h.map[pos]]);
      }
      if (seen.insert(m).second) arrows.push_back({n, std::move(m)});
    }
  }
  out.sys = detail::assemble_system(qt.group, F.p, std::move(t0), std::move(l0), arrows,
                                    false, nullptr, F.limits);
  SaturationReport rep = check_saturation(out.sys);
  require(rep.saturated, "quotient system failed saturation");
  return out;
}

bool quotient_normalized_correspondence(const FusionSystem& F, const QuotientSystem& q) {
  for (int n = 0; n < F.lat.node_count(); ++n) {
    if (!F.lat.subset(q.qnode, n)) continue;
    std::vector<uint16_t> im;
    for (uint16_t x : F.members(n)) im.push_back(static_cast<uint16_t>(q.elem_image[x]));
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    int nn = q.sys.lat.node_of(im);
    if (nn < 0) return false;
    if (F.is_fully_normalized(n) != q.sys.is_fully_normalized(nn)) return false;
  }
  return true;
}

FusionSystem product_system(const FusionSystem& a, const FusionSystem& b,
                            const FusionLimits& lim) {
  if (a.p != b.p)
    throw std::invalid_argument("fusion_ops: product of systems at different primes");
  uint64_t so = a.S.order() * b.S.order();
  if (so > lim.max_s_order)
    throw CapacityError("fusion_ops: |S1 x S2| exceeds max_s_order");
  int da = a.S.degree(), db = b.S.degree();
  int deg = da + db;
  std::vector<Perm> gens;
  for (const Perm& g : a.S.generators()) gens.push_back(g.extended(deg));
  for (const Perm& g : b.S.generators()) {
    std::vector<int> img(deg);
    for (int i = 0; i < da; ++i) img[i] = i;
    for (int i = 0; i < db; ++i) img[da + i] = da + g[i];
    gens.push_back(Perm(img));
  }
  PermGroup S = PermGroup::generated(deg, gens);
  require(S.order() == so, "product group has the wrong order");
  STable tbl = STable::build(S);
  Lattice lat = Lattice::build(S, a.p, lim.lattice_node_cap);

  int nb = b.tbl.size();
  std::vector<uint16_t> pa(tbl.size()), pb(tbl.size());
  std::vector<uint16_t> pair_idx(static_cast<size_t>(a.tbl.size()) * nb);
  for (int e = 0; e < tbl.size(); ++e) {
    const Perm& g = tbl.element(e);
    std::vector<int> ia(da), ib(db);
    for (int i = 0; i < da; ++i) ia[i] = g[i];
    for (int i = 0; i < db; ++i) ib[i] = g[da + i] - da;
    int xa = a.tbl.index_of(Perm(ia));
    int xb = b.tbl.index_of(Perm(ib));
    require(xa >= 0 && xb >= 0, "product element does not split");
    pa[e] = static_cast<uint16_t>(xa);
    pb[e] = static_cast<uint16_t>(xb);
    pair_idx[static_cast<size_t>(xa) * nb + xb] = static_cast<uint16_t>(e);
  }

  std::map<int, std::vector<InjHom>> homsa, homsb;
  auto get_homs = [](const FusionSystem& f, std::map<int, std::vector<InjHom>>& memo,
                     int node) -> const std::vector<InjHom>& {
    auto it = memo.find(node);
    if (it == memo.end()) it = memo.emplace(node, f.hom_set(node, f.top())).first;
    return it->second;
  };

  std::vector<detail::Arrow> arrows;
  for (int n = 0; n < lat.node_count(); ++n) {
    const auto& mem = lat.node(n).members;
    std::vector<uint16_t> m1, m2;
    for (uint16_t x : mem) {
      m1.push_back(pa[x]);
      m2.push_back(pb[x]);
    }
    std::sort(m1.begin(), m1.end());
    m1.erase(std::unique(m1.begin(), m1.end()), m1.end());
    std::sort(m2.begin(), m2.end());
    m2.erase(std::unique(m2.begin(), m2.end()), m2.end());
    int n1 = a.lat.node_of(m1), n2 = b.lat.node_of(m2);
    require(n1 >= 0 && n2 >= 0, "projection missing from a factor lattice");
    std::set<ValueMap> seen;
    for (const InjHom& h1 : get_homs(a, homsa, n1))
      for (const InjHom& h2 : get_homs(b, homsb, n2)) {
        ValueMap m(mem.size());
        for (size_t j = 0; j < mem.size(); ++j) {
          uint16_t x1 = h1.map[member_pos(m1, pa[mem[j]])];
          uint16_t x2 = h2.map[member_pos(m2, pb[mem[j]])];
          m[j] = pair_idx[static_cast<size_t>(x1) * nb + x2];
        }
        if (seen.insert(m).second) arrows.push_back({n, std::move(m)});
      }
  }
  return detail::assemble_system(S, a.p, std::move(tbl), std::move(lat), arrows, false,
                                 nullptr, lim);
}

}  // namespace fusionkit
