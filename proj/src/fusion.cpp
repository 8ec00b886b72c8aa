#include "fusion.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "backtrack.h"
#include "group_ops.h"

namespace fusionkit {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("fusion: " + what);
}

}  // namespace

int member_pos(const std::vector<uint16_t>& mem, uint16_t x) {
  auto it = std::lower_bound(mem.begin(), mem.end(), x);
  if (it == mem.end() || *it != x) return -1;
  return static_cast<int>(it - mem.begin());
}

ValueMap vm_identity(const std::vector<uint16_t>& members) { return members; }

std::vector<uint16_t> vm_image(const ValueMap& m) {
  std::vector<uint16_t> im(m);
  std::sort(im.begin(), im.end());
  return im;
}

ValueMap vm_compose(const std::vector<uint16_t>& mem_mid, const ValueMap& outer,
                    const ValueMap& inner) {
  ValueMap r(inner.size());
  for (size_t i = 0; i < inner.size(); ++i) {
    int pos = member_pos(mem_mid, inner[i]);
    require(pos >= 0, "compose: inner image escapes the middle subgroup");
    r[i] = outer[pos];
  }
  return r;
}

ValueMap vm_inverse(const std::vector<uint16_t>& mem_src, const ValueMap& m) {
  require(mem_src.size() == m.size(), "inverse: arity mismatch");
  std::vector<std::pair<uint16_t, uint16_t>> pairs(m.size());
  for (size_t i = 0; i < m.size(); ++i) pairs[i] = {m[i], mem_src[i]};
  std::sort(pairs.begin(), pairs.end());
  ValueMap r(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    require(i == 0 || pairs[i].first != pairs[i - 1].first, "inverse: map is not injective");
    r[i] = pairs[i].second;
  }
  return r;
}

ValueMap vm_restrict(const std::vector<uint16_t>& mem_src, const ValueMap& m,
                     const std::vector<uint16_t>& mem_sub) {
  ValueMap r(mem_sub.size());
  for (size_t i = 0; i < mem_sub.size(); ++i) {
    int pos = member_pos(mem_src, mem_sub[i]);
    require(pos >= 0, "restrict: subset escapes the domain");
    r[i] = m[pos];
  }
  return r;
}

ValueMap vm_conj(const STable& tbl, const std::vector<uint16_t>& members, int s) {
  ValueMap r(members.size());
  for (size_t i = 0; i < members.size(); ++i)
    r[i] = static_cast<uint16_t>(tbl.conj(members[i], s));
  return r;
}

int vm_apply(const std::vector<uint16_t>& mem_src, const ValueMap& m, uint16_t x) {
  int pos = member_pos(mem_src, x);
  require(pos >= 0, "apply: element outside the domain");
  return m[pos];
}

bool FusionSystem::is_fully_normalized(int node) const {
  return cls(node).fully_normalized[pos_in_class[node]] != 0;
}

bool FusionSystem::is_fully_centralized(int node) const {
  return cls(node).fully_centralized[pos_in_class[node]] != 0;
}

uint64_t FusionSystem::iso_count() const {
  uint64_t total = 0;
  for (const FClass& c : classes)
    total += static_cast<uint64_t>(c.nodes.size()) * c.nodes.size() * c.aut_order;
  return total;
}

const ValueMap& FusionSystem::witness(int node) const {
  return cls(node).to_rep[pos_in_class[node]];
}

const std::vector<ValueMap>& FusionSystem::auts_at(int node) const {
  const FClass& c = cls(node);
  if (node == c.rep) return c.auts;
  auto it = auts_memo_.find(node);
  if (it != auts_memo_.end()) return it->second;
  const auto& mem_rep = lat.node(c.rep).members;
  const auto& mem = lat.node(node).members;
  const ValueMap& w = witness(node);           // node -> rep
  ValueMap winv = vm_inverse(mem, w);          // rep -> node
  std::vector<ValueMap> out;
  out.reserve(c.auts.size());
  for (const ValueMap& a : c.auts)
    out.push_back(vm_compose(mem_rep, winv, vm_compose(mem_rep, a, w)));
  std::sort(out.begin(), out.end());
  return auts_memo_.emplace(node, std::move(out)).first->second;
}

std::vector<InjHom> FusionSystem::hom_set(int src, int dst) const {
  const FClass& c = cls(src);
  const auto& mem_rep = lat.node(c.rep).members;
  const ValueMap& w1 = witness(src);  // src -> rep
  std::vector<InjHom> out;
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    int r = c.nodes[i];
    if (!lat.subset(r, dst)) continue;
    ValueMap winv = vm_inverse(lat.node(r).members, c.to_rep[i]);  // rep -> r
    for (const ValueMap& a : c.auts)
      out.push_back({src, r, vm_compose(mem_rep, winv, vm_compose(mem_rep, a, w1))});
  }
  return out;
}

uint64_t FusionSystem::hom_count(int src, int dst) const {
  const FClass& c = cls(src);
  uint64_t n = 0;
  for (int r : c.nodes)
    if (lat.subset(r, dst)) n += c.aut_order;
  return n;
}

int FusionSystem::image_node(int src, const ValueMap& m) const {
  require(m.size() == lat.node(src).members.size(), "image_node: arity mismatch");
  return lat.node_of(vm_image(m));
}

bool FusionSystem::contains_hom(int src, const ValueMap& m) const {
  int r = image_node(src, m);
  if (r < 0 || class_of[r] != class_of[src]) return false;
  const FClass& c = cls(src);
  const auto& mem_src = lat.node(src).members;
  ValueMap winv = vm_inverse(mem_src, witness(src));  // rep -> src
  ValueMap t = vm_compose(mem_src, m, winv);          // rep -> image
  ValueMap a = vm_compose(lat.node(r).members, c.to_rep[pos_in_class[r]], t);
  return std::binary_search(c.auts.begin(), c.auts.end(), a);
}

std::vector<uint16_t> FusionSystem::element_orbit(uint16_t x) const {
  auto it = orbit_memo_.find(x);
  if (it != orbit_memo_.end()) return it->second;
  std::vector<uint16_t> orbit;
  if (x == 0) {
    orbit = {0};
  } else {
    int cnode = lat.node_of(tbl.closure({x}));
    require(cnode >= 0, "cyclic subgroup missing from the lattice");
    const FClass& c = cls(cnode);
    const auto& mem_rep = lat.node(c.rep).members;
    uint16_t xrep = static_cast<uint16_t>(vm_apply(lat.node(cnode).members, witness(cnode), x));
    std::set<uint16_t> acc;
    for (size_t i = 0; i < c.nodes.size(); ++i) {
      ValueMap winv = vm_inverse(lat.node(c.nodes[i]).members, c.to_rep[i]);
      for (const ValueMap& a : c.auts)
        acc.insert(static_cast<uint16_t>(
            vm_apply(mem_rep, winv, static_cast<uint16_t>(vm_apply(mem_rep, a, xrep)))));
    }
    orbit.assign(acc.begin(), acc.end());
  }
  return orbit_memo_.emplace(x, std::move(orbit)).first->second;
}

bool FusionSystem::is_strongly_closed(int node) const {
  const auto& mem = lat.node(node).members;
  for (uint16_t x : mem)
    for (uint16_t y : element_orbit(x))
      if (member_pos(mem, y) < 0) return false;
  return true;
}

namespace detail {

FusionSystem assemble_system(const PermGroup& S, int p, STable tbl, Lattice lat,
                             const std::vector<Arrow>& arrows_in, bool group_backed,
                             const PermGroup* G, const FusionLimits& lim) {
  if (S.order() > lim.max_s_order) throw CapacityError("fusion: |S| exceeds max_s_order");
  if (!S.is_pgroup(p)) throw std::invalid_argument("fusion: S is not a p-group");

  FusionSystem F;
  F.p = p;
  F.S = S;
  F.tbl = std::move(tbl);
  F.lat = std::move(lat);
  F.group_backed = group_backed;
  if (G) F.G = *G;
  F.limits = lim;

  const int n = F.lat.node_count();

  std::vector<Arrow> arrows;
  std::vector<int> sgens;
  for (const Perm& g : S.generators()) {
    int idx = F.tbl.index_of(g);
    require(idx >= 0, "generator missing from the element table");
    sgens.push_back(idx);
  }
  for (int id = 0; id < n; ++id)
    for (int s : sgens) arrows.push_back({id, vm_conj(F.tbl, F.lat.node(id).members, s)});
  arrows.insert(arrows.end(), arrows_in.begin(), arrows_in.end());

  const size_t na = arrows.size();
  std::vector<int> dst(na);
  // (neighbor via arrow k, forward?) listed in arrow order for determinism
  std::vector<std::vector<std::pair<int, char>>> adj(n);
  for (size_t k = 0; k < na; ++k) {
    const Arrow& a = arrows[k];
    require(a.src >= 0 && a.src < n, "arrow source out of range");
    require(a.map.size() == F.lat.node(a.src).members.size(), "arrow arity mismatch");
    int d = F.lat.node_of(vm_image(a.map));
    require(d >= 0, "arrow image is not a subgroup");
    dst[k] = d;
    adj[a.src].push_back({static_cast<int>(k), 1});
    if (d != a.src) adj[d].push_back({static_cast<int>(k), 0});
  }

  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comp_nodes;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    int cid = static_cast<int>(comp_nodes.size());
    comp_nodes.push_back({});
    std::deque<int> q{start};
    comp[start] = cid;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      comp_nodes[cid].push_back(u);
      for (auto [k, fwd] : adj[u]) {
        int v = fwd ? dst[k] : arrows[k].src;
        if (comp[v] < 0) {
          comp[v] = cid;
          q.push_back(v);
        }
      }
    }
    std::sort(comp_nodes[cid].begin(), comp_nodes[cid].end());
  }
  // classes ordered by least member node
  std::sort(comp_nodes.begin(), comp_nodes.end());

  F.class_of.assign(n, -1);
  F.pos_in_class.assign(n, -1);

  auto norm_order = [&](int id) {
    return F.lat.node(F.lat.node(id).normalizer).order;
  };
  auto cent_order = [&](int id) {
    return F.lat.node(F.lat.node(id).centralizer).order;
  };

  for (const auto& nodes : comp_nodes) {
    FClass c;
    c.nodes = nodes;
    int root = nodes[0];
    for (int id : nodes)
      if (norm_order(id) > norm_order(root)) root = id;
    c.rep = root;
    const auto& mem_root = F.lat.node(root).members;

    // witness tree: maps root -> node
    std::vector<ValueMap> from_root(n);
    std::vector<char> seen(n, 0);
    from_root[root] = vm_identity(mem_root);
    seen[root] = 1;
    std::deque<int> q{root};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto [k, fwd] : adj[u]) {
        int v = fwd ? dst[k] : arrows[k].src;
        if (seen[v]) continue;
        seen[v] = 1;
        if (fwd) {
          from_root[v] = vm_compose(F.lat.node(u).members, arrows[k].map, from_root[u]);
        } else {
          ValueMap inv = vm_inverse(F.lat.node(v).members, arrows[k].map);
          from_root[v] = vm_compose(F.lat.node(u).members, inv, from_root[u]);
        }
        q.push_back(v);
      }
    }

    // loop maps at the root generate the automorphism set
    std::set<ValueMap> gens;
    ValueMap ident = vm_identity(mem_root);
    for (size_t k = 0; k < na; ++k) {
      int s = arrows[k].src;
      if (comp[s] != comp[root]) continue;
      int d = dst[k];
      ValueMap t = vm_compose(F.lat.node(s).members, arrows[k].map, from_root[s]);
      ValueMap dinv = vm_inverse(mem_root, from_root[d]);
      ValueMap loop = vm_compose(F.lat.node(d).members, dinv, t);
      if (loop != ident) gens.insert(std::move(loop));
    }
    std::set<ValueMap> auts{ident};
    std::deque<const ValueMap*> work{&*auts.begin()};
    while (!work.empty()) {
      const ValueMap& cur = *work.front();
      work.pop_front();
      for (const ValueMap& g : gens) {
        auto [it, fresh] = auts.insert(vm_compose(mem_root, g, cur));
        if (fresh) {
          work.push_back(&*it);
          if (auts.size() > lim.max_morphisms)
            throw CapacityError("fusion: automorphism closure exceeds max_morphisms");
        }
      }
    }

    c.auts.assign(auts.begin(), auts.end());
    c.aut_order = c.auts.size();
    c.to_rep.reserve(nodes.size());
    for (int id : nodes) c.to_rep.push_back(vm_inverse(mem_root, from_root[id]));

    uint64_t maxn = 0, maxc = 0;
    for (int id : nodes) {
      maxn = std::max(maxn, norm_order(id));
      maxc = std::max(maxc, cent_order(id));
    }
    require(norm_order(root) == maxn, "class rep is not fully normalized");
    for (int id : nodes) {
      c.fully_normalized.push_back(norm_order(id) == maxn ? 1 : 0);
      c.fully_centralized.push_back(cent_order(id) == maxc ? 1 : 0);
    }

    c.centric = true;
    for (int id : nodes) {
      const SubgroupRef& nd = F.lat.node(id);
      if (nd.centralizer != nd.center) c.centric = false;
    }

    int ci = static_cast<int>(F.classes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
      F.class_of[nodes[i]] = ci;
      F.pos_in_class[nodes[i]] = static_cast<int>(i);
    }
    F.classes.push_back(std::move(c));
  }

  // radical and essential flags through the outer automorphism group
  for (FClass& c : F.classes) {
    const auto& mem = F.lat.node(c.rep).members;
    int deg = static_cast<int>(mem.size());
    auto pos_perm = [&](const ValueMap& m) {
      std::vector<int> img(deg);
      for (int i = 0; i < deg; ++i) img[i] = member_pos(mem, m[i]);
      return Perm(img);
    };
    std::vector<Perm> agens;
    agens.reserve(c.auts.size());
    for (const ValueMap& a : c.auts) agens.push_back(pos_perm(a));
    PermGroup A = PermGroup::generated(deg, agens);
    require(A.order() == c.aut_order, "automorphism action is not faithful");
    std::vector<Perm> igens;
    for (uint16_t x : F.lat.node(c.rep).canonical_gens)
      igens.push_back(pos_perm(vm_conj(F.tbl, mem, x)));
    PermGroup inn = PermGroup::generated(deg, igens);
    require(inn.is_subgroup_of(A), "inner automorphisms escape the closure");
    Quotient qt = quotient_group(A, inn);
    c.radical = op_core(qt.group, p).is_trivial();
    c.essential =
        c.rep != F.lat.top() && c.centric && has_strongly_p_embedded(qt.group, p);
  }

  if (F.iso_count() > lim.max_morphisms)
    throw CapacityError("fusion: isomorphism count exceeds max_morphisms");

  // annotate the lattice
  for (const FClass& c : F.classes)
    for (size_t i = 0; i < c.nodes.size(); ++i) {
      SubgroupRef& nd = F.lat.node_mut(c.nodes[i]);
      nd.flag_fully_normalized = c.fully_normalized[i];
      nd.flag_centric = c.centric ? 1 : 0;
      nd.flag_radical = c.radical ? 1 : 0;
      nd.flag_essential = c.essential ? 1 : 0;
    }

  return F;
}

}  // namespace detail

FusionSystem fusion_from_group(const PermGroup& G, int p, const PermGroup* sylow,
                               const FusionLimits& lim) {
  if (p < 2) throw std::invalid_argument("fusion: prime must be at least 2");
  if (G.order() % p != 0)
    throw std::invalid_argument("fusion: prime does not divide the group order");
  PermGroup S = sylow ? *sylow : sylow_subgroup(G, p);
  if (sylow) {
    require(S.degree() == G.degree() && S.is_subgroup_of(G), "given Sylow is not a subgroup");
    require(S.order() == p_part(G.order(), p), "given subgroup is not Sylow");
  }
  if (S.order() > lim.max_s_order) throw CapacityError("fusion: |S| exceeds max_s_order");

  STable tbl = STable::build(S);
  Lattice lat = Lattice::build(S, p, lim.lattice_node_cap);

  const auto& scl = lat.s_classes();
  const int ns = static_cast<int>(scl.size());

  // invariants that G-conjugation preserves, to cut the pairing work
  auto invariant = [&](int node) {
    const SubgroupRef& nd = lat.node(node);
    std::vector<uint64_t> ord;
    std::vector<uint16_t> comms;
    for (uint16_t x : nd.members) {
      ord.push_back(tbl.elem_order(x));
      for (uint16_t y : nd.members) comms.push_back(static_cast<uint16_t>(tbl.comm(x, y)));
    }
    std::sort(ord.begin(), ord.end());
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    uint64_t derived = tbl.closure(comms).size();
    return std::make_tuple(nd.order, ord, lat.node(nd.center).order, derived);
  };

  std::map<std::tuple<uint64_t, std::vector<uint64_t>, uint64_t, uint64_t>, std::vector<int>>
      buckets;
  for (int i = 0; i < ns; ++i) buckets[invariant(scl[i].rep)].push_back(i);

  std::vector<int> uf(ns);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };

  std::vector<detail::Arrow> arrows;
  auto g_conj_map = [&](int node, const Perm& g) {
    const auto& mem = lat.node(node).members;
    ValueMap m(mem.size());
    for (size_t i = 0; i < mem.size(); ++i) {
      int idx = tbl.index_of(tbl.element(mem[i]).conjugated_by(g));
      require(idx >= 0, "conjugate leaves the Sylow subgroup");
      m[i] = static_cast<uint16_t>(idx);
    }
    return m;
  };

  for (const auto& [key, idxs] : buckets) {
    (void)key;
    for (size_t a = 0; a < idxs.size(); ++a)
      for (size_t b = a + 1; b < idxs.size(); ++b) {
        if (find(idxs[a]) == find(idxs[b])) continue;
        int ra = scl[idxs[a]].rep, rb = scl[idxs[b]].rep;
        PermGroup P = lat.node_group(ra);
        std::vector<Perm> q_elems;
        for (uint16_t x : lat.node(rb).members) q_elems.push_back(tbl.element(x));
        std::vector<Perm> p_gens;
        for (uint16_t x : lat.node(ra).canonical_gens) p_gens.push_back(tbl.element(x));
        if (auto g = bt_conjugator(G, p_gens, q_elems)) {
          arrows.push_back({ra, g_conj_map(ra, *g)});
          uf[find(idxs[a])] = find(idxs[b]);
        }
      }
  }

  // normalizer-induced automorphisms at each S-class rep
  for (int i = 0; i < ns; ++i) {
    int r = scl[i].rep;
    PermGroup N = normalizer(G, lat.node_group(r));
    for (const Perm& h : N.generators()) arrows.push_back({r, g_conj_map(r, h)});
  }

  FusionSystem F =
      detail::assemble_system(S, p, std::move(tbl), std::move(lat), arrows, true, &G, lim);

  // the automorphism count at every rep must match the normalizer quotient
  for (const FClass& c : F.classes) {
    PermGroup P = F.lat.node_group(c.rep);
    PermGroup N = normalizer(G, P);
    PermGroup C = centralizer(G, P);
    require(c.aut_order == N.order() / C.order(),
            "automorphism closure disagrees with the normalizer quotient");
  }
  return F;
}

FusionSystem generated_system(const PermGroup& S, int p,
                              const std::vector<AutAssignment>& assignments,
                              const FusionLimits& lim) {
  if (S.order() > lim.max_s_order) throw CapacityError("fusion: |S| exceeds max_s_order");
  STable tbl = STable::build(S);
  Lattice lat = Lattice::build(S, p, lim.lattice_node_cap);

  std::vector<detail::Arrow> arrows;
  for (const AutAssignment& as : assignments) {
    for (const Perm& g : as.domain_gens)
      if (!S.contains(g))
        throw std::invalid_argument("fusion: assignment domain leaves S");
    PermGroup D = PermGroup::generated(S.degree(), as.domain_gens);
    std::vector<uint16_t> mem;
    for (const Perm& e : D.elements()) {
      int idx = tbl.index_of(e);
      require(idx >= 0, "assignment domain misses the element table");
      mem.push_back(static_cast<uint16_t>(idx));
    }
    std::sort(mem.begin(), mem.end());
    int node = lat.node_of(mem);
    require(node >= 0, "assignment domain is not a lattice node");
    ElementTable et = ElementTable::build(D, as.domain_gens);
    for (const GenImageMap& gim : as.auts) {
      if (gim.img.size() != as.domain_gens.size())
        throw std::invalid_argument("fusion: generator image count mismatch");
      ValueMap m(mem.size());
      for (size_t i = 0; i < mem.size(); ++i) {
        int idx = tbl.index_of(et.apply(gim.img, tbl.element(mem[i]), S.degree()));
        if (idx < 0) throw std::invalid_argument("fusion: assigned image leaves S");
        m[i] = static_cast<uint16_t>(idx);
      }
      if (vm_image(m) != mem)
        throw std::invalid_argument("fusion: assigned map is not an automorphism");
      for (size_t i = 0; i < mem.size(); ++i)
        for (size_t j = 0; j < mem.size(); ++j) {
          int xy = tbl.mul(mem[i], mem[j]);
          if (tbl.mul(m[i], m[j]) != vm_apply(mem, m, static_cast<uint16_t>(xy)))
            throw std::invalid_argument("fusion: assigned map is not a homomorphism");
        }
      arrows.push_back({node, m});
      for (int sub : lat.sub_nodes(node))
        arrows.push_back({sub, vm_restrict(mem, m, lat.node(sub).members)});
    }
  }
  return detail::assemble_system(S, p, std::move(tbl), std::move(lat), arrows, false,
                                 nullptr, lim);
}

bool has_strongly_p_embedded(const PermGroup& gamma, int p) {
  if (gamma.order() % p != 0) return false;
  require(gamma.order() <= kBruteGroupCap, "outer group too large to scan");
  std::vector<Perm> elems = gamma.elements();
  std::map<std::vector<Perm>, Perm> verts;
  for (const Perm& x : elems) {
    if (x.order() != static_cast<uint64_t>(p)) continue;
    std::vector<Perm> sub;
    Perm y = x;
    for (int i = 1; i < p; ++i) {
      sub.push_back(y);
      y = y * x;
    }
    std::sort(sub.begin(), sub.end());
    verts.try_emplace(sub, x);
  }
  std::vector<Perm> reps;
  for (const auto& [k, v] : verts) {
    (void)k;
    reps.push_back(v);
  }
  const int nv = static_cast<int>(reps.size());
  if (nv <= 1) return false;
  std::vector<int> uf(nv);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) {
      if (find(i) == find(j)) continue;
      PermGroup h = PermGroup::generated(gamma.degree(), {reps[i], reps[j]});
      if (h.is_pgroup(p)) uf[find(i)] = find(j);
    }
  int root = find(0);
  for (int i = 1; i < nv; ++i)
    if (find(i) != root) return true;
  return false;
}

namespace {

// All c_g at a node for g in N_S(node), sorted.
std::vector<ValueMap> aut_s_set(const FusionSystem& F, int node) {
  const auto& mem = F.lat.node(node).members;
  std::set<ValueMap> acc;
  for (uint16_t g : F.lat.node(F.lat.node(node).normalizer).members)
    acc.insert(vm_conj(F.tbl, mem, g));
  return {acc.begin(), acc.end()};
}

}  // namespace

std::vector<ValueMap> aut_s_maps(const FusionSystem& F, int node) {
  return aut_s_set(F, node);
}

SaturationReport check_saturation(const FusionSystem& F, size_t max_violations) {
  SaturationReport rep;
  auto add = [&](SaturationViolation v) {
    rep.saturated = false;
    if (rep.violations.size() < max_violations) rep.violations.push_back(std::move(v));
    return rep.violations.size() >= max_violations;
  };

  // Sylow condition at every fully normalized member
  for (const FClass& c : F.classes) {
    uint64_t paut = p_part(c.aut_order, F.p);
    for (size_t i = 0; i < c.nodes.size(); ++i) {
      if (!c.fully_normalized[i]) continue;
      int node = c.nodes[i];
      if (!c.fully_centralized[i]) {
        if (add({"I", node, -1, {}, "fully normalized member is not fully centralized"}))
          return rep;
        continue;
      }
      const SubgroupRef& nd = F.lat.node(node);
      uint64_t as = F.lat.node(nd.normalizer).order / F.lat.node(nd.centralizer).order;
      if (as != paut) {
        if (add({"I", node, -1, {}, "inner maps are not a Sylow p-subgroup of the automorphisms"}))
          return rep;
        continue;
      }
      const auto& av = F.auts_at(node);
      for (const ValueMap& m : aut_s_set(F, node))
        if (!std::binary_search(av.begin(), av.end(), m)) {
          if (add({"I", node, -1, m, "inner map is not a morphism"})) return rep;
          break;
        }
    }
  }

  // extension condition; conjugate domains and targets give equivalent
  // instances, so one member per S-class and one automorphism per double
  // coset of the transported inner maps suffice
  std::map<int, std::vector<InjHom>> hom_memo;
  auto hom_from = [&](int node) -> const std::vector<InjHom>& {
    auto it = hom_memo.find(node);
    if (it == hom_memo.end()) it = hom_memo.emplace(node, F.hom_set(node, F.top())).first;
    return it->second;
  };

  for (const FClass& c : F.classes) {
    const auto& mem_rep = F.lat.node(c.rep).members;
    std::vector<size_t> src_reps, dst_reps;
    {
      std::set<int> seen;
      for (size_t i = 0; i < c.nodes.size(); ++i)
        if (seen.insert(F.lat.node(c.nodes[i]).class_id).second) src_reps.push_back(i);
      seen.clear();
      for (size_t i = 0; i < c.nodes.size(); ++i)
        if (c.fully_centralized[i] &&
            seen.insert(F.lat.node(c.nodes[i]).class_id).second)
          dst_reps.push_back(i);
    }
    auto transported_inner = [&](size_t i) {
      std::set<ValueMap> acc;
      const auto& mem = F.lat.node(c.nodes[i]).members;
      const ValueMap& w = c.to_rep[i];
      ValueMap winv = vm_inverse(mem, w);
      for (uint16_t g : F.lat.node(F.lat.node(c.nodes[i]).normalizer).members)
        acc.insert(vm_compose(mem, vm_compose(mem, w, vm_conj(F.tbl, mem, g)), winv));
      return std::vector<ValueMap>(acc.begin(), acc.end());
    };

    for (size_t si : src_reps) {
      int n1 = c.nodes[si];
      const auto& mem1 = F.lat.node(n1).members;
      const ValueMap& w1 = c.to_rep[si];
      std::vector<ValueMap> d1 = transported_inner(si);
      const auto nsmem1 = F.lat.node(F.lat.node(n1).normalizer).members;
      for (size_t di : dst_reps) {
        int n2 = c.nodes[di];
        const auto& mem2 = F.lat.node(n2).members;
        ValueMap w2inv = vm_inverse(mem2, c.to_rep[di]);  // rep -> n2
        std::vector<ValueMap> d2 = transported_inner(di);
        std::vector<ValueMap> auts2 = aut_s_set(F, n2);
        std::set<ValueMap> visited;
        for (const ValueMap& a : c.auts) {
          if (visited.count(a)) continue;
          for (const ValueMap& x : d2)
            for (const ValueMap& y : d1)
              visited.insert(vm_compose(mem_rep, x, vm_compose(mem_rep, a, y)));
          ValueMap m = vm_compose(mem_rep, w2inv, vm_compose(mem_rep, a, w1));
          ValueMap minv = vm_inverse(mem1, m);  // n2 -> n1
          std::vector<uint16_t> nphi;
          for (uint16_t g : nsmem1) {
            ValueMap q = vm_compose(mem1, m, vm_compose(mem1, vm_conj(F.tbl, mem1, g), minv));
            if (std::binary_search(auts2.begin(), auts2.end(), q)) nphi.push_back(g);
          }
          std::sort(nphi.begin(), nphi.end());
          int nphi_node = F.lat.node_of(nphi);
          require(nphi_node >= 0, "extension domain is not a subgroup");
          if (nphi_node == n1) continue;
          bool extended = false;
          const auto& mem_nphi = F.lat.node(nphi_node).members;
          for (const InjHom& h : hom_from(nphi_node))
            if (vm_restrict(mem_nphi, h.map, mem1) == m) {
              extended = true;
              break;
            }
          if (!extended) {
            if (add({"II", n1, n2, m, "morphism onto a fully centralized subgroup has no extension"}))
              return rep;
          }
        }
      }
    }
  }
  return rep;
}

bool is_saturated(const FusionSystem& F) { return check_saturation(F, 1).saturated; }

namespace {

std::vector<int> essential_plus(const FusionSystem& F) {
  std::vector<int> out;
  for (const FClass& c : F.classes)
    if (c.essential) out.push_back(c.rep);
  out.push_back(F.lat.top());
  return out;
}

}  // namespace

AlperinWord alperin_decompose(const FusionSystem& F, int src, const ValueMap& m) {
  using State = std::pair<int, ValueMap>;
  auto& memo = F.alperin_memo_[src];
  const auto& mem_src = F.lat.node(src).members;
  if (memo.empty()) {
    std::vector<int> eplus = essential_plus(F);
    State start{src, vm_identity(mem_src)};
    memo.emplace(start, AlperinEdge{{}, -1, {}});
    std::deque<State> q{start};
    while (!q.empty()) {
      auto [node, mu] = q.front();
      q.pop_front();
      for (int e : eplus) {
        if (!F.lat.subset(node, e)) continue;
        const auto& mem_e = F.lat.node(e).members;
        const auto& mem_n = F.lat.node(node).members;
        for (const ValueMap& a : F.cls(e).auts) {
          ValueMap r = vm_restrict(mem_e, a, mem_n);
          ValueMap nxt = vm_compose(mem_n, r, mu);
          int nxt_node = F.lat.node_of(vm_image(nxt));
          require(nxt_node >= 0, "decomposition image is not a subgroup");
          State st{nxt_node, nxt};
          if (memo.emplace(st, AlperinEdge{mu, e, a}).second) q.push_back(st);
        }
      }
    }
  }
  AlperinWord w;
  int target_node = F.lat.node_of(vm_image(m));
  if (target_node < 0) return w;
  auto it = memo.find({target_node, m});
  if (it == memo.end()) return w;
  w.ok = true;
  State cur{target_node, m};
  while (true) {
    const AlperinEdge& e = it->second;
    if (e.e_node < 0) break;
    w.steps.push_back({e.e_node, e.aut});
    int prev_node = F.lat.node_of(vm_image(e.prev));
    cur = {prev_node, e.prev};
    it = memo.find(cur);
    require(it != memo.end(), "broken decomposition chain");
  }
  std::reverse(w.steps.begin(), w.steps.end());
  return w;
}

bool alperin_recompose(const FusionSystem& F, int src, const AlperinWord& w, ValueMap& out) {
  const auto& mem_src = F.lat.node(src).members;
  ValueMap cur = vm_identity(mem_src);
  int node = src;
  for (const AlperinStep& st : w.steps) {
    if (!F.lat.subset(node, st.node)) return false;
    const auto& mem_e = F.lat.node(st.node).members;
    const auto& mem_n = F.lat.node(node).members;
    ValueMap r = vm_restrict(mem_e, st.aut, mem_n);
    cur = vm_compose(mem_n, r, cur);
    node = F.lat.node_of(vm_image(cur));
    if (node < 0) return false;
  }
  out = cur;
  return true;
}

namespace {

PermGroup aut_position_group(const FusionSystem& F, int node,
                             const std::vector<ValueMap>& maps) {
  const auto& mem = F.lat.node(node).members;
  int deg = static_cast<int>(mem.size());
  std::vector<Perm> gens;
  gens.reserve(maps.size());
  for (const ValueMap& m : maps) {
    std::vector<int> img(deg);
    for (int i = 0; i < deg; ++i) img[i] = member_pos(mem, m[i]);
    gens.push_back(Perm(img));
  }
  return PermGroup::generated(deg, gens);
}

std::vector<ValueMap> subgroup_value_maps(const FusionSystem& F, int node,
                                          const PermGroup& sub) {
  const auto& mem = F.lat.node(node).members;
  std::vector<ValueMap> out;
  for (const Perm& q : sub.elements()) {
    ValueMap m(mem.size());
    for (size_t i = 0; i < mem.size(); ++i) m[i] = mem[q[static_cast<int>(i)]];
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<ValueMap> aut_op_core(const FusionSystem& F, int node) {
  PermGroup A = aut_position_group(F, node, F.auts_at(node));
  return subgroup_value_maps(F, node, op_core(A, F.p));
}

std::vector<ValueMap> aut_op_residual(const FusionSystem& F, int node) {
  PermGroup A = aut_position_group(F, node, F.auts_at(node));
  return subgroup_value_maps(F, node, op_power_residual(A, F.p));
}

std::vector<ValueMap> aut_opprime_residual(const FusionSystem& F, int node) {
  PermGroup A = aut_position_group(F, node, F.auts_at(node));
  return subgroup_value_maps(F, node, opprime_residual(A, F.p));
}

bool op_membership_by_layers(const FusionSystem& F, int node, const ValueMap& a) {
  PermGroup P = F.lat.node_group(node);
  std::vector<PermGroup> ucs = upper_central_series(P);
  const auto& mem = F.lat.node(node).members;
  const auto& av = F.auts_at(node);
  require(std::binary_search(av.begin(), av.end(), a), "map is not an automorphism here");

  std::vector<std::vector<uint16_t>> layer_members;
  layer_members.push_back({0});
  for (const PermGroup& z : ucs) {
    std::vector<uint16_t> ms;
    for (const Perm& e : z.elements()) {
      int idx = F.tbl.index_of(e);
      require(idx >= 0, "central series leaves the table");
      ms.push_back(static_cast<uint16_t>(idx));
    }
    std::sort(ms.begin(), ms.end());
    layer_members.push_back(std::move(ms));
  }

  for (size_t li = 1; li < layer_members.size(); ++li) {
    const auto& big = layer_members[li];
    const auto& small = layer_members[li - 1];
    // coset key: least element of x * small
    std::map<uint16_t, int> cid;
    std::vector<uint16_t> coset_keys;
    auto key_of = [&](uint16_t x) {
      uint16_t best = 0xffff;
      for (uint16_t z : small)
        best = std::min(best, static_cast<uint16_t>(F.tbl.mul(x, z)));
      return best;
    };
    for (uint16_t x : big) {
      uint16_t k = key_of(x);
      if (!cid.count(k)) {
        cid[k] = static_cast<int>(coset_keys.size());
        coset_keys.push_back(k);
      }
    }
    int deg = static_cast<int>(coset_keys.size());
    auto induced = [&](const ValueMap& m) {
      std::vector<int> img(deg, -1);
      for (uint16_t x : big) {
        int from = cid.at(key_of(x));
        uint16_t y = static_cast<uint16_t>(vm_apply(mem, m, x));
        require(member_pos(big, y) >= 0, "automorphism does not preserve the central series");
        int to = cid.at(key_of(y));
        require(img[from] < 0 || img[from] == to, "induced map is not well defined");
        img[from] = to;
      }
      return Perm(img);
    };
    std::vector<Perm> gens;
    for (const ValueMap& m : av) gens.push_back(induced(m));
    PermGroup layer_group = PermGroup::generated(deg, gens);
    PermGroup core = op_core(layer_group, F.p);
    if (!core.contains(induced(a))) return false;
  }
  return true;
}

int focal_node(const FusionSystem& F) {
  std::vector<uint16_t> seeds;
  for (int x = 1; x < F.tbl.size(); ++x)
    for (uint16_t y : F.element_orbit(static_cast<uint16_t>(x)))
      seeds.push_back(static_cast<uint16_t>(F.tbl.mul(F.tbl.inv(x), y)));
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  int node = F.lat.node_of(F.tbl.closure(seeds));
  require(node >= 0, "focal closure is not a subgroup");
  return node;
}

int hyperfocal_node(const FusionSystem& F) {
  std::vector<uint16_t> seeds;
  for (const FClass& c : F.classes) {
    std::vector<ValueMap> respm = aut_op_residual(F, c.rep);
    const auto& mem_rep = F.lat.node(c.rep).members;
    for (size_t i = 0; i < c.nodes.size(); ++i) {
      const auto& mem = F.lat.node(c.nodes[i]).members;
      const ValueMap& w = c.to_rep[i];
      ValueMap winv = vm_inverse(mem, w);
      for (const ValueMap& al : respm) {
        ValueMap at_node = vm_compose(mem_rep, winv, vm_compose(mem_rep, al, w));
        for (size_t j = 0; j < mem.size(); ++j)
          seeds.push_back(static_cast<uint16_t>(F.tbl.mul(F.tbl.inv(mem[j]), at_node[j])));
      }
    }
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  int node = F.lat.node_of(F.tbl.closure(seeds));
  require(node >= 0, "hyperfocal closure is not a subgroup");
  return node;
}

std::vector<int> strongly_closed_nodes(const FusionSystem& F) {
  std::vector<int> out;
  for (int id = 0; id < F.lat.node_count(); ++id)
    if (F.is_strongly_closed(id)) out.push_back(id);
  return out;
}

bool is_normal_in(const FusionSystem& F, int node) {
  if (!F.is_strongly_closed(node)) return false;
  for (const FClass& c : F.classes) {
    if (!(c.centric && c.radical)) continue;
    for (int id : c.nodes)
      if (!F.lat.subset(node, id)) return false;
  }
  return true;
}

namespace {

bool extends_on_join(const FusionSystem& F, int node, bool want_identity) {
  // every automorphism of an essential rep or of S must extend over the join
  // with the candidate subgroup, fixing it (setwise or pointwise)
  const auto& memp = F.lat.node(node).members;
  if (F.lat.node(F.lat.node(node).normalizer).order != F.S.order()) return false;
  for (int e : essential_plus(F)) {
    const auto& mem_e = F.lat.node(e).members;
    std::vector<uint16_t> un;
    un.reserve(memp.size() + mem_e.size());
    un.insert(un.end(), memp.begin(), memp.end());
    un.insert(un.end(), mem_e.begin(), mem_e.end());
    std::sort(un.begin(), un.end());
    un.erase(std::unique(un.begin(), un.end()), un.end());
    int join = F.lat.node_of(F.tbl.closure(un));
    require(join >= 0, "join with an essential subgroup is not a subgroup");
    const auto& mem_join = F.lat.node(join).members;
    for (const ValueMap& a : F.cls(e).auts) {
      bool found = false;
      for (const ValueMap& big : F.auts_at(join)) {
        if (vm_restrict(mem_join, big, mem_e) != a) continue;
        ValueMap on_p = vm_restrict(mem_join, big, memp);
        if (want_identity ? on_p == vm_identity(memp) : vm_image(on_p) == memp) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

bool is_normal_by_extension(const FusionSystem& F, int node) {
  return extends_on_join(F, node, false);
}

bool is_central_in(const FusionSystem& F, int node) {
  return extends_on_join(F, node, true);
}

int op_node(const FusionSystem& F) {
  std::vector<uint16_t> un{0};
  for (int id : strongly_closed_nodes(F)) {
    if (!is_normal_in(F, id)) continue;
    const auto& mem = F.lat.node(id).members;
    un.insert(un.end(), mem.begin(), mem.end());
  }
  std::sort(un.begin(), un.end());
  un.erase(std::unique(un.begin(), un.end()), un.end());
  int join = F.lat.node_of(F.tbl.closure(un));
  require(join >= 0 && is_normal_in(F, join), "join of normal subgroups is not normal");
  return join;
}

int z_node(const FusionSystem& F) {
  int zs = F.lat.node(F.lat.top()).center;
  std::vector<int> cands = F.lat.sub_nodes(zs);
  cands.push_back(zs);
  std::vector<uint16_t> un{0};
  for (int id : cands) {
    if (!is_central_in(F, id)) continue;
    const auto& mem = F.lat.node(id).members;
    un.insert(un.end(), mem.begin(), mem.end());
  }
  std::sort(un.begin(), un.end());
  un.erase(std::unique(un.begin(), un.end()), un.end());
  int join = F.lat.node_of(F.tbl.closure(un));
  require(join >= 0 && is_central_in(F, join), "join of central subgroups is not central");
  return join;
}

SystemFingerprint system_fingerprint(const FusionSystem& F) {
  SystemFingerprint fp;
  fp.s_order = F.S.order();
  fp.class_count = static_cast<int>(F.classes.size());
  for (const FClass& c : F.classes)
    fp.shape.push_back({static_cast<uint64_t>(c.nodes.size()), c.aut_order,
                        static_cast<uint64_t>(c.centric), static_cast<uint64_t>(c.radical),
                        static_cast<uint64_t>(c.essential)});
  std::sort(fp.shape.begin(), fp.shape.end());
  return fp;
}

std::string SystemFingerprint::to_string() const {
  std::ostringstream os;
  os << "|S|=" << s_order << " classes=" << class_count << " [";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) os << " ";
    os << shape[i][0] << ":" << shape[i][1] << ":" << shape[i][2] << shape[i][3]
       << shape[i][4];
  }
  os << "]";
  return os.str();
}

}  // namespace fusionkit
