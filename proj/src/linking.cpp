#include "linking.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "fusion_search.h"
#include "group_ops.h"

namespace fusionkit {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(std::string("linking: ") + msg);
}

bool is_p_power(uint64_t n, int p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<uint16_t> center_members(const FusionSystem& F, int node) {
  return F.members(F.lat.node(node).center);
}

// Sorted table indices of the elements of zmem fixed by every map; the maps
// act on the members of pnode.
std::vector<uint16_t> fixed_under(const FusionSystem& F, int pnode,
                                  const std::vector<uint16_t>& zmem,
                                  const std::vector<ValueMap>& maps) {
  const auto& mem = F.members(pnode);
  std::vector<uint16_t> out;
  for (uint16_t z : zmem) {
    bool ok = true;
    for (const ValueMap& m : maps) {
      if (vm_apply(mem, m, z) != static_cast<int>(z)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(z);
  }
  return out;
}

// Restrictions to sub of the maps at node that stabilize sub.
std::vector<ValueMap> stabilizing_restrictions(const FusionSystem& F, int node,
                                               const std::vector<uint16_t>& sub) {
  const auto& mem = F.members(node);
  std::vector<ValueMap> out;
  for (const ValueMap& a : F.auts_at(node)) {
    ValueMap r = vm_restrict(mem, a, sub);
    if (vm_image(r) == sub) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

bool is_quasicentric(const PermGroup& G, const PermGroup& P, int p) {
  return op_power_residual(centralizer(G, P), p).order() % p != 0;
}

int LinkingSystem::object_index(int node) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), node);
  if (it == objects.end() || *it != node) return -1;
  return static_cast<int>(it - objects.begin());
}

LinkingSystem build_linking(const FusionSystem& F, LinkingObjects sel) {
  if (!F.group_backed)
    throw std::invalid_argument("linking: requires a group-backed system");
  LinkingSystem L;
  L.p = F.p;

  std::vector<char> in(F.lat.node_count(), 0);
  for (const FClass& c : F.classes) {
    bool take = (sel == LinkingObjects::Centric)
                    ? c.centric
                    : is_quasicentric(F.G, F.lat.node_group(c.rep), F.p);
    if (take)
      for (int n : c.nodes) in[n] = 1;
  }
  for (int n = 0; n < F.lat.node_count(); ++n)
    if (in[n]) L.objects.push_back(n);
  if (L.objects.empty())
    throw std::invalid_argument("linking: object family is empty");
  for (int n : L.objects)
    for (int o : F.lat.minimal_overgroups(n))
      if (!in[o])
        throw std::invalid_argument(
            "linking: object family is not closed under overgroups");
  for (const FClass& c : F.classes)
    if (c.centric && c.radical && !in[c.rep])
      throw std::invalid_argument(
          "linking: object family misses a centric radical class");

  int m = static_cast<int>(L.objects.size());
  std::vector<PermGroup> grp, cprime;
  std::vector<uint64_t> cg_order(m);
  for (int i = 0; i < m; ++i) {
    PermGroup P = F.lat.node_group(L.objects[i]);
    PermGroup C = centralizer(F.G, P);
    PermGroup Cp = op_power_residual(C, F.p);
    require(Cp.order() % F.p != 0, "object is not quasicentric");
    uint64_t n_order = normalizer(F.G, P).order();
    require(n_order % Cp.order() == 0, "count identity fails at an object");
    L.cprime_order.push_back(Cp.order());
    L.aut_order.push_back(n_order / Cp.order());
    cg_order[i] = C.order();
    grp.push_back(std::move(P));
    cprime.push_back(std::move(Cp));
  }

  L.mor_count.assign(m, std::vector<uint64_t>(m, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      TransporterSet T = transporter(F.G, grp[i], grp[j]);
      uint64_t ngpq = T.reps.size() * T.stabilizer.order();
      require(ngpq % L.cprime_order[i] == 0, "count identity fails at a pair");
      L.mor_count[i][j] = ngpq / L.cprime_order[i];
      // every fusion morphism P -> Q is induced, with fiber C_G(P)
      require(F.hom_count(L.objects[i], L.objects[j]) * cg_order[i] == ngpq,
              "morphisms do not project onto the fusion homs");
      // the composition condition on the residuals, on coset representatives
      for (const Perm& g : T.reps)
        for (const Perm& x : cprime[j].generators())
          require(cprime[i].contains(x.conjugated_by(g.inverse())),
                  "composition condition fails");
    }
  }
  require(L.mor_count[m - 1][m - 1] * L.cprime_order[m - 1] ==
              normalizer(F.G, grp[m - 1]).order(),
          "count identity fails at the top");

  for (int i = 0; i < m; ++i) {
    int node = L.objects[i];
    if (!F.is_fully_normalized(node)) continue;
    uint64_t ns = F.members(F.lat.node(node).normalizer).size();
    require(p_valuation(ns, F.p) == p_valuation(L.aut_order[i], F.p),
            "Sylow property fails at a fully normalized object");
  }
  return L;
}

KernelProbeSets kernel_probe_sets(const FusionSystem& F) {
  KernelProbeSets out;
  // elementary abelian fully centralized nodes
  std::vector<char> is_ea(F.lat.node_count(), 0);
  for (int e = 0; e < F.lat.node_count(); ++e) {
    bool ea = true;
    for (uint16_t x : F.members(e))
      if (F.tbl.elem_order(x) > static_cast<uint64_t>(F.p)) {
        ea = false;
        break;
      }
    const auto& g = F.lat.node(e).canonical_gens;
    for (size_t a = 0; a < g.size() && ea; ++a)
      for (size_t b = a + 1; b < g.size() && ea; ++b)
        if (F.tbl.mul(g[a], g[b]) != F.tbl.mul(g[b], g[a])) ea = false;
    if (ea && F.is_fully_centralized(e)) is_ea[e] = 1;
  }

  for (const FClass& c : F.classes) {
    if (!c.essential) continue;
    out.essentials.push_back(c.rep);
    std::vector<uint16_t> zmem = center_members(F, c.rep);
    std::vector<uint16_t> fs = fixed_under(F, c.rep, zmem, aut_s_maps(F, c.rep));
    std::vector<uint16_t> ff = fixed_under(F, c.rep, zmem, F.auts_at(c.rep));
    if (ff.size() >= fs.size()) continue;
    out.e0.push_back(c.rep);
    // a fully normalized member that is the centralizer of a fully
    // centralized elementary abelian subgroup; the rep is tried first
    auto qualifies = [&](int pn) {
      for (int e = 0; e < F.lat.node_count(); ++e)
        if (is_ea[e] && F.lat.node(e).centralizer == pn) return true;
      return false;
    };
    int hat = qualifies(c.rep) ? c.rep : -1;
    for (size_t k = 0; k < c.nodes.size() && hat < 0; ++k)
      if (c.fully_normalized[k] && qualifies(c.nodes[k])) hat = c.nodes[k];
    if (hat >= 0) out.ehat0.push_back(hat);
  }
  return out;
}

namespace {

// Shared state of the kernel computations at the ehat0 nodes.
struct KernelContext {
  std::vector<int> nodes;
  std::vector<std::vector<uint16_t>> fix_s;  // Aut_S-fixed part of Z(P)
  std::vector<std::vector<uint16_t>> fix_f;  // Aut_F-fixed part of Z(P)
  std::vector<uint16_t> zf;                  // Aut_F-fixed part of Z(S)
  std::vector<PermGroup> ngrp;               // N_G(P)
  std::vector<PermGroup> cprime;             // O^p(C_G(P))
};

KernelContext kernel_context(const FusionSystem& F, const KernelProbeSets& pr) {
  KernelContext K;
  K.nodes = pr.ehat0;
  for (int n : K.nodes) {
    std::vector<uint16_t> zmem = center_members(F, n);
    K.fix_s.push_back(fixed_under(F, n, zmem, aut_s_maps(F, n)));
    K.fix_f.push_back(fixed_under(F, n, zmem, F.auts_at(n)));
    PermGroup P = F.lat.node_group(n);
    K.ngrp.push_back(normalizer(F.G, P));
    K.cprime.push_back(op_power_residual(centralizer(F.G, P), F.p));
  }
  K.zf = fixed_under(F, F.top(), center_members(F, F.top()), F.auts_at(F.top()));
  return K;
}

// Conjugating elements of an automorphism fixing S pointwise, as table
// indices; eval computes the automorphism anywhere in G.  At each node the
// valid elements must form one coset of the Aut_F-fixed part.
std::vector<uint16_t> g_indices(const FusionSystem& F, const KernelContext& K,
                                const std::function<Perm(const Perm&)>& eval) {
  std::vector<uint16_t> out;
  for (size_t i = 0; i < K.nodes.size(); ++i) {
    std::vector<uint16_t> valid;
    for (uint16_t z : K.fix_s[i]) {
      Perm g = F.tbl.element(z);
      bool ok = true;
      for (const Perm& x : K.ngrp[i].generators()) {
        if (!K.cprime[i].contains(eval(x) * x.conjugated_by(g).inverse())) {
          ok = false;
          break;
        }
      }
      if (ok) valid.push_back(z);
    }
    require(!valid.empty(), "no conjugating element matches the action");
    require(valid.size() == K.fix_f[i].size(),
            "conjugating elements do not form one coset");
    for (uint16_t v : valid) {
      uint16_t d = static_cast<uint16_t>(F.tbl.mul(F.tbl.inv(valid[0]), v));
      require(std::binary_search(K.fix_f[i].begin(), K.fix_f[i].end(), d),
              "conjugating elements do not form one coset");
    }
    out.push_back(valid[0]);
  }
  return out;
}

bool tuple_trivial(const FusionSystem& F, const KernelContext& K,
                   const std::vector<uint16_t>& g) {
  for (uint16_t z : K.zf) {
    bool all = true;
    for (size_t i = 0; i < K.nodes.size() && all; ++i) {
      uint16_t d = static_cast<uint16_t>(F.tbl.mul(F.tbl.inv(z), g[i]));
      if (!std::binary_search(K.fix_f[i].begin(), K.fix_f[i].end(), d)) all = false;
    }
    if (all) return true;
  }
  return false;
}

// Least representative of the tuple class modulo the global shift and the
// per-node Aut_F-fixed parts; equal classes get equal forms.
std::vector<uint16_t> canon_tuple(const FusionSystem& F, const KernelContext& K,
                                  const std::vector<uint16_t>& g) {
  std::vector<uint16_t> best;
  bool first = true;
  for (uint16_t z : K.zf) {
    std::vector<uint16_t> t(K.nodes.size());
    for (size_t i = 0; i < K.nodes.size(); ++i) {
      int zi = F.tbl.mul(F.tbl.inv(z), g[i]);
      uint16_t lo = 0xffff;
      for (uint16_t f : K.fix_f[i])
        lo = std::min(lo, static_cast<uint16_t>(F.tbl.mul(zi, f)));
      t[i] = lo;
    }
    if (first || t < best) {
      best = std::move(t);
      first = false;
    }
  }
  return best;
}

// Tuple-space bound: candidates run over the Aut_S-fixed parts, constrained
// by a common shift matching the S-stabilizer congruence and by the nested
// restriction congruences, counted modulo the shift subgroup.
uint64_t kernel_upper(const FusionSystem& F, const KernelContext& K) {
  size_t m = K.nodes.size();
  std::vector<std::vector<uint16_t>> fix_sp(m);
  for (size_t i = 0; i < m; ++i) {
    std::vector<ValueMap> maps =
        stabilizing_restrictions(F, F.top(), F.members(K.nodes[i]));
    fix_sp[i] = fixed_under(F, K.nodes[i], center_members(F, K.nodes[i]), maps);
  }

  struct NestedPair {
    size_t i, j;
    std::vector<uint16_t> allowed;
  };
  std::vector<NestedPair> pairs;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      if (i == j || !F.lat.subset(K.nodes[j], K.nodes[i])) continue;
      std::vector<ValueMap> maps =
          stabilizing_restrictions(F, K.nodes[i], F.members(K.nodes[j]));
      std::vector<uint16_t> fpq =
          fixed_under(F, K.nodes[j], center_members(F, K.nodes[j]), maps);
      std::set<uint16_t> prod;
      for (uint16_t a : K.fix_f[i])
        for (uint16_t b : fpq)
          for (uint16_t c : K.fix_f[j])
            prod.insert(static_cast<uint16_t>(F.tbl.mul(F.tbl.mul(a, b), c)));
      pairs.push_back({i, j, std::vector<uint16_t>(prod.begin(), prod.end())});
    }

  uint64_t scanned = 1;
  for (size_t i = 0; i < m; ++i) scanned *= K.fix_s[i].size();
  require(scanned <= (1u << 20), "kernel tuple space too large");

  std::set<std::vector<uint16_t>> canon;
  std::vector<size_t> idx(m, 0);
  while (true) {
    std::vector<uint16_t> x(m);
    for (size_t i = 0; i < m; ++i) x[i] = K.fix_s[i][idx[i]];
    bool valid = false;
    for (uint16_t z : K.zf) {
      bool all = true;
      for (size_t i = 0; i < m && all; ++i) {
        uint16_t d = static_cast<uint16_t>(F.tbl.mul(F.tbl.inv(z), x[i]));
        if (!std::binary_search(fix_sp[i].begin(), fix_sp[i].end(), d)) all = false;
      }
      if (all) {
        valid = true;
        break;
      }
    }
    if (valid)
      for (const NestedPair& pr : pairs) {
        uint16_t d = static_cast<uint16_t>(F.tbl.mul(x[pr.i], F.tbl.inv(x[pr.j])));
        if (!std::binary_search(pr.allowed.begin(), pr.allowed.end(), d)) {
          valid = false;
          break;
        }
      }
    if (valid) canon.insert(canon_tuple(F, K, x));
    size_t k = 0;
    for (; k < m; ++k) {
      if (++idx[k] < K.fix_s[k].size()) break;
      idx[k] = 0;
    }
    if (k == m) break;
  }
  return canon.size();
}

}  // namespace

KernelElementData kernel_element_data(const FusionSystem& F,
                                      const std::vector<Perm>& dom_gens,
                                      const GenImageMap& gamma) {
  if (!F.group_backed)
    throw std::invalid_argument("linking: requires a group-backed system");
  ElementTable ET = ElementTable::build(F.G, dom_gens);
  int deg = F.G.degree();
  for (const Perm& s : F.S.generators())
    require(ET.apply(gamma.img, s, deg) == s, "automorphism must fix S pointwise");

  KernelProbeSets pr = kernel_probe_sets(F);
  KernelContext K = kernel_context(F, pr);
  auto eval = [&](const Perm& x) { return ET.apply(gamma.img, x, deg); };
  std::vector<uint16_t> g = g_indices(F, K, eval);

  KernelElementData out;
  out.nodes = K.nodes;
  for (uint16_t gi : g) out.g_values.push_back(F.tbl.element(gi));
  out.trivial = tuple_trivial(F, K, g);
  return out;
}

MuKappaReport mu_kappa_report(const FusionSystem& F) {
  if (!F.group_backed)
    throw std::invalid_argument("linking: requires a group-backed system");
  MuKappaReport R;

  AutGroup AG = automorphism_group(F.G);
  R.dom_gens = AG.dom_gens;
  R.aut_g_order = AG.aut_order;
  R.out_g_order = AG.aut_order / AG.inn_order;

  auto fixes_s = [&](const GenImageMap& a) {
    for (const Perm& s : F.S.generators())
      if (!F.S.contains(AG.apply(a, s))) return false;
    return true;
  };
  for (const GenImageMap& a : AG.auts)
    if (fixes_s(a)) ++R.aut_gs_order;
  R.exact_sequence_ok = R.out_g_order * normalizer(F.G, F.S).order() ==
                        R.aut_gs_order * center(F.G).order();
  require(R.exact_sequence_ok, "outer exact sequence count fails");

  FusionAutResult osf = fusion_preserving_auts(F);
  R.out_sf_order = osf.out_order;

  R.probes = kernel_probe_sets(F);
  KernelContext K = kernel_context(F, R.probes);

  const auto& topmem = F.members(F.top());
  const std::vector<ValueMap>& autf_s = F.auts_at(F.top());
  PermGroup NS = normalizer(F.G, F.S);

  std::vector<std::vector<int>> outc = AG.out_classes();
  require(outc.size() == R.out_g_order, "outer class count mismatch");

  std::vector<ValueMap> restriction_forms;
  std::set<std::vector<uint16_t>> realized;
  for (const std::vector<int>& cls : outc) {
    OuterClassReport oc;
    int rep_idx = -1;
    for (int ai : cls)
      if (fixes_s(AG.auts[ai])) {
        rep_idx = ai;
        break;
      }
    require(rep_idx >= 0, "outer class without an S-preserving representative");
    oc.rep = AG.auts[rep_idx];

    // restriction to S as a value map on the top members
    ValueMap vm(topmem.size());
    for (size_t i = 0; i < topmem.size(); ++i) {
      int x = F.tbl.index_of(AG.apply(oc.rep, F.tbl.element(topmem[i])));
      require(x >= 0, "restriction leaves the table");
      vm[i] = static_cast<uint16_t>(x);
    }
    require(std::binary_search(osf.aut_sf.begin(), osf.aut_sf.end(), vm),
            "restriction is not fusion preserving");
    oc.restriction_inner = std::binary_search(autf_s.begin(), autf_s.end(), vm);

    // canonical form of the coset vm * Aut_F(S)
    ValueMap cmin;
    bool first = true;
    for (const ValueMap& a : autf_s) {
      ValueMap w = vm_compose(topmem, vm, a);
      if (first || w < cmin) {
        cmin = std::move(w);
        first = false;
      }
    }
    auto it = std::find(restriction_forms.begin(), restriction_forms.end(), cmin);
    if (it == restriction_forms.end()) {
      restriction_forms.push_back(cmin);
      oc.restriction_class = static_cast<int>(restriction_forms.size()) - 1;
    } else {
      oc.restriction_class = static_cast<int>(it - restriction_forms.begin());
    }

    if (oc.restriction_inner) {
      ++R.restriction_kernel;
      // normalize the representative to fix S pointwise
      Perm match;
      bool found = false;
      NS.for_each_element([&](const Perm& n) {
        for (const Perm& s : F.S.generators())
          if (AG.apply(oc.rep, s) != s.conjugated_by(n)) return true;
        match = n;
        found = true;
        return false;
      });
      require(found, "inner restriction without a normalizer witness");
      GenImageMap ap = AG.compose(AG.inner_map(match.inverse()), oc.rep);
      for (const Perm& s : F.S.generators())
        require(AG.apply(ap, s) == s, "normalized representative moved S");

      auto eval = [&](const Perm& x) { return AG.apply(ap, x); };
      std::vector<uint16_t> g = g_indices(F, K, eval);
      for (uint16_t gi : g) oc.g_values.push_back(F.tbl.element(gi));
      oc.kappa_trivial = tuple_trivial(F, K, g);
      realized.insert(canon_tuple(F, K, g));
      if (oc.kappa_trivial) ++R.kappa_kernel;
    }
    R.classes.push_back(std::move(oc));
  }

  R.restriction_image = restriction_forms.size();
  require(R.restriction_kernel * R.restriction_image == R.out_g_order,
          "restriction fibers are uneven");

  R.ker_mu_lower = realized.size();
  R.ker_mu_upper = kernel_upper(F, K);
  require(R.ker_mu_lower <= R.ker_mu_upper, "kernel bounds crossed");
  require(is_p_power(R.ker_mu_lower, F.p), "realized kernel count is not a p-power");
  require(is_p_power(R.ker_mu_upper, F.p), "kernel bound is not a p-power");
  require(R.kappa_kernel >= 1, "identity class missing from the kernel");
  require(R.restriction_kernel == R.kappa_kernel * R.ker_mu_lower,
          "kernel counts are inconsistent");

  R.kappa_injective = (R.kappa_kernel == 1);
  R.out_typ_lower = R.out_g_order / R.kappa_kernel;
  R.out_typ_upper = R.ker_mu_upper * R.out_sf_order;
  require(R.out_typ_lower <= R.out_typ_upper, "image bound exceeds the upper bound");
  if (R.ker_mu_lower != R.ker_mu_upper) {
    R.kappa_verdict = "ambiguous";
    R.mu_injective = false;
  } else {
    R.mu_injective = (R.ker_mu_upper == 1);
    if (R.kappa_injective && R.out_g_order == R.out_typ_upper)
      R.kappa_verdict = "isomorphism";
    else if (R.kappa_injective)
      R.kappa_verdict = "injective";
    else
      R.kappa_verdict = "non-injective";
  }
  return R;
}

bool outer_exact_sequence_check(const PermGroup& G, int p) {
  AutGroup AG = automorphism_group(G);
  PermGroup S = sylow_subgroup(G, p);
  uint64_t ags = 0;
  for (const GenImageMap& a : AG.auts) {
    bool fix = true;
    for (const Perm& s : S.generators())
      if (!S.contains(AG.apply(a, s))) {
        fix = false;
        break;
      }
    if (fix) ++ags;
  }
  uint64_t out = AG.aut_order / AG.inn_order;
  return out * normalizer(G, S).order() == ags * center(G).order();
}

}  // namespace fusionkit
