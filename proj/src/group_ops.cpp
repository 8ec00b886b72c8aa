#include "group_ops.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace fusionkit {

namespace {

using PermSet = std::unordered_set<Perm, PermHash>;

PermSet to_set(const std::vector<Perm>& v) { return PermSet(v.begin(), v.end()); }

std::vector<Perm> sorted_elements(const PermGroup& g, uint64_t cap) {
  if (g.order() > cap) throw CapacityError("group too large to enumerate");
  auto e = g.elements();
  std::sort(e.begin(), e.end());
  return e;
}

bool conjugates_into(const Perm& g, const std::vector<Perm>& gens, const PermSet& target) {
  for (const Perm& x : gens)
    if (!target.count(x.conjugated_by(g))) return false;
  return true;
}

// Key identifying the subgroup g P g^-1 for dedup of transporter targets.
std::vector<Perm> image_key(const Perm& g, const std::vector<Perm>& p_elems) {
  std::vector<Perm> img;
  img.reserve(p_elems.size());
  for (const Perm& x : p_elems) img.push_back(x.conjugated_by(g));
  std::sort(img.begin(), img.end());
  return img;
}

}  // namespace

PermGroup brute_normalizer(const PermGroup& G, const PermGroup& P) {
  auto pset = to_set(P.elements());
  std::vector<Perm> found;
  G.for_each_element([&](const Perm& g) {
    if (conjugates_into(g, P.generators(), pset)) found.push_back(g);
    return true;
  });
  return PermGroup::generated(G.degree(), found);
}

PermGroup brute_centralizer(const PermGroup& G, const std::vector<Perm>& xs) {
  std::vector<Perm> found;
  G.for_each_element([&](const Perm& g) {
    for (const Perm& x : xs)
      if (!(x.conjugated_by(g) == x)) return true;
    found.push_back(g);
    return true;
  });
  return PermGroup::generated(G.degree(), found);
}

std::optional<Perm> brute_conjugator(const PermGroup& G, const PermGroup& P, const PermGroup& Q) {
  if (P.order() != Q.order()) return std::nullopt;
  auto qset = to_set(Q.elements());
  std::optional<Perm> w;
  G.for_each_element([&](const Perm& g) {
    if (conjugates_into(g, P.generators(), qset)) {
      w = g;
      return false;
    }
    return true;
  });
  return w;
}

PermGroup normalizer(const PermGroup& G, const PermGroup& P) {
  if (P.is_trivial() || P.same_group(G)) return G;
  if (G.order() <= kBruteGroupCap) return brute_normalizer(G, P);
  return bt_normalizer(G, P.generators(), P.elements());
}

PermGroup centralizer(const PermGroup& G, const PermGroup& H) {
  if (H.is_trivial()) return G;
  if (G.order() <= kBruteGroupCap) return brute_centralizer(G, H.generators());
  return bt_centralizer(G, H.generators());
}

PermGroup centralizer(const PermGroup& G, const Perm& x) {
  if (x.is_identity()) return G;
  if (G.order() <= kBruteGroupCap) return brute_centralizer(G, {x});
  return bt_centralizer(G, {x});
}

PermGroup center(const PermGroup& G) { return centralizer(G, G); }

std::optional<Perm> conjugator(const PermGroup& G, const PermGroup& P, const PermGroup& Q) {
  if (P.order() != Q.order()) return std::nullopt;
  if (P.is_trivial()) return Perm(G.degree());
  if (G.order() <= kBruteGroupCap) return brute_conjugator(G, P, Q);
  return bt_conjugator(G, P.generators(), Q.elements());
}

TransporterSet transporter(const PermGroup& G, const PermGroup& P, const PermGroup& Q) {
  TransporterSet ts{{}, normalizer(G, P)};
  if (P.order() > Q.order()) return ts;
  if (P.is_trivial()) {
    ts.reps.push_back(Perm(G.degree()));
    return ts;
  }
  std::map<std::vector<Perm>, Perm> by_image;
  auto p_elems = P.elements();
  auto record = [&](const Perm& g) {
    auto key = image_key(g, p_elems);
    by_image.emplace(std::move(key), g);
  };
  if (G.order() <= kBruteGroupCap) {
    auto qset = to_set(Q.elements());
    G.for_each_element([&](const Perm& g) {
      if (conjugates_into(g, P.generators(), qset)) record(g);
      return true;
    });
  } else {
    std::vector<ConjConstraint> cons;
    auto q_elems = Q.elements();
    for (const Perm& x : P.generators())
      if (!x.is_identity()) cons.push_back({x, q_elems});
    conj_search(G, cons, [&](const Perm& g) {
      record(g);
      return true;
    }, nullptr);
  }
  for (auto& kv : by_image) ts.reps.push_back(kv.second);
  return ts;
}

PermGroup sylow_containing(const PermGroup& G, int p, const PermGroup& P0) {
  uint64_t target = p_part(G.order(), p);
  if (!P0.is_pgroup(p) || target % P0.order() != 0)
    throw std::invalid_argument("sylow_containing: seed is not a compatible p-subgroup");
  PermGroup P = P0;
  while (P.order() < target) {
    PermGroup N = P.is_trivial() ? G : normalizer(G, P);
    bool grown = false;
    N.for_each_element([&](const Perm& g) {
      uint64_t m = g.order();
      uint64_t mp = p_part(m, p);
      if (mp == 1) return true;
      Perm y = g.power(static_cast<long long>(m / mp));
      if (!P.contains(y)) {
        P = join(P, {y});
        grown = true;
        return false;
      }
      return true;
    });
    if (!grown) throw std::logic_error("sylow step found no extending p-element");
  }
  return P;
}

PermGroup sylow_subgroup(const PermGroup& G, int p) {
  return sylow_containing(G, p, PermGroup::trivial(G.degree()));
}

PermGroup op_power_residual(const PermGroup& G, int p) {
  std::vector<Perm> seeds;
  for (const Perm& g : G.generators()) {
    uint64_t m = g.order();
    Perm h = g.power(static_cast<long long>(p_part(m, p)));
    if (!h.is_identity()) seeds.push_back(h);
  }
  PermGroup N = normal_closure(G, seeds);
  while (p_part(G.order() / N.order(), p) != G.order() / N.order()) {
    bool grown = false;
    G.for_each_element([&](const Perm& g) {
      uint64_t m = g.order();
      Perm h = g.power(static_cast<long long>(p_part(m, p)));
      if (!h.is_identity() && !N.contains(h)) {
        std::vector<Perm> gens = N.generators();
        gens.push_back(h);
        N = normal_closure(G, gens);
        grown = true;
        return false;
      }
      return true;
    });
    if (!grown) throw std::logic_error("op_power_residual: no p'-element found outside N");
  }
  return N;
}

PermGroup opprime_residual(const PermGroup& G, int p) {
  PermGroup S = sylow_subgroup(G, p);
  if (S.is_trivial()) return PermGroup::trivial(G.degree());
  return normal_closure(G, S.generators());
}

PermGroup op_core(const PermGroup& G, int p) {
  PermGroup K = sylow_subgroup(G, p);
  if (K.is_trivial()) return K;
  bool stable = false;
  while (!stable) {
    stable = true;
    for (const Perm& g : G.generators()) {
      PermGroup Kg = K.conjugated(g);
      if (!Kg.same_group(K)) {
        K = intersection(K, Kg);
        stable = false;
        break;
      }
    }
  }
  return K;
}

PermGroup opprime_core(const PermGroup& G, int p) {
  auto classes = conjugacy_classes(G);
  PermGroup R = PermGroup::trivial(G.degree());
  for (const auto& cls : classes) {
    const Perm& x = cls.front();
    if (x.is_identity()) continue;
    if (x.order() % p == 0) continue;
    if (R.contains(x)) continue;
    PermGroup Nx = normal_closure(G, {x});
    if (Nx.order() % p != 0) {
      std::vector<Perm> gens = R.generators();
      for (const Perm& g : Nx.generators()) gens.push_back(g);
      R = PermGroup::generated(G.degree(), gens);
    }
  }
  // The join of normal p'-subgroups is again a normal p'-subgroup.
  if (R.order() % p == 0) throw std::logic_error("opprime_core: join has p-torsion");
  return R;
}

std::vector<std::vector<Perm>> conjugacy_classes(const PermGroup& G) {
  auto elems = sorted_elements(G, kBruteGroupCap);
  std::unordered_map<Perm, size_t, PermHash> index;
  index.reserve(elems.size());
  for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::vector<char> seen(elems.size(), 0);
  std::vector<std::vector<Perm>> classes;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (seen[i]) continue;
    std::vector<Perm> cls{elems[i]};
    seen[i] = 1;
    for (size_t k = 0; k < cls.size(); ++k) {
      for (const Perm& g : G.generators()) {
        Perm c = cls[k].conjugated_by(g);
        size_t j = index.at(c);
        if (!seen[j]) {
          seen[j] = 1;
          cls.push_back(c);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

PermGroup intersection(const PermGroup& A, const PermGroup& B, uint64_t cap) {
  const PermGroup& small = A.order() <= B.order() ? A : B;
  const PermGroup& big = A.order() <= B.order() ? B : A;
  if (small.order() > cap) throw CapacityError("intersection: groups too large");
  std::vector<Perm> found;
  small.for_each_element([&](const Perm& g) {
    if (big.contains(g)) found.push_back(g);
    return true;
  });
  return PermGroup::generated(A.degree(), found);
}

Perm Quotient::project(const Perm& g) const {
  int m = static_cast<int>(reps.size());
  std::vector<int> img(m, -1);
  for (int j = 0; j < m; ++j) {
    Perm c = g * reps[j];
    int id = -1;
    if (!n_elems.empty()) {
      // canonical key: min base-image tuple over the coset c*N
      std::vector<int> best;
      for (const Perm& n : n_elems) {
        std::vector<int> t(key_base.size());
        Perm cn = c * n;
        for (size_t k = 0; k < key_base.size(); ++k) t[k] = cn[key_base[k]];
        if (best.empty() || t < best) best = t;
      }
      for (int i = 0; i < m; ++i) {
        std::vector<int> t(key_base.size());
        // reps store their canonical keys implicitly; recompute
        std::vector<int> bi;
        for (const Perm& n : n_elems) {
          std::vector<int> u(key_base.size());
          Perm rn = reps[i] * n;
          for (size_t k = 0; k < key_base.size(); ++k) u[k] = rn[key_base[k]];
          if (bi.empty() || u < bi) bi = u;
        }
        if (bi == best) {
          id = i;
          break;
        }
      }
    } else {
      for (int i = 0; i < m; ++i) {
        if (n_group.contains(reps[i].inverse() * c)) {
          id = i;
          break;
        }
      }
    }
    if (id < 0) throw std::logic_error("quotient projection failed");
    img[j] = id;
  }
  return Perm(std::move(img));
}

Quotient quotient_group(const PermGroup& G, const PermGroup& N, uint64_t index_cap) {
  if (G.order() % N.order() != 0) throw std::invalid_argument("quotient: order mismatch");
  uint64_t m64 = G.order() / N.order();
  if (m64 > index_cap) throw CapacityError("quotient index exceeds cap");
  int m = static_cast<int>(m64);

  Quotient q;
  q.degree_src = G.degree();
  std::vector<int> base;
  for (const auto& lv : G.chain()) base.push_back(lv.base_point);
  if (base.empty()) base.push_back(0);
  q.key_base = base;

  bool small_n = N.order() <= 20000;
  if (small_n) q.n_elems = N.elements();
  q.n_group = N;

  auto key_of = [&](const Perm& c) -> std::vector<int> {
    std::vector<int> best;
    for (const Perm& n : q.n_elems) {
      Perm cn = c * n;
      std::vector<int> t(base.size());
      for (size_t k = 0; k < base.size(); ++k) t[k] = cn[base[k]];
      if (best.empty() || t < best) best = t;
    }
    return best;
  };

  std::map<std::vector<int>, int> by_key;
  q.reps.push_back(Perm(G.degree()));
  if (small_n) by_key.emplace(key_of(q.reps[0]), 0);
  std::vector<std::vector<int>> gen_action(G.generators().size(), std::vector<int>());
  for (auto& v : gen_action) v.assign(1, -1);

  for (size_t j = 0; j < q.reps.size(); ++j) {
    for (size_t gi = 0; gi < G.generators().size(); ++gi) {
      Perm c = G.generators()[gi] * q.reps[j];
      int id = -1;
      if (small_n) {
        auto key = key_of(c);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
          id = static_cast<int>(q.reps.size());
          by_key.emplace(key, id);
          q.reps.push_back(c);
        } else {
          id = it->second;
        }
      } else {
        for (size_t i = 0; i < q.reps.size(); ++i)
          if (N.contains(q.reps[i].inverse() * c)) {
            id = static_cast<int>(i);
            break;
          }
        if (id < 0) {
          id = static_cast<int>(q.reps.size());
          q.reps.push_back(c);
        }
      }
      if (q.reps.size() > m64) throw std::logic_error("quotient: N is not normal in G");
      for (auto& v : gen_action) v.resize(q.reps.size(), -1);
      gen_action[gi][j] = id;
    }
    for (auto& v : gen_action) v.resize(q.reps.size(), -1);
  }
  if (q.reps.size() != m64) throw std::logic_error("quotient: coset count mismatch");

  std::vector<Perm> qgens;
  for (size_t gi = 0; gi < G.generators().size(); ++gi) {
    std::vector<int> img(m);
    for (int j = 0; j < m; ++j) img[j] = gen_action[gi][j];
    qgens.push_back(Perm(std::move(img)));
  }
  q.group = PermGroup::generated(m, qgens);
  if (q.group.order() != m64) throw std::logic_error("quotient: order mismatch after build");
  return q;
}

}  // namespace fusionkit
