#include "backtrack.h"

#include <algorithm>
#include <map>

namespace fusionkit {

namespace {

// Base order: constrained points arranged so that cycle partners of decided
// points come early, which lets the target filters bite immediately.
std::vector<int> constrained_base(const std::vector<ConjConstraint>& cons, int degree) {
  std::vector<char> in_r(degree, 0);
  std::vector<int> count(degree, 0);
  for (const auto& c : cons)
    for (int a : c.x.support()) {
      in_r[a] = 1;
      ++count[a];
    }
  std::vector<int> base;
  std::vector<char> taken(degree, 0);
  auto take = [&](int a) {
    base.push_back(a);
    taken[a] = 1;
  };
  while (true) {
    int best = -1;
    for (int a = 0; a < degree; ++a)
      if (in_r[a] && !taken[a] && (best < 0 || count[a] > count[best])) best = a;
    if (best < 0) break;
    take(best);
    // follow cycles through all constraints
    for (size_t k = base.size() - 1; k < base.size(); ++k) {
      for (const auto& c : cons) {
        int fwd = c.x[base[k]];
        if (in_r[fwd] && !taken[fwd]) take(fwd);
        int bwd = c.x.inverse()[base[k]];
        if (in_r[bwd] && !taken[bwd]) take(bwd);
      }
    }
  }
  return base;
}

struct Frame {
  // candidate target indices per constraint
  std::vector<std::vector<uint16_t>> cands;
};

}  // namespace

void conj_search(const PermGroup& G, const std::vector<ConjConstraint>& constraints,
                 const std::function<bool(const Perm&)>& emit,
                 std::vector<Perm>* cut_gens_out, uint64_t node_cap) {
  const int deg = G.degree();
  std::vector<ConjConstraint> cons;
  for (const auto& c : constraints) {
    if (c.x.is_identity()) continue;
    ConjConstraint cc;
    cc.x = c.x;
    auto ct = c.x.cycle_type();
    for (const Perm& t : c.targets)
      if (t.cycle_type() == ct) cc.targets.push_back(t);
    if (cc.targets.empty()) {
      if (cut_gens_out) cut_gens_out->clear();
      return;  // unsatisfiable
    }
    cons.push_back(std::move(cc));
  }

  std::vector<int> base = constrained_base(cons, deg);
  PermGroup H = base.empty() ? G : G.with_base_prefix(base);
  const auto& levels = H.chain();
  size_t cut = 0;
  {
    std::vector<char> in_r(deg, 0);
    size_t r_count = 0;
    for (const auto& c : cons)
      for (int a : c.x.support())
        if (!in_r[a]) {
          in_r[a] = 1;
          ++r_count;
        }
    size_t seen = 0;
    while (cut < levels.size() && seen < r_count) {
      if (in_r[levels[cut].base_point]) ++seen;
      ++cut;
    }
    // base prefix covers all constrained points
    if (seen < r_count && r_count > 0)
      throw std::logic_error("conj_search: base does not cover constraints");
  }

  if (cut_gens_out) {
    cut_gens_out->clear();
    for (size_t i = cut; i < levels.size(); ++i)
      for (const Perm& g : levels[i].gens) cut_gens_out->push_back(g);
  }

  std::vector<int> decided(deg, -1);
  std::vector<Perm> prefix(cut + 1, Perm(deg));
  std::vector<Frame> frames(cut + 1);
  frames[0].cands.resize(cons.size());
  for (size_t ci = 0; ci < cons.size(); ++ci) {
    frames[0].cands[ci].resize(cons[ci].targets.size());
    for (size_t t = 0; t < cons[ci].targets.size(); ++t)
      frames[0].cands[ci][t] = static_cast<uint16_t>(t);
  }

  uint64_t nodes = 0;
  // Filter candidate targets for constraint ci using equations whose points
  // are both decided and involve point b.
  auto refilter = [&](size_t depth, int b) -> bool {
    for (size_t ci = 0; ci < cons.size(); ++ci) {
      const Perm& x = cons[ci].x;
      auto apply_eq = [&](int a) -> bool {
        int xa = x[a];
        if (decided[a] < 0 || decided[xa] < 0) return true;
        auto& cl = frames[depth].cands[ci];
        size_t w = 0;
        for (size_t k = 0; k < cl.size(); ++k) {
          const Perm& y = cons[ci].targets[cl[k]];
          if (y[decided[a]] == decided[xa]) cl[w++] = cl[k];
        }
        cl.resize(w);
        return !cl.empty();
      };
      if (x[b] != b) {
        if (!apply_eq(b)) return false;
        int pre = x.inverse()[b];
        if (pre != b && !apply_eq(pre)) return false;
      }
    }
    return true;
  };

  std::function<bool(size_t)> rec = [&](size_t depth) -> bool {
    if (++nodes > node_cap) throw CapacityError("conjugation search node cap exceeded");
    if (depth == cut) return emit(prefix[depth]);
    const auto& lv = levels[depth];
    int b = lv.base_point;
    for (size_t t = 0; t < lv.transversal.size(); ++t) {
      prefix[depth + 1] = prefix[depth] * lv.transversal[t];
      int beta = prefix[depth + 1][b];
      decided[b] = beta;
      frames[depth + 1].cands = frames[depth].cands;
      if (refilter(depth + 1, b)) {
        if (!rec(depth + 1)) {
          decided[b] = -1;
          return false;
        }
      }
      decided[b] = -1;
    }
    return true;
  };
  rec(0);
}

PermGroup bt_normalizer(const PermGroup& G, const std::vector<Perm>& p_gens,
                        const std::vector<Perm>& p_elems) {
  std::vector<ConjConstraint> cons;
  for (const Perm& x : p_gens)
    if (!x.is_identity()) cons.push_back({x, p_elems});
  std::vector<Perm> cut_gens;
  std::vector<Perm> found;
  conj_search(G, cons, [&](const Perm& g) {
    found.push_back(g);
    return true;
  }, &cut_gens);
  for (const Perm& g : cut_gens) found.push_back(g);
  return PermGroup::generated(G.degree(), found);
}

PermGroup bt_centralizer(const PermGroup& G, const std::vector<Perm>& xs) {
  std::vector<ConjConstraint> cons;
  for (const Perm& x : xs)
    if (!x.is_identity()) cons.push_back({x, {x}});
  std::vector<Perm> cut_gens;
  std::vector<Perm> found;
  conj_search(G, cons, [&](const Perm& g) {
    found.push_back(g);
    return true;
  }, &cut_gens);
  for (const Perm& g : cut_gens) found.push_back(g);
  return PermGroup::generated(G.degree(), found);
}

std::optional<Perm> bt_conjugator(const PermGroup& G, const std::vector<Perm>& p_gens,
                                  const std::vector<Perm>& q_elems) {
  std::vector<ConjConstraint> cons;
  for (const Perm& x : p_gens)
    if (!x.is_identity()) cons.push_back({x, q_elems});
  std::optional<Perm> witness;
  std::vector<Perm> cut_gens;
  conj_search(G, cons, [&](const Perm& g) {
    witness = g;
    return false;
  }, &cut_gens);
  return witness;
}

}  // namespace fusionkit
