#include "perm_group.h"

#include <algorithm>
#include <stdexcept>

namespace fusionkit {

uint64_t p_part(uint64_t n, int p) {
  uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

int p_valuation(uint64_t n, int p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

PermGroup PermGroup::trivial(int degree) {
  PermGroup g;
  g.degree_ = degree;
  g.order_ = 1;
  return g;
}

void PermGroup::rebuild_orbit(size_t i) {
  Level& lv = levels_[i];
  lv.orbit.assign(1, lv.base_point);
  lv.transversal.assign(1, Perm(degree_));
  lv.where.assign(degree_, -1);
  lv.where[lv.base_point] = 0;
  for (size_t k = 0; k < lv.orbit.size(); ++k) {
    for (const Perm& g : lv.gens) {
      int np = g[lv.orbit[k]];
      if (lv.where[np] < 0) {
        lv.where[np] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(np);
        lv.transversal.push_back(g * lv.transversal[k]);
      }
    }
  }
}

Perm PermGroup::sift(const Perm& g, size_t from) const {
  Perm h = g;
  for (size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    int x = h[lv.base_point];
    if (lv.where[x] < 0) return h;
    h = lv.transversal[lv.where[x]].inverse() * h;
  }
  return h;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return sift(g).is_identity();
}

// Level i's generator list holds every strong generator fixing the base
// points of levels < i, so its orbit is the full orbit of base_point under
// the i-th stabilizer once verification finishes.
PermGroup PermGroup::generated(int degree, const std::vector<Perm>& gens,
                               const std::vector<int>* base_prefix) {
  PermGroup G;
  G.degree_ = degree;
  for (const Perm& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (!g.is_identity()) G.gens_.push_back(g);
  }
  if (base_prefix) {
    for (int b : *base_prefix) {
      if (b < 0 || b >= degree) throw std::invalid_argument("base point out of range");
      Level lv;
      lv.base_point = b;
      G.levels_.push_back(lv);
    }
  }

  // First level whose base point h moves; appends a fresh level when h fixes
  // every current base point.
  auto level_of = [&](const Perm& h) -> int {
    for (size_t l = 0; l < G.levels_.size(); ++l)
      if (h[G.levels_[l].base_point] != G.levels_[l].base_point)
        return static_cast<int>(l);
    for (int x = 0; x < degree; ++x)
      if (h[x] != x) {
        Level lv;
        lv.base_point = x;
        G.levels_.push_back(lv);
        return static_cast<int>(G.levels_.size()) - 1;
      }
    return -1;  // identity
  };

  for (const Perm& g : G.gens_) {
    int j = level_of(g);
    for (int l = 0; l <= j; ++l) G.levels_[l].gens.push_back(g);
  }

  // Verify levels deepest-first; an unstripped Schreier generator becomes a
  // strong generator on every level it qualifies for, and verification
  // resumes at the deepest level it touched.
  int i = static_cast<int>(G.levels_.size()) - 1;
  while (i >= 0) {
    G.rebuild_orbit(i);
    bool restart = false;
    for (size_t k = 0; k < G.levels_[i].orbit.size() && !restart; ++k) {
      for (size_t gi = 0; gi < G.levels_[i].gens.size() && !restart; ++gi) {
        const Perm g = G.levels_[i].gens[gi];
        const Level& lv = G.levels_[i];
        int ip = g[lv.orbit[k]];
        Perm s = lv.transversal[lv.where[ip]].inverse() * (g * lv.transversal[k]);
        Perm r = G.sift(s, i + 1);
        if (r.is_identity()) continue;
        int j = level_of(r);
        for (int l = i + 1; l <= j; ++l) G.levels_[l].gens.push_back(r);
        i = j;
        restart = true;
      }
    }
    if (!restart) --i;
  }
  G.order_ = 1;
  for (const Level& lv : G.levels_) G.order_ *= lv.orbit.size();
  return G;
}

bool PermGroup::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
  return true;
}

bool PermGroup::is_pgroup(int p) const {
  uint64_t n = order_;
  while (n % p == 0) n /= p;
  return n == 1;
}

PermGroup PermGroup::with_base_prefix(const std::vector<int>& pts) const {
  return generated(degree_, gens_, &pts);
}

void PermGroup::for_each_element(const std::function<bool(const Perm&)>& f) const {
  // Products u_0 * u_1 * ... * u_{k-1}, deepest level varying fastest.
  std::vector<size_t> idx(levels_.size(), 0);
  std::vector<Perm> prefix(levels_.size() + 1);
  prefix[0] = Perm(degree_);
  size_t k = levels_.size();
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == k) return f(prefix[i]);
    for (size_t t = 0; t < levels_[i].transversal.size(); ++t) {
      prefix[i + 1] = prefix[i] * levels_[i].transversal[t];
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  rec(0);
}

std::vector<Perm> PermGroup::elements() const {
  std::vector<Perm> out;
  out.reserve(order_);
  for_each_element([&](const Perm& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
  for (const Perm& x : gens_)
    if (!g.contains(x)) return false;
  return true;
}

bool PermGroup::same_group(const PermGroup& other) const {
  return order_ == other.order_ && is_subgroup_of(other);
}

PermGroup PermGroup::conjugated(const Perm& g) const {
  std::vector<Perm> cg;
  cg.reserve(gens_.size());
  for (const Perm& x : gens_) cg.push_back(x.conjugated_by(g));
  return generated(degree_, cg);
}

PermGroup join(const PermGroup& g, const std::vector<Perm>& extra) {
  std::vector<Perm> gens = g.generators();
  for (const Perm& e : extra) gens.push_back(e);
  return PermGroup::generated(g.degree(), gens);
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds) {
  std::vector<Perm> gens;
  for (const Perm& s : seeds)
    if (!s.is_identity()) gens.push_back(s);
  PermGroup N = PermGroup::generated(g.degree(), gens);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Perm> cur = gens;
    for (const Perm& n : cur) {
      for (const Perm& x : g.generators()) {
        Perm c = n.conjugated_by(x);
        if (!N.contains(c)) {
          gens.push_back(c);
          N = PermGroup::generated(g.degree(), gens);
          changed = true;
        }
      }
    }
  }
  return N;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  const auto& gs = g.generators();
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = 0; j < gs.size(); ++j) {
      if (i == j) continue;
      Perm c = gs[i].inverse() * gs[j].inverse() * gs[i] * gs[j];
      if (!c.is_identity()) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

}  // namespace fusionkit
