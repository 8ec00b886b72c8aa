#include "aut_group.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "backtrack.h"
#include "group_ops.h"

namespace fusionkit {

ElementTable ElementTable::build(const PermGroup& g, const std::vector<Perm>& gens) {
  ElementTable t;
  t.ngens_ = static_cast<int>(gens.size());
  Perm id(g.degree());
  t.elems_.push_back(id);
  t.parent_.push_back(-1);
  t.via_.push_back(-1);
  t.index_[id] = 0;
  for (size_t i = 0; i < t.elems_.size(); ++i) {
    for (int j = 0; j < t.ngens_; ++j) {
      Perm nx = t.elems_[i] * gens[j];
      if (t.index_.find(nx) == t.index_.end()) {
        t.index_[nx] = static_cast<int>(t.elems_.size());
        t.elems_.push_back(nx);
        t.parent_.push_back(static_cast<int>(i));
        t.via_.push_back(j);
      }
    }
  }
  if (t.elems_.size() != g.order()) throw std::logic_error("element table: BFS misses elements");
  t.edges_.assign(t.elems_.size() * std::max(t.ngens_, 1), -1);
  for (size_t i = 0; i < t.elems_.size(); ++i)
    for (int j = 0; j < t.ngens_; ++j)
      t.edges_[i * t.ngens_ + j] = t.index_.at(t.elems_[i] * gens[j]);
  return t;
}

int ElementTable::index_of(const Perm& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? -1 : it->second;
}

Perm ElementTable::apply(const std::vector<Perm>& gen_images, const Perm& x,
                         int out_degree) const {
  auto it = index_.find(x);
  if (it == index_.end()) throw std::logic_error("apply: element not in table");
  std::vector<int> word;
  for (int i = it->second; parent_[i] >= 0; i = parent_[i]) word.push_back(via_[i]);
  Perm r(out_degree);
  for (auto w = word.rbegin(); w != word.rend(); ++w) r = r * gen_images[*w];
  return r;
}

Perm AutGroup::apply(const GenImageMap& a, const Perm& x) const {
  return tbl.apply(a.img, x, group.degree());
}

GenImageMap AutGroup::compose(const GenImageMap& a, const GenImageMap& b) const {
  GenImageMap r;
  r.img.reserve(dom_gens.size());
  for (const Perm& bi : b.img) r.img.push_back(apply(a, bi));
  return r;
}

GenImageMap AutGroup::inverse_map(const GenImageMap& a) const {
  // Invert via the full value table; groups here are small by contract.
  std::unordered_map<Perm, int, PermHash> where;
  for (int i = 0; i < tbl.size(); ++i) where[apply(a, tbl.element(i))] = i;
  GenImageMap r;
  for (const Perm& g : dom_gens) r.img.push_back(tbl.element(where.at(g)));
  return r;
}

GenImageMap AutGroup::inner_map(const Perm& h) const {
  GenImageMap r;
  for (const Perm& g : dom_gens) r.img.push_back(g.conjugated_by(h));
  return r;
}

GenImageMap AutGroup::identity_map() const { return GenImageMap{dom_gens}; }

int AutGroup::find(const GenImageMap& a) const {
  auto it = std::lower_bound(auts.begin(), auts.end(), a);
  if (it == auts.end() || !(*it == a)) return -1;
  return static_cast<int>(it - auts.begin());
}

std::vector<std::vector<int>> AutGroup::out_classes() const {
  std::vector<int> cls(auts.size(), -1);
  std::vector<std::vector<int>> classes;
  for (size_t i = 0; i < auts.size(); ++i) {
    if (cls[i] >= 0) continue;
    int cid = static_cast<int>(classes.size());
    std::vector<int> members = {static_cast<int>(i)};
    cls[i] = cid;
    for (size_t q = 0; q < members.size(); ++q) {
      for (const Perm& g : group.generators()) {
        GenImageMap m = compose(inner_map(g), auts[members[q]]);
        int ix = find(m);
        if (ix < 0) throw std::logic_error("out_classes: inner composite missing");
        if (cls[ix] < 0) {
          cls[ix] = cid;
          members.push_back(ix);
        }
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  return classes;
}

namespace {

// Irredundant generating sequence: greedy collect, then drop redundant
// members until stable.
std::vector<Perm> irredundant_gens(const PermGroup& g) {
  std::vector<Perm> gens;
  for (const Perm& x : g.generators()) {
    if (x.is_identity()) continue;
    if (!gens.empty() && PermGroup::generated(g.degree(), gens).order() == g.order()) break;
    gens.push_back(x);
  }
  if (gens.empty() && g.order() > 1) throw std::logic_error("no generators");
  bool shrunk = true;
  while (shrunk && gens.size() > 1) {
    shrunk = false;
    for (size_t i = 0; i < gens.size(); ++i) {
      std::vector<Perm> rest;
      for (size_t j = 0; j < gens.size(); ++j)
        if (j != i) rest.push_back(gens[j]);
      if (PermGroup::generated(g.degree(), rest).order() == g.order()) {
        gens = rest;
        shrunk = true;
        break;
      }
    }
  }
  return gens;
}

struct SearchContext {
  const PermGroup* h = nullptr;                 // codomain
  std::vector<Perm> dom_gens;                   // domain generators
  const ElementTable* dom_tbl = nullptr;        // BFS table of the domain
  std::unordered_map<Perm, int, PermHash> h_index;  // codomain element lookup
  std::vector<std::vector<Perm>> cands;         // per position
  // Battery reference orders: ord(g_j g_i) and ord(g_j g_i g_j) for j < i.
  std::vector<std::vector<std::pair<uint64_t, uint64_t>>> ref;

  bool battery_ok(const std::vector<Perm>& chosen, size_t i, const Perm& y) const {
    for (size_t j = 0; j < i; ++j) {
      Perm a = chosen[j] * y;
      if (a.order() != ref[i][j].first) return false;
      if ((a * chosen[j]).order() != ref[i][j].second) return false;
    }
    return true;
  }

  bool full_verify(const std::vector<Perm>& images) const {
    int n = dom_tbl->size();
    int k = static_cast<int>(dom_gens.size());
    // Evaluate along the BFS tree; slots fill in ascending index order.
    std::vector<Perm> value(n);
    value[0] = Perm(h->degree());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) {
        int t = dom_tbl->step(i, j);
        if (t > i && value[t].degree() == 0) value[t] = value[i] * images[j];
      }
    // Edge consistency over the whole Cayley graph makes the tree evaluation
    // a homomorphism.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j)
        if (!(value[dom_tbl->step(i, j)] == value[i] * images[j])) return false;
    // Injective into the codomain element set.
    std::vector<char> used(n, 0);
    for (int i = 0; i < n; ++i) {
      auto it = h_index.find(value[i]);
      if (it == h_index.end() || used[it->second]) return false;
      used[it->second] = 1;
    }
    return true;
  }
};

bool dfs_images(const SearchContext& ctx, std::vector<Perm>& chosen, size_t i,
                const std::function<bool(const std::vector<Perm>&)>& emit) {
  if (i == ctx.dom_gens.size()) {
    if (!ctx.full_verify(chosen)) return false;
    return emit(chosen);
  }
  for (const Perm& y : ctx.cands[i]) {
    if (!ctx.battery_ok(chosen, i, y)) continue;
    chosen.push_back(y);
    if (dfs_images(ctx, chosen, i + 1, emit)) {
      chosen.pop_back();
      return true;
    }
    chosen.pop_back();
  }
  return false;
}

struct ClassData {
  std::vector<std::vector<Perm>> classes;
  std::unordered_map<Perm, int, PermHash> class_of;

  std::pair<uint64_t, uint64_t> sig(const Perm& x) const {
    int c = class_of.at(x);
    return {x.order(), classes[c].size()};
  }
};

ClassData class_data(const PermGroup& g) {
  ClassData d;
  d.classes = conjugacy_classes(g);
  for (size_t c = 0; c < d.classes.size(); ++c)
    for (const Perm& x : d.classes[c]) d.class_of[x] = static_cast<int>(c);
  return d;
}

}  // namespace

AutGroup automorphism_group(const PermGroup& g, uint64_t group_cap, uint64_t enum_cap) {
  if (g.order() > group_cap)
    throw CapacityError("automorphism search requires |G| <= " + std::to_string(group_cap));
  AutGroup a;
  a.group = g;
  a.inn_order = g.order() / center(g).order();
  if (g.order() == 1) {
    a.tbl = ElementTable::build(g, {});
    a.auts.push_back(GenImageMap{});
    a.aut_order = 1;
    return a;
  }
  a.dom_gens = irredundant_gens(g);
  a.tbl = ElementTable::build(g, a.dom_gens);

  ClassData cd = class_data(g);
  size_t k = a.dom_gens.size();
  SearchContext ctx;
  ctx.h = &a.group;
  ctx.dom_gens = a.dom_gens;
  ctx.dom_tbl = &a.tbl;
  for (int i = 0; i < a.tbl.size(); ++i) ctx.h_index[a.tbl.element(i)] = i;
  ctx.ref.resize(k);
  for (size_t i = 0; i < k; ++i) {
    ctx.ref[i].resize(i);
    for (size_t j = 0; j < i; ++j) {
      Perm w = a.dom_gens[j] * a.dom_gens[i];
      ctx.ref[i][j] = {w.order(), (w * a.dom_gens[j]).order()};
    }
  }
  ctx.cands.resize(k);
  for (size_t i = 1; i < k; ++i) {
    auto want = cd.sig(a.dom_gens[i]);
    for (const auto& cls : cd.classes)
      for (const Perm& y : cls)
        if (cd.sig(y) == want) ctx.cands[i].push_back(y);
  }

  // First image runs over class representatives; every hit is expanded along
  // the class with conjugating witnesses.
  auto want0 = cd.sig(a.dom_gens[0]);
  uint64_t total = 0;
  std::vector<GenImageMap> all;
  for (const auto& cls : cd.classes) {
    if (cd.sig(cls.front()) != want0) continue;
    const Perm& rep = cls.front();
    ctx.cands[0] = {rep};
    std::vector<GenImageMap> res;
    std::vector<Perm> chosen;
    dfs_images(ctx, chosen, 0, [&](const std::vector<Perm>& images) {
      res.push_back(GenImageMap{images});
      return false;  // keep searching
    });
    if (res.empty()) continue;
    total += res.size() * cls.size();
    if (total <= enum_cap) {
      // Orbit of rep under conjugation, with witnesses h: x = h rep h^-1.
      std::vector<Perm> orbit = {rep}, wit = {Perm(g.degree())};
      std::unordered_map<Perm, int, PermHash> seen;
      seen[rep] = 0;
      for (size_t q = 0; q < orbit.size(); ++q)
        for (const Perm& s : g.generators()) {
          Perm t = orbit[q].conjugated_by(s);
          if (seen.find(t) == seen.end()) {
            seen[t] = static_cast<int>(orbit.size());
            orbit.push_back(t);
            wit.push_back(s * wit[q]);
          }
        }
      if (orbit.size() != cls.size()) throw std::logic_error("class orbit mismatch");
      for (const Perm& h : wit)
        for (const GenImageMap& b : res) {
          GenImageMap m;
          for (const Perm& x : b.img) m.img.push_back(x.conjugated_by(h));
          all.push_back(std::move(m));
        }
    }
  }
  a.aut_order = total;
  if (total > enum_cap)
    throw CapacityError("automorphism group too large to enumerate: " + std::to_string(total));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() != total) throw std::logic_error("automorphism enumeration lost elements");
  a.auts = std::move(all);
  if (a.aut_order % a.inn_order != 0) throw std::logic_error("|Aut| not divisible by |Inn|");
  return a;
}

bool for_each_isomorphism(const PermGroup& g, const PermGroup& h,
                          std::vector<Perm>& dom_gens_out,
                          const std::function<bool(const GenImageMap&)>& visit,
                          uint64_t group_cap) {
  if (g.order() != h.order()) return false;
  if (g.order() > group_cap)
    throw CapacityError("isomorphism search requires |G| <= " + std::to_string(group_cap));
  if (g.order() == 1) {
    dom_gens_out.clear();
    visit(GenImageMap{});
    return true;
  }
  ClassData cg = class_data(g), ch = class_data(h);
  // Class size/order profiles must match.
  auto profile = [](const ClassData& d) {
    std::map<std::pair<uint64_t, uint64_t>, int> m;
    for (const auto& cls : d.classes) ++m[{cls.front().order(), cls.size()}];
    return m;
  };
  if (profile(cg) != profile(ch)) return false;

  SearchContext ctx;
  ctx.h = &h;
  ctx.dom_gens = irredundant_gens(g);
  dom_gens_out = ctx.dom_gens;
  ElementTable tbl = ElementTable::build(g, ctx.dom_gens);
  ctx.dom_tbl = &tbl;
  std::vector<Perm> h_elems = h.elements();
  for (const Perm& x : h_elems) ctx.h_index[x] = static_cast<int>(ctx.h_index.size());
  size_t k = ctx.dom_gens.size();
  ctx.ref.resize(k);
  ctx.cands.resize(k);
  for (size_t i = 0; i < k; ++i) {
    ctx.ref[i].resize(i);
    for (size_t j = 0; j < i; ++j) {
      Perm w = ctx.dom_gens[j] * ctx.dom_gens[i];
      ctx.ref[i][j] = {w.order(), (w * ctx.dom_gens[j]).order()};
    }
    auto want = cg.sig(ctx.dom_gens[i]);
    for (const auto& cls : ch.classes)
      for (const Perm& y : cls)
        if (std::pair<uint64_t, uint64_t>{y.order(), cls.size()} == want)
          ctx.cands[i].push_back(y);
  }
  bool found = false;
  std::vector<Perm> chosen;
  dfs_images(ctx, chosen, 0, [&](const std::vector<Perm>& images) {
    found = true;
    return visit(GenImageMap{images});
  });
  return found;
}

}  // namespace fusionkit
