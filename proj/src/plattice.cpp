#include "plattice.h"

#include <algorithm>
#include <stdexcept>

#include "backtrack.h"
#include "group_ops.h"

namespace fusionkit {

namespace {

bool bits_subset(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

std::vector<uint64_t> Lattice::bits_of(const std::vector<uint16_t>& m) const {
  std::vector<uint64_t> b(words_, 0);
  for (uint16_t x : m) b[x >> 6] |= uint64_t(1) << (x & 63);
  return b;
}

int Lattice::find_bits(const std::vector<uint64_t>& b) const {
  auto it = index_.find(b);
  return it == index_.end() ? -1 : it->second;
}

int Lattice::node_of(const std::vector<uint16_t>& sorted_members) const {
  return find_bits(bits_of(sorted_members));
}

bool Lattice::subset(int a, int b) const { return bits_subset(nodes_[a].bits, nodes_[b].bits); }

bool Lattice::contains_element(int id, int x) const {
  return (nodes_[id].bits[x >> 6] >> (x & 63)) & 1;
}

std::vector<uint16_t> Lattice::conj_members(const std::vector<uint16_t>& m, int s) const {
  std::vector<uint16_t> r;
  r.reserve(m.size());
  for (uint16_t x : m) r.push_back(static_cast<uint16_t>(table_.conj(x, s)));
  std::sort(r.begin(), r.end());
  return r;
}

int Lattice::conj_node(int id, int s) const {
  int r = find_bits(bits_of(conj_members(nodes_[id].members, s)));
  if (r < 0) throw std::logic_error("conjugate subgroup missing from lattice");
  return r;
}

PermGroup Lattice::node_group(int id) const {
  std::vector<Perm> gens;
  for (uint16_t g : nodes_[id].canonical_gens) gens.push_back(table_.element(g));
  return PermGroup::generated(s_.degree(), gens);
}

// Lex-least irredundant generating sequence.  Irredundant sequences are
// exactly those whose images in P/Phi(P) are linearly independent, so the
// greedy choice (least element outside Phi(P)<chosen so far>) is least at
// every position.
std::vector<uint16_t> Lattice::canonical_generators(const std::vector<uint16_t>& members,
                                                    const std::vector<uint16_t>& some_gens) const {
  if (members.size() == 1) return {};
  std::vector<uint16_t> frat_seed;
  for (uint16_t x : members) frat_seed.push_back(static_cast<uint16_t>(table_.power(x, p_)));
  for (size_t i = 0; i < some_gens.size(); ++i)
    for (size_t j = 0; j < some_gens.size(); ++j)
      frat_seed.push_back(static_cast<uint16_t>(table_.comm(some_gens[i], some_gens[j])));
  std::vector<uint16_t> frat = table_.closure(frat_seed);
  // Close under conjugation by P; p-th powers are conjugation-stable already.
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<uint16_t> add;
    for (uint16_t c : frat)
      for (uint16_t g : some_gens) {
        uint16_t t = static_cast<uint16_t>(table_.conj(c, g));
        if (!std::binary_search(frat.begin(), frat.end(), t)) add.push_back(t);
      }
    if (!add.empty()) {
      grew = true;
      add.insert(add.end(), frat.begin(), frat.end());
      frat = table_.closure(add);
    }
  }

  std::vector<uint16_t> gens;
  std::vector<uint16_t> cur = frat;
  while (cur.size() < members.size()) {
    uint16_t next = 0;
    bool found = false;
    for (uint16_t x : members)
      if (!std::binary_search(cur.begin(), cur.end(), x)) {
        next = x;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("canonical generator scan exhausted");
    gens.push_back(next);
    std::vector<uint16_t> seed = cur;
    seed.push_back(next);
    cur = table_.closure(seed);
  }
  return gens;
}

Lattice Lattice::build(const PermGroup& s, int p, size_t node_cap) {
  Lattice lat;
  lat.s_ = s;
  lat.p_ = p;
  uint64_t n = s.order();
  while (n % p == 0) n /= p;
  if (n != 1) throw std::invalid_argument("lattice: group is not a p-group for p=" + std::to_string(p));
  lat.table_ = STable::build(s);
  int order = lat.table_.size();
  lat.words_ = static_cast<size_t>((order + 63) / 64);

  auto add_node = [&](const std::vector<uint16_t>& members,
                      const std::vector<uint16_t>& some_gens) -> int {
    std::vector<uint64_t> b = lat.bits_of(members);
    int existing = lat.find_bits(b);
    if (existing >= 0) return existing;
    if (lat.nodes_.size() >= node_cap) throw CapacityError("subgroup lattice exceeds node cap");
    SubgroupRef ref;
    ref.lattice_id = static_cast<int>(lat.nodes_.size());
    ref.members = members;
    ref.bits = std::move(b);
    ref.order = members.size();
    ref.canonical_gens = lat.canonical_generators(members, some_gens);
    lat.index_[ref.bits] = ref.lattice_id;
    lat.nodes_.push_back(std::move(ref));
    return static_cast<int>(lat.nodes_.size()) - 1;
  };

  // Bottom-up cyclic extension: every subgroup of order p^(k+1) is <H, x>
  // for a maximal H of order p^k normalized by x with x^p in H.
  std::vector<uint16_t> trivial = {static_cast<uint16_t>(lat.table_.id())};
  lat.bottom_ = add_node(trivial, {});
  std::vector<int> layer = {lat.bottom_};
  while (!layer.empty()) {
    std::vector<int> next;
    for (int hid : layer) {
      // Snapshot: nodes_ grows while we iterate.
      std::vector<uint16_t> hmem = lat.nodes_[hid].members;
      std::vector<uint64_t> hbits = lat.nodes_[hid].bits;
      std::vector<uint16_t> hgens = lat.nodes_[hid].canonical_gens;
      for (int x = 0; x < order; ++x) {
        if ((hbits[x >> 6] >> (x & 63)) & 1) continue;
        int xp = lat.table_.power(x, p);
        if (!((hbits[xp >> 6] >> (xp & 63)) & 1)) continue;
        bool normalizes = true;
        for (uint16_t g : hgens)
          if (!((hbits[lat.table_.conj(g, x) >> 6] >> (lat.table_.conj(g, x) & 63)) & 1)) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        // Members are the cosets H x^j, j = 0..p-1.
        std::vector<uint16_t> kmem;
        kmem.reserve(hmem.size() * p);
        int xj = lat.table_.id();
        for (int j = 0; j < p; ++j) {
          for (uint16_t h : hmem) kmem.push_back(static_cast<uint16_t>(lat.table_.mul(h, xj)));
          xj = lat.table_.mul(xj, x);
        }
        std::sort(kmem.begin(), kmem.end());
        std::vector<uint16_t> kgens = hgens;
        kgens.push_back(static_cast<uint16_t>(x));
        int kid = add_node(kmem, kgens);
        if (std::find(next.begin(), next.end(), kid) == next.end() &&
            lat.nodes_[kid].order == hmem.size() * p)
          next.push_back(kid);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  lat.top_ = lat.find_bits(lat.bits_of([&] {
    std::vector<uint16_t> all(order);
    for (int i = 0; i < order; ++i) all[i] = static_cast<uint16_t>(i);
    return all;
  }()));
  if (lat.top_ < 0) throw std::logic_error("lattice: top subgroup missing");

  int nc = lat.node_count();

  // N_S, C_S, Z per node.
  for (int id = 0; id < nc; ++id) {
    SubgroupRef& ref = lat.nodes_[id];
    std::vector<uint16_t> nmem, cmem;
    for (int sElem = 0; sElem < order; ++sElem) {
      bool in_n = true, in_c = true;
      for (uint16_t g : ref.canonical_gens) {
        int cg = lat.table_.conj(g, sElem);
        if (!((ref.bits[cg >> 6] >> (cg & 63)) & 1)) in_n = false;
        if (cg != g) in_c = false;
        if (!in_n && !in_c) break;
      }
      if (ref.canonical_gens.empty()) in_n = in_c = true;
      if (in_n) nmem.push_back(static_cast<uint16_t>(sElem));
      if (in_c) cmem.push_back(static_cast<uint16_t>(sElem));
    }
    ref.normalizer = lat.find_bits(lat.bits_of(nmem));
    ref.centralizer = lat.find_bits(lat.bits_of(cmem));
    std::vector<uint16_t> zmem;
    for (uint16_t x : ref.members)
      if (std::binary_search(cmem.begin(), cmem.end(), x)) zmem.push_back(x);
    ref.center = lat.find_bits(lat.bits_of(zmem));
    if (ref.normalizer < 0 || ref.centralizer < 0 || ref.center < 0)
      throw std::logic_error("normalizer/centralizer/center missing from lattice");
  }

  // S-conjugacy classes with per-member conjugators back to a provisional
  // root, then re-root at the lex-least canonical generator list.
  std::vector<uint16_t> sgens;
  for (const Perm& g : s.generators()) {
    int ix = lat.table_.index_of(g);
    if (ix < 0) throw std::logic_error("generator missing from table");
    sgens.push_back(static_cast<uint16_t>(ix));
  }
  std::vector<int> class_of(nc, -1);
  for (int id = 0; id < nc; ++id) {
    if (class_of[id] >= 0) continue;
    int cid = static_cast<int>(lat.classes_.size());
    std::vector<int> members = {id};
    std::vector<uint16_t> conj = {static_cast<uint16_t>(lat.table_.id())};
    class_of[id] = cid;
    for (size_t i = 0; i < members.size(); ++i) {
      for (uint16_t g : sgens) {
        int t = lat.conj_node(members[i], g);
        if (class_of[t] < 0) {
          class_of[t] = cid;
          members.push_back(t);
          // t = g * members[i] * g^-1 = (g * c_i) root (g * c_i)^-1
          conj.push_back(static_cast<uint16_t>(lat.table_.mul(g, conj[i])));
        }
      }
    }
    int rep_pos = 0;
    for (size_t i = 1; i < members.size(); ++i)
      if (lat.nodes_[members[i]].canonical_gens < lat.nodes_[members[rep_pos]].canonical_gens)
        rep_pos = static_cast<int>(i);
    SClass cls;
    cls.rep = members[rep_pos];
    // Re-root: member = c_i root c_i^-1, root = c_rep^-1-conjugate of old root,
    // so member = (c_i c_rep^-1) rep (c_i c_rep^-1)^-1.
    int crep_inv = lat.table_.inv(conj[rep_pos]);
    std::vector<std::pair<int, uint16_t>> sorted_members;
    for (size_t i = 0; i < members.size(); ++i)
      sorted_members.push_back(
          {members[i], static_cast<uint16_t>(lat.table_.mul(conj[i], crep_inv))});
    std::sort(sorted_members.begin(), sorted_members.end());
    for (auto& [nid, ce] : sorted_members) {
      cls.nodes.push_back(nid);
      cls.conj_by.push_back(ce);
    }
    lat.classes_.push_back(std::move(cls));
  }
  for (int id = 0; id < nc; ++id) lat.nodes_[id].class_id = class_of[id];

  // Transitive-reduction containment: maximal subgroups have index p.
  lat.max_subs_.assign(nc, {});
  lat.min_overs_.assign(nc, {});
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (lat.nodes_[a].order * p == lat.nodes_[b].order && lat.subset(a, b)) {
        lat.max_subs_[b].push_back(a);
        lat.min_overs_[a].push_back(b);
      }
  lat.sub_memo_.assign(nc, {});
  lat.super_memo_.assign(nc, {});
  lat.sub_done_.assign(nc, 0);
  lat.super_done_.assign(nc, 0);
  return lat;
}

const std::vector<int>& Lattice::sub_nodes(int id) const {
  if (!sub_done_[id]) {
    for (int b = 0; b < node_count(); ++b)
      if (b != id && subset(b, id)) sub_memo_[id].push_back(b);
    sub_done_[id] = 1;
  }
  return sub_memo_[id];
}

const std::vector<int>& Lattice::super_nodes(int id) const {
  if (!super_done_[id]) {
    for (int b = 0; b < node_count(); ++b)
      if (b != id && subset(id, b)) super_memo_[id].push_back(b);
    super_done_[id] = 1;
  }
  return super_memo_[id];
}

std::vector<std::vector<uint16_t>> brute_subgroups(const STable& t) {
  if (t.size() > 64) throw std::invalid_argument("brute_subgroups: order > 64");
  std::vector<std::vector<uint16_t>> subs;
  auto seen = [&](const std::vector<uint16_t>& m) {
    return std::find(subs.begin(), subs.end(), m) != subs.end();
  };
  subs.push_back({static_cast<uint16_t>(t.id())});
  for (size_t i = 0; i < subs.size(); ++i) {
    std::vector<uint16_t> base = subs[i];
    for (int x = 0; x < t.size(); ++x) {
      if (std::binary_search(base.begin(), base.end(), static_cast<uint16_t>(x))) continue;
      std::vector<uint16_t> seed = base;
      seed.push_back(static_cast<uint16_t>(x));
      std::vector<uint16_t> c = t.closure(seed);
      if (!seen(c)) subs.push_back(std::move(c));
    }
  }
  std::sort(subs.begin(), subs.end());
  return subs;
}

namespace {

void collect_factorizations(const Lattice& lat, int v,
                            std::vector<std::vector<std::vector<int>>>& memo,
                            std::vector<char>& done) {
  if (done[v]) return;
  std::vector<std::vector<int>> result = {{v}};
  const SubgroupRef& node = lat.node(v);
  // Splitting pairs: nontrivial A, B <= v, both normal in v, A cap B = 1,
  // |A||B| = |v|.  Normality plus the order count forces AB = v.
  std::vector<int> inside;
  for (int b = 0; b < lat.node_count(); ++b)
    if (b != v && lat.node(b).order > 1 && lat.subset(b, v)) inside.push_back(b);
  auto normal_in_v = [&](int a) {
    for (uint16_t g : node.canonical_gens)
      for (uint16_t x : lat.node(a).canonical_gens)
        if (!lat.contains_element(a, lat.table().conj(x, g))) return false;
    return true;
  };
  std::vector<int> normals;
  for (int a : inside)
    if (normal_in_v(a)) normals.push_back(a);
  for (size_t i = 0; i < normals.size(); ++i) {
    for (size_t j = i + 1; j < normals.size(); ++j) {
      int a = normals[i], b = normals[j];
      if (lat.node(a).order * lat.node(b).order != node.order) continue;
      bool meet_trivial = true;
      for (size_t w = 0; w < lat.node(a).bits.size(); ++w) {
        uint64_t inter = lat.node(a).bits[w] & lat.node(b).bits[w];
        uint64_t idbit = (static_cast<size_t>(lat.table().id()) >> 6) == w
                             ? uint64_t(1) << (lat.table().id() & 63)
                             : 0;
        if (inter != idbit) {
          meet_trivial = false;
          break;
        }
      }
      if (!meet_trivial) continue;
      collect_factorizations(lat, a, memo, done);
      collect_factorizations(lat, b, memo, done);
      for (const auto& fa : memo[a])
        for (const auto& fb : memo[b]) {
          std::vector<int> f = fa;
          f.insert(f.end(), fb.begin(), fb.end());
          std::sort(f.begin(), f.end());
          result.push_back(std::move(f));
        }
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  memo[v] = std::move(result);
  done[v] = 1;
}

}  // namespace

std::vector<std::vector<int>> direct_factorizations(const Lattice& lat) {
  std::vector<std::vector<std::vector<int>>> memo(lat.node_count());
  std::vector<char> done(lat.node_count(), 0);
  collect_factorizations(lat, lat.top(), memo, done);
  return memo[lat.top()];
}

std::vector<PermGroup> upper_central_series(const PermGroup& P) {
  if (P.order() > kMaxTableOrder) throw CapacityError("upper_central_series: group too large");
  std::vector<PermGroup> chain;
  std::vector<Perm> elems = P.elements();
  std::sort(elems.begin(), elems.end());
  std::vector<Perm> zk;  // current Z_k member list, empty means Z_0 = 1
  auto in_zk = [&](const Perm& x) {
    if (zk.empty()) return x.is_identity();
    return std::binary_search(zk.begin(), zk.end(), x);
  };
  while (true) {
    std::vector<Perm> znext;
    for (const Perm& x : elems) {
      bool ok = true;
      for (const Perm& g : P.generators())
        if (!in_zk(x.inverse() * g.inverse() * x * g)) {
          ok = false;
          break;
        }
      if (ok) znext.push_back(x);
    }
    std::sort(znext.begin(), znext.end());
    if (znext.size() == zk.size()) throw std::logic_error("upper central series stalled");
    zk = std::move(znext);
    chain.push_back(PermGroup::generated(P.degree(), zk));
    if (zk.size() == elems.size()) break;
  }
  return chain;
}

}  // namespace fusionkit
