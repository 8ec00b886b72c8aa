#include "group_table.h"

#include <algorithm>
#include <stdexcept>

#include "backtrack.h"

namespace fusionkit {

STable STable::build(const PermGroup& g) {
  if (g.order() > kMaxTableOrder)
    throw CapacityError("group too large for a dense table: order " + std::to_string(g.order()));
  STable t;
  t.elems_ = g.elements();
  std::sort(t.elems_.begin(), t.elems_.end());
  t.n_ = static_cast<int>(t.elems_.size());
  t.mul_.assign(static_cast<size_t>(t.n_) * t.n_, 0);
  t.inv_.assign(t.n_, 0);
  t.ord_.assign(t.n_, 0);
  for (int a = 0; a < t.n_; ++a) {
    if (t.elems_[a].is_identity()) t.id_ = a;
    t.ord_[a] = static_cast<uint32_t>(t.elems_[a].order());
  }
  for (int a = 0; a < t.n_; ++a) {
    for (int b = 0; b < t.n_; ++b) {
      int c = t.index_of(t.elems_[a] * t.elems_[b]);
      t.mul_[static_cast<size_t>(a) * t.n_ + b] = c;
      if (c == t.id_) t.inv_[a] = b;
    }
  }
  return t;
}

int STable::index_of(const Perm& g) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), g);
  if (it == elems_.end() || !(*it == g)) return -1;
  return static_cast<int>(it - elems_.begin());
}

int STable::power(int a, long long e) const {
  uint64_t o = ord_[a];
  long long r = e % static_cast<long long>(o);
  if (r < 0) r += o;
  int acc = id_, base = a;
  while (r > 0) {
    if (r & 1) acc = mul(acc, base);
    base = mul(base, base);
    r >>= 1;
  }
  return acc;
}

std::vector<uint16_t> STable::closure(const std::vector<uint16_t>& seed) const {
  std::vector<char> in(n_, 0);
  std::vector<uint16_t> list;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      list.push_back(static_cast<uint16_t>(x));
    }
  };
  push(id_);
  for (uint16_t s : seed) push(s);
  for (size_t i = 0; i < list.size(); ++i) {
    for (size_t j = 0; j < list.size(); ++j) {
      push(mul(list[i], list[j]));
      push(mul(list[j], list[i]));
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

bool STable::is_subgroup(const std::vector<uint16_t>& m) const {
  std::vector<char> in(n_, 0);
  for (uint16_t x : m) in[x] = 1;
  if (!in[id_]) return false;
  for (uint16_t a : m)
    for (uint16_t b : m)
      if (!in[mul(a, b)]) return false;
  return true;
}

}  // namespace fusionkit
