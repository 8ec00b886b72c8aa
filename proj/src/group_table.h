#pragma once

#include <cstdint>
#include <vector>

#include "perm_group.h"

namespace fusionkit {

// Hard bound on dense-table construction; callers enforce their own
// (smaller) configured caps.
constexpr uint64_t kMaxTableOrder = 2048;

// Dense multiplication table of a small group.  Elements are indexed in the
// lexicographic order of their image vectors, so for a fixed degree the
// indexing is canonical.
class STable {
 public:
  static STable build(const PermGroup& g);

  int size() const { return n_; }
  int id() const { return id_; }
  const std::vector<Perm>& elements() const { return elems_; }
  const Perm& element(int i) const { return elems_[i]; }
  // -1 if the permutation is not an element.
  int index_of(const Perm& g) const;

  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  // g a g^-1
  int conj(int a, int g) const { return mul(mul(g, a), inv(g)); }
  // [a,b] = a^-1 b^-1 a b
  int comm(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  uint64_t elem_order(int a) const { return ord_[a]; }
  int power(int a, long long e) const;

  // Subgroup generated by the seed indices, as a sorted member list.
  std::vector<uint16_t> closure(const std::vector<uint16_t>& seed) const;
  bool is_subgroup(const std::vector<uint16_t>& sorted_members) const;

 private:
  int n_ = 0, id_ = 0;
  std::vector<Perm> elems_;
  std::vector<int32_t> mul_, inv_;
  std::vector<uint32_t> ord_;
};

}  // namespace fusionkit
