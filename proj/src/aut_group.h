#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "perm.h"
#include "perm_group.h"

namespace fusionkit {

// An automorphism or isomorphism given by images of a fixed generating
// sequence; img[i] is the image of the i-th domain generator.
struct GenImageMap {
  std::vector<Perm> img;
  auto operator<=>(const GenImageMap&) const = default;
};

// Breadth-first element enumeration of a small group over a fixed generator
// sequence; each element carries the tree edge it was reached by, so
// generator-image maps can be evaluated anywhere.
class ElementTable {
 public:
  static ElementTable build(const PermGroup& g, const std::vector<Perm>& gens);

  int size() const { return static_cast<int>(elems_.size()); }
  const Perm& element(int i) const { return elems_[i]; }
  int index_of(const Perm& x) const;
  int step(int i, int j) const { return edges_[static_cast<size_t>(i) * ngens_ + j]; }

  // Value at x of the homomorphism sending generator i to gen_images[i].
  Perm apply(const std::vector<Perm>& gen_images, const Perm& x, int out_degree) const;

 private:
  int ngens_ = 0;
  std::vector<Perm> elems_;  // BFS order, elems_[0] = identity
  std::vector<int> parent_, via_;
  std::vector<int> edges_;
  std::unordered_map<Perm, int, PermHash> index_;
};

struct AutGroup {
  PermGroup group = PermGroup::trivial(0);
  std::vector<Perm> dom_gens;  // irredundant generating sequence
  ElementTable tbl;            // BFS over dom_gens
  std::vector<GenImageMap> auts;  // complete, sorted by image tuple
  uint64_t aut_order = 0;
  uint64_t inn_order = 0;

  Perm apply(const GenImageMap& a, const Perm& x) const;
  GenImageMap compose(const GenImageMap& a, const GenImageMap& b) const;  // a after b
  GenImageMap inverse_map(const GenImageMap& a) const;
  GenImageMap inner_map(const Perm& h) const;  // conjugation by h
  GenImageMap identity_map() const;
  int find(const GenImageMap& a) const;  // index into auts, -1 if absent
  // Partition of auts into Inn-cosets; each class sorted, classes ordered by
  // least member.
  std::vector<std::vector<int>> out_classes() const;
};

// Complete automorphism group by generator-image backtracking; requires
// |G| <= group_cap.  The image of the first generator runs over conjugacy
// class representatives only; the full list is expanded with witnesses.
AutGroup automorphism_group(const PermGroup& g, uint64_t group_cap = 10000,
                            uint64_t enum_cap = 200000);

// Visits isomorphisms G -> H (images of an irredundant generating sequence
// of G, returned alongside); stops early when visit returns true.  Returns
// whether any isomorphism exists.
bool for_each_isomorphism(const PermGroup& g, const PermGroup& h,
                          std::vector<Perm>& dom_gens_out,
                          const std::function<bool(const GenImageMap&)>& visit,
                          uint64_t group_cap = 10000);

}  // namespace fusionkit
