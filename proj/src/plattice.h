#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "group_table.h"
#include "perm_group.h"

namespace fusionkit {

// One subgroup of S.  The canonical generator list is the lexicographically
// least irredundant generating sequence under the element-table order; two
// nodes are equal iff they carry the same member set.
struct SubgroupRef {
  int lattice_id = -1;
  std::vector<uint16_t> members;  // sorted element indices
  std::vector<uint64_t> bits;     // membership bitset over element indices
  std::vector<uint16_t> canonical_gens;
  uint64_t order = 0;
  int class_id = -1;
  int normalizer = -1;   // node id of N_S(P)
  int centralizer = -1;  // node id of C_S(P)
  int center = -1;       // node id of Z(P)
  // Write-once annotation slots; the fusion layer fills them, nothing here
  // reads them.  -1 unset, else 0/1.
  int8_t flag_fully_normalized = -1;
  int8_t flag_centric = -1;
  int8_t flag_radical = -1;
  int8_t flag_essential = -1;
};

struct SClass {
  std::vector<int> nodes;  // ascending node ids
  int rep = -1;            // member with lex-least canonical generator list
  // conj_by[i] pairs with nodes[i]: nodes[i] = s * rep * s^-1 for s = conj_by[i].
  std::vector<uint16_t> conj_by;
};

// Full subgroup lattice of a p-group, built bottom-up by cyclic extension.
class Lattice {
 public:
  static Lattice build(const PermGroup& s, int p, size_t node_cap = 20000);

  const PermGroup& group() const { return s_; }
  const STable& table() const { return table_; }
  int p() const { return p_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const SubgroupRef& node(int id) const { return nodes_[id]; }
  SubgroupRef& node_mut(int id) { return nodes_[id]; }
  int top() const { return top_; }
  int bottom() const { return bottom_; }
  const std::vector<SClass>& s_classes() const { return classes_; }

  int node_of(const std::vector<uint16_t>& sorted_members) const;  // -1 absent
  // Node id of s P s^-1.
  int conj_node(int id, int s) const;
  bool subset(int a, int b) const;  // members(a) within members(b)
  bool contains_element(int id, int x) const;
  // Transitive-reduction containment edges.
  const std::vector<int>& maximal_subgroups(int id) const { return max_subs_[id]; }
  const std::vector<int>& minimal_overgroups(int id) const { return min_overs_[id]; }
  // All nodes below/above, memoized on first use (self excluded).
  const std::vector<int>& sub_nodes(int id) const;
  const std::vector<int>& super_nodes(int id) const;

  std::vector<uint16_t> conj_members(const std::vector<uint16_t>& m, int s) const;
  PermGroup node_group(int id) const;

 private:
  PermGroup s_ = PermGroup::trivial(0);
  STable table_;
  int p_ = 0;
  int top_ = -1, bottom_ = -1;
  size_t words_ = 0;
  std::vector<SubgroupRef> nodes_;
  std::vector<SClass> classes_;
  std::map<std::vector<uint64_t>, int> index_;
  std::vector<std::vector<int>> max_subs_, min_overs_;
  mutable std::vector<std::vector<int>> sub_memo_, super_memo_;
  mutable std::vector<char> sub_done_, super_done_;

  std::vector<uint64_t> bits_of(const std::vector<uint16_t>& m) const;
  int find_bits(const std::vector<uint64_t>& b) const;
  std::vector<uint16_t> canonical_generators(const std::vector<uint16_t>& members,
                                             const std::vector<uint16_t>& some_gens) const;
  friend std::vector<std::vector<int>> direct_factorizations(const Lattice&);
};

// Oracle: every subgroup of a small group, found by closing subgroup+element
// joins to a fixed point.  Requires |S| <= 64.
std::vector<std::vector<uint16_t>> brute_subgroups(const STable& t);

// All internal direct-product decompositions of S, as unordered node-id
// tuples; includes the one-factor decomposition {S}.
std::vector<std::vector<int>> direct_factorizations(const Lattice& lat);

// Z_1 < Z_2 < ... = P for a p-group P.
std::vector<PermGroup> upper_central_series(const PermGroup& P);

}  // namespace fusionkit
