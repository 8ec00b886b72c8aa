#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "perm.h"

namespace fusionkit {

// Finite permutation group with a deterministic stabilizer chain.
// Construction, orders, membership and element enumeration are exact;
// iteration orders are fixed so repeated runs agree.
class PermGroup {
public:
  struct Level {
    int base_point = -1;
    std::vector<int> orbit;              // discovery order, orbit[0] == base_point
    std::vector<Perm> transversal;       // transversal[k](base_point) == orbit[k]
    std::vector<int> where;              // point -> index in orbit, or -1
    std::vector<Perm> gens;              // generators of this level's stabilizer group
  };

  static PermGroup trivial(int degree);
  // base_prefix: preferred initial base points (used by backtrack searches).
  static PermGroup generated(int degree, const std::vector<Perm>& gens,
                             const std::vector<int>* base_prefix = nullptr);

  int degree() const { return degree_; }
  uint64_t order() const { return order_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Level>& chain() const { return levels_; }

  bool contains(const Perm& g) const;
  // Residue after sifting through levels [from, end).
  Perm sift(const Perm& g, size_t from = 0) const;

  bool is_trivial() const { return order_ == 1; }
  bool is_abelian() const;
  // True if every generator order is a power of p (p-group test is exact
  // via the group order).
  bool is_pgroup(int p) const;

  // Rebuild with the given base points first.
  PermGroup with_base_prefix(const std::vector<int>& pts) const;

  // Deterministic enumeration; f returning false stops early.
  void for_each_element(const std::function<bool(const Perm&)>& f) const;
  // Materializes all elements; caller must ensure the order is sane.
  std::vector<Perm> elements() const;

  bool is_subgroup_of(const PermGroup& g) const;
  bool same_group(const PermGroup& other) const;

  PermGroup conjugated(const Perm& g) const;

private:
  int degree_ = 0;
  uint64_t order_ = 1;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;

  void rebuild_orbit(size_t i);
};

// <gens of g, extra> as a subgroup of the same symmetric group.
PermGroup join(const PermGroup& g, const std::vector<Perm>& extra);
// Smallest subgroup containing seeds and normalized by all generators of g.
PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds);
PermGroup derived_subgroup(const PermGroup& g);

uint64_t p_part(uint64_t n, int p);
int p_valuation(uint64_t n, int p);

}  // namespace fusionkit
