#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perm_group.h"

namespace fusionkit {

// Named example groups.  Every constructor checks the expected order (and
// the defining relations where stated) and throws std::runtime_error if the
// construction does not match.

PermGroup alternating(int n);
PermGroup symmetric(int n);
PermGroup cyclic_group(int n);
// (C_p)^r on r disjoint p-cycles.
PermGroup elem_abelian(int p, int r);
// Order 2^k, k >= 3; natural action on 2^{k-1} points.
PermGroup dihedral_2group(int k);
// Order 2^k, k >= 4; relation b a b^-1 = a^{2^{k-2}-1} is verified.
PermGroup semidihedral_2group(int k);
// Generalized quaternion of order 2^k, k >= 3, in its regular action;
// the unique involution is verified.
PermGroup quaternion_2group(int k);
// PSL_2(q) on the projective line, q an odd prime power; order q(q^2-1)/2.
PermGroup psl2(int q);
// Mathieu group on 11 points, order 7920.
PermGroup m11();

// External direct product on disjoint supports.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

struct CatalogEntry {
  std::string selector;
  std::string summary;
  uint64_t expected_order;
  int default_p;
  bool heavy;  // excluded from the exhaustive property sweeps
};

const std::vector<CatalogEntry>& catalog_entries();

struct GroupSpec {
  PermGroup group;
  std::optional<int> file_p;  // prime read from a group file, if any
};

// Selector forms: alt:n, sym:n, cyclic:n, dihedral:k, semidihedral:k,
// quaternion:k, elemabelian:p:r, psl2:q, m11, file:path.
// Throws std::invalid_argument on malformed selectors or files.
GroupSpec group_from_selector(const std::string& selector);
GroupSpec parse_group_file_text(const std::string& text);
GroupSpec load_group_file(const std::string& path);

}  // namespace fusionkit
