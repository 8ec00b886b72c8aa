#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fusionkit {

// Permutation of {0,...,n-1} stored by images.  Text I/O uses 1-based
// cycle notation, e.g. "(1 2 3)(4 5)"; the identity prints as "()".
class Perm {
public:
  Perm() = default;
  explicit Perm(int degree) : img_(degree) {
    for (int i = 0; i < degree; ++i) img_[i] = i;
  }
  explicit Perm(std::vector<int> images) : img_(std::move(images)) {}

  // Throws std::invalid_argument on malformed input or out-of-range points.
  static Perm parse_cycles(const std::string& text, int degree);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  // (a*b)(x) = a(b(x))
  Perm operator*(const Perm& b) const;
  // g * this * g^-1
  Perm conjugated_by(const Perm& g) const;
  Perm power(long long e) const;
  uint64_t order() const;

  // Lengths of nontrivial cycles, descending.
  std::vector<int> cycle_type() const;
  std::vector<int> support() const;
  // Extend to a larger degree, fixing the new points.
  Perm extended(int degree) const;

  std::string to_cycles() const;

  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

private:
  std::vector<int> img_;
};

struct PermHash {
  size_t operator()(const Perm& p) const {
    uint64_t h = 1469598103934665603ull;
    for (int x : p.images()) {
      h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

uint64_t lcm_u64(uint64_t a, uint64_t b);

}  // namespace fusionkit
