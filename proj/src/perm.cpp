#include "perm.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fusionkit {

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / std::gcd(a, b) * b; }

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < degree(); ++i) inv[img_[i]] = i;
  return Perm(std::move(inv));
}

Perm Perm::operator*(const Perm& b) const {
  std::vector<int> r(img_.size());
  for (int i = 0; i < degree(); ++i) r[i] = img_[b.img_[i]];
  return Perm(std::move(r));
}

Perm Perm::conjugated_by(const Perm& g) const {
  std::vector<int> r(img_.size());
  for (int i = 0; i < degree(); ++i) r[g.img_[i]] = g.img_[img_[i]];
  return Perm(std::move(r));
}

Perm Perm::power(long long e) const {
  if (e < 0) return inverse().power(-e);
  Perm acc(degree());
  Perm base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

uint64_t Perm::order() const {
  uint64_t m = 1;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = img_[j];
      ++len;
    }
    m = lcm_u64(m, static_cast<uint64_t>(len));
  }
  return m;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> lens;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = img_[j];
      ++len;
    }
    if (len > 1) lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

std::vector<int> Perm::support() const {
  std::vector<int> s;
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) s.push_back(i);
  return s;
}

Perm Perm::extended(int degree) const {
  if (degree < this->degree())
    throw std::invalid_argument("extended: degree shrinks");
  std::vector<int> r(degree);
  for (int i = 0; i < degree; ++i) r[i] = i < this->degree() ? img_[i] : i;
  return Perm(std::move(r));
}

Perm Perm::parse_cycles(const std::string& text, int degree) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i;
  std::vector<char> used(degree, 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
  };
  skip_ws();
  if (i == text.size()) throw std::invalid_argument("empty permutation");
  bool any = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i == text.size() || !isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("expected point in cycle notation");
      int v = 0;
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1 || v > degree) throw std::invalid_argument("point out of range");
      cyc.push_back(v - 1);
    }
    any = true;
    for (int x : cyc) {
      if (used[x]) throw std::invalid_argument("repeated point in cycles");
      used[x] = 1;
    }
    for (size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k]] = cyc[(k + 1) % cyc.size()];
  }
  if (!any) throw std::invalid_argument("empty permutation");
  return Perm(std::move(img));
}

std::string Perm::to_cycles() const {
  std::string out;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = 1;
      continue;
    }
    out += '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = img_[j];
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

}  // namespace fusionkit
