#include "catalog.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fusionkit {

namespace {

uint64_t factorial(int n) {
  uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<uint64_t>(i);
  return r;
}

void check_order(const PermGroup& g, uint64_t expected, const std::string& name) {
  if (g.order() != expected) {
    throw std::runtime_error(name + ": constructed order " + std::to_string(g.order()) +
                             " != expected " + std::to_string(expected));
  }
}

Perm cycle_perm(int degree, const std::vector<int>& pts0) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i;
  for (size_t i = 0; i < pts0.size(); ++i) img[pts0[i]] = pts0[(i + 1) % pts0.size()];
  return Perm(std::move(img));
}

// Arithmetic in GF(p^e) with elements encoded as base-p digit strings
// 0..q-1.  Reduction is modulo a monic irreducible polynomial found by
// trial division; e stays tiny here so tables are affordable.
struct Gf {
  int p = 0, e = 0, q = 0;
  std::vector<int> mul_table;  // q*q
  std::vector<int> inv_table;  // q

  int add(int a, int b) const {
    int r = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
      r += ((a % p + b % p) % p) * pw;
      a /= p;
      b /= p;
      pw *= p;
    }
    return r;
  }
  int neg(int a) const {
    int r = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
      r += ((p - a % p) % p) * pw;
      a /= p;
      pw *= p;
    }
    return r;
  }
  int mul(int a, int b) const { return mul_table[a * q + b]; }
  int inv(int a) const { return inv_table[a]; }
};

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
  // m monic of degree dm; reduce a in place.
  int dm = static_cast<int>(m.size()) - 1;
  for (int d = static_cast<int>(a.size()) - 1; d >= dm; --d) {
    int c = a[d] % p;
    if (c == 0) continue;
    for (int i = 0; i <= dm; ++i) {
      int& t = a[d - dm + i];
      t = ((t - c * m[i]) % p + p * p) % p;
    }
  }
  a.resize(std::max<size_t>(1, dm));
  a.resize(dm, 0);
  return a;
}

bool poly_divides(const std::vector<int>& g, const std::vector<int>& f, int p) {
  std::vector<int> r = poly_mod(f, g, p);
  return std::all_of(r.begin(), r.end(), [](int c) { return c == 0; });
}

std::vector<int> find_irreducible(int p, int e) {
  // Monic x^e + c_{e-1}x^{e-1} + ... + c_0, scanned in lexicographic order.
  int total = 1;
  for (int i = 0; i < e; ++i) total *= p;
  for (int code = 0; code < total; ++code) {
    std::vector<int> f(e + 1, 0);
    f[e] = 1;
    int c = code;
    for (int i = 0; i < e; ++i) {
      f[i] = c % p;
      c /= p;
    }
    bool irred = true;
    for (int d = 1; irred && 2 * d <= e; ++d) {
      int nd = 1;
      for (int i = 0; i < d; ++i) nd *= p;
      for (int gc = 0; gc < nd && irred; ++gc) {
        std::vector<int> g(d + 1, 0);
        g[d] = 1;
        int t = gc;
        for (int i = 0; i < d; ++i) {
          g[i] = t % p;
          t /= p;
        }
        if (poly_divides(g, f, p)) irred = false;
      }
    }
    if (irred) return f;
  }
  throw std::runtime_error("no irreducible polynomial found");
}

Gf make_field(int p, int e) {
  Gf F;
  F.p = p;
  F.e = e;
  F.q = 1;
  for (int i = 0; i < e; ++i) F.q *= p;
  std::vector<int> m = find_irreducible(p, e);
  auto digits = [&](int a) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int v = 0, pw = 1;
    for (int i = 0; i < e; ++i) {
      v += (d[i] % p) * pw;
      pw *= p;
    }
    return v;
  };
  F.mul_table.assign(static_cast<size_t>(F.q) * F.q, 0);
  for (int a = 0; a < F.q; ++a) {
    std::vector<int> da = digits(a);
    for (int b = 0; b < F.q; ++b) {
      std::vector<int> db = digits(b);
      std::vector<int> prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      F.mul_table[static_cast<size_t>(a) * F.q + b] = encode(poly_mod(prod, m, p));
    }
  }
  F.inv_table.assign(F.q, 0);
  for (int a = 1; a < F.q; ++a)
    for (int b = 1; b < F.q; ++b)
      if (F.mul(a, b) == 1) {
        F.inv_table[a] = b;
        break;
      }
  return F;
}

int v2(uint64_t n) {
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  return v;
}

}  // namespace

PermGroup alternating(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("alternating: n out of range");
  int degree = std::max(n, 1);
  std::vector<Perm> gens;
  if (n >= 3) gens.push_back(cycle_perm(degree, {0, 1, 2}));
  if (n >= 4) {
    std::vector<int> c;
    if (n % 2 == 1) {
      for (int i = 0; i < n; ++i) c.push_back(i);
    } else {
      for (int i = 1; i < n; ++i) c.push_back(i);
    }
    gens.push_back(cycle_perm(degree, c));
  }
  PermGroup g = PermGroup::generated(degree, gens);
  check_order(g, n <= 2 ? 1 : factorial(n) / 2, "alternating(" + std::to_string(n) + ")");
  return g;
}

PermGroup symmetric(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("symmetric: n out of range");
  int degree = std::max(n, 1);
  std::vector<Perm> gens;
  if (n >= 2) gens.push_back(cycle_perm(degree, {0, 1}));
  if (n >= 3) {
    std::vector<int> c;
    for (int i = 0; i < n; ++i) c.push_back(i);
    gens.push_back(cycle_perm(degree, c));
  }
  PermGroup g = PermGroup::generated(degree, gens);
  check_order(g, factorial(n), "symmetric(" + std::to_string(n) + ")");
  return g;
}

PermGroup cyclic_group(int n) {
  if (n < 1 || n > 4096) throw std::invalid_argument("cyclic: n out of range");
  if (n == 1) return PermGroup::trivial(1);
  std::vector<int> c;
  for (int i = 0; i < n; ++i) c.push_back(i);
  PermGroup g = PermGroup::generated(n, {cycle_perm(n, c)});
  check_order(g, static_cast<uint64_t>(n), "cyclic(" + std::to_string(n) + ")");
  return g;
}

PermGroup elem_abelian(int p, int r) {
  if (p < 2 || r < 0 || r > 12) throw std::invalid_argument("elem_abelian: bad parameters");
  if (r == 0) return PermGroup::trivial(1);
  int degree = p * r;
  std::vector<Perm> gens;
  for (int b = 0; b < r; ++b) {
    std::vector<int> c;
    for (int i = 0; i < p; ++i) c.push_back(b * p + i);
    gens.push_back(cycle_perm(degree, c));
  }
  PermGroup g = PermGroup::generated(degree, gens);
  uint64_t expected = 1;
  for (int i = 0; i < r; ++i) expected *= static_cast<uint64_t>(p);
  check_order(g, expected, "elem_abelian");
  return g;
}

PermGroup dihedral_2group(int k) {
  if (k < 3 || k > 12) throw std::invalid_argument("dihedral: need 3 <= k <= 12");
  int m = 1 << (k - 1);
  std::vector<int> a(m), b(m);
  for (int x = 0; x < m; ++x) {
    a[x] = (x + 1) % m;
    b[x] = (m - x) % m;
  }
  PermGroup g = PermGroup::generated(m, {Perm(a), Perm(b)});
  check_order(g, uint64_t(1) << k, "dihedral_2group(" + std::to_string(k) + ")");
  return g;
}

PermGroup semidihedral_2group(int k) {
  if (k < 4 || k > 12) throw std::invalid_argument("semidihedral: need 4 <= k <= 12");
  int m = 1 << (k - 1);
  int s = (1 << (k - 2)) - 1;
  std::vector<int> a(m), b(m);
  for (int x = 0; x < m; ++x) {
    a[x] = (x + 1) % m;
    b[x] = (s * x) % m;
  }
  Perm pa(a), pb(b);
  PermGroup g = PermGroup::generated(m, {pa, pb});
  check_order(g, uint64_t(1) << k, "semidihedral_2group(" + std::to_string(k) + ")");
  if (pa.order() != static_cast<uint64_t>(m) || pb.order() != 2)
    throw std::runtime_error("semidihedral: generator orders wrong");
  if (!(pb * pa * pb.inverse() == pa.power(s)))
    throw std::runtime_error("semidihedral: relation b a b^-1 = a^(2^(k-2)-1) fails");
  return g;
}

PermGroup quaternion_2group(int k) {
  if (k < 3 || k > 9) throw std::invalid_argument("quaternion: need 3 <= k <= 9");
  int m = 1 << (k - 1);  // |<a>|
  int n = 2 * m;         // group order; regular action points are a^i b^j
  auto idx = [&](int i, int j) { return ((i % m + m) % m) + j * m; };
  std::vector<int> la(n), lb(n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < 2; ++j) {
      la[idx(i, j)] = idx(i + 1, j);
      lb[idx(i, j)] = j == 0 ? idx(-i, 1) : idx(m / 2 - i, 0);
    }
  }
  PermGroup g = PermGroup::generated(n, {Perm(la), Perm(lb)});
  check_order(g, static_cast<uint64_t>(n), "quaternion_2group(" + std::to_string(k) + ")");
  int involutions = 0;
  g.for_each_element([&](const Perm& x) {
    if (!x.is_identity() && x.order() == 2) ++involutions;
    return true;
  });
  if (involutions != 1) throw std::runtime_error("quaternion: involution count != 1");
  return g;
}

PermGroup psl2(int q) {
  if (q < 3 || q > 121 || q % 2 == 0) throw std::invalid_argument("psl2: q must be an odd prime power <= 121");
  int p = 0;
  for (int d = 3; d * d <= q; d += 2)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q;
  int e = 0, t = q;
  while (t > 1) {
    if (t % p != 0) throw std::invalid_argument("psl2: q is not a prime power");
    t /= p;
    ++e;
  }
  Gf F = make_field(p, e);
  // Points of the projective line: x in F as [x:1], plus q = [1:0].
  int deg = q + 1;
  auto act = [&](int a, int b, int c, int d) {
    std::vector<int> img(deg);
    for (int pt = 0; pt < deg; ++pt) {
      int x, y;
      if (pt < q) {
        x = pt;
        y = 1;
      } else {
        x = 1;
        y = 0;
      }
      int nx = F.add(F.mul(a, x), F.mul(b, y));
      int ny = F.add(F.mul(c, x), F.mul(d, y));
      img[pt] = ny == 0 ? q : F.mul(nx, F.inv(ny));
    }
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  int basis = 1;
  for (int i = 0; i < e; ++i) {
    gens.push_back(act(1, basis, 0, 1));
    gens.push_back(act(1, 0, basis, 1));
    basis *= p;
  }
  PermGroup g = PermGroup::generated(deg, gens);
  uint64_t uq = static_cast<uint64_t>(q);
  check_order(g, uq * (uq * uq - 1) / 2, "psl2(" + std::to_string(q) + ")");
  // Sylow 2-subgroups are dihedral of order 2^(v2(q^2-1)-1); the checked
  // group order already pins that 2-part.
  if (v2(g.order()) != v2(uq * uq - 1) - 1)
    throw std::runtime_error("psl2: unexpected 2-part");
  return g;
}

PermGroup m11() {
  Perm a = Perm::parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11);
  Perm b = Perm::parse_cycles("(3 7 11 8)(4 10 5 6)", 11);
  PermGroup g = PermGroup::generated(11, {a, b});
  check_order(g, 7920, "m11");
  return g;
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  int da = a.degree(), db = b.degree();
  int deg = da + db;
  std::vector<Perm> gens;
  for (const Perm& g : a.generators()) gens.push_back(g.extended(deg));
  for (const Perm& g : b.generators()) {
    std::vector<int> img(deg);
    for (int i = 0; i < da; ++i) img[i] = i;
    for (int i = 0; i < db; ++i) img[da + i] = da + g[i];
    gens.push_back(Perm(std::move(img)));
  }
  PermGroup g = PermGroup::generated(deg, gens);
  check_order(g, a.order() * b.order(), "direct_product");
  return g;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"cyclic:2", "cyclic of order 2", 2, 2, false},
      {"cyclic:3", "cyclic of order 3", 3, 3, false},
      {"cyclic:4", "cyclic of order 4", 4, 2, false},
      {"cyclic:8", "cyclic of order 8", 8, 2, false},
      {"cyclic:9", "cyclic of order 9", 9, 3, false},
      {"elemabelian:2:2", "elementary abelian of order 4", 4, 2, false},
      {"elemabelian:3:2", "elementary abelian of order 9", 9, 3, false},
      {"dihedral:3", "dihedral of order 8", 8, 2, false},
      {"dihedral:4", "dihedral of order 16", 16, 2, false},
      {"semidihedral:4", "semidihedral of order 16", 16, 2, false},
      {"quaternion:3", "quaternion of order 8", 8, 2, false},
      {"sym:3", "symmetric on 3 points", 6, 3, false},
      {"sym:4", "symmetric on 4 points", 24, 2, false},
      {"sym:6", "symmetric on 6 points", 720, 2, false},
      {"alt:4", "alternating on 4 points", 12, 2, false},
      {"alt:5", "alternating on 5 points", 60, 2, false},
      {"alt:6", "alternating on 6 points", 360, 2, false},
      {"alt:8", "alternating on 8 points", 20160, 2, true},
      {"alt:9", "alternating on 9 points", 181440, 3, true},
      {"alt:11", "alternating on 11 points", 19958400, 3, true},
      {"psl2:5", "PSL(2,5) on 6 points", 60, 2, false},
      {"psl2:7", "PSL(2,7) on 8 points", 168, 2, false},
      {"psl2:9", "PSL(2,9) on 10 points", 360, 2, false},
      {"m11", "Mathieu group on 11 points", 7920, 2, false},
  };
  return entries;
}

namespace {

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer in " + what + ": '" + s + "'");
  }
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

GroupSpec group_from_selector(const std::string& selector) {
  std::string sel = trimmed(selector);
  if (sel == "m11") return {m11(), std::nullopt};
  size_t colon = sel.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad group selector '" + sel + "'");
  std::string kind = sel.substr(0, colon);
  std::string rest = sel.substr(colon + 1);
  if (kind == "file") return load_group_file(rest);
  if (kind == "elemabelian") {
    size_t c2 = rest.find(':');
    if (c2 == std::string::npos)
      throw std::invalid_argument("elemabelian selector needs p and r");
    int p = parse_int(rest.substr(0, c2), "selector");
    int r = parse_int(rest.substr(c2 + 1), "selector");
    return {elem_abelian(p, r), std::nullopt};
  }
  int arg = parse_int(rest, "selector");
  if (kind == "alt") return {alternating(arg), std::nullopt};
  if (kind == "sym") return {symmetric(arg), std::nullopt};
  if (kind == "cyclic") return {cyclic_group(arg), std::nullopt};
  if (kind == "dihedral") return {dihedral_2group(arg), std::nullopt};
  if (kind == "semidihedral") return {semidihedral_2group(arg), std::nullopt};
  if (kind == "quaternion") return {quaternion_2group(arg), std::nullopt};
  if (kind == "psl2") return {psl2(arg), std::nullopt};
  throw std::invalid_argument("unknown group selector kind '" + kind + "'");
}

GroupSpec parse_group_file_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int degree = -1;
  std::optional<int> p;
  bool in_gens = false;
  std::vector<Perm> gens;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    if (!in_gens) {
      size_t colon = t.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("group file: expected 'key: value' line, got '" + t + "'");
      std::string key = trimmed(t.substr(0, colon));
      std::string val = trimmed(t.substr(colon + 1));
      if (key == "degree") {
        degree = parse_int(val, "degree");
        if (degree < 1 || degree > 2048) throw std::invalid_argument("group file: degree out of range");
      } else if (key == "p") {
        p = parse_int(val, "p");
        if (*p < 2) throw std::invalid_argument("group file: p must be >= 2");
      } else if (key == "generators") {
        if (!val.empty()) throw std::invalid_argument("group file: generators header takes no value");
        if (degree < 0) throw std::invalid_argument("group file: degree must come before generators");
        in_gens = true;
      } else {
        throw std::invalid_argument("group file: unknown key '" + key + "'");
      }
    } else {
      gens.push_back(Perm::parse_cycles(t, degree));
    }
  }
  if (!in_gens) throw std::invalid_argument("group file: missing generators section");
  return {PermGroup::generated(degree, gens), p};
}

GroupSpec load_group_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_group_file_text(ss.str());
}

}  // namespace fusionkit
