#pragma once

// Finite groupoids as explicit tables, the groups of order <= 8, and
// isomorphism search. Convention: (a, b) is composable iff
// source(a) == target(b), and mul(a, b) = a o b. In the pair groupoid the
// arrow (x, y) has target x and source y.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsg/exact_linalg.hpp"

namespace rsg {

struct FiniteGroupoid {
  std::string name;
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::vector<std::uint32_t> source, target;  // arrow -> object
  std::vector<std::uint32_t> unit;            // object -> arrow
  std::vector<std::uint32_t> inverse;         // arrow -> arrow
  std::vector<std::vector<std::optional<std::uint32_t>>> mul;

  std::size_t size() const { return arrows.size(); }
  bool composable(std::uint32_t a, std::uint32_t b) const { return source[a] == target[b]; }
};

struct GroupoidVerdict {
  bool holds = true;
  std::string failure;  // first violated law
  std::string detail;
  explicit operator bool() const { return holds; }
};

inline GroupoidVerdict validate(const FiniteGroupoid& g) {
  const std::size_t n = g.size(), k = g.objects.size();
  auto fail = [](std::string law, std::string detail) { return GroupoidVerdict{false, std::move(law), std::move(detail)}; };
  if (g.source.size() != n || g.target.size() != n || g.inverse.size() != n || g.mul.size() != n ||
      g.unit.size() != k)
    return fail("shape", "table sizes do not match the arrow and object counts");
  for (std::size_t a = 0; a < n; ++a) {
    if (g.source[a] >= k || g.target[a] >= k || g.inverse[a] >= n || g.mul[a].size() != n)
      return fail("shape", "arrow " + g.arrows[a] + " has out-of-range data");
    for (std::size_t b = 0; b < n; ++b) {
      const auto& ab = g.mul[a][b];
      const bool comp = g.composable(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
      if (comp != ab.has_value())
        return fail("domain", "mul(" + g.arrows[a] + ", " + g.arrows[b] + ") is defined exactly when composable");
      if (ab && (*ab >= n || g.target[*ab] != g.target[a] || g.source[*ab] != g.source[b]))
        return fail("endpoints", "mul(" + g.arrows[a] + ", " + g.arrows[b] + ") has wrong source or target");
    }
  }
  for (std::size_t x = 0; x < k; ++x) {
    const auto e = g.unit[x];
    if (e >= n || g.source[e] != x || g.target[e] != x) return fail("unit", "unit of " + g.objects[x] + " is not a loop");
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    if (*g.mul[g.unit[g.target[a]]][a] != a || *g.mul[a][g.unit[g.source[a]]] != a)
      return fail("unit", "unit law fails at " + g.arrows[a]);
    const auto i = g.inverse[a];
    if (g.source[i] != g.target[a] || g.target[i] != g.source[a] || *g.mul[a][i] != g.unit[g.target[a]] ||
        *g.mul[i][a] != g.unit[g.source[a]])
      return fail("inverse", "inverse law fails at " + g.arrows[a]);
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      if (!g.mul[a][b]) continue;
      for (std::uint32_t c = 0; c < n; ++c) {
        if (!g.mul[b][c]) continue;
        if (g.mul[*g.mul[a][b]][c] != g.mul[a][*g.mul[b][c]])
          return fail("associativity", "(" + g.arrows[a] + " " + g.arrows[b] + ") " + g.arrows[c]);
      }
    }
  return {};
}

inline void require_valid(const FiniteGroupoid& g) {
  if (auto v = validate(g); !v) throw Error("invalid groupoid " + g.name + ": " + v.failure + ": " + v.detail);
}

inline FiniteGroupoid pair_groupoid(const std::string& name, const std::vector<std::string>& xs) {
  FiniteGroupoid g;
  g.name = name;
  g.objects = xs;
  const auto k = static_cast<std::uint32_t>(xs.size());
  for (std::uint32_t x = 0; x < k; ++x)
    for (std::uint32_t y = 0; y < k; ++y) {
      g.arrows.push_back("(" + xs[x] + "," + xs[y] + ")");
      g.target.push_back(x);
      g.source.push_back(y);
      g.inverse.push_back(y * k + x);
    }
  for (std::uint32_t x = 0; x < k; ++x) g.unit.push_back(x * k + x);
  g.mul.assign(k * k, std::vector<std::optional<std::uint32_t>>(k * k));
  for (std::uint32_t a = 0; a < k * k; ++a)
    for (std::uint32_t b = 0; b < k * k; ++b)
      if (a % k == b / k) g.mul[a][b] = (a / k) * k + b % k;
  return g;
}

inline FiniteGroupoid disjoint_union(const std::string& name, const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid g;
  g.name = name;
  const auto na = static_cast<std::uint32_t>(a.size()), ka = static_cast<std::uint32_t>(a.objects.size());
  for (const auto& o : a.objects) g.objects.push_back(a.name + ":" + o);
  for (const auto& o : b.objects) g.objects.push_back(b.name + ":" + o);
  for (const auto& x : a.arrows) g.arrows.push_back(a.name + ":" + x);
  for (const auto& x : b.arrows) g.arrows.push_back(b.name + ":" + x);
  g.source = a.source, g.target = a.target, g.inverse = a.inverse, g.unit = a.unit;
  for (std::size_t i = 0; i < b.size(); ++i) {
    g.source.push_back(b.source[i] + ka);
    g.target.push_back(b.target[i] + ka);
    g.inverse.push_back(b.inverse[i] + na);
  }
  for (auto u : b.unit) g.unit.push_back(u + na);
  const std::size_t n = g.arrows.size();
  g.mul.assign(n, std::vector<std::optional<std::uint32_t>>(n));
  for (std::uint32_t x = 0; x < na; ++x)
    for (std::uint32_t y = 0; y < na; ++y) g.mul[x][y] = a.mul[x][y];
  for (std::uint32_t x = 0; x < b.size(); ++x)
    for (std::uint32_t y = 0; y < b.size(); ++y)
      if (b.mul[x][y]) g.mul[na + x][na + y] = *b.mul[x][y] + na;
  return g;
}

// Multiplication table of a finite group; mul[a][b] = a * b.
struct GroupTable {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::vector<std::uint32_t>> mul;

  std::size_t order() const { return elements.size(); }
};

// One-object groupoid; throws when the table is not a group.
inline FiniteGroupoid group_groupoid(const GroupTable& t) {
  const auto n = static_cast<std::uint32_t>(t.order());
  if (n == 0 || t.mul.size() != n) throw Error("group " + t.name + ": table must be square and non-empty");
  for (const auto& row : t.mul)
    if (row.size() != n || std::any_of(row.begin(), row.end(), [n](auto v) { return v >= n; }))
      throw Error("group " + t.name + ": table entries out of range");
  std::optional<std::uint32_t> e;
  for (std::uint32_t a = 0; a < n && !e; ++a) {
    bool ok = true;
    for (std::uint32_t b = 0; b < n; ++b) ok = ok && t.mul[a][b] == b && t.mul[b][a] == b;
    if (ok) e = a;
  }
  if (!e) throw Error("group " + t.name + ": no identity element");
  FiniteGroupoid g;
  g.name = t.name;
  g.objects = {"*"};
  g.arrows = t.elements;
  g.source.assign(n, 0);
  g.target.assign(n, 0);
  g.unit = {*e};
  for (std::uint32_t a = 0; a < n; ++a) {
    std::optional<std::uint32_t> inv;
    for (std::uint32_t b = 0; b < n && !inv; ++b)
      if (t.mul[a][b] == *e) inv = b;
    if (!inv) throw Error("group " + t.name + ": " + t.elements[a] + " has no inverse");
    g.inverse.push_back(*inv);
  }
  g.mul.assign(n, std::vector<std::optional<std::uint32_t>>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) g.mul[a][b] = t.mul[a][b];
  require_valid(g);
  return g;
}

// Tables of the 14 groups of order at most 8, each generated from a concrete model.
namespace groups {

inline GroupTable from_law(std::string name, std::vector<std::string> elements,
                           const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& law) {
  GroupTable t{std::move(name), std::move(elements), {}};
  const auto n = static_cast<std::uint32_t>(t.elements.size());
  t.mul.assign(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t.mul[a][b] = law(a, b);
  return t;
}

// Z/n1 x Z/n2 x ..., elements indexed in mixed radix.
inline GroupTable abelian(const std::vector<std::uint32_t>& factors) {
  std::string name;
  std::uint32_t n = 1;
  for (auto f : factors) {
    name += (name.empty() ? "" : "x") + ("Z" + std::to_string(f));
    n *= f;
  }
  auto digits = [&](std::uint32_t v) {
    std::vector<std::uint32_t> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) d[i] = v % factors[i], v /= factors[i];
    return d;
  };
  std::vector<std::string> elems;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::string s;
    for (auto d : digits(v)) s += std::to_string(d);
    elems.push_back(s);
  }
  return from_law(name, elems, [&](std::uint32_t a, std::uint32_t b) {
    const auto x = digits(a), y = digits(b);
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) v = v * factors[i] + (x[i] + y[i]) % factors[i];
    return v;
  });
}

// Dihedral group of order 2n: r^i s^j, with s r s = r^-1.
inline GroupTable dihedral(std::uint32_t n) {
  std::vector<std::string> elems;
  for (std::uint32_t j = 0; j < 2; ++j)
    for (std::uint32_t i = 0; i < n; ++i) elems.push_back((j ? "sr" : "r") + std::to_string(i));
  return from_law("D" + std::to_string(n), elems, [n](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t i = a % n, j = a / n, k = b % n, l = b / n;
    // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
    const std::uint32_t e = j ? (i + n - k) % n : (i + k) % n;
    return ((j + l) % 2) * n + e;
  });
}

// Quaternion group {+-1, +-i, +-j, +-k}.
inline GroupTable quaternion() {
  // units 1,i,j,k as 0..3; product table of unit quaternions up to sign.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const std::vector<std::string> elems{"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  return from_law("Q8", elems, [](std::uint32_t a, std::uint32_t b) {
    const int s = (a >= 4 ? -1 : 1) * (b >= 4 ? -1 : 1) * sign[a % 4][b % 4];
    return static_cast<std::uint32_t>(unit[a % 4][b % 4] + (s < 0 ? 4 : 0));
  });
}

inline std::vector<GroupTable> up_to_order_8() {
  return {abelian({1}),    abelian({2}),    abelian({3}),    abelian({4}),       abelian({2, 2}),
          abelian({5}),    abelian({6}),    dihedral(3),     abelian({7}),       abelian({8}),
          abelian({4, 2}), abelian({2, 2, 2}), dihedral(4),  quaternion()};
}

}  // namespace groups

// Arrow bijection f with mul, source/target (through an induced object map),
// units and inverses preserved; nullopt when none exists.
inline std::optional<std::vector<std::uint32_t>> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  const std::size_t n = g.size();
  if (n != h.size() || g.objects.size() != h.objects.size()) return std::nullopt;
  std::vector<std::int64_t> f(n, -1), obj(g.objects.size(), -1);
  std::vector<bool> used(n, false);

  auto consistent = [&](std::uint32_t a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (f[b] < 0) continue;
      const auto fa = static_cast<std::uint32_t>(f[a]), fb = static_cast<std::uint32_t>(f[b]);
      for (auto [x, y, fx, fy] : {std::array{a, b, fa, fb}, std::array{b, a, fb, fa}}) {
        const auto& m = g.mul[x][y];
        const auto& mh = h.mul[fx][fy];
        if (m.has_value() != mh.has_value()) return false;
        if (m && f[*m] >= 0 && static_cast<std::uint32_t>(f[*m]) != *mh) return false;
      }
    }
    return true;
  };

  // Object map, kept injective.
  auto bind = [&](std::uint32_t x, std::uint32_t y) {
    if (obj[x] >= 0) return obj[x] == y;
    if (std::count(obj.begin(), obj.end(), y)) return false;
    obj[x] = y;
    return true;
  };

  std::function<bool(std::uint32_t)> extend = [&](std::uint32_t a) -> bool {
    if (a == n) return true;
    for (std::uint32_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      const auto saved = obj;
      if (bind(g.source[a], h.source[c]) && bind(g.target[a], h.target[c])) {
        f[a] = c;
        used[c] = true;
        if (consistent(a) && extend(a + 1)) return true;
        used[c] = false;
        f[a] = -1;
      }
      obj = saved;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  std::vector<std::uint32_t> out;
  for (auto v : f) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

inline nlohmann::json to_json(const FiniteGroupoid& g) {
  nlohmann::json arrows = nlohmann::json::array(), table = nlohmann::json::array();
  for (std::size_t a = 0; a < g.size(); ++a)
    arrows.push_back({{"name", g.arrows[a]},
                      {"source", g.objects[g.source[a]]},
                      {"target", g.objects[g.target[a]]},
                      {"inverse", g.arrows[g.inverse[a]]}});
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (g.mul[a][b]) table.push_back({g.arrows[a], g.arrows[b], g.arrows[*g.mul[a][b]]});
  nlohmann::json units = nlohmann::json::object();
  for (std::size_t x = 0; x < g.objects.size(); ++x) units[g.objects[x]] = g.arrows[g.unit[x]];
  return {{"name", g.name}, {"objects", g.objects}, {"arrows", arrows}, {"units", units}, {"mul", table}};
}

}  // namespace rsg
