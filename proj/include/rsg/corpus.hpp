#pragma once

// Builders for the worked examples and the named corpus entries with their
// expected report fragments.

#include <functional>
#include <variant>

#include "rsg/groupoid.hpp"
#include "rsg/rsg.hpp"

namespace rsg {

using AnyRsg = std::variant<FiniteRsg, LinearRsg>;

inline FinSet zmod_set(std::uint32_t k) {
  std::vector<std::string> e;
  for (std::uint32_t i = 0; i < k; ++i) e.push_back(std::to_string(i));
  return FinSet("Z/" + std::to_string(k), e);
}

inline std::uint32_t mod(long v, long k) { return static_cast<std::uint32_t>(((v % k) + k) % k); }

// L = {(g1, g2, g3) : g1 g2 composable, g3 = (g1 g2)^-1}, I = inverse.
inline FiniteRsg from_groupoid(const FiniteGroupoid& g) {
  require_valid(g);
  std::vector<std::array<std::uint32_t, 3>> l;
  for (std::uint32_t a = 0; a < g.size(); ++a)
    for (std::uint32_t b = 0; b < g.size(); ++b)
      if (g.mul[a][b]) l.push_back({a, b, g.inverse[*g.mul[a][b]]});
  return finite_rsg(g.name, FinSet(g.name, g.arrows), l, g.inverse);
}

inline FiniteRsg from_group(const GroupTable& t) { return from_groupoid(group_groupoid(t)); }

// Z/k with L = {(n, m, -n - m - 1)} and I = -n.
inline FiniteRsg counterexample_zk(long k) {
  if (k < 3) throw Error("counterexample needs k >= 3");
  std::vector<std::array<std::uint32_t, 3>> l;
  std::vector<std::uint32_t> inv;
  for (long n = 0; n < k; ++n) {
    inv.push_back(mod(-n, k));
    for (long m = 0; m < k; ++m) l.push_back({mod(n, k), mod(m, k), mod(-n - m - 1, k)});
  }
  return finite_rsg("z" + std::to_string(k) + "-counterexample", zmod_set(static_cast<std::uint32_t>(k)), l, inv);
}

// Z/k (k even) with L = {(n, m, p) : n + m + p odd} and I = -n.
inline FiniteRsg parity_counterexample(long k) {
  if (k < 4 || k % 2) throw Error("parity counterexample needs an even k >= 4");
  std::vector<std::array<std::uint32_t, 3>> l;
  std::vector<std::uint32_t> inv;
  for (long n = 0; n < k; ++n) {
    inv.push_back(mod(-n, k));
    for (long m = 0; m < k; ++m)
      for (long p = 0; p < k; ++p)
        if ((n + m + p) % 2) l.push_back({mod(n, k), mod(m, k), mod(p, k)});
  }
  return finite_rsg("parity-z" + std::to_string(k), zmod_set(static_cast<std::uint32_t>(k)), l, inv);
}

// L = lag^3 with an involution preserving lag.
inline FiniteRsg lagrangian_example(const std::string& name, const FinSet& x, std::vector<std::uint32_t> lag,
                                    const std::vector<std::uint32_t>& inv) {
  std::sort(lag.begin(), lag.end());
  const FinMap i(x, x, inv);
  for (std::uint32_t e = 0; e < x.size(); ++e)
    if (i(i(e)) != e) throw Error("lagrangian example: I is not an involution");
  for (auto e : lag)
    if (!std::binary_search(lag.begin(), lag.end(), i(e))) throw Error("lagrangian example: I does not preserve the subset");
  std::vector<std::array<std::uint32_t, 3>> l;
  for (auto a : lag)
    for (auto b : lag)
      for (auto c : lag) l.push_back({a, b, c});
  return finite_rsg(name, x, l, inv);
}

inline LinearRsg lagrangian_example(const std::string& name, const SymplecticSpace& g, const Subspace& lag,
                                    const Matrix& inv) {
  if (!is_lagrangian(g, lag)) throw Error("lagrangian example: subspace is not Lagrangian");
  if (!(inv * inv == Matrix::identity(g.dim()))) throw Error("lagrangian example: I is not an involution");
  if (!(image(lag, inv) == lag)) throw Error("lagrangian example: I does not preserve the subspace");
  const std::size_t n = g.dim();
  const Subspace cube = graphs::product(graphs::product(lag, 0, n, lag, 0, n), 0, 2 * n, lag, 0, n);
  return linear_rsg(name, g, cube, inv);
}

inline FiniteRsg finite_point() { return finite_rsg("point", FinSet("pt", {"*"}), {{0, 0, 0}}, {0}); }

inline LinearRsg linear_point() {
  return linear_rsg("linear-point", SymplecticSpace::point(), Subspace::zero(0), Matrix(0, 0));
}

// G = Vbar + V with L = {((x,y), (y,z), (z,x))} and I(x, y) = (y, x).
inline LinearRsg linear_pair_groupoid(const SymplecticSpace& v, const std::string& name = "linear-pair-groupoid") {
  const std::size_t n = v.dim();
  const SymplecticSpace g = direct_sum(v.conjugate(), v);
  auto at = [n](std::size_t slot, std::size_t half, std::size_t i) { return slot * 2 * n + half * n + i; };
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vector x(6 * n), y(6 * n), z(6 * n);
    x[at(0, 0, i)] = 1, x[at(2, 1, i)] = 1;
    y[at(0, 1, i)] = 1, y[at(1, 0, i)] = 1;
    z[at(1, 1, i)] = 1, z[at(2, 0, i)] = 1;
    rows.insert(rows.end(), {x, y, z});
  }
  Matrix flip(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) flip(i, n + i) = 1, flip(n + i, i) = 1;
  return linear_rsg(name, g, Subspace::span(rows, 6 * n), flip);
}

// Componentwise (G^n, L^n, I^n). The finite carrier is one set of tuples in
// lexicographic order.
inline FiniteRsg power(const FiniteRsg& g, std::size_t n) {
  if (n < 1) throw Error("power needs n >= 1");
  if (n == 1) return g;
  const FinSet& x = g.carrier.at(0);
  const std::size_t k = x.size();
  std::vector<std::vector<std::uint32_t>> tuples{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& t : tuples)
      for (std::uint32_t e = 0; e < k; ++e) {
        auto u = t;
        u.push_back(e);
        next.push_back(std::move(u));
      }
    tuples = std::move(next);
  }
  auto index = [k](const std::vector<std::uint32_t>& t) {
    std::uint32_t v = 0;
    for (auto e : t) v = static_cast<std::uint32_t>(v * k + e);
    return v;
  };
  std::vector<std::string> labels;
  for (const auto& t : tuples) {
    std::string s = "(";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + x.elements[t[i]];
    labels.push_back(s + ")");
  }
  const FinSet xn(x.name + "^" + std::to_string(n), labels);

  std::vector<std::uint32_t> inv_map(k);
  for (const auto& t : g.inversion.tuples()) inv_map[t[0]] = t[1];
  std::vector<std::uint32_t> inv;
  for (const auto& t : tuples) {
    std::vector<std::uint32_t> u;
    for (auto e : t) u.push_back(inv_map[e]);
    inv.push_back(index(u));
  }

  const auto& l = g.triple.tuples();
  std::vector<std::array<std::uint32_t, 3>> ln;
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    std::array<std::vector<std::uint32_t>, 3> parts;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t s = 0; s < 3; ++s) parts[s].push_back(l[choice[i]][s]);
    ln.push_back({index(parts[0]), index(parts[1]), index(parts[2])});
    std::size_t i = n;
    while (i > 0 && ++choice[i - 1] == l.size()) choice[--i] = 0;
    if (i == 0) break;
  }
  return finite_rsg(g.name + "^" + std::to_string(n), xn, ln, inv);
}

inline LinearRsg power(const LinearRsg& g, std::size_t n) {
  if (n < 1) throw Error("power needs n >= 1");
  if (n == 1) return g;
  const std::size_t d = g.carrier.dim();
  SymplecticSpace gn = g.carrier;
  LinearRelation inv = g.inversion;
  for (std::size_t i = 1; i < n; ++i) {
    gn = direct_sum(gn, g.carrier);
    inv = product(inv, g.inversion);
  }
  // Copy j of L: slot s, coordinate i of G^3 goes to slot s, block j of (G^n)^3.
  std::vector<Vector> rows;
  const Subspace& l = g.triple.graph();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t b = 0; b < l.dim(); ++b) {
      const Vector v = l.basis_vector(b);
      Vector w(3 * n * d);
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t i = 0; i < d; ++i) w[s * n * d + j * d + i] = v[s * d + i];
      rows.push_back(std::move(w));
    }
  return linear_rsg(g.name + "^" + std::to_string(n), gn, Subspace::span(rows, 3 * n * d), inv);
}

// p_1 = Id, p_k = L3 o (Id x p_(k-1)) : G^k -/-> G.
inline LinearRelation iterated_product(const LinearRsg& g, std::size_t n) {
  if (n < 1) throw Error("iterated product needs n >= 1");
  const LinearRelation l3 = derive(g).L3;
  LinearRelation p = LinearRelation::identity(g.carrier);
  for (std::size_t k = 2; k <= n; ++k) p = compose(product(LinearRelation::identity(g.carrier), p), l3);
  return p;
}

struct ReducedPower {
  LinearRsg rsg;             // on G^n, with L and I pulled back along p
  LinearRelation p;          // G^n -/-> G
  Subspace composable;       // G_(n) = domain of p
  LinearRelation identification;  // reduced space of G_(n) -/-> G
  Verdict verdict;
};

// Pulls (L, I) back to G^n along the iterated product p, whose domain is the
// coisotrope G_(n) of composable n-tuples.
inline ReducedPower reduced_power(const LinearRsg& g, std::size_t n) {
  if (n < 1) throw Error("reduced power needs n >= 1");
  const LinearRelation p = iterated_product(g, n);
  SymplecticSpace gn = g.carrier;
  for (std::size_t i = 1; i < n; ++i) gn = direct_sum(gn, g.carrier);
  const std::size_t d = g.carrier.dim();

  ReducedPower out;
  out.p = p;
  out.composable = graphs::domain(p.graph(), gn.dim());
  Verdict& v = out.verdict;
  v.checks.push_back({"reduced.coisotropic", "composable tuples form a coisotropic subspace",
                      is_coisotropic(gn, out.composable), false, {}});
  if (!v.pass()) {
    out.rsg = g;
    return out;
  }
  const ReductionRelations rr = reduction_relations(gn, out.composable);
  out.identification = compose(rr.inclusion, p);
  const auto as_map = graphs::as_map(out.identification.graph(), rr.reduced.space.dim());
  v.checks.push_back({"reduced.symplectomorphic", "p identifies the reduced space with G symplectically",
                      as_map && as_map->rows() == as_map->cols() && rank(*as_map) == d &&
                          is_canonical(out.identification).is_lagrangian,
                      false, {}});

  const LinearRelation pt = transpose(p);
  const LinearRelation inv = compose(compose(conjugate(p), g.inversion), pt);
  const LinearRelation l = compose(g.triple, transpose(product(p, product(p, p))));
  out.rsg = linear_rsg(g.name + "-reduced-" + std::to_string(n), gn, l.graph(), reshape(inv, gn.conjugate(), gn));
  return out;
}

// Expected fragment of a corpus report. `basis` records where the numbers come from.
enum class Basis { worked_example, exhaustive, consistency };

inline std::string_view to_string(Basis b) {
  switch (b) {
    case Basis::worked_example: return "worked_example";
    case Basis::exhaustive: return "exhaustive";
    case Basis::consistency: return "consistency";
  }
  return "consistency";
}

struct Expected {
  std::map<std::string, bool> axioms;  // "A1" .. "A6"
  std::optional<bool> regular;
  std::optional<std::size_t> base_size;    // |M| or dim M
  std::optional<std::size_t> arrow_count;  // |C/L2| or dim C/K
  std::optional<nlohmann::json> derived;   // {"L1": ..., "L2": ..., "L3": ...}, any subset
  Basis basis = Basis::exhaustive;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  std::function<AnyRsg()> build;
  Expected expected;
};

inline std::map<std::string, bool> all_axioms(bool pass) {
  return {{"A1", pass}, {"A2", pass}, {"A3", pass}, {"A4", pass}, {"A5", pass}, {"A6", pass}};
}

// Closed forms of the Z/k counterexample relations, as labelled tuples.
inline nlohmann::json counterexample_relations(long k) {
  nlohmann::json l2 = nlohmann::json::array(), l3 = nlohmann::json::array();
  auto s = [k](long v) { return std::to_string(mod(v, k)); };
  for (long m = 0; m < k; ++m) {
    l2.push_back({s(m), s(m + 2)});
    for (long n = 0; n < k; ++n) l3.push_back({s(m), s(n), s(m + n + 1)});
  }
  return {{"L1", {{s(1)}}}, {"L2", l2}, {"L3", l3}};
}

inline std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, std::string description, std::function<AnyRsg()> build, Expected e) {
    out.push_back({std::move(name), std::move(description), std::move(build), std::move(e)});
  };

  for (long k : {3, 4, 5}) {
    Expected e;
    e.axioms = {{"A1", true}, {"A2", true}, {"A3", false}, {"A4", true}, {"A5", false}, {"A6", false}};
    e.derived = counterexample_relations(k);
    e.basis = Basis::worked_example;
    add("z" + std::to_string(k) + "-counterexample", "Z/" + std::to_string(k) + " with L = {(n, m, -n-m-1)}, I = -n",
        [k] { return AnyRsg(counterexample_zk(k)); }, e);
  }
  for (long k : {4, 6}) {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 1;
    e.arrow_count = 2;
    e.basis = k == 6 ? Basis::worked_example : Basis::exhaustive;
    add("parity-z" + std::to_string(k), "Z/" + std::to_string(k) + " with L = {n + m + p odd}, I = -n",
        [k] { return AnyRsg(parity_counterexample(k)); }, e);
  }
  for (const auto& t : groups::up_to_order_8()) {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 1;
    e.arrow_count = t.order();
    add("group-" + t.name, "group " + t.name + " of order " + std::to_string(t.order()),
        [t] { return AnyRsg(from_group(t)); }, e);
  }
  for (std::size_t k = 2; k <= 4; ++k) {
    std::vector<std::string> xs;
    for (std::size_t i = 1; i <= k; ++i) xs.push_back(std::to_string(i));
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = k;
    e.arrow_count = k * k;
    add("pair-groupoid-" + std::to_string(k), "pair groupoid on " + std::to_string(k) + " points",
        [xs, k] { return AnyRsg(from_groupoid(pair_groupoid("pair" + std::to_string(k), xs))); }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 1;
    e.arrow_count = 4;
    e.basis = Basis::consistency;
    add("groupoid-z4", "Z/4 as a one-object groupoid",
        [] { return AnyRsg(from_groupoid(group_groupoid(groups::abelian({4})))); }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 5;
    e.arrow_count = 13;
    add("pair2-plus-pair3", "disjoint union of the pair groupoids on 2 and 3 points", [] {
      const auto u = disjoint_union("pair2+pair3", pair_groupoid("p2", {"1", "2"}), pair_groupoid("p3", {"1", "2", "3"}));
      return AnyRsg(from_groupoid(u));
    }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 1;
    e.arrow_count = 1;
    e.derived = nlohmann::json{{"L1", {{"a"}, {"b"}}}};
    add("lagrangian-finite", "X = {a, b, c}, L = {a, b}^3, I swaps a and b", [] {
      return AnyRsg(lagrangian_example("lagrangian-finite", FinSet("X", {"a", "b", "c"}), {0, 1}, {1, 0, 2}));
    }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 0;
    e.arrow_count = 0;
    add("lagrangian-linear", "Q^2, L = span{q}^3, I(q, p) = (q, -p)", [] {
      return AnyRsg(lagrangian_example("lagrangian-linear", SymplecticSpace::standard(1),
                                       Subspace::span({Vector{1, 0}}, 2), Matrix::from_rows({Vector{1, 0}, Vector{0, -1}}, 2)));
    }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 1;
    e.arrow_count = 1;
    e.basis = Basis::consistency;
    add("point", "the one-point RSG", [] { return AnyRsg(finite_point()); }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 0;
    e.arrow_count = 0;
    e.basis = Basis::consistency;
    add("linear-point", "the zero-dimensional linear RSG", [] { return AnyRsg(linear_point()); }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 2;
    e.arrow_count = 4;
    add("linear-pair-groupoid", "pair groupoid of standard Q^2",
        [] { return AnyRsg(linear_pair_groupoid(SymplecticSpace::standard(1))); }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 4;
    e.arrow_count = 8;
    add("linear-pair-groupoid-squared", "power n = 2 of the pair groupoid of Q^2",
        [] { return AnyRsg(power(linear_pair_groupoid(SymplecticSpace::standard(1)), 2)); }, e);
  }
  {
    Expected e;
    e.axioms = all_axioms(true);
    e.regular = true;
    e.base_size = 4;
    e.arrow_count = 16;
    add("pair-groupoid-2-squared", "power n = 2 of the pair groupoid on 2 points", [] {
      return AnyRsg(power(from_groupoid(pair_groupoid("pair2", {"1", "2"})), 2));
    }, e);
  }
  return out;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
  static const std::vector<CorpusEntry> entries = corpus();
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw Error("no corpus entry named " + name);
}

}  // namespace rsg
