#pragma once

// Regularity (A.7-A.9), the quotient groupoid C/L2 over M = L1/L2, and the
// Poisson structure induced on M for linear carriers.
//
// S(c) is the class of the unit l with (l, c, g) in L3, T(c) the class of the
// unit l with (c, l, g) in L3. In the quotient, (a, b) is composable iff
// T(a) = S(b); as a groupoid its source map is T and its target map is S.

#include <set>

#include "rsg/groupoid.hpp"
#include "rsg/rsg.hpp"

namespace rsg {

inline void require_premises(const std::string& name, const AxiomReport& axioms) {
  if (!axioms.premises_hold()) throw Error("regularity needs A.1-A.6, which fail for " + name);
}

inline Check vacuous_check(std::string id, std::string statement) {
  return {std::move(id), std::move(statement), true, true, {}};
}

// ---------------------------------------------------------------- finite

struct FiniteRegular {
  FinSet carrier;
  std::vector<std::uint32_t> C;  // sorted
  FinQuotient M;                 // units modulo L2
  FinRelation S, T;              // G -/-> M
  FinSet C_set;
  FinMap s, t;  // C -> M, set when S and T are maps
  Verdict verdict;

  nlohmann::json to_json() const {
    nlohmann::json j = verdict.to_json();
    nlohmann::json c = nlohmann::json::array();
    for (auto x : C) c.push_back(carrier.elements[x]);
    j["C"] = c;
    j["M"] = M.classes.elements;
    if (!s.assignment.empty()) {
      nlohmann::json sj = nlohmann::json::object(), tj = nlohmann::json::object();
      for (std::size_t i = 0; i < C.size(); ++i) {
        sj[C_set.elements[i]] = M.classes.elements[s(static_cast<std::uint32_t>(i))];
        tj[C_set.elements[i]] = M.classes.elements[t(static_cast<std::uint32_t>(i))];
      }
      j["s"] = sj;
      j["t"] = tj;
    }
    return j;
  }
};

// Single-valued / total on C / surjective checks for a relation G -/-> M.
inline void finite_map_checks(Verdict& v, const std::string& name, const FinRelation& r,
                              const std::vector<std::uint32_t>& C, const FinSet& x, const FinSet& m) {
  std::vector<std::vector<std::uint32_t>> images(x.size());
  std::vector<bool> hit(m.size(), false);
  for (const auto& t : r.tuples()) images[t[0]].push_back(t[1]), hit[t[1]] = true;

  Check single{"A9." + name + "_single_valued", name + " is single-valued", true, false, {}};
  Check total{"A9." + name + "_total", name + " is defined exactly on C", true, false, {}};
  Check onto{"A9." + name + "_surjective", name + " is surjective onto M", true, false, {}};
  for (std::uint32_t e = 0; e < x.size(); ++e) {
    const bool in_c = std::binary_search(C.begin(), C.end(), e);
    if (images[e].size() > 1 && single.pass) {
      single.pass = false;
      nlohmann::json values = nlohmann::json::array();
      for (auto k : images[e]) values.push_back(m.elements[k]);
      single.witness = {{"element", x.elements[e]}, {"images", values}};
    }
    if (in_c == images[e].empty() && total.pass) {
      total.pass = false;
      total.witness = {{"element", x.elements[e]}, {"in_C", in_c}};
    }
  }
  for (std::uint32_t k = 0; k < m.size(); ++k)
    if (!hit[k] && onto.pass) {
      onto.pass = false;
      onto.witness = {{"missed", m.elements[k]}};
    }
  v.checks.push_back(std::move(single));
  v.checks.push_back(std::move(total));
  v.checks.push_back(std::move(onto));
}

inline FiniteRegular check_regular(const FiniteRsg& g, const AxiomReport& axioms) {
  require_premises(g.name, axioms);
  if (g.carrier.size() != 1) throw Error("finite RSG carrier must be a single set");
  const FinSet& X = g.carrier[0];
  const auto d = derive(g);
  FiniteRegular r;
  r.carrier = X;
  const FinRelation image = compose(everything({X}), d.L2);
  for (const auto& t : image.tuples()) r.C.push_back(t[0]);
  Verdict& v = r.verdict;

  const auto eq = is_equivalence(d.L2, r.C);
  Check equiv{"A7.equivalence", "L2 is an equivalence relation on C = L2(G)", eq.holds, false, {}};
  if (!eq.holds) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& t : eq.witness) w.push_back(d.L2.labels(t));
    equiv.witness = {{"failure", eq.failure}, {"tuples", w}};
  }
  v.checks.push_back(std::move(equiv));
  v.checks.push_back(vacuous_check("A7.coisotropic", "C is coisotropic"));
  if (!eq.holds) return r;

  std::vector<std::uint32_t> units;
  for (const auto& t : d.L1.tuples()) units.push_back(t[0]);
  Check in_c{"A8.units_in_C", "L1 is contained in C", true, false, {}};
  for (auto u : units)
    if (!std::binary_search(r.C.begin(), r.C.end(), u)) {
      in_c.pass = false;
      in_c.witness = {{"unit", X.elements[u]}};
      break;
    }
  v.checks.push_back(std::move(in_c));
  if (!v.checks.back().pass) return r;

  std::vector<FinRelation::Tuple> on_units;
  for (const auto& t : d.L2.tuples())
    if (std::binary_search(units.begin(), units.end(), t[0]) && std::binary_search(units.begin(), units.end(), t[1]))
      on_units.push_back(t);
  r.M = quotient(X, FinRelation({X}, {X}, on_units), units, "M");
  const FinSet& M = r.M.classes;

  std::vector<FinRelation::Tuple> s_tuples, t_tuples;
  for (const auto& t : d.L3.tuples()) {
    if (r.M.defined[t[0]]) s_tuples.push_back({t[1], r.M.projection(t[0])});
    if (r.M.defined[t[1]]) t_tuples.push_back({t[0], r.M.projection(t[1])});
  }
  r.S = FinRelation({X}, {M}, s_tuples);
  r.T = FinRelation({X}, {M}, t_tuples);

  v.checks.push_back(equality_check<FiniteCarrier>("A9.source_equation", "(S x S) o L2 = diagonal of M",
                                                   compose(reshape(d.L2, {}, {X, X}), product(r.S, r.S)),
                                                   reshape(diagonal(M), {}, {M, M})));
  finite_map_checks(v, "s", r.S, r.C, X, M);
  finite_map_checks(v, "t", r.T, r.C, X, M);
  v.checks.push_back(equality_check<FiniteCarrier>("A9.T_is_S_after_I", "T = S o I", r.T, compose(d.I_rel, r.S)));
  v.checks.push_back(vacuous_check("A9.characteristic", "kernel of L2 is the characteristic distribution of C"));
  v.checks.push_back(vacuous_check("A9.hamiltonian", "pullbacks along s have Hamiltonian vector fields on C"));

  if (v.pass()) {
    std::vector<std::string> labels;
    for (auto c : r.C) labels.push_back(X.elements[c]);
    r.C_set = FinSet("C", labels);
    std::vector<std::uint32_t> sa(r.C.size()), ta(r.C.size());
    for (const auto& t : r.S.tuples()) sa[std::lower_bound(r.C.begin(), r.C.end(), t[0]) - r.C.begin()] = t[1];
    for (const auto& t : r.T.tuples()) ta[std::lower_bound(r.C.begin(), r.C.end(), t[0]) - r.C.begin()] = t[1];
    r.s = FinMap(r.C_set, M, sa);
    r.t = FinMap(r.C_set, M, ta);
  }
  return r;
}

inline FiniteRegular check_regular(const FiniteRsg& g) { return check_regular(g, check_axioms(g)); }

struct FiniteQuotient {
  FinQuotient arrows;  // C / L2
  std::optional<FiniteGroupoid> groupoid;
  Verdict verdict;

  nlohmann::json to_json() const {
    nlohmann::json j = verdict.to_json();
    if (groupoid) j["groupoid"] = rsg::to_json(*groupoid);
    return j;
  }
};

inline FiniteQuotient build_quotient(const FiniteRsg& g, const FiniteRegular& reg) {
  if (!reg.verdict.pass()) throw Error("quotient needs a regular RSG; " + g.name + " is not regular");
  const FinSet& X = reg.carrier;
  const auto d = derive(g);
  FiniteQuotient q;
  q.arrows = quotient(X, d.L2, reg.C, "C/L2");
  const auto& cls = q.arrows.projection;
  const std::size_t n = q.arrows.classes.size(), k = reg.M.classes.size();
  auto c_index = [&](std::uint32_t x) {
    return static_cast<std::uint32_t>(std::lower_bound(reg.C.begin(), reg.C.end(), x) - reg.C.begin());
  };
  std::vector<std::uint32_t> inv(X.size());
  for (const auto& t : d.I_rel.tuples()) inv[t[0]] = t[1];

  FiniteGroupoid gr;
  gr.name = g.name + "/L2";
  gr.objects = reg.M.classes.elements;
  gr.arrows = q.arrows.classes.elements;
  Check defined{"quotient.well_defined", "s, t and I descend to C/L2", true, false, {}};
  for (std::size_t a = 0; a < n; ++a) {
    const auto rep = q.arrows.representatives[a];
    gr.target.push_back(reg.s(c_index(rep)));
    gr.source.push_back(reg.t(c_index(rep)));
    gr.inverse.push_back(cls(inv[rep]));
  }
  for (auto c : reg.C) {
    const auto a = cls(c);
    const bool ok = reg.s(c_index(c)) == gr.target[a] && reg.t(c_index(c)) == gr.source[a] &&
                    q.arrows.defined[inv[c]] && cls(inv[c]) == gr.inverse[a];
    if (!ok && defined.pass) {
      defined.pass = false;
      defined.witness = {{"element", X.elements[c]}, {"class", gr.arrows[a]}};
    }
  }
  q.verdict.checks.push_back(std::move(defined));
  for (std::size_t m = 0; m < k; ++m) gr.unit.push_back(cls(reg.M.representatives[m]));

  std::vector<std::vector<std::set<std::uint32_t>>> values(n, std::vector<std::set<std::uint32_t>>(n));
  for (const auto& t : d.L3.tuples())
    if (q.arrows.defined[t[0]] && q.arrows.defined[t[1]] && q.arrows.defined[t[2]])
      values[cls(t[0])][cls(t[1])].insert(cls(t[2]));
  Check single{"quotient.m_single_valued", "m = p^3(L3) is single-valued", true, false, {}};
  Check domain{"quotient.m_domain", "m is defined exactly on composable pairs", true, false, {}};
  gr.mul.assign(n, std::vector<std::optional<std::uint32_t>>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto& vals = values[a][b];
      if (vals.size() > 1 && single.pass) {
        single.pass = false;
        nlohmann::json w = nlohmann::json::array();
        for (auto c : vals) w.push_back(gr.arrows[c]);
        single.witness = {{"pair", {gr.arrows[a], gr.arrows[b]}}, {"values", w}};
      }
      const bool composable = gr.source[a] == gr.target[b];
      if (composable != !vals.empty() && domain.pass) {
        domain.pass = false;
        domain.witness = {{"pair", {gr.arrows[a], gr.arrows[b]}}, {"composable", composable}};
      }
      if (composable && !vals.empty()) gr.mul[a][b] = *vals.begin();
    }
  q.verdict.checks.push_back(std::move(single));
  q.verdict.checks.push_back(std::move(domain));
  if (!q.verdict.pass()) return q;

  const GroupoidVerdict gv = validate(gr);
  Check axioms{"quotient.groupoid_axioms", "C/L2 over M satisfies the groupoid axioms", gv.holds, false, {}};
  if (!gv.holds) axioms.witness = {{"law", gv.failure}, {"detail", gv.detail}};
  q.verdict.checks.push_back(std::move(axioms));
  if (gv.holds) q.groupoid = std::move(gr);
  return q;
}

// ---------------------------------------------------------------- linear

struct LinearRegular {
  SymplecticSpace carrier;
  Subspace C, K, L1;
  QuotientSpace M;     // L1 / (L1 n K); projection is dim(M) x dim(G)
  Subspace S, T;       // graphs in G x M
  Matrix s_C, t_C;     // dim(M) x dim(C), in the coordinates of C's basis
  Verdict verdict;

  std::size_t base_dim() const { return M.dim; }

  nlohmann::json to_json() const {
    nlohmann::json j = verdict.to_json();
    j["C"] = {{"dim", C.dim()}, {"basis", rsg::to_json(C.basis())}};
    j["K"] = {{"dim", K.dim()}, {"basis", rsg::to_json(K.basis())}};
    j["M_dim"] = M.dim;
    return j;
  }
};

// Restriction of the form to C, in the coordinates of C's basis.
inline Matrix restricted_form(const SymplecticSpace& g, const Subspace& c) {
  return c.basis() * g.omega() * c.basis().transposed();
}

// Matrix in C-coordinates of a relation G -/-> M applied to C's basis.
inline std::optional<Matrix> map_on(const Subspace& graph, const Subspace& c, std::size_t n, std::size_t m) {
  Matrix out(m, c.dim());
  for (std::size_t j = 0; j < c.dim(); ++j) {
    const auto y = graphs::apply(graph, n, c.basis_vector(j));
    if (!y) return std::nullopt;
    for (std::size_t i = 0; i < m; ++i) out(i, j) = (*y)[i];
  }
  return out;
}

inline void linear_map_checks(Verdict& v, const std::string& name, const Subspace& graph, const Subspace& c,
                              std::size_t n, std::size_t m) {
  const Subspace ind = graphs::indeterminacy(graph, n);
  Check single{"A9." + name + "_single_valued", name + " is single-valued", ind.dim() == 0, false, {}};
  if (!single.pass) single.witness = {{"indeterminacy", to_json(ind.basis())}};
  const Subspace dom = graphs::domain(graph, n);
  Check total{"A9." + name + "_total", name + " is defined exactly on C", dom == c, false, {}};
  if (!total.pass) total.witness = {{"domain", to_json(dom.basis())}, {"C", to_json(c.basis())}};
  const Subspace cod = graphs::codomain(graph, n);
  Check onto{"A9." + name + "_surjective", name + " is surjective onto M", cod.dim() == m, false, {}};
  if (!onto.pass) onto.witness = {{"image", to_json(cod.basis())}};
  v.checks.push_back(std::move(single));
  v.checks.push_back(std::move(total));
  v.checks.push_back(std::move(onto));
}

inline LinearRegular check_regular(const LinearRsg& g, const AxiomReport& axioms) {
  require_premises(g.name, axioms);
  const auto d = derive(g);
  const std::size_t n = g.carrier.dim();
  LinearRegular r;
  r.carrier = g.carrier;
  r.C = compose(everything(g.carrier), d.L2).graph();
  r.L1 = d.L1.graph();
  Verdict& v = r.verdict;

  const Subspace& l2 = d.L2.graph();
  {
    Check c{"A7.equivalence", "L2 is an equivalence relation on C = L2(G)", true, false, {}};
    for (std::size_t i = 0; i < r.C.dim() && c.pass; ++i) {
      Vector x = r.C.basis_vector(i), xx = x;
      xx.insert(xx.end(), x.begin(), x.end());
      if (!l2.contains(xx)) {
        c.pass = false;
        c.witness = {{"failure", "reflexivity"}, {"vector", to_json(x)}};
      }
    }
    if (c.pass && !(transpose(d.L2) == d.L2)) {
      c.pass = false;
      c.witness = {{"failure", "symmetry"}};
    }
    if (c.pass && !l2.contains(compose(d.L2, d.L2).graph())) {
      c.pass = false;
      c.witness = {{"failure", "transitivity"}};
    }
    v.checks.push_back(std::move(c));
  }
  {
    const SubspaceKind kind = classify(g.carrier, r.C);
    Check c{"A7.coisotropic", "C is coisotropic", is_coisotropic(g.carrier, r.C), false, {}};
    if (!c.pass) c.witness = {{"kind", std::string(to_string(kind))}, {"C", to_json(r.C.basis())}};
    v.checks.push_back(std::move(c));
  }
  if (!v.pass()) return r;

  {
    Check c{"A8.units_in_C", "L1 is contained in C", r.C.contains(r.L1), false, {}};
    if (!c.pass) c.witness = {{"L1", to_json(r.L1.basis())}};
    v.checks.push_back(std::move(c));
    if (!c.pass) return r;
  }

  r.K = graphs::indeterminacy(graphs::transpose(l2, n, n), n);
  r.M = quotient(r.L1, intersect(r.L1, r.K));
  const std::size_t m = r.M.dim;

  // (l, c, g) in L3 with l in L1  ->  (c, [l])
  const Subspace l3 = d.L3.graph();
  const Subspace on_left = intersect(l3, graphs::product(r.L1, 0, n, Subspace::full(2 * n), 0, 2 * n));
  const Subspace on_right = intersect(l3, [&] {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(unit_vector(3 * n, i)), rows.push_back(unit_vector(3 * n, 2 * n + i));
    for (std::size_t i = 0; i < r.L1.dim(); ++i) {
      Vector x(3 * n);
      const Vector l = r.L1.basis_vector(i);
      for (std::size_t k = 0; k < n; ++k) x[n + k] = l[k];
      rows.push_back(x);
    }
    return Subspace::span(rows, 3 * n);
  }());
  auto pick = [&](std::size_t c_slot, std::size_t l_slot) {
    Matrix p(n + m, 3 * n);
    for (std::size_t i = 0; i < n; ++i) p(i, c_slot * n + i) = 1;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k) p(n + i, l_slot * n + k) = r.M.projection(i, k);
    return p;
  };
  r.S = image(on_left, pick(1, 0));
  r.T = image(on_right, pick(0, 1));

  {
    Subspace diag_m = graphs::of_map(Matrix::identity(m));
    const Subspace lhs = graphs::compose(l2, 0, 2 * n, graphs::product(r.S, n, m, r.S, n, m), 2 * m);
    Check c{"A9.source_equation", "(S x S) o L2 = diagonal of M", lhs == diag_m, false, {}};
    if (!c.pass) c.witness = {{"lhs", to_json(lhs.basis())}, {"rhs", to_json(diag_m.basis())}};
    v.checks.push_back(std::move(c));
  }
  linear_map_checks(v, "s", r.S, r.C, n, m);
  linear_map_checks(v, "t", r.T, r.C, n, m);
  {
    const Subspace is = graphs::compose(d.I_rel.graph(), n, n, r.S, m);
    Check c{"A9.T_is_S_after_I", "T = S o I", is == r.T, false, {}};
    if (!c.pass) c.witness = {{"lhs", to_json(r.T.basis())}, {"rhs", to_json(is.basis())}};
    v.checks.push_back(std::move(c));
  }
  {
    const Subspace perp = omega_orthogonal(g.carrier, r.C);
    Check c{"A9.characteristic", "kernel of L2 is the characteristic distribution of C", r.K == perp, false, {}};
    if (!c.pass) c.witness = {{"K", to_json(r.K.basis())}, {"C_perp", to_json(perp.basis())}};
    v.checks.push_back(std::move(c));
  }
  if (!v.pass()) return r;

  r.s_C = *map_on(r.S, r.C, n, m);
  r.t_C = *map_on(r.T, r.C, n, m);
  {
    const Matrix w = restricted_form(g.carrier, r.C);
    Check c{"A9.hamiltonian", "pullbacks along s have Hamiltonian vector fields on C", true, false, {}};
    for (std::size_t i = 0; i < m && c.pass; ++i)
      if (!solve(w.transposed(), r.s_C.transposed().apply(unit_vector(m, i)))) {
        c.pass = false;
        c.witness = {{"covector", to_json(unit_vector(m, i))}};
      }
    v.checks.push_back(std::move(c));
  }
  return r;
}

inline LinearRegular check_regular(const LinearRsg& g) { return check_regular(g, check_axioms(g)); }

// The symplectic groupoid C/K over M as matrices; G2 is the composable pairs.
struct LinearQuotient {
  std::optional<ReducedSpace> arrows;  // C / C^perp
  std::size_t base_dim = 0;
  Matrix source, target;  // base_dim x dim(G1)
  Matrix unit;            // dim(G1) x base_dim
  Matrix inverse;         // dim(G1) x dim(G1)
  Subspace mul;           // graph in G1 x G1 x G1
  Verdict verdict;

  std::size_t dim() const { return arrows ? arrows->space.dim() : 0; }

  nlohmann::json to_json() const {
    nlohmann::json j = verdict.to_json();
    if (!arrows) return j;
    j["arrows"] = {{"dim", dim()}, {"omega", rsg::to_json(arrows->space.omega())}};
    j["base_dim"] = base_dim;
    j["source"] = rsg::to_json(source);
    j["target"] = rsg::to_json(target);
    j["unit"] = rsg::to_json(unit);
    j["inverse"] = rsg::to_json(inverse);
    j["mul"] = {{"dim", mul.dim()}, {"basis", rsg::to_json(mul.basis())}};
    return j;
  }
};

inline LinearQuotient build_quotient(const LinearRsg& g, const LinearRegular& reg) {
  if (!reg.verdict.pass()) throw Error("quotient needs a regular RSG; " + g.name + " is not regular");
  const auto d = derive(g);
  const std::size_t n = g.carrier.dim(), m = reg.base_dim();
  LinearQuotient q;
  q.arrows = reduce(g.carrier, reg.C);
  const ReducedSpace& red = *q.arrows;
  const std::size_t a = red.space.dim();
  q.base_dim = m;
  Verdict& v = q.verdict;
  v.checks.push_back({"quotient.symplectic", "C/K carries a nondegenerate induced form", true, false, {}});

  const Matrix inv = *graphs::as_map(d.I_rel.graph(), n);
  q.source = Matrix(m, a), q.target = Matrix(m, a), q.inverse = Matrix(a, a), q.unit = Matrix(a, m);
  for (std::size_t k = 0; k < a; ++k) {
    const Vector rep = red.lift.row(k);
    const Vector s = *graphs::apply(reg.S, n, rep), t = *graphs::apply(reg.T, n, rep);
    const Vector i = red.projection.apply(inv.apply(rep));
    for (std::size_t r = 0; r < m; ++r) q.target(r, k) = s[r], q.source(r, k) = t[r];
    for (std::size_t r = 0; r < a; ++r) q.inverse(r, k) = i[r];
  }
  for (std::size_t k = 0; k < m; ++k) {
    const Vector u = red.projection.apply(reg.M.lift.row(k));
    for (std::size_t r = 0; r < a; ++r) q.unit(r, k) = u[r];
  }
  {
    // s, t and I are constant on K-cosets.
    bool ok = true;
    for (std::size_t k = 0; k < reg.K.dim(); ++k) {
      const Vector x = reg.K.basis_vector(k);
      ok = ok && graphs::apply(reg.S, n, x) && is_zero(*graphs::apply(reg.S, n, x)) &&
           is_zero(*graphs::apply(reg.T, n, x)) && is_zero(red.projection.apply(inv.apply(x)));
    }
    v.checks.push_back({"quotient.well_defined", "s, t and I descend to C/K", ok, false, {}});
  }

  const Subspace cube = graphs::product(graphs::product(reg.C, 0, n, reg.C, 0, n), 0, 2 * n, reg.C, 0, n);
  q.mul = image(intersect(d.L3.graph(), cube), block_diagonal(block_diagonal(red.projection, red.projection),
                                                             red.projection));
  const Subspace g2 = kernel(hstack(q.source, -q.target));
  {
    const Subspace ind = graphs::indeterminacy(q.mul, 2 * a);
    Check c{"quotient.m_single_valued", "m = p^3(L3) is single-valued", ind.dim() == 0, false, {}};
    if (!c.pass) c.witness = {{"indeterminacy", to_json(ind.basis())}};
    v.checks.push_back(std::move(c));
    const Subspace dom = graphs::domain(q.mul, 2 * a);
    Check e{"quotient.m_domain", "m is defined exactly on composable pairs", dom == g2, false, {}};
    if (!e.pass) e.witness = {{"domain", to_json(dom.basis())}, {"composable", to_json(g2.basis())}};
    v.checks.push_back(std::move(e));
  }
  if (!v.pass()) return q;

  const Subspace id = graphs::of_map(Matrix::identity(a));
  auto after = [&](const Matrix& pair_map) { return graphs::compose(graphs::of_map(pair_map), a, 2 * a, q.mul, a); };
  const Matrix eye = Matrix::identity(a);
  std::vector<std::pair<std::string, bool>> laws;
  laws.emplace_back("associativity",
                    graphs::compose(graphs::product(q.mul, 2 * a, a, id, a, a), 3 * a, 2 * a, q.mul, a) ==
                        graphs::compose(graphs::product(id, a, a, q.mul, 2 * a, a), 3 * a, 2 * a, q.mul, a));
  laws.emplace_back("left unit", after(vstack(q.unit * q.target, eye)) == id);
  laws.emplace_back("right unit", after(vstack(eye, q.unit * q.source)) == id);
  laws.emplace_back("right inverse", after(vstack(eye, q.inverse)) == graphs::of_map(q.unit * q.target));
  laws.emplace_back("left inverse", after(vstack(q.inverse, eye)) == graphs::of_map(q.unit * q.source));
  laws.emplace_back("units are loops", q.source * q.unit == Matrix::identity(m) && q.target * q.unit == Matrix::identity(m));
  laws.emplace_back("inverse swaps ends", q.source * q.inverse == q.target && q.inverse * q.inverse == eye);
  Check axioms{"quotient.groupoid_axioms", "C/K over M satisfies the groupoid axioms", true, false, {}};
  for (const auto& [law, ok] : laws)
    if (!ok && axioms.pass) {
      axioms.pass = false;
      axioms.witness = {{"law", law}};
    }
  v.checks.push_back(std::move(axioms));

  const std::array<SymplecticSpace, 3> f{red.space, red.space, red.space};
  const SymplecticSpace triple = signed_product(f, std::array<int, 3>{-1, -1, 1});
  Check mult{"quotient.multiplicative", "graph of m is Lagrangian in G1bar x G1bar x G1", is_lagrangian(triple, q.mul),
             false, {}};
  if (!mult.pass) mult.witness = {{"kind", std::string(to_string(classify(triple, q.mul)))}};
  v.checks.push_back(std::move(mult));
  return q;
}

// ---------------------------------------------------------------- Poisson

struct InducedPoisson {
  PoissonBivector pi;         // from Hamiltonian vector fields on C
  PoissonBivector libermann;  // from s on the reduced space C/K
  Verdict verdict;

  nlohmann::json to_json() const {
    nlohmann::json j = verdict.to_json();
    j["pi"] = rsg::to_json(pi.pi);
    return j;
  }
};

inline InducedPoisson induced_poisson(const LinearRsg& g, const LinearRegular& reg) {
  if (!reg.verdict.pass()) throw Error("Poisson induction needs a regular RSG; " + g.name + " is not regular");
  const std::size_t m = reg.base_dim(), c = reg.C.dim(), n = g.carrier.dim();
  const Matrix w = restricted_form(g.carrier, reg.C);
  std::vector<Vector> fields;
  for (std::size_t i = 0; i < m; ++i) {
    auto x = solve(w.transposed(), reg.s_C.transposed().apply(unit_vector(m, i)));
    if (!x) throw Error("no Hamiltonian vector field on C for base covector " + std::to_string(i));
    fields.push_back(std::move(*x));
  }
  InducedPoisson out;
  out.pi.pi = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.pi.pi(i, j) = dot(fields[i], w.apply(fields[j]));
  Verdict& v = out.verdict;

  {
    // Shift every field by every null direction of w and recompute.
    const Subspace null = kernel(w);
    bool same = true;
    for (std::size_t k = 0; k < null.dim(); ++k) {
      const Vector z = null.basis_vector(k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          Vector xi = fields[i];
          for (std::size_t r = 0; r < c; ++r) xi[r] += z[r];
          same = same && dot(xi, w.apply(fields[j])) == out.pi.pi(i, j) && dot(fields[j], w.apply(xi)) == out.pi.pi(j, i);
        }
    }
    v.checks.push_back({"poisson.solution_independent", "bracket does not depend on the choice of Hamiltonian field",
                        same, false, {}});
  }
  v.checks.push_back({"poisson.skew", "induced bivector is skew", out.pi.is_skew(), false, {}});

  const ReducedSpace red = reduce(g.carrier, reg.C);
  const std::size_t a = red.space.dim();
  Matrix s_bar(m, a), t_bar(m, a);
  for (std::size_t k = 0; k < a; ++k) {
    const Vector s = *graphs::apply(reg.S, n, red.lift.row(k)), t = *graphs::apply(reg.T, n, red.lift.row(k));
    for (std::size_t r = 0; r < m; ++r) s_bar(r, k) = s[r], t_bar(r, k) = t[r];
  }
  out.libermann = libermann_poisson(red.space, s_bar);
  {
    Check agree{"poisson.routes_agree", "Hamiltonian and reduced-space routes give the same bivector",
                out.libermann.pi == out.pi.pi, false, {}};
    if (!agree.pass) agree.witness = {{"hamiltonian", to_json(out.pi.pi)}, {"libermann", to_json(out.libermann.pi)}};
    v.checks.push_back(std::move(agree));
  }
  v.checks.push_back({"poisson.s_poisson", "s is a Poisson map", is_poisson_map(red.space, s_bar, out.pi), false, {}});
  v.checks.push_back(
      {"poisson.t_anti_poisson", "t is an anti-Poisson map", is_poisson_map(red.space, t_bar, out.pi, -1), false, {}});
  v.checks.push_back({"poisson.fibres_orthogonal", "s-fibres and t-fibres are symplectically orthogonal",
                      fibres_orthogonal(red.space, s_bar, t_bar), false, {}});
  return out;
}

}  // namespace rsg
