#pragma once

// Linear relations between symplectic spaces. A relation A -/-> B is a
// subspace of A x B, coordinates of A first. Composition is total.

#include <array>
#include <optional>

#include "rsg/symplectic.hpp"

namespace rsg {

// Untyped graph algebra on coordinate spaces; used directly where one side
// carries no symplectic form (e.g. the Poisson base).
namespace graphs {

inline std::vector<std::size_t> range(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = from + i;
  return v;
}

// s o r for r in A x B, s in B x C.
inline Subspace compose(const Subspace& r, std::size_t a, std::size_t b, const Subspace& s, std::size_t c) {
  if (r.ambient_dim() != a + b || s.ambient_dim() != b + c) throw Error("compose: graph dimensions do not match");
  // (alpha, beta) with alpha.R_B = beta.S_B gives (alpha.R_A, beta.S_C).
  const Matrix rb = r.basis().select_columns(range(a, b));
  const Matrix sb = s.basis().select_columns(range(0, b));
  const Subspace pairs = kernel(vstack(rb, -sb).transposed());
  if (pairs.dim() == 0) return Subspace::zero(a + c);
  const Matrix alpha = pairs.basis().select_columns(range(0, r.dim()));
  const Matrix beta = pairs.basis().select_columns(range(r.dim(), s.dim()));
  return Subspace::span(hstack(alpha * r.basis().select_columns(range(0, a)),
                               beta * s.basis().select_columns(range(b, c))));
}

inline Subspace transpose(const Subspace& r, std::size_t a, std::size_t b) {
  auto order = range(a, b);
  for (auto i : range(0, a)) order.push_back(i);
  return project(r, order);
}

// r x s in (A x C) x (B x D) for r in A x B, s in C x D.
inline Subspace product(const Subspace& r, std::size_t a, std::size_t b, const Subspace& s, std::size_t c,
                        std::size_t d) {
  const std::size_t n = a + b + c + d;
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    Vector v(n);
    const Vector x = r.basis_vector(i);
    for (std::size_t k = 0; k < a; ++k) v[k] = x[k];
    for (std::size_t k = 0; k < b; ++k) v[a + c + k] = x[a + k];
    rows.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Vector v(n);
    const Vector x = s.basis_vector(i);
    for (std::size_t k = 0; k < c; ++k) v[a + k] = x[k];
    for (std::size_t k = 0; k < d; ++k) v[a + c + b + k] = x[c + k];
    rows.push_back(std::move(v));
  }
  return Subspace::span(rows, n);
}

// {(x, m x)}.
inline Subspace of_map(const Matrix& m) {
  return Subspace::span(hstack(Matrix::identity(m.cols()), m.transposed()));
}

inline Subspace domain(const Subspace& r, std::size_t a) { return project(r, range(0, a)); }

inline Subspace codomain(const Subspace& r, std::size_t a) {
  return project(r, range(a, r.ambient_dim() - a));
}

// {y : (0, y) in r}; zero exactly when r is single-valued.
inline Subspace indeterminacy(const Subspace& r, std::size_t a) {
  const std::size_t b = r.ambient_dim() - a;
  Matrix zero_input(a, a + b);
  for (std::size_t i = 0; i < a; ++i) zero_input(i, i) = 1;
  return codomain(intersect(r, kernel(zero_input)), a);
}

// Some y with (x, y) in r.
inline std::optional<Vector> apply(const Subspace& r, std::size_t a, const Vector& x) {
  if (x.size() != a) throw Error("apply: input dimension mismatch");
  const std::size_t b = r.ambient_dim() - a;
  const Matrix inputs = r.basis().select_columns(range(0, a));
  auto coeffs = solve(inputs.transposed(), x);
  if (!coeffs) return std::nullopt;
  const Matrix outputs = r.basis().select_columns(range(a, b));
  return outputs.transposed().apply(*coeffs);
}

// Matrix of a single-valued total relation, in the coordinates of A.
inline std::optional<Matrix> as_map(const Subspace& r, std::size_t a) {
  const std::size_t b = r.ambient_dim() - a;
  if (indeterminacy(r, a).dim() != 0 || domain(r, a).dim() != a) return std::nullopt;
  Matrix m(b, a);
  for (std::size_t j = 0; j < a; ++j) {
    const Vector y = *apply(r, a, unit_vector(a, j));
    for (std::size_t i = 0; i < b; ++i) m(i, j) = y[i];
  }
  return m;
}

}  // namespace graphs

class LinearRelation {
 public:
  LinearRelation() = default;
  LinearRelation(SymplecticSpace source, SymplecticSpace target, Subspace graph)
      : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph)) {
    if (graph_.ambient_dim() != source_.dim() + target_.dim())
      throw Error("relation graph must live in source x target");
  }

  static LinearRelation identity(const SymplecticSpace& space) {
    return {space, space, graphs::of_map(Matrix::identity(space.dim()))};
  }

  // Graph of x -> map x.
  static LinearRelation of_map(const SymplecticSpace& source, const SymplecticSpace& target, const Matrix& map) {
    if (map.cols() != source.dim() || map.rows() != target.dim()) throw Error("map does not match spaces");
    return {source, target, graphs::of_map(map)};
  }

  const SymplecticSpace& source() const { return source_; }
  const SymplecticSpace& target() const { return target_; }
  const Subspace& graph() const { return graph_; }

  friend bool operator==(const LinearRelation& a, const LinearRelation& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.graph_ == b.graph_;
  }

 private:
  SymplecticSpace source_;
  SymplecticSpace target_;
  Subspace graph_;
};

// Diagrammatic order: r : A -/-> B first, then s : B -/-> C.
inline LinearRelation compose(const LinearRelation& r, const LinearRelation& s) {
  if (!(r.target() == s.source())) throw Error("compose: middle spaces differ");
  return {r.source(), s.target(),
          graphs::compose(r.graph(), r.source().dim(), r.target().dim(), s.graph(), s.target().dim())};
}

inline LinearRelation transpose(const LinearRelation& r) {
  return {r.target(), r.source(), graphs::transpose(r.graph(), r.source().dim(), r.target().dim())};
}

inline LinearRelation product(const LinearRelation& r, const LinearRelation& s) {
  return {direct_sum(r.source(), s.source()), direct_sum(r.target(), s.target()),
          graphs::product(r.graph(), r.source().dim(), r.target().dim(), s.graph(), s.source().dim(),
                          s.target().dim())};
}

// The same subspace regarded between the conjugate spaces.
inline LinearRelation conjugate(const LinearRelation& r) {
  return {r.source().conjugate(), r.target().conjugate(), r.graph()};
}

// The same subspace with the coordinates split differently.
inline LinearRelation reshape(const LinearRelation& r, const SymplecticSpace& source, const SymplecticSpace& target) {
  return {source, target, r.graph()};
}

// (a, b) -> (b, a) as a relation A x B -/-> B x A.
inline LinearRelation swap(const SymplecticSpace& a, const SymplecticSpace& b) {
  const std::size_t n = a.dim(), m = b.dim();
  Matrix map(n + m, n + m);
  for (std::size_t i = 0; i < m; ++i) map(i, n + i) = 1;
  for (std::size_t i = 0; i < n; ++i) map(m + i, i) = 1;
  return LinearRelation::of_map(direct_sum(a, b), direct_sum(b, a), map);
}

// The whole space as a relation * -/-> space.
inline LinearRelation everything(const SymplecticSpace& space) {
  return {SymplecticSpace::point(), space, Subspace::full(space.dim())};
}

struct CanonicalityReport {
  bool is_lagrangian = false;
  std::array<int, 2> signs{-1, 1};  // normalised so that signs[0] == +1
  SubspaceKind kind = SubspaceKind::generic;
};

// Lagrangian test of the graph in (sign0 * omega_source) + (sign1 * omega_target);
// default is the canonical-relation convention (-omega_source) + omega_target.
inline CanonicalityReport is_canonical(const LinearRelation& r, std::optional<std::array<int, 2>> signs = std::nullopt) {
  std::array<int, 2> s = signs.value_or(std::array<int, 2>{-1, 1});
  if (s[0] == -1) s = {1, -s[1]};
  const std::array<SymplecticSpace, 2> factors{r.source(), r.target()};
  const SymplecticSpace ambient = signed_product(factors, s);
  CanonicalityReport report;
  report.signs = s;
  report.kind = classify(ambient, r.graph());
  report.is_lagrangian = report.kind == SubspaceKind::lagrangian;
  return report;
}

// I : C/C^perp -/-> V and P = I^T for a coisotropic W <= V.
struct ReductionRelations {
  ReducedSpace reduced;
  LinearRelation inclusion;   // I = {([w], w) : w in W}
  LinearRelation projection;  // P
};

inline ReductionRelations reduction_relations(const SymplecticSpace& space, const Subspace& w) {
  ReducedSpace red = reduce(space, w);
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < w.dim(); ++i) {
    const Vector x = w.basis_vector(i);
    Vector row = red.projection.apply(x);
    row.insert(row.end(), x.begin(), x.end());
    rows.push_back(std::move(row));
  }
  LinearRelation incl(red.space, space, Subspace::span(rows, red.space.dim() + space.dim()));
  LinearRelation proj = transpose(incl);
  return {std::move(red), std::move(incl), std::move(proj)};
}

// l(L) = I o L o P.
inline LinearRelation canonical_lift(const ReductionRelations& rr, const LinearRelation& reduced_relation) {
  if (!(reduced_relation.source() == rr.reduced.space) || !(reduced_relation.target() == rr.reduced.space))
    throw Error("canonical_lift: relation does not live on the reduced space");
  if (!is_canonical(reduced_relation).is_lagrangian) throw Error("canonical_lift: relation is not canonical");
  return compose(compose(rr.projection, reduced_relation), rr.inclusion);
}

inline LinearRelation canonical_lift(const SymplecticSpace& space, const Subspace& w, const LinearRelation& lbar) {
  return canonical_lift(reduction_relations(space, w), lbar);
}

// p(L) = P o L o I.
inline LinearRelation canonical_projection(const ReductionRelations& rr, const LinearRelation& relation) {
  if (!(relation.source() == rr.inclusion.target()) || !(relation.target() == rr.inclusion.target()))
    throw Error("canonical_projection: relation does not live on the ambient space");
  if (!is_canonical(relation).is_lagrangian) throw Error("canonical_projection: relation is not canonical");
  return compose(compose(rr.inclusion, relation), rr.projection);
}

inline LinearRelation canonical_projection(const SymplecticSpace& space, const Subspace& w, const LinearRelation& l) {
  return canonical_projection(reduction_relations(space, w), l);
}

inline nlohmann::json to_json(const LinearRelation& r) {
  return {{"source_dim", r.source().dim()}, {"target_dim", r.target().dim()}, {"graph_basis", to_json(r.graph().basis())}};
}

}  // namespace rsg
