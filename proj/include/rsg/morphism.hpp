#pragma once

// Morphisms and equivalences of RSGs, and the projection of a regular RSG
// onto its quotient groupoid regarded as an RSG.

#include "rsg/corpus.hpp"
#include "rsg/regular.hpp"

namespace rsg {

struct MorphismReport {
  bool preconditions = false;  // both sides satisfy A.1-A.6
  Verdict verdict;

  bool pass() const { return verdict.pass(); }
  nlohmann::json to_json() const {
    nlohmann::json j = verdict.to_json();
    j["preconditions"] = preconditions;
    return j;
  }
};

// F : G -/-> H. Ids are prefixed so the transpose checks can share a report.
template <Carrier C>
void morphism_checks(Verdict& v, const std::string& prefix, const Rsg<C>& g, const Rsg<C>& h,
                     const typename C::Relation& f) {
  if (!(C::source(f) == g.carrier) || !(C::target(f) == h.carrier))
    throw Error("morphism relation must go from the carrier of " + g.name + " to that of " + h.name);
  const auto lg = C::reshape(g.triple, g.pair(), g.bar());
  const auto lh = C::reshape(h.triple, h.pair(), h.bar());
  v.checks.push_back(lagrangian_check<C>(prefix + "canonical", "F is Lagrangian in G x Hbar", f));
  v.checks.push_back(equality_check<C>(prefix + "inversion", "F o I_G = I_H o Fbar", C::compose(g.inversion, f),
                                       C::compose(C::conjugate(f), h.inversion)));
  v.checks.push_back(equality_check<C>(prefix + "multiplication", "L_H o (F x F) = Fbar o L_G",
                                       C::compose(C::product(f, f), lh), C::compose(lg, C::conjugate(f))));
}

template <Carrier C>
MorphismReport check_morphism(const Rsg<C>& g, const Rsg<C>& h, const typename C::Relation& f) {
  MorphismReport r;
  r.preconditions = check_axioms(g).premises_hold() && check_axioms(h).premises_hold();
  morphism_checks(r.verdict, "morphism.", g, h, f);
  return r;
}

template <Carrier C>
MorphismReport check_equivalence(const Rsg<C>& g, const Rsg<C>& h, const typename C::Relation& f) {
  MorphismReport r = check_morphism(g, h, f);
  const auto ft = C::transpose(f);
  morphism_checks(r.verdict, "transpose.", h, g, ft);
  const auto dg = derive(g), dh = derive(h);
  auto& checks = r.verdict.checks;
  checks.push_back(equality_check<C>("equivalence.units", "F o L1_G = L1_H", C::compose(dg.L1, f), dh.L1));
  checks.push_back(equality_check<C>("equivalence.units_back", "F^T o L1_H = L1_G", C::compose(dh.L1, ft), dg.L1));
  checks.push_back(equality_check<C>("equivalence.round_trip_G", "F^T o F = L2_G", C::compose(f, ft), dg.L2));
  checks.push_back(equality_check<C>("equivalence.round_trip_H", "F o F^T = L2_H", C::compose(ft, f), dh.L2));
  return r;
}

// (Gbar, L o T, I): the target of the inversion equivalence F = graph of I.
template <Carrier C>
Rsg<C> opposite(const Rsg<C>& g) {
  const auto G = g.carrier;
  const auto swapped = C::compose(g.triple, C::product(C::swap(G, G), C::identity(G)));
  Rsg<C> out{g.name + "-opposite", C::conjugate(G), C::reshape(swapped, C::point(), C::conjugate(g.cube())),
             C::conjugate(g.inversion)};
  out.inversion = C::reshape(out.inversion, C::conjugate(out.carrier), out.carrier);
  out.validate();
  return out;
}

// Graph of I as a relation G -/-> Gbar.
template <Carrier C>
typename C::Relation inversion_map(const Rsg<C>& g) {
  return C::reshape(g.inversion, g.carrier, g.bar());
}

// The quotient groupoid C/L2 as an RSG, with the projection G -/-> C/L2.
template <Carrier C>
struct ProjectionData {
  Rsg<C> quotient;
  typename C::Relation projection;
};

inline ProjectionData<FiniteCarrier> projection_equivalence(const FiniteRsg& g, const FiniteRegular& reg,
                                                            const FiniteQuotient& q) {
  if (!q.groupoid) throw Error("projection needs a verified quotient groupoid");
  const FiniteRsg quot = from_groupoid(*q.groupoid);
  const FinSet& arrows = quot.carrier.at(0);
  std::vector<FinRelation::Tuple> t;
  for (auto c : reg.C) t.push_back({c, q.arrows.projection.assignment[c]});
  return {quot, FinRelation(g.carrier, {arrows}, t)};
}

inline ProjectionData<LinearCarrier> projection_equivalence(const LinearRsg& g, const LinearRegular& reg,
                                                            const LinearQuotient& q) {
  if (!q.arrows || !q.verdict.pass()) throw Error("projection needs a verified quotient groupoid");
  const SymplecticSpace& g1 = q.arrows->space;
  const std::size_t a = g1.dim();
  // L = {(x, y, z) : (x, y, I z) in graph of m}
  const Subspace triple = image(q.mul, block_diagonal(Matrix::identity(2 * a), q.inverse));
  const LinearRsg quot = linear_rsg(g.name + "/L2", g1, triple, q.inverse);
  const ReductionRelations rr = reduction_relations(g.carrier, reg.C);
  return {quot, rr.projection};
}

}  // namespace rsg
