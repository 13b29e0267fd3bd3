#pragma once

// Carrier policies: the relation calculus an RSG lives in. Both expose the
// same static vocabulary so the engine is written once.
//
//   FiniteCarrier  carriers are finite sets with the zero form; every
//                  relation counts as Lagrangian.
//   LinearCarrier  carriers are symplectic vector spaces; relations are
//                  linear relations and Lagrangian tests are exact.

#include <concepts>
#include <string>

#include "rsg/finite_relation.hpp"
#include "rsg/linear_relation.hpp"

namespace rsg {

struct FiniteCarrier {
  using Space = FinSignature;
  using Relation = FinRelation;
  static constexpr bool linear = false;
  static constexpr const char* kind = "finite";

  static Space point() { return {}; }
  static Space product(const Space& a, const Space& b) { return concat(a, b); }
  static Space conjugate(const Space& s) { return s; }
  static Relation conjugate(const Relation& r) { return r; }
  static const Space& source(const Relation& r) { return r.source(); }
  static const Space& target(const Relation& r) { return r.target(); }

  static Relation compose(const Relation& r, const Relation& s) { return rsg::compose(r, s); }
  static Relation transpose(const Relation& r) { return rsg::transpose(r); }
  static Relation product(const Relation& r, const Relation& s) { return rsg::product(r, s); }
  static Relation identity(const Space& s) { return rsg::identity(s); }
  static Relation swap(const Space& a, const Space& b) { return rsg::swap(a, b); }
  static Relation everything(const Space& s) { return rsg::everything(s); }
  static Relation reshape(const Relation& r, const Space& src, const Space& tgt) { return rsg::reshape(r, src, tgt); }

  // Zero form: the Lagrangian clauses hold vacuously.
  static bool canonical(const Relation&) { return true; }
  static std::string shape(const Relation&) { return "finite"; }

  static nlohmann::json describe(const Relation& r) {
    auto out = nlohmann::json::array();
    for (const auto& t : r.tuples()) out.push_back(r.labels(t));
    return out;
  }

  // Symmetric difference, as labelled tuples.
  static nlohmann::json difference(const Relation& lhs, const Relation& rhs) {
    nlohmann::json only_lhs = nlohmann::json::array(), only_rhs = nlohmann::json::array();
    for (const auto& t : lhs.tuples())
      if (!rhs.contains(t)) only_lhs.push_back(lhs.labels(t));
    for (const auto& t : rhs.tuples())
      if (!lhs.contains(t)) only_rhs.push_back(rhs.labels(t));
    return {{"only_lhs", only_lhs}, {"only_rhs", only_rhs}};
  }
};

struct LinearCarrier {
  using Space = SymplecticSpace;
  using Relation = LinearRelation;
  static constexpr bool linear = true;
  static constexpr const char* kind = "linear";

  static Space point() { return SymplecticSpace::point(); }
  static Space product(const Space& a, const Space& b) { return direct_sum(a, b); }
  static Space conjugate(const Space& s) { return s.conjugate(); }
  static Relation conjugate(const Relation& r) { return rsg::conjugate(r); }
  static const Space& source(const Relation& r) { return r.source(); }
  static const Space& target(const Relation& r) { return r.target(); }

  static Relation compose(const Relation& r, const Relation& s) { return rsg::compose(r, s); }
  static Relation transpose(const Relation& r) { return rsg::transpose(r); }
  static Relation product(const Relation& r, const Relation& s) { return rsg::product(r, s); }
  static Relation identity(const Space& s) { return LinearRelation::identity(s); }
  static Relation swap(const Space& a, const Space& b) { return rsg::swap(a, b); }
  static Relation everything(const Space& s) { return rsg::everything(s); }
  static Relation reshape(const Relation& r, const Space& src, const Space& tgt) { return rsg::reshape(r, src, tgt); }

  static bool canonical(const Relation& r) { return is_canonical(r).is_lagrangian; }
  static std::string shape(const Relation& r) { return std::string(to_string(is_canonical(r).kind)); }

  static nlohmann::json describe(const Relation& r) {
    return {{"dim", r.graph().dim()}, {"basis", to_json(r.graph().basis())}};
  }

  // Basis vectors of each side missing from the other.
  static nlohmann::json difference(const Relation& lhs, const Relation& rhs) {
    nlohmann::json only_lhs = nlohmann::json::array(), only_rhs = nlohmann::json::array();
    for (std::size_t i = 0; i < lhs.graph().dim(); ++i)
      if (!rhs.graph().contains(lhs.graph().basis_vector(i))) only_lhs.push_back(to_json(lhs.graph().basis_vector(i)));
    for (std::size_t i = 0; i < rhs.graph().dim(); ++i)
      if (!lhs.graph().contains(rhs.graph().basis_vector(i))) only_rhs.push_back(to_json(rhs.graph().basis_vector(i)));
    return {{"only_lhs", only_lhs}, {"only_rhs", only_rhs}};
  }
};

template <class C>
concept Carrier = requires(const typename C::Space& s, const typename C::Relation& r) {
  { C::point() } -> std::convertible_to<typename C::Space>;
  { C::compose(r, r) } -> std::convertible_to<typename C::Relation>;
  { C::canonical(r) } -> std::convertible_to<bool>;
  { C::describe(r) } -> std::convertible_to<nlohmann::json>;
  { C::everything(s) } -> std::convertible_to<typename C::Relation>;
};

}  // namespace rsg
