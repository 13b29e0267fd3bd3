#pragma once

// Finite typed relations: materialised sets of tuples over named finite
// carriers. A relation A1 x ... x Ak -/-> B1 x ... x Bl stores tuples of
// element indices, source part first. An empty signature is the point *.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsg/exact_linalg.hpp"

namespace rsg {

struct FinSet {
  std::string name;
  std::vector<std::string> elements;

  FinSet() = default;
  FinSet(std::string n, std::vector<std::string> elems) : name(std::move(n)), elements(std::move(elems)) {
    std::vector<std::string> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("finite set '" + name + "' has duplicate elements");
  }

  std::size_t size() const { return elements.size(); }

  std::uint32_t index_of(const std::string& label) const {
    auto it = std::find(elements.begin(), elements.end(), label);
    if (it == elements.end()) throw Error("'" + label + "' is not an element of " + name);
    return static_cast<std::uint32_t>(it - elements.begin());
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;
};

using FinSignature = std::vector<FinSet>;

inline FinSignature concat(const FinSignature& a, const FinSignature& b) {
  FinSignature out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class FinRelation {
 public:
  using Tuple = std::vector<std::uint32_t>;

  FinRelation() = default;
  FinRelation(FinSignature source, FinSignature target, std::vector<Tuple> tuples)
      : source_(std::move(source)), target_(std::move(target)), tuples_(std::move(tuples)) {
    const std::size_t n = arity();
    for (const auto& t : tuples_) {
      if (t.size() != n) throw Error("tuple does not match relation signature");
      for (std::size_t i = 0; i < n; ++i)
        if (t[i] >= set_at(i).size()) throw Error("tuple entry out of range for " + set_at(i).name);
    }
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  }

  const FinSignature& source() const { return source_; }
  const FinSignature& target() const { return target_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  std::size_t source_arity() const { return source_.size(); }
  std::size_t arity() const { return source_.size() + target_.size(); }

  const FinSet& set_at(std::size_t i) const {
    return i < source_.size() ? source_[i] : target_[i - source_.size()];
  }

  bool contains(const Tuple& t) const { return std::binary_search(tuples_.begin(), tuples_.end(), t); }

  // Tuples whose source part equals `key` (tuples are sorted, so they are contiguous).
  std::pair<std::vector<Tuple>::const_iterator, std::vector<Tuple>::const_iterator> with_source(const Tuple& key) const {
    auto lo = std::lower_bound(tuples_.begin(), tuples_.end(), key);
    auto hi = lo;
    while (hi != tuples_.end() && std::equal(key.begin(), key.end(), hi->begin())) ++hi;
    return {lo, hi};
  }

  bool subset_of(const FinRelation& other) const {
    return std::includes(other.tuples_.begin(), other.tuples_.end(), tuples_.begin(), tuples_.end());
  }

  friend bool operator==(const FinRelation& a, const FinRelation& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.tuples_ == b.tuples_;
  }

  std::vector<std::string> labels(const Tuple& t) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < t.size(); ++i) out.push_back(set_at(i).elements[t[i]]);
    return out;
  }

 private:
  FinSignature source_;
  FinSignature target_;
  std::vector<Tuple> tuples_;
};

// Total function table; I is a FinMap that must be a bijection.
struct FinMap {
  FinSet domain;
  FinSet codomain;
  std::vector<std::uint32_t> assignment;

  FinMap() = default;
  FinMap(FinSet d, FinSet c, std::vector<std::uint32_t> a)
      : domain(std::move(d)), codomain(std::move(c)), assignment(std::move(a)) {
    if (assignment.size() != domain.size()) throw Error("map from " + domain.name + " is not total");
    for (auto v : assignment)
      if (v >= codomain.size()) throw Error("map value out of range of " + codomain.name);
  }

  std::uint32_t operator()(std::uint32_t x) const { return assignment.at(x); }

  bool is_bijection() const {
    if (domain.size() != codomain.size()) return false;
    std::vector<bool> hit(codomain.size(), false);
    for (auto v : assignment) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    return true;
  }
};

// Diagrammatic order: r : A -/-> B, then s : B -/-> C, by an indexed join on
// the sorted source prefixes of s.
inline FinRelation compose(const FinRelation& r, const FinRelation& s) {
  if (r.target() != s.source()) throw Error("compose: middle signatures differ");
  const std::size_t a = r.source_arity(), b = s.source_arity();
  std::vector<FinRelation::Tuple> out;
  FinRelation::Tuple key(b);
  for (const auto& t : r.tuples()) {
    std::copy(t.begin() + static_cast<std::ptrdiff_t>(a), t.end(), key.begin());
    auto [lo, hi] = s.with_source(key);
    for (auto it = lo; it != hi; ++it) {
      FinRelation::Tuple joined(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(a));
      joined.insert(joined.end(), it->begin() + static_cast<std::ptrdiff_t>(b), it->end());
      out.push_back(std::move(joined));
    }
  }
  return {r.source(), s.target(), std::move(out)};
}

inline FinRelation transpose(const FinRelation& r) {
  const std::size_t a = r.source_arity();
  std::vector<FinRelation::Tuple> out;
  out.reserve(r.size());
  for (const auto& t : r.tuples()) {
    FinRelation::Tuple u(t.begin() + static_cast<std::ptrdiff_t>(a), t.end());
    u.insert(u.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(a));
    out.push_back(std::move(u));
  }
  return {r.target(), r.source(), std::move(out)};
}

// r x s : A x C -/-> B x D.
inline FinRelation product(const FinRelation& r, const FinRelation& s) {
  const auto ra = static_cast<std::ptrdiff_t>(r.source_arity());
  const auto sa = static_cast<std::ptrdiff_t>(s.source_arity());
  std::vector<FinRelation::Tuple> out;
  out.reserve(r.size() * s.size());
  for (const auto& x : r.tuples())
    for (const auto& y : s.tuples()) {
      FinRelation::Tuple t(x.begin(), x.begin() + ra);
      t.insert(t.end(), y.begin(), y.begin() + sa);
      t.insert(t.end(), x.begin() + ra, x.end());
      t.insert(t.end(), y.begin() + sa, y.end());
      out.push_back(std::move(t));
    }
  return {concat(r.source(), s.source()), concat(r.target(), s.target()), std::move(out)};
}

inline FinRelation graph(const FinMap& f) {
  std::vector<FinRelation::Tuple> out;
  for (std::uint32_t x = 0; x < f.domain.size(); ++x) out.push_back({x, f(x)});
  return {{f.domain}, {f.codomain}, std::move(out)};
}

// All tuples of a product signature.
inline std::vector<FinRelation::Tuple> enumerate(const FinSignature& sig) {
  std::vector<FinRelation::Tuple> out{{}};
  for (const auto& set : sig) {
    std::vector<FinRelation::Tuple> next;
    next.reserve(out.size() * set.size());
    for (const auto& t : out)
      for (std::uint32_t e = 0; e < set.size(); ++e) {
        auto u = t;
        u.push_back(e);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

inline FinRelation identity(const FinSignature& sig) {
  std::vector<FinRelation::Tuple> out;
  for (auto& t : enumerate(sig)) {
    auto u = t;
    u.insert(u.end(), t.begin(), t.end());
    out.push_back(std::move(u));
  }
  return {sig, sig, std::move(out)};
}

inline FinRelation diagonal(const FinSet& a) { return identity(FinSignature{a}); }

// The whole product as a relation * -/-> sig.
inline FinRelation everything(const FinSignature& sig) { return {{}, sig, enumerate(sig)}; }

// (a, b) -> (b, a) as a relation A x B -/-> B x A.
inline FinRelation swap(const FinSignature& a, const FinSignature& b) {
  std::vector<FinRelation::Tuple> out;
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  for (const auto& t : enumerate(concat(a, b))) {
    FinRelation::Tuple u = t;
    u.insert(u.end(), t.begin() + n, t.end());
    u.insert(u.end(), t.begin(), t.begin() + n);
    out.push_back(std::move(u));
  }
  return {concat(a, b), concat(b, a), std::move(out)};
}

inline FinRelation reshape(const FinRelation& r, const FinSignature& source, const FinSignature& target) {
  if (concat(source, target) != concat(r.source(), r.target())) throw Error("reshape: signatures differ");
  return {source, target, r.tuples()};
}

// Subset S <= A as a relation * -/-> A.
inline FinRelation subset_relation(const FinSet& a, const std::vector<std::uint32_t>& members) {
  std::vector<FinRelation::Tuple> out;
  for (auto m : members) out.push_back({m});
  return {{}, {a}, std::move(out)};
}

struct EquivalenceVerdict {
  bool holds = false;
  std::string failure;               // "reflexivity", "symmetry", "transitivity", "support"
  std::vector<FinRelation::Tuple> witness;  // offending tuples
  explicit operator bool() const { return holds; }
};

// Equivalence relation on the subset `on` of A (reflexive on it, symmetric,
// transitive, and supported inside on x on).
inline EquivalenceVerdict is_equivalence(const FinRelation& r, const std::vector<std::uint32_t>& on) {
  if (r.source().size() != 1 || r.target() != r.source()) throw Error("is_equivalence: relation must be A -/-> A");
  EquivalenceVerdict v;
  std::vector<bool> member(r.source()[0].size(), false);
  for (auto x : on) member[x] = true;
  for (const auto& t : r.tuples())
    if (!member[t[0]] || !member[t[1]]) {
      v.failure = "support";
      v.witness = {t};
      return v;
    }
  for (auto x : on)
    if (!r.contains({x, x})) {
      v.failure = "reflexivity";
      v.witness = {{x, x}};
      return v;
    }
  for (const auto& t : r.tuples())
    if (!r.contains({t[1], t[0]})) {
      v.failure = "symmetry";
      v.witness = {t};
      return v;
    }
  for (const auto& t : r.tuples()) {
    auto [lo, hi] = r.with_source({t[1]});
    for (auto it = lo; it != hi; ++it)
      if (!r.contains({t[0], (*it)[1]})) {
        v.failure = "transitivity";
        v.witness = {t, *it};
        return v;
      }
  }
  v.holds = true;
  return v;
}

inline std::vector<std::uint32_t> all_elements(const FinSet& a) {
  std::vector<std::uint32_t> v(a.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) v[i] = i;
  return v;
}

struct FinQuotient {
  FinSet classes;
  FinMap projection;  // from the full carrier; entries outside `on` map to their own class index 0 and are unused
  std::vector<std::uint32_t> representatives;  // order-minimal member of each class
  std::vector<bool> defined;  // projection is meaningful exactly on `on`
};

// Classes named "[x]" after their order-minimal representative x.
inline FinQuotient quotient(const FinSet& a, const FinRelation& r, const std::vector<std::uint32_t>& on,
                            const std::string& name) {
  if (auto v = is_equivalence(r, on); !v) throw Error("quotient: relation is not an equivalence (" + v.failure + ")");
  std::vector<std::uint32_t> sorted_on = on;
  std::sort(sorted_on.begin(), sorted_on.end());
  std::vector<std::int64_t> cls(a.size(), -1);
  std::vector<std::string> labels;
  std::vector<std::uint32_t> reps;
  for (auto x : sorted_on) {
    if (cls[x] >= 0) continue;
    const auto id = static_cast<std::int64_t>(reps.size());
    reps.push_back(x);
    labels.push_back("[" + a.elements[x] + "]");
    auto [lo, hi] = r.with_source({x});
    for (auto it = lo; it != hi; ++it) cls[(*it)[1]] = id;
  }
  FinQuotient q;
  q.classes = FinSet(name, labels);
  std::vector<std::uint32_t> assignment(a.size(), 0);
  q.defined.assign(a.size(), false);
  for (std::size_t x = 0; x < a.size(); ++x)
    if (cls[x] >= 0) {
      assignment[x] = static_cast<std::uint32_t>(cls[x]);
      q.defined[x] = true;
    }
  q.projection = FinMap(a, q.classes, std::move(assignment));
  q.representatives = std::move(reps);
  return q;
}

inline FinQuotient quotient(const FinSet& a, const FinRelation& r) {
  return quotient(a, r, all_elements(a), a.name + "/~");
}

inline nlohmann::json to_json(const FinRelation& r) {
  auto sig = nlohmann::json::array();
  for (const auto& s : r.source()) sig.push_back(s.name);
  for (const auto& s : r.target()) sig.push_back(s.name);
  auto tuples = nlohmann::json::array();
  for (const auto& t : r.tuples()) tuples.push_back(r.labels(t));
  return {{"sig", sig}, {"source_arity", r.source_arity()}, {"tuples", tuples}};
}

// {"sets": {name: [elements]}, "relations": {name: {"sig": [...], "tuples": [[...]]}}}
struct FinDocument {
  std::map<std::string, FinSet> sets;
  std::map<std::string, FinRelation> relations;
};

inline nlohmann::json to_json(const FinDocument& doc) {
  nlohmann::json sets = nlohmann::json::object();
  for (const auto& [name, s] : doc.sets) sets[name] = s.elements;
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& [name, r] : doc.relations) rels[name] = to_json(r);
  return {{"sets", sets}, {"relations", rels}};
}

inline FinDocument fin_document_from_json(const nlohmann::json& j) {
  FinDocument doc;
  if (!j.is_object() || !j.contains("sets")) throw Error("finite document needs a \"sets\" object");
  for (const auto& [name, elems] : j.at("sets").items())
    doc.sets.emplace(name, FinSet(name, elems.get<std::vector<std::string>>()));
  if (j.contains("relations"))
    for (const auto& [name, body] : j.at("relations").items()) {
      FinSignature sig;
      for (const auto& s : body.at("sig")) {
        auto it = doc.sets.find(s.get<std::string>());
        if (it == doc.sets.end()) throw Error("relation " + name + " references unknown set " + s.dump());
        sig.push_back(it->second);
      }
      const auto split = body.value("source_arity", std::size_t{0});
      if (split > sig.size()) throw Error("relation " + name + ": source_arity exceeds signature");
      FinSignature src(sig.begin(), sig.begin() + static_cast<std::ptrdiff_t>(split));
      FinSignature tgt(sig.begin() + static_cast<std::ptrdiff_t>(split), sig.end());
      std::vector<FinRelation::Tuple> tuples;
      for (const auto& t : body.at("tuples")) {
        if (!t.is_array() || t.size() != sig.size()) throw Error("relation " + name + ": tuple arity mismatch");
        FinRelation::Tuple u;
        for (std::size_t i = 0; i < sig.size(); ++i) u.push_back(sig[i].index_of(t[i].get<std::string>()));
        tuples.push_back(std::move(u));
      }
      doc.relations.emplace(name, FinRelation(src, tgt, std::move(tuples)));
    }
  return doc;
}

}  // namespace rsg
