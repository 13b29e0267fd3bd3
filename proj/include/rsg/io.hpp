#pragma once

// RSG and morphism documents.
//
//   finite  {"kind": "finite", "name", "carrier": [atoms], "L": [[i, j, k]], "I": [permutation]}
//   linear  {"kind": "linear", "name", "dim", "omega": matrix, "L_basis": matrix,
//            "I_matrix": matrix}   ("I_basis" instead when I is not a map)
//   morphism {"source"?, "target"?, "F": [[i, j]]} or {"source"?, "target"?, "F_basis": matrix}
//
// Schema problems raise InputError so callers can tell them from failed checks.

#include <fstream>
#include <sstream>
#include <variant>

#include "rsg/corpus.hpp"

namespace rsg {

class InputError : public Error {
 public:
  using Error::Error;
};

using AnyRelation = std::variant<FinRelation, LinearRelation>;

inline const std::string& name_of(const AnyRsg& g) {
  return std::visit([](const auto& r) -> const std::string& { return r.name; }, g);
}

inline std::string kind_of(const AnyRsg& g) { return std::holds_alternative<FiniteRsg>(g) ? "finite" : "linear"; }

namespace io_detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field \"") + key + "\" has the wrong type");
  }
}

// Errors from the builders are schema violations when they come from a document.
template <class F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

}  // namespace io_detail

inline AnyRsg rsg_from_json(const nlohmann::json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw InputError("RSG document must be a JSON object");
  const auto kind = get<std::string>(j, "kind");
  const auto name = j.contains("name") ? get<std::string>(j, "name") : std::string("rsg");
  if (kind == "finite") {
    const auto atoms = get<std::vector<std::string>>(j, "carrier");
    const auto l = get<std::vector<std::vector<std::uint32_t>>>(j, "L");
    const auto inv = get<std::vector<std::uint32_t>>(j, "I");
    std::vector<std::array<std::uint32_t, 3>> triples;
    for (const auto& t : l) {
      if (t.size() != 3) throw InputError("L entries must be index triples");
      for (auto i : t)
        if (i >= atoms.size()) throw InputError("L index " + std::to_string(i) + " out of range");
      triples.push_back({t[0], t[1], t[2]});
    }
    if (inv.size() != atoms.size()) throw InputError("I must list one image per carrier element");
    const auto set_name = j.contains("set") ? get<std::string>(j, "set") : name;
    return guarded("invalid finite RSG", [&] { return AnyRsg(finite_rsg(name, FinSet(set_name, atoms), triples, inv)); });
  }
  if (kind == "linear") {
    const auto dim = get<std::size_t>(j, "dim");
    return guarded("invalid linear RSG", [&] {
      const SymplecticSpace g(matrix_from_json(field(j, "omega"), dim));
      const Subspace l = Subspace::span(matrix_from_json(field(j, "L_basis"), 3 * dim));
      if (j.contains("I_matrix")) return AnyRsg(linear_rsg(name, g, l, matrix_from_json(j.at("I_matrix"), dim)));
      const Subspace inv = Subspace::span(matrix_from_json(field(j, "I_basis"), 2 * dim));
      return AnyRsg(linear_rsg(name, g, l, LinearRelation(g.conjugate(), g, inv)));
    });
  }
  throw InputError("kind must be \"finite\" or \"linear\", got \"" + kind + "\"");
}

inline nlohmann::json to_json(const FiniteRsg& g) {
  if (g.carrier.size() != 1) throw Error("finite RSG documents need a single carrier set");
  const FinSet& x = g.carrier[0];
  nlohmann::json l = nlohmann::json::array();
  for (const auto& t : g.triple.tuples()) l.push_back(t);
  std::vector<std::uint32_t> inv(x.size());
  for (const auto& t : g.inversion.tuples()) inv[t[0]] = t[1];
  return {{"kind", "finite"}, {"name", g.name}, {"set", x.name}, {"carrier", x.elements}, {"L", l}, {"I", inv}};
}

inline nlohmann::json to_json(const LinearRsg& g) {
  const std::size_t d = g.carrier.dim();
  nlohmann::json j{{"kind", "linear"},
                   {"name", g.name},
                   {"dim", d},
                   {"omega", to_json(g.carrier.omega())},
                   {"L_basis", to_json(g.triple.graph().basis())}};
  if (const auto m = graphs::as_map(g.inversion.graph(), d))
    j["I_matrix"] = to_json(*m);
  else
    j["I_basis"] = to_json(g.inversion.graph().basis());
  return j;
}

inline nlohmann::json to_json(const AnyRsg& g) {
  return std::visit([](const auto& r) { return to_json(r); }, g);
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": malformed JSON (" + e.what() + ")");
  }
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

inline AnyRsg load_rsg(const std::string& path) {
  const auto j = read_json_file(path);
  try {
    return rsg_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// F : G -/-> H, typed against the two documents it connects.
inline AnyRelation morphism_from_json(const nlohmann::json& j, const AnyRsg& g, const AnyRsg& h) {
  using namespace io_detail;
  if (!j.is_object()) throw InputError("morphism document must be a JSON object");
  if (g.index() != h.index()) throw InputError("morphism ends must have the same kind");
  if (j.contains("source") && get<std::string>(j, "source") != name_of(g))
    throw InputError("morphism source is \"" + get<std::string>(j, "source") + "\" but the document is \"" + name_of(g) + "\"");
  if (j.contains("target") && get<std::string>(j, "target") != name_of(h))
    throw InputError("morphism target is \"" + get<std::string>(j, "target") + "\" but the document is \"" + name_of(h) + "\"");
  if (const auto* fg = std::get_if<FiniteRsg>(&g)) {
    const auto& fh = std::get<FiniteRsg>(h);
    const auto pairs = get<std::vector<std::vector<std::uint32_t>>>(j, "F");
    std::vector<FinRelation::Tuple> t;
    for (const auto& p : pairs) {
      if (p.size() != 2) throw InputError("F entries must be index pairs");
      if (p[0] >= fg->carrier[0].size() || p[1] >= fh.carrier[0].size()) throw InputError("F index out of range");
      t.push_back(p);
    }
    return guarded("invalid morphism", [&] { return AnyRelation(FinRelation(fg->carrier, fh.carrier, t)); });
  }
  const auto& lg = std::get<LinearRsg>(g);
  const auto& lh = std::get<LinearRsg>(h);
  const std::size_t n = lg.carrier.dim() + lh.carrier.dim();
  return guarded("invalid morphism", [&] {
    const Subspace f = Subspace::span(matrix_from_json(field(j, "F_basis"), n));
    return AnyRelation(LinearRelation(lg.carrier, lh.carrier, f));
  });
}

inline nlohmann::json morphism_to_json(const FinRelation& f, const std::string& source, const std::string& target) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& t : f.tuples()) pairs.push_back(t);
  return {{"source", source}, {"target", target}, {"F", pairs}};
}

inline nlohmann::json morphism_to_json(const LinearRelation& f, const std::string& source, const std::string& target) {
  return {{"source", source}, {"target", target}, {"F_basis", to_json(f.graph().basis())}};
}

}  // namespace rsg
