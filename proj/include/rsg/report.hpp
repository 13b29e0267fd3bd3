#pragma once

// Reports behind the CLI commands. Each is a JSON document; the text form is
// rendered from the JSON alone, so a parsed report renders identically.

#include <sstream>

#include "rsg/io.hpp"
#include "rsg/morphism.hpp"

namespace rsg {

template <Carrier C>
std::string kind_name(const Rsg<C>&) {
  return C::kind;
}

// ---- check ---------------------------------------------------------------

template <Carrier C>
nlohmann::json check_report(const Rsg<C>& g, bool regular) {
  const AxiomReport axioms = check_axioms(g);
  nlohmann::json j = axioms.to_json();
  j["name"] = g.name;
  j["kind"] = C::kind;
  bool pass = axioms.pass();
  if (regular) {
    if (!axioms.premises_hold()) {
      j["regular"] = {{"pass", false}, {"skipped", "A.1-A.6 do not all hold"}};
      pass = false;
    } else {
      const auto reg = check_regular(g, axioms);
      j["regular"] = reg.to_json();
      pass = pass && reg.verdict.pass();
      if (reg.verdict.pass()) {
        const auto q = build_quotient(g, reg);
        j["quotient"] = q.to_json();
        pass = pass && q.verdict.pass();
      }
    }
  }
  j["pass"] = pass;
  return j;
}

inline nlohmann::json check_report(const AnyRsg& g, bool regular) {
  return std::visit([&](const auto& r) { return check_report(r, regular); }, g);
}

// ---- derive, quotient, poisson, morphism ------------------------------------

inline nlohmann::json derive_report(const AnyRsg& g) {
  return std::visit([](const auto& r) {
    return nlohmann::json{{"name", r.name}, {"kind", kind_name(r)}, {"derived", to_json(derive(r))}};
  }, g);
}

// Throws Error when the RSG is not regular.
inline nlohmann::json quotient_report(const AnyRsg& g) {
  return std::visit([](const auto& r) {
    const auto axioms = check_axioms(r);
    require_premises(r.name, axioms);
    const auto reg = check_regular(r, axioms);
    if (!reg.verdict.pass()) throw Error(r.name + " is not regular; run check --regular for witnesses");
    const auto q = build_quotient(r, reg);
    return nlohmann::json{{"name", r.name}, {"kind", kind_name(r)}, {"pass", q.verdict.pass()},
                          {"quotient", q.to_json()}};
  }, g);
}

inline nlohmann::json poisson_report(const AnyRsg& g) {
  const auto* lg = std::get_if<LinearRsg>(&g);
  if (!lg) throw Error("Poisson structures need a linear carrier; " + name_of(g) + " is finite");
  const auto axioms = check_axioms(*lg);
  require_premises(lg->name, axioms);
  const auto reg = check_regular(*lg, axioms);
  if (!reg.verdict.pass()) throw Error(lg->name + " is not regular; run check --regular for witnesses");
  const auto p = induced_poisson(*lg, reg);
  return {{"name", lg->name}, {"kind", "linear"}, {"pass", p.verdict.pass()}, {"base_dim", reg.base_dim()},
          {"poisson", p.to_json()}};
}

inline nlohmann::json morphism_report(const AnyRsg& g, const AnyRsg& h, const AnyRelation& f) {
  if (g.index() != h.index() || g.index() != f.index()) throw InputError("morphism ends must have the same kind");
  const auto r = std::visit([&](const auto& gg) {
    using R = std::decay_t<decltype(gg)>;
    using Rel = typename std::decay_t<decltype(gg.triple)>;
    return check_equivalence(gg, std::get<R>(h), std::get<Rel>(f));
  }, g);
  bool morphism = true;
  for (const auto& c : r.verdict.checks)
    if (c.id.rfind("morphism.", 0) == 0) morphism = morphism && c.pass;
  nlohmann::json j = r.to_json();
  j["kind"] = kind_of(g);
  j["source"] = name_of(g);
  j["target"] = name_of(h);
  j["morphism"] = morphism;
  j["equivalence"] = r.pass();
  return j;
}

// ---- corpus fragments --------------------------------------------------------

namespace report_detail {

inline nlohmann::json sorted(nlohmann::json a) {
  if (a.is_array()) std::sort(a.begin(), a.end());
  return a;
}

}  // namespace report_detail

inline std::optional<std::size_t> base_size(const nlohmann::json& report) {
  if (!report.contains("regular")) return std::nullopt;
  const auto& r = report["regular"];
  if (r.contains("M_dim")) return r["M_dim"].get<std::size_t>();
  if (r.contains("M")) return r["M"].size();
  return std::nullopt;
}

inline std::optional<std::size_t> arrow_count(const nlohmann::json& report) {
  if (!report.contains("quotient")) return std::nullopt;
  const auto& q = report["quotient"];
  if (q.contains("groupoid")) return q["groupoid"]["arrows"].size();
  if (q.contains("arrows")) return q["arrows"]["dim"].get<std::size_t>();
  return std::nullopt;
}

// Differences between a check --regular report (plus derive output) and the
// expected fragment; empty when they agree.
inline std::vector<std::string> fragment_mismatches(const Expected& e, const nlohmann::json& report,
                                                    const nlohmann::json& derived) {
  std::vector<std::string> out;
  for (const auto& [axiom, pass] : e.axioms)
    if (report["axioms"][axiom]["pass"] != pass)
      out.push_back(axiom + " expected " + (pass ? "pass" : "fail"));
  if (e.regular && (!report.contains("regular") || report["regular"]["pass"] != *e.regular))
    out.push_back(std::string("regularity expected ") + (*e.regular ? "pass" : "fail"));
  if (e.base_size && base_size(report) != e.base_size) out.push_back("base size expected " + std::to_string(*e.base_size));
  if (e.arrow_count && arrow_count(report) != e.arrow_count)
    out.push_back("quotient size expected " + std::to_string(*e.arrow_count));
  if (e.derived)
    for (const auto& [key, value] : e.derived->items())
      if (report_detail::sorted(derived["derived"][key]) != report_detail::sorted(value))
        out.push_back(key + " differs: " + derived["derived"][key].dump());
  return out;
}

// ---- text rendering ----------------------------------------------------------

namespace text {

inline std::string scalar(const nlohmann::json& s) {
  auto v = s.get<std::string>();
  if (v.size() > 2 && v.substr(v.size() - 2) == "/1") v.resize(v.size() - 2);
  return v;
}

inline std::string matrix(const nlohmann::json& m, const std::string& indent) {
  std::ostringstream os;
  if (m.empty()) return indent + "(empty)\n";
  for (const auto& row : m) {
    os << indent << "[";
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << scalar(row[i]);
    os << "]\n";
  }
  return os.str();
}

// Finite relation as a set: {1}, {(0,2), (1,3)}.
inline std::string tuples(const nlohmann::json& rel) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const auto& t = rel[i];
    os << (i ? ", " : "");
    if (t.size() == 1) {
      os << t[0].get<std::string>();
      continue;
    }
    os << "(";
    for (std::size_t k = 0; k < t.size(); ++k) os << (k ? "," : "") << t[k].get<std::string>();
    os << ")";
  }
  os << "}";
  return os.str();
}

inline std::string set(const nlohmann::json& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].get<std::string>();
  return out + "}";
}

inline std::string relation(const nlohmann::json& rel, const std::string& indent) {
  if (rel.is_array()) return tuples(rel) + "\n";
  return "subspace of dim " + rel["dim"].dump() + "\n" + matrix(rel["basis"], indent);
}

// Witness fields are labelled tuples on finite carriers and basis vectors on
// linear ones.
inline std::string witness_value(const nlohmann::json& v, const std::string& indent, bool linear) {
  if (v.is_object() && v.contains("basis")) return relation(v, indent);
  if (v.is_array() && linear) return "\n" + matrix(v, indent);
  if (v.is_array()) return tuples(v) + "\n";
  return v.dump() + "\n";
}

inline std::string verdict(const nlohmann::json& v, const std::string& indent, bool linear) {
  std::ostringstream os;
  for (const auto& c : v["checks"]) {
    const bool vac = c.value("vacuous", false);
    os << indent << (c["pass"].get<bool>() ? (vac ? "vacuous " : "ok      ") : "FAIL    ") << c["id"].get<std::string>()
       << "  " << c["statement"].get<std::string>() << "\n";
  }
  for (const auto& w : v["witnesses"]) {
    os << indent << "witness for " << w["check"].get<std::string>() << ":\n";
    for (const auto& [key, value] : w.items()) {
      if (key == "check" || key == "statement") continue;
      os << indent << "  " << key << ": " << witness_value(value, indent + "    ", linear);
    }
  }
  return os.str();
}

inline const char* mark(const nlohmann::json& pass) { return pass.get<bool>() ? "pass" : "FAIL"; }

}  // namespace text

inline std::string render_check(const nlohmann::json& r) {
  std::ostringstream os;
  const bool linear = r["kind"] == "linear";
  os << r["name"].get<std::string>() << " (" << r["kind"].get<std::string>() << "): " << text::mark(r["pass"]) << "\n";
  for (const auto& [axiom, v] : r["axioms"].items()) {
    os << "  " << axiom << " " << text::mark(v["pass"]) << "\n" << text::verdict(v, "    ", linear);
  }
  const auto& cor = r["corollaries"];
  os << "  corollaries " << text::mark(cor["pass"]) << (cor["premises_hold"].get<bool>() ? "" : " (premises do not hold)")
     << "\n"
     << text::verdict(cor, "    ", linear);
  if (r.contains("regular")) {
    const auto& reg = r["regular"];
    os << "  regular " << text::mark(reg["pass"]);
    if (reg.contains("skipped")) {
      os << ", skipped: " << reg["skipped"].get<std::string>() << "\n";
    } else {
      os << "\n" << text::verdict(reg, "    ", linear);
      if (reg.contains("M")) os << "    M = " << text::set(reg["M"]) << "\n";
      if (reg.contains("M_dim")) os << "    dim M = " << reg["M_dim"].dump() << "\n";
    }
  }
  if (r.contains("quotient")) os << "  quotient " << text::mark(r["quotient"]["pass"]) << "\n" << text::verdict(r["quotient"], "    ", linear);
  return os.str();
}

inline std::string render_derive(const nlohmann::json& r) {
  std::ostringstream os;
  os << r["name"].get<std::string>() << " (" << r["kind"].get<std::string>() << ")\n";
  for (const char* key : {"L1", "L2", "L3"}) os << key << " = " << text::relation(r["derived"][key], "  ");
  return os.str();
}

inline std::string render_quotient(const nlohmann::json& r) {
  std::ostringstream os;
  const auto& q = r["quotient"];
  os << r["name"].get<std::string>() << " quotient: " << text::mark(r["pass"]) << "\n" << text::verdict(q, "  ", r["kind"] == "linear");
  if (q.contains("groupoid")) {
    const auto& g = q["groupoid"];
    os << "objects: " << text::set(g["objects"]) << "\n";
    os << "arrows (" << g["arrows"].size() << "):\n";
    for (const auto& a : g["arrows"])
      os << "  " << a["name"].get<std::string>() << " : " << a["source"].get<std::string>() << " -> "
         << a["target"].get<std::string>() << ", inverse " << a["inverse"].get<std::string>() << "\n";
    os << "units:\n";
    for (const auto& [x, u] : g["units"].items()) os << "  " << x << " -> " << u.get<std::string>() << "\n";
    os << "multiplication:\n";
    for (const auto& m : g["mul"])
      os << "  " << m[0].get<std::string>() << " * " << m[1].get<std::string>() << " = " << m[2].get<std::string>() << "\n";
  } else if (q.contains("arrows")) {
    os << "arrows: symplectic space of dim " << q["arrows"]["dim"].dump() << ", omega =\n"
       << text::matrix(q["arrows"]["omega"], "  ");
    for (const char* key : {"source", "target", "unit", "inverse"})
      if (q.contains(key)) os << key << " =\n" << text::matrix(q[key], "  ");
  }
  return os.str();
}

inline std::string render_poisson(const nlohmann::json& r) {
  std::ostringstream os;
  const auto& p = r["poisson"];
  os << r["name"].get<std::string>() << " induced Poisson structure on M (dim " << r["base_dim"].dump()
     << "): " << text::mark(r["pass"]) << "\n"
     << "Pi =\n"
     << text::matrix(p["pi"], "  ") << text::verdict(p, "  ", true);
  return os.str();
}

inline std::string render_morphism(const nlohmann::json& r) {
  std::ostringstream os;
  os << r["source"].get<std::string>() << " -/-> " << r["target"].get<std::string>() << "\n"
     << "  morphism " << text::mark(r["morphism"]) << "\n"
     << "  equivalence " << text::mark(r["equivalence"]) << "\n"
     << "  both sides satisfy A.1-A.6: " << (r["preconditions"].get<bool>() ? "yes" : "no") << "\n"
     << text::verdict(r, "    ", r["kind"] == "linear");
  return os.str();
}

}  // namespace rsg
