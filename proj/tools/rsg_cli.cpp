// rsg: check, derive and quotient relational symplectic groupoids from JSON
// documents or corpus entries.
//
// Exit codes: 0 all requested checks pass, 1 a check or engine precondition
// failed, 2 the input could not be read or parsed.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rsg/report.hpp"

namespace {

using rsg::AnyRsg;

// A path, or "corpus:<name>" for a built-in example.
AnyRsg load(const std::string& source) {
  const std::string prefix = "corpus:";
  if (source.rfind(prefix, 0) == 0) {
    try {
      return rsg::corpus_entry(source.substr(prefix.size())).build();
    } catch (const rsg::Error& e) {
      throw rsg::InputError(e.what());
    }
  }
  return rsg::load_rsg(source);
}

struct Output {
  bool json = false;
  std::string path;

  void emit(const std::string& body) const {
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path);
    if (!out) throw rsg::InputError("cannot write " + path);
    out << body;
  }

  void emit(const nlohmann::json& report, const std::string& text) const { emit(json ? report.dump(2) + "\n" : text); }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_flag("--json", out.json, "print the JSON report instead of text");
  cmd->add_option("-o,--output", out.path, "write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for relational symplectic groupoids"};
  app.require_subcommand(1);

  Output out;
  std::string file, g_file, h_file, f_file, entry;
  bool regular = false, equivalence = false;
  int code = 0;

  auto* check = app.add_subcommand("check", "check axioms A.1-A.6 (and A.7-A.9 with --regular)");
  check->add_option("file", file, "RSG document, or corpus:<name>")->required();
  check->add_flag("--regular", regular, "also check regularity and build the quotient groupoid");
  add_output_flags(check, out);

  auto* derive = app.add_subcommand("derive", "print the derived relations L1, L2, L3");
  derive->add_option("file", file, "RSG document, or corpus:<name>")->required();
  add_output_flags(derive, out);

  auto* quotient = app.add_subcommand("quotient", "build the quotient groupoid C/L2 of a regular RSG");
  quotient->add_option("file", file, "RSG document, or corpus:<name>")->required();
  add_output_flags(quotient, out);

  auto* morphism = app.add_subcommand("morphism", "check that F : G -/-> H is a morphism or an equivalence");
  morphism->add_option("source", g_file, "source RSG, or corpus:<name>")->required();
  morphism->add_option("target", h_file, "target RSG, or corpus:<name>")->required();
  morphism->add_option("relation", f_file, "morphism document")->required();
  morphism->add_flag("--equivalence", equivalence, "require an equivalence, not just a morphism");
  add_output_flags(morphism, out);

  auto* poisson = app.add_subcommand("poisson", "compute the Poisson structure induced on the base");
  poisson->add_option("file", file, "linear RSG document, or corpus:<name>")->required();
  add_output_flags(poisson, out);

  auto* corpus = app.add_subcommand("corpus", "built-in examples");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "list corpus entries");
  list->add_flag("--json", out.json, "print JSON");
  auto* emit = corpus->add_subcommand("emit", "write the RSG document of an entry");
  emit->add_option("name", entry, "entry name")->required();
  emit->add_option("-o,--output", out.path, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      const auto report = rsg::check_report(load(file), regular);
      out.emit(report, rsg::render_check(report));
      code = report["pass"].get<bool>() ? 0 : 1;
    } else if (derive->parsed()) {
      const auto report = rsg::derive_report(load(file));
      out.emit(report, rsg::render_derive(report));
    } else if (quotient->parsed()) {
      const auto report = rsg::quotient_report(load(file));
      out.emit(report, rsg::render_quotient(report));
      code = report["pass"].get<bool>() ? 0 : 1;
    } else if (morphism->parsed()) {
      const AnyRsg g = load(g_file), h = load(h_file);
      const auto f = rsg::morphism_from_json(rsg::read_json_file(f_file), g, h);
      const auto report = rsg::morphism_report(g, h, f);
      out.emit(report, rsg::render_morphism(report));
      const bool verdict = report[equivalence ? "equivalence" : "morphism"].get<bool>();
      if (!report["preconditions"].get<bool>())
        std::cerr << "rsg: " << rsg::name_of(g) << " or " << rsg::name_of(h) << " does not satisfy A.1-A.6\n";
      code = verdict && report["preconditions"].get<bool>() ? 0 : 1;
    } else if (poisson->parsed()) {
      const auto report = rsg::poisson_report(load(file));
      out.emit(report, rsg::render_poisson(report));
      code = report["pass"].get<bool>() ? 0 : 1;
    } else if (list->parsed()) {
      nlohmann::json entries = nlohmann::json::array();
      std::string text;
      for (const auto& e : rsg::corpus()) {
        entries.push_back({{"name", e.name}, {"description", e.description}, {"basis", rsg::to_string(e.expected.basis)}});
        text += e.name + std::string(e.name.size() < 30 ? 30 - e.name.size() : 1, ' ') + e.description + "\n";
      }
      out.emit(entries, text);
    } else if (emit->parsed()) {
      AnyRsg g;
      try {
        g = rsg::corpus_entry(entry).build();
      } catch (const rsg::Error& e) {
        throw rsg::InputError(e.what());
      }
      out.emit(rsg::to_json(g).dump(2) + "\n");
    }
  } catch (const rsg::InputError& e) {
    std::cerr << "rsg: input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "rsg: input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rsg: " << e.what() << "\n";
    return 1;
  }
  return code;
}
