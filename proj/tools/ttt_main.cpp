// Command-line front end: type checking, normalization, modality order
// queries, lattice computations, shape sequents, and corpus runs.
//
// Exit codes: 0 success, 1 domain-level failure (rejection, invalid,
// mismatch), 2 usage or I/O errors.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ttt/check.hpp"
#include "ttt/corpus.hpp"
#include "ttt/lattice.hpp"
#include "ttt/modality.hpp"
#include "ttt/pretty.hpp"
#include "ttt/shapes.hpp"

using json = nlohmann::json;
using namespace ttt;

namespace {

struct Output {
  bool asJson = false;

  void emit(const std::string& subcommand, const std::string& input, const std::string& verdict,
            const json& details, const std::string& text) {
    if (asJson) {
      json o;
      o["subcommand"] = subcommand;
      o["input"] = input;
      o["verdict"] = verdict;
      o["details"] = details;
      std::cout << o.dump() << "\n";
    } else {
      std::cout << text << "\n";
    }
  }
};

json errorDetails(const TttError& e) {
  json d;
  d["error"] = std::string(errName(e.kind));
  d["message"] = e.message;
  if (!e.rule.empty()) d["rule"] = e.rule;
  if (e.span.known()) d["span"] = {e.span.begin, e.span.end};
  return d;
}

int cmdCheck(Output& out, const std::vector<std::string>& files) {
  core::Signature sig;
  bool anyReject = false;
  for (const std::string& file : files) {
    std::string text = corpus::readFile(file);
    try {
      int n = check::checkText(sig, text);
      json d;
      d["declarations"] = n;
      out.emit("check", file, "OK", d, "OK (" + std::to_string(n) + " declarations)");
    } catch (const TttError& e) {
      json d = errorDetails(e);
      if (e.span.known()) d["at"] = front::describeSpan(text, e.span);
      std::string at = e.span.known() ? " at " + front::describeSpan(text, e.span) : "";
      out.emit("check", file, "REJECT", d,
               "REJECT " + std::string(errName(e.kind)) + at + ": " + e.message);
      anyReject = true;
    }
  }
  return anyReject ? 1 : 0;
}

int cmdNorm(Output& out, const std::vector<std::string>& files, const std::string& name) {
  core::Signature sig;
  for (const std::string& file : files) check::checkText(sig, corpus::readFile(file));
  const core::Declaration* d = sig.find(name);
  if (!d) throw TttError(ErrKind::UnboundName, "no declaration named '" + name + "'");
  core::Context empty;
  core::TermPtr nf = sem::normalizeAt(sig, empty, d->ty, core::cst(name));
  std::string printed = pretty::print(nf);
  json det;
  det["term"] = name;
  det["normalForm"] = printed;
  det["type"] = pretty::print(d->ty);
  out.emit("norm", files.empty() ? "" : files.back(), "OK", det, printed);
  return 0;
}

int cmdMode(Output& out, const std::string& query) {
  auto parseSide = [](std::string_view s) {
    auto m = modality::parseMod(s);
    if (!m) throw TttError(ErrKind::BadAnnotation, "unparseable modality '" + std::string(s) + "'");
    return *m;
  };
  std::size_t le = query.find("<=");
  std::size_t eq = query.find('=');
  json det;
  std::string verdictText;
  if (le != std::string::npos) {
    modality::Mod a = parseSide(query.substr(0, le));
    modality::Mod b = parseSide(query.substr(le + 2));
    bool r = modality::leq(a, b);
    det["lhs"] = std::string(modality::name(a));
    det["rhs"] = std::string(modality::name(b));
    det["relation"] = "<=";
    verdictText = r ? "true" : "false";
  } else if (eq != std::string::npos) {
    modality::Mod a = parseSide(query.substr(0, eq));
    modality::Mod b = parseSide(query.substr(eq + 1));
    bool r = a == b;
    det["lhs"] = std::string(modality::name(a));
    det["rhs"] = std::string(modality::name(b));
    det["relation"] = "=";
    verdictText = r ? "true" : "false";
  } else {
    modality::Mod a = parseSide(query);
    det["canonical"] = std::string(modality::name(a));
    verdictText = std::string(modality::name(a));
  }
  out.emit("mode", query, verdictText, det, verdictText);
  return 0;
}

std::string tableString(const lat::MonoFn& f) {
  std::string s;
  for (std::size_t j = 0; j < f.points; ++j) s += f.at(j) ? '1' : '0';
  return s;
}

int cmdLat(Output& out, const std::string& file, const std::string& action,
           const std::vector<std::string>& args, int bound) {
  if (file == "cases") {
    lat::GlueReport r = lat::glueCaseTable();
    json rows = json::array();
    std::string text;
    for (const lat::GlueCase& gc : r.cases) {
      rows.push_back({{"element", gc.element}, {"at0", gc.at0}, {"at1", gc.at1}});
      text += gc.element + "  [0,-] -> " + gc.at0 + "  [1,-] -> " + gc.at1 + "\n";
    }
    bool ok = r.partitionExhaustive && r.excludedCombinationEmpty && r.constOneLeafSingleton;
    json det;
    det["cases"] = rows;
    det["partitionExhaustive"] = r.partitionExhaustive;
    det["excludedCombinationEmpty"] = r.excludedCombinationEmpty;
    det["constOneLeafSingleton"] = r.constOneLeafSingleton;
    text += ok ? "case tree reproduced" : "CASE TREE MISMATCH";
    out.emit("lat", "cases", ok ? "true" : "false", det, text);
    return ok ? 0 : 1;
  }

  lat::Presentation pres = lat::parsePresentation(corpus::readFile(file));
  lat::LatticeCtx ctx(pres);
  if (action == "normal") {
    if (args.size() != 1) throw TttError(ErrKind::ParseError, "normal takes one term");
    lat::MonoFn f = lat::normalForm(ctx, lat::parseLatTerm(args[0]));
    json det;
    det["term"] = args[0];
    det["points"] = f.points;
    det["table"] = tableString(f);
    out.emit("lat", file, "OK", det, tableString(f));
    return 0;
  }
  if (action == "eq" || action == "leq") {
    if (args.size() != 2) throw TttError(ErrKind::ParseError, action + " takes two terms");
    lat::LatPtr s = lat::parseLatTerm(args[0]);
    lat::LatPtr t = lat::parseLatTerm(args[1]);
    bool r = action == "eq" ? lat::decideEq(ctx, s, t) : lat::decideLeq(ctx, s, t);
    json det;
    det["lhs"] = args[0];
    det["rhs"] = args[1];
    out.emit("lat", file, r ? "true" : "false", det, r ? "true" : "false");
    return 0;
  }
  if (action == "enumerate") {
    auto elems = lat::enumerateElements(ctx, bound);
    json det;
    det["count"] = elems.size();
    json tables = json::array();
    for (const lat::MonoFn& f : elems) tables.push_back(tableString(f));
    det["elements"] = tables;
    out.emit("lat", file, "OK", det, std::to_string(elems.size()) + " elements");
    return 0;
  }
  if (action == "duality") {
    lat::DualityReport r = lat::dualityCheck(ctx, bound);
    json det;
    det["lattice"] = r.latticeSize;
    det["spectrum"] = r.spectrumSize;
    det["monotoneMaps"] = r.monotoneMaps;
    std::string text = std::string(r.bijective ? "true" : "false") + " (lattice " +
                       std::to_string(r.latticeSize) + ", spectrum " +
                       std::to_string(r.spectrumSize) + ", monotone maps " +
                       std::to_string(r.monotoneMaps) + ")";
    out.emit("lat", file, r.bijective ? "true" : "false", det, text);
    return r.bijective ? 0 : 1;
  }
  throw TttError(ErrKind::ParseError,
                 "unknown lat action '" + action + "' (normal, eq, leq, enumerate, duality)");
}

int cmdShape(Output& out, const std::string& file, int bound, int chain) {
  auto batch = shapes::parseSequents(corpus::readFile(file));
  shapes::DecideOptions opts;
  if (bound > 0) {
    opts.simplicialBound = bound;
    opts.cubicalBound = bound;
  }
  opts.chainSize = chain;
  auto rows = shapes::shapeReport(batch, opts);
  bool anyError = false;
  for (const shapes::ReportRow& r : rows) {
    json det;
    std::string simp = r.simplicial ? (*r.simplicial ? "valid" : "invalid") : r.simplicialError;
    std::string cub = r.cubical ? (*r.cubical ? "valid" : "invalid") : r.cubicalError;
    if (r.simplicial)
      det["simplicial"] = *r.simplicial;
    else
      det["simplicialError"] = r.simplicialError;
    if (r.cubical)
      det["cubical"] = *r.cubical;
    else
      det["cubicalError"] = r.cubicalError;
    det["name"] = r.name;
    anyError = anyError || !r.simplicial || !r.cubical;
    out.emit("shape", file, r.name, det, r.name + "  simplicial: " + simp + "  cubical: " + cub);
  }
  return anyError ? 1 : 0;
}

int cmdCorpus(Output& out, const std::string& dir) {
  corpus::Report rep = corpus::runCorpus(dir);
  for (const corpus::FileResult& r : rep.files) {
    json det;
    det["expected"] = r.expected;
    det["actual"] = r.actual;
    det["declarations"] = r.declarations;
    if (!r.message.empty()) det["message"] = r.message;
    std::string text = std::string(r.pass ? "pass" : "FAIL") + "  " + r.file + "  expected [" +
                       r.expected + "] actual [" + r.actual + "]";
    out.emit("corpus", r.file, r.pass ? "pass" : "fail", det, text);
  }
  json summary;
  summary["passed"] = rep.passed;
  summary["failed"] = rep.failed;
  summary["declarations"] = rep.acceptedDeclarations;
  out.emit("corpus", dir, rep.failed == 0 ? "pass" : "fail", summary,
           std::to_string(rep.passed) + " passed, " + std::to_string(rep.failed) + " failed, " +
               std::to_string(rep.acceptedDeclarations) + " declarations accepted");
  return rep.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof checker for a modal type theory over a directed-interval lattice"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.asJson, "emit one JSON object per result");

  auto* check = app.add_subcommand("check", "type-check surface files");
  std::vector<std::string> checkFiles;
  check->add_option("files", checkFiles, "surface files, checked in order")->required();

  auto* norm = app.add_subcommand("norm", "print the normal form of a declaration");
  std::vector<std::string> normFiles;
  std::string normTerm;
  norm->add_option("files", normFiles, "surface files, checked in order")->required();
  norm->add_option("--term", normTerm, "declaration name")->required();

  auto* mode = app.add_subcommand("mode", "modality word and order queries");
  std::string modeQuery;
  mode->add_option("query", modeQuery, "e.g. \"glo <= op\" or \"op.op\"")->required();

  auto* latCmd = app.add_subcommand("lat", "presented-lattice computations");
  std::string latFile, latAction;
  std::vector<std::string> latArgs;
  int bound = 4;
  latCmd->add_option("file", latFile, "presentation file, or 'cases' for the gluing case table")
      ->required();
  latCmd->add_option("action", latAction, "normal | eq | leq | enumerate | duality");
  latCmd->add_option("terms", latArgs, "term arguments");
  latCmd->add_option("--bound", bound, "generator bound for enumeration");

  auto* shape = app.add_subcommand("shape", "decide shape sequents");
  std::string shapeFile;
  int shapeBound = 0, chain = 0;
  shape->add_option("file", shapeFile)->required();
  shape->add_option("--bound", shapeBound, "variable bound for both semantics");
  shape->add_option("--chain", chain, "override the simplicial chain size");

  auto* corpusCmd = app.add_subcommand("corpus", "run the checked corpus against its manifest");
  std::string corpusDir = "corpus";
  corpusCmd->add_option("--dir", corpusDir, "corpus directory (with a manifest file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the synopsis to standard error
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmdCheck(out, checkFiles);
    if (norm->parsed()) return cmdNorm(out, normFiles, normTerm);
    if (mode->parsed()) return cmdMode(out, modeQuery);
    if (latCmd->parsed()) return cmdLat(out, latFile, latAction, latArgs, bound);
    if (shape->parsed()) return cmdShape(out, shapeFile, shapeBound, chain);
    if (corpusCmd->parsed()) return cmdCorpus(out, corpusDir);
  } catch (const TttError& e) {
    if (e.kind == ErrKind::IoError || e.kind == ErrKind::ParseError) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    std::cerr << e.what() << "\n";
    return 1;
  }
  std::cerr << "no subcommand\n";
  return 2;
}
