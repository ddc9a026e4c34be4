#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <regex>
#include <set>
#include <string>

#include "ttt/corpus.hpp"
#include "ttt/pretty.hpp"

using namespace ttt;
using namespace ttt::corpus;

namespace {

const std::string kCorpusDir = std::string(TTT_SOURCE_DIR) + "/corpus";

const Report& corpusReport() {
  static Report rep = runCorpus(kCorpusDir);
  return rep;
}

core::Signature acceptedSignature() {
  core::Signature sig;
  auto entries = parseManifest(readFile(kCorpusDir + "/manifest"));
  for (const ManifestEntry& e : entries) {
    if (!e.accept) continue;
    check::checkText(sig, readFile(kCorpusDir + "/" + e.file));
  }
  return sig;
}

}  // namespace

TEST_CASE("corpus: every file matches its manifest outcome") {
  const Report& rep = corpusReport();
  for (const FileResult& r : rep.files) {
    INFO(r.file << " expected [" << r.expected << "] actual [" << r.actual << "] " << r.message);
    CHECK(r.pass);
  }
  CHECK(rep.failed == 0);
  CHECK(rep.acceptedDeclarations >= 40);
}

TEST_CASE("corpus: required declarations appear exactly once") {
  const char* required[] = {
      // axiom catalog, one postulate each
      "univalence", "intervalLattice", "crispInduction", "intGlobalPoints",
      "intDetectsDiscrete", "cubesSeparate", "simpStability", "amazingRightAdjoint", "intOp",
      "duality",
      // definitions named in the map
      "le", "Delta1", "Delta2", "Delta3", "Lambda21", "Lambda20", "Lambda22", "Spine2", "Spine3",
      "Hom", "depHom", "isContr", "isProp", "isSet", "isEquiv", "isSegal", "isRezk", "isSimp",
      "IntIso", "intIsoMapIn", "isCocartArr", "hasLCCLifts", "LCCLiftsCompose", "Glue", "aIsInner",
      "aHasLCCLifts", "aLCCLiftsCompose", "Cat", "univCocart", "dua", "isCat", "DeltaFam",
  };
  core::Signature sig = acceptedSignature();
  std::map<std::string, int> count;
  for (const core::Declaration& d : sig.decls) count[d.name]++;
  for (const char* name : required) {
    INFO(name);
    CHECK(count[name] == 1);
  }
  // the axiom catalog consists of postulates
  for (const char* name :
       {"univalence", "intervalLattice", "crispInduction", "intGlobalPoints",
        "intDetectsDiscrete", "cubesSeparate", "simpStability", "amazingRightAdjoint", "intOp",
        "duality"}) {
    const core::Declaration* d = sig.find(name);
    REQUIRE(d != nullptr);
    CHECK(d->isPostulate);
  }
}

TEST_CASE("corpus: subject reduction for every definition") {
  core::Signature sig = acceptedSignature();
  core::Context empty;
  check::Checker ck(sig);
  for (const core::Declaration& d : sig.decls) {
    if (d.isPostulate) continue;
    INFO(d.name);
    core::TermPtr nf = sem::normalizeAt(sig, empty, d.ty, d.body);
    check::TCtx c;
    ck.check(c, nf, ck.evalIn(c, d.ty));
  }
}

TEST_CASE("corpus: normal forms keep only postulate heads") {
  core::Signature sig = acceptedSignature();
  core::Context empty;
  std::set<std::string> heads;
  std::function<void(const core::TermPtr&)> collect = [&](const core::TermPtr& t) {
    if (t->tag == core::Tag::Const) heads.insert(t->name);
    for (const core::TermPtr& k : t->kids) collect(k);
  };
  for (const core::Declaration& d : sig.decls) {
    if (d.isPostulate) continue;
    collect(sem::normalizeAt(sig, empty, d.ty, d.body));
  }
  for (const std::string& h : heads) {
    const core::Declaration* d = sig.find(h);
    REQUIRE(d != nullptr);
    INFO(h);
    CHECK(d->isPostulate);
  }
}

TEST_CASE("corpus: pretty-print round trip is a fixpoint on every declaration") {
  core::Signature sig;
  auto entries = parseManifest(readFile(kCorpusDir + "/manifest"));
  for (const ManifestEntry& e : entries) {
    if (!e.accept) continue;
    auto decls = front::parseFile(readFile(kCorpusDir + "/" + e.file));
    for (const front::SurfaceDecl& sd : decls) {
      check::Elaborator el(sig);
      core::Declaration cd = el.elabDecl(sd);
      check::checkDeclaration(sig, cd);
      std::string printed = pretty::printDecl(cd);
      INFO(printed);
      auto again = front::parseFile(printed);
      REQUIRE(again.size() == 1);
      check::Elaborator el2(sig);
      core::Declaration cd2 = el2.elabDecl(again[0]);
      CHECK(core::alphaEq(cd.ty, cd2.ty));
      if (!cd.isPostulate) CHECK(core::alphaEq(cd.body, cd2.body));
      CHECK(pretty::printDecl(cd2) == printed);
      sig.add(cd);
    }
  }
}

TEST_CASE("corpus: report is deterministic") {
  Report a = runCorpus(kCorpusDir);
  Report b = runCorpus(kCorpusDir);
  CHECK(renderReport(a) == renderReport(b));
}

TEST_CASE("corpus: manifest audit flags unlisted files") {
  auto entries = parseManifest(readFile(kCorpusDir + "/manifest"));
  entries.pop_back();
  CHECK_THROWS_AS(auditManifest(kCorpusDir, entries), TttError);
}
