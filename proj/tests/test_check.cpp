#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "ttt/check.hpp"
#include "ttt/pretty.hpp"

using namespace ttt;
using namespace ttt::core;
using modality::Mod;

namespace {

Signature baseSig() {
  Signature sig;
  check::checkText(sig,
                   "postulate A : U0\n"
                   "postulate B : U0\n"
                   "postulate a0 : A\n"
                   "postulate Int : U0\n");
  return sig;
}

ErrKind failKind(Signature& sig, const std::string& text) {
  try {
    check::checkText(sig, text);
  } catch (const TttError& e) {
    return e.kind;
  }
  FAIL("expected a checking failure");
  return ErrKind::ParseError;
}

}  // namespace

TEST_CASE("elaborate: desugaring examples") {
  Signature sig = baseSig();
  check::checkText(sig, "def f : (a :(glo) A) -> A := \\(a :(glo) A). a\n");
  const Declaration* d = sig.find("f");
  REQUIRE(d != nullptr);
  CHECK(alphaEq(d->body, lam(var(0))));
  CHECK(alphaEq(d->ty, pi(Mod::Glo, cst("A"), shift(cst("A"), 0, 1))));
}

TEST_CASE("elaborate: division annotations build a binding under a lock") {
  Signature sig = baseSig();
  check::Elaborator el(sig);
  check::TCtx c;
  // x :(glo/sha) A |- x  — the division reading puts a sha-lock after the bind
  check::TCtx c2 = el.pushContextEntry(c, "x", Mod::Glo, Mod::Sha, front::parseTerm("A"));
  REQUIRE(c2.ctx.entries.size() == 2);
  CHECK_FALSE(c2.ctx.entries[0].isLock);
  CHECK(c2.ctx.entries[0].mod == Mod::Glo);
  CHECK(c2.ctx.entries[1].isLock);
  CHECK(c2.ctx.entries[1].mod == Mod::Sha);
  CHECK(locksBetween(c2.ctx, 0) == Mod::Sha);
  // glo is below sha, so the variable is accessible
  sem::ValuePtr ty = el.checker().infer(c2, var(0));
  CHECK(el.checker().show(c2, ty) == "A");

  // x :(id/glo) A |- x is locked (id is not below glo)
  check::TCtx c3 = el.pushContextEntry(c, "x", Mod::Id, Mod::Glo, front::parseTerm("A"));
  try {
    el.checker().infer(c3, var(0));
    FAIL("expected VARIABLE_LOCKED");
  } catch (const TttError& e) {
    CHECK(e.kind == ErrKind::VariableLocked);
    // the error reports both modalities
    CHECK(e.message.find("id") != std::string::npos);
    CHECK(e.message.find("glo") != std::string::npos);
  }
}

TEST_CASE("elaborate: unknown name") {
  Signature sig = baseSig();
  CHECK(failKind(sig, "def g : A := foo\n") == ErrKind::UnboundName);
}

TEST_CASE("infer examples") {
  Signature sig = baseSig();
  // identity at a glo-annotated binder is accepted (the counit direction)
  check::checkText(sig, "def idglo : (a :(glo) A) -> A := \\a. a\n");

  // mod<glo> over an id-bound variable is locked
  CHECK(failKind(sig, "def bad : A -> <glo| A> := \\a. mod<glo> a\n") ==
        ErrKind::VariableLocked);

  // signature lookup
  Signature sig2 = baseSig();
  check::checkText(sig2, "def intIsType : U0 := Int\n");

  // modal application: argument is checked behind the function's lock
  Signature sig3 = baseSig();
  check::checkText(sig3,
                   "postulate fG : (x :(glo) A) -> B\n"
                   "def ok : (y :(glo) A) -> B := \\y. fG y\n");
  CHECK(failKind(sig3, "def no : (y :(sha) A) -> B := \\y. fG y\n") == ErrKind::VariableLocked);
}

TEST_CASE("checkDecl examples") {
  Signature sig;
  check::checkText(sig, "postulate univalenceish : (X : U0) -> X -> X\n");
  check::checkText(sig, "def tt : Bool := true\n");
  CHECK(failKind(sig, "def bad : Nat := true\n") == ErrKind::TypeMismatch);
  // duplicate names are rejected
  CHECK(failKind(sig, "def tt : Bool := false\n") == ErrKind::DuplicateName);
}

TEST_CASE("error taxonomy") {
  Signature sig = baseSig();
  CHECK(failKind(sig, "postulate x : (a :(foo) A) -> A\n") == ErrKind::BadAnnotation);
  CHECK(failKind(sig, "def y : A := a0 a0\n") == ErrKind::NotAFunction);
  CHECK(failKind(sig, "postulate z : U3\n") == ErrKind::UniverseError);
  CHECK(failKind(sig, "def w : A := fst a0\n") == ErrKind::TypeMismatch);
  CHECK(failKind(sig, "def v : (x : A) * A := a0\n") == ErrKind::TypeMismatch);

  // failures carry a span and a rule name
  try {
    Signature s2 = baseSig();
    check::checkText(s2, "def q : A :=\n  a0 a0\n");
    FAIL("expected NOT_A_FUNCTION");
  } catch (const TttError& e) {
    CHECK(e.span.known());
    CHECK_FALSE(e.rule.empty());
    CHECK(front::describeSpan("def q : A :=\n  a0 a0\n", e.span) == "2:3");
  }
}

TEST_CASE("cumulativity at conversion points") {
  Signature sig = baseSig();
  check::checkText(sig,
                   "def T0 : U1 := A\n"
                   "def T1 : U2 := U1\n"
                   "def T2 : U1 := (x : U0) -> U0\n"
                   "postulate famAt : (X : U1) -> U0\n"
                   "def useLift : U0 := famAt A\n");
  // but not downward
  CHECK(failKind(sig, "def bad : U0 := U1\n") == ErrKind::TypeMismatch);
}

TEST_CASE("let-mod with explicit motive") {
  Signature sig = baseSig();
  check::checkText(sig,
                   "def counit : <glo| A> -> A := \\x. let mod<glo> y = x ret z. A in y\n"
                   "def fuse : <glo| <sha| A>> -> <glo| A> :=\n"
                   "  \\x. let mod<glo> y = x ret z. <glo| A> in\n"
                   "      let<glo> mod<sha> w = y ret z. <glo| A> in mod<glo> w\n");
  // sha-bound variables are not accessible at the identity divisor
  CHECK(failKind(sig, "def leak : <sha| A> -> A := \\x. let mod<sha> y = x ret z. A in y\n") ==
        ErrKind::VariableLocked);
}

TEST_CASE("dependent let-mod computes in types") {
  Signature sig;
  check::checkText(
      sig,
      "postulate P : Bool -> U0\n"
      "postulate ptrue : P true\n"
      "def unbox : (b : <id| Bool>) -> U0 := \\b. let mod<id> x = b ret z. U0 in P x\n"
      "def use : unbox (mod<id> true) := ptrue\n");
}

TEST_CASE("pretty-print round trip is a fixpoint") {
  const char* text =
      "postulate A : U0\n"
      "postulate B : A -> U0\n"
      "postulate a0 : A\n"
      "def pairs : (x : A) * B x -> A := \\p. fst p\n"
      "def etaed : (f : (x :(glo) A) -> A) -> (x :(glo) A) -> A := \\f x. f x\n"
      "def boxed : <op.glo| A> -> <op.glo| A> :=\n"
      "  \\x. let mod<op.glo> y = x ret z. <op.glo| A> in mod<op.glo> y\n"
      "def withJ : (x : A) -> (p : Id A a0 x) -> Id A a0 x := \\x p. J (\\y q. Id A a0 y) refl p\n"
      "def nats : Nat := succ (succ zero)\n"
      "def bools : Bool -> Bool := \\b. indBool (\\z. Bool) false true b\n";
  Signature sig;
  auto decls = front::parseFile(text);
  for (const auto& sd : decls) {
    check::Elaborator el(sig);
    Declaration cd = el.elabDecl(sd);
    check::checkDeclaration(sig, cd);

    std::string printed = pretty::printDecl(cd);
    // re-parse + re-elaborate against the same prefix
    auto again = front::parseFile(printed);
    REQUIRE(again.size() == 1);
    check::Elaborator el2(sig);
    Declaration cd2 = el2.elabDecl(again[0]);
    CHECK(alphaEq(cd.ty, cd2.ty));
    if (!cd.isPostulate) CHECK(alphaEq(cd.body, cd2.body));
    CHECK(pretty::printDecl(cd2) == printed);  // fixpoint on printed output

    sig.add(cd);
  }
}

TEST_CASE("variable access agrees with the order table for every (mu, nu)") {
  // x :(mu) I used behind one lock nu is accepted exactly when mu <= nu
  const char* names[] = {"id", "op", "glo", "sha", "op.glo", "op.sha"};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      modality::Mod mu = modality::kAllMods[i], nu = modality::kAllMods[j];
      Signature sig = baseSig();
      std::string text = std::string("def probe : (x :(") + names[i] + ") I) -> <" + names[j] +
                         "| I> := \\x. mod<" + names[j] + "> x\n";
      // I is a postulate, usable everywhere; only the variable is gated
      check::checkText(sig, "postulate I : U0\n");
      bool accepted = true;
      ErrKind kind = ErrKind::ParseError;
      try {
        check::checkText(sig, text);
      } catch (const TttError& e) {
        accepted = false;
        kind = e.kind;
      }
      INFO(text);
      CHECK(accepted == modality::leq(mu, nu));
      if (!accepted) CHECK(kind == ErrKind::VariableLocked);
    }
  }
}

TEST_CASE("modal application gates its argument for every (rho, mu)") {
  // f : (x :(mu) A) -> B applied to a rho-bound variable: accepted iff
  // rho <= mu, since the argument is checked behind the lock mu
  const char* names[] = {"id", "op", "glo", "sha", "op.glo", "op.sha"};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      modality::Mod rho = modality::kAllMods[i], mu = modality::kAllMods[j];
      Signature sig = baseSig();
      check::checkText(sig, std::string("postulate fn : (x :(") + names[j] + ") A) -> B\n");
      std::string text =
          std::string("def probe : (y :(") + names[i] + ") A) -> B := \\y. fn y\n";
      bool accepted = true;
      try {
        check::checkText(sig, text);
      } catch (const TttError& e) {
        CHECK(e.kind == ErrKind::VariableLocked);
        accepted = false;
      }
      INFO(text);
      CHECK(accepted == modality::leq(rho, mu));
    }
  }
}

TEST_CASE("parser never crashes on mangled input") {
  std::mt19937_64 rng(0xF422);
  const std::string seeds[] = {
      "def f : (x : A) -> B := \\x. g x",
      "postulate q : <glo| (a : I) * le a a>",
      "def w : U1 := (x : U0) * x -> x",
      "let mod<glo> x = y ret z. A in x",
  };
  std::string chars = "()<>|,.:=*\\/ ->defpostulatemodretinU0123abcxyz'_";
  int parsed = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s = seeds[trial % 4];
    int edits = 1 + static_cast<int>(rng() % 6);
    for (int e = 0; e < edits; ++e) {
      std::size_t pos = rng() % (s.size() + 1);
      switch (rng() % 3) {
        case 0: s.insert(pos, 1, chars[rng() % chars.size()]); break;
        case 1:
          if (!s.empty()) s.erase(std::min(pos, s.size() - 1), 1);
          break;
        default:
          if (!s.empty()) s[std::min(pos, s.size() - 1)] = chars[rng() % chars.size()];
          break;
      }
    }
    try {
      Signature sig = baseSig();
      check::checkText(sig, s);
      ++parsed;  // mangled text may still be well-formed
    } catch (const TttError&) {
      // any structured failure is fine; crashes are not
    }
  }
  SUCCEED();
}

TEST_CASE("subject reduction on a small suite") {
  Signature sig;
  check::checkText(sig,
                   "postulate A : U0\n"
                   "postulate a0 : A\n"
                   "postulate P : A -> U0\n"
                   "postulate p0 : P a0\n"
                   "def idA : A -> A := \\x. x\n"
                   "def ap2 : A := idA (idA a0)\n"
                   "def dep : P (idA a0) := p0\n"
                   "def boxed : <glo| Bool> := mod<glo> (indBool (\\z. Bool) true false true)\n");
  Context empty;
  for (const Declaration& d : sig.decls) {
    if (d.isPostulate) continue;
    TermPtr nf = sem::normalizeAt(sig, empty, d.ty, d.body);
    // the normal form still checks at the declared type
    check::Checker ck(sig);
    check::TCtx c;
    ck.check(c, nf, ck.evalIn(c, d.ty));
  }
}
