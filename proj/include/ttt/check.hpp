#ifndef TTT_CHECK_HPP
#define TTT_CHECK_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttt/errors.hpp"
#include "ttt/eval.hpp"
#include "ttt/pretty.hpp"
#include "ttt/signature.hpp"
#include "ttt/syntax.hpp"
#include "ttt/term.hpp"

// Bidirectional type checking for the core calculus, and elaboration of the
// surface syntax into it.  Introduction forms check, eliminations infer.
// The variable rule enforces leq(binding annotation, composite of crossed
// locks); modal application checks its argument behind the function's lock.
namespace ttt::check {

using core::Context;
using core::Declaration;
using core::Signature;
using core::Tag;
using core::TermPtr;
using modality::Mod;
using sem::ValuePtr;
using sem::VTag;

// A syntactic context paired with its semantic mirror: an environment of
// fresh neutrals, the type of each variable by level, and binder names.
struct TCtx {
  Context ctx;
  sem::EnvPtr env;
  std::vector<ValuePtr> lvlTypes;
  std::vector<std::string> names;
  std::size_t depth() const { return lvlTypes.size(); }
};

class Checker {
 public:
  explicit Checker(const Signature& sig) : sig_(sig), ev_(sig), qt_(ev_) {}

  const sem::Evaluator& evaluator() const { return ev_; }

  TCtx extendLock(const TCtx& c, Mod mu) const {
    TCtx r = c;
    r.ctx = c.ctx.extendLock(mu);
    return r;
  }

  TCtx extendBind(const TCtx& c, Mod mu, const TermPtr& tyTerm, const ValuePtr& tyVal,
                  const std::string& name) const {
    TCtx r = c;
    r.ctx = c.ctx.extendBind(mu, tyTerm, name);
    r.env = sem::envCons(sem::vNeutralVar(static_cast<int>(c.depth())), c.env);
    r.lvlTypes.push_back(tyVal);
    r.names.push_back(name);
    return r;
  }

  ValuePtr evalIn(const TCtx& c, const TermPtr& t) const { return ev_.eval(t, c.env); }

  TermPtr quoteTy(const TCtx& c, const ValuePtr& ty) const {
    sem::QuoteEnv q;
    q.lvlTypes = c.lvlTypes;
    return qt_.quoteType(q, ty);
  }

  TermPtr quoteAt(const TCtx& c, const ValuePtr& ty, const ValuePtr& v) const {
    sem::QuoteEnv q;
    q.lvlTypes = c.lvlTypes;
    return qt_.quote(q, ty, v);
  }

  std::string show(const TCtx& c, const ValuePtr& ty) const {
    return pretty::print(quoteTy(c, ty), c.names);
  }

  bool typesEqual(const TCtx& c, const ValuePtr& a, const ValuePtr& b) const {
    return core::alphaEq(quoteTy(c, a), quoteTy(c, b));
  }

  // conversion plus universe cumulativity
  bool subtype(const TCtx& c, const ValuePtr& a, const ValuePtr& b) const {
    if (a->tag == VTag::Universe && b->tag == VTag::Universe) return a->idx <= b->idx;
    return typesEqual(c, a, b);
  }

  bool valuesEqual(const TCtx& c, const ValuePtr& ty, const ValuePtr& a, const ValuePtr& b) const {
    sem::QuoteEnv qa;
    qa.lvlTypes = c.lvlTypes;
    sem::QuoteEnv qb;
    qb.lvlTypes = c.lvlTypes;
    return core::alphaEq(qt_.quote(qa, ty, a), qt_.quote(qb, ty, b));
  }

  int inferUniverse(const TCtx& c, const TermPtr& t) const {
    ValuePtr v = infer(c, t);
    if (v->tag != VTag::Universe)
      throw TttError(ErrKind::UniverseError, "expected a universe, found " + show(c, v), t->span,
                     "universe");
    return v->idx;
  }

  ValuePtr infer(const TCtx& c, const TermPtr& t) const {
    switch (t->tag) {
      case Tag::Var: {
        const core::Entry& e = core::lookupBind(c.ctx, t->idx);
        Mod divisor = core::locksBetween(c.ctx, t->idx);
        if (!modality::leq(e.mod, divisor))
          throw TttError(ErrKind::VariableLocked,
                         "variable '" + (e.name.empty() ? "#" + std::to_string(t->idx) : e.name) +
                             "' bound with modality " + std::string(modality::name(e.mod)) +
                             " is not accessible behind locks composing to " +
                             std::string(modality::name(divisor)),
                         t->span, "variable");
        std::size_t lvl = c.depth() - 1 - static_cast<std::size_t>(t->idx);
        return c.lvlTypes[lvl];
      }
      case Tag::Universe: {
        if (t->idx < 0 || t->idx + 1 > 3)
          throw TttError(ErrKind::UniverseError,
                         "universe U" + std::to_string(t->idx) + " has no type in the hierarchy",
                         t->span, "universe");
        return sem::vUniverse(t->idx + 1);
      }
      case Tag::Pi: {
        int i = inferUniverse(extendLock(c, t->mod), t->kids[0]);
        ValuePtr domV = evalIn(c, t->kids[0]);
        TCtx b = extendBind(c, t->mod, t->kids[0], domV, t->name);
        int j = inferUniverse(b, t->kids[1]);
        return sem::vUniverse(std::max(i, j));
      }
      case Tag::Sigma: {
        int i = inferUniverse(c, t->kids[0]);
        ValuePtr domV = evalIn(c, t->kids[0]);
        TCtx b = extendBind(c, Mod::Id, t->kids[0], domV, t->name);
        int j = inferUniverse(b, t->kids[1]);
        return sem::vUniverse(std::max(i, j));
      }
      case Tag::Lam:
        throw TttError(ErrKind::CannotInfer, "cannot infer the type of an unannotated lambda",
                       t->span, "lambda");
      case Tag::Pair:
        throw TttError(ErrKind::CannotInfer, "cannot infer the type of a bare pair", t->span,
                       "pair");
      case Tag::Refl:
        throw TttError(ErrKind::CannotInfer, "cannot infer the type of refl", t->span, "refl");
      case Tag::App: {
        ValuePtr fTy = infer(c, t->kids[0]);
        if (fTy->tag != VTag::Pi)
          throw TttError(ErrKind::NotAFunction,
                         "applied expression has type " + show(c, fTy) + ", which is not a function",
                         t->span, "application");
        check(extendLock(c, fTy->mod), t->kids[1], fTy->v1);
        return ev_.applyClosure(fTy->clo, evalIn(c, t->kids[1]));
      }
      case Tag::Fst: {
        ValuePtr pTy = infer(c, t->kids[0]);
        if (pTy->tag != VTag::Sigma)
          throw TttError(ErrKind::TypeMismatch,
                         "projection from type " + show(c, pTy) + ", which is not a pair type",
                         t->span, "projection");
        return pTy->v1;
      }
      case Tag::Snd: {
        ValuePtr pTy = infer(c, t->kids[0]);
        if (pTy->tag != VTag::Sigma)
          throw TttError(ErrKind::TypeMismatch,
                         "projection from type " + show(c, pTy) + ", which is not a pair type",
                         t->span, "projection");
        return ev_.applyClosure(pTy->clo, ev_.doFst(evalIn(c, t->kids[0])));
      }
      case Tag::Id: {
        int l = inferUniverse(c, t->kids[0]);
        ValuePtr tyV = evalIn(c, t->kids[0]);
        check(c, t->kids[1], tyV);
        check(c, t->kids[2], tyV);
        return sem::vUniverse(l);
      }
      case Tag::J: {
        ValuePtr eTy = infer(c, t->kids[2]);
        if (eTy->tag != VTag::Id)
          throw TttError(ErrKind::TypeMismatch,
                         "identity elimination of a term of type " + show(c, eTy), t->span,
                         "identity-elim");
        ValuePtr A = eTy->v1, a = eTy->v2, b = eTy->v3;
        ValuePtr motiveTy = sem::vPiHost(A, [A, a](ValuePtr bb) {
          return sem::vPiHost(sem::vId(A, a, bb), [](ValuePtr) { return sem::vUniverse(3); });
        });
        check(c, t->kids[0], motiveTy);
        ValuePtr mV = evalIn(c, t->kids[0]);
        check(c, t->kids[1], ev_.apply(ev_.apply(mV, a), sem::mkV(VTag::Refl)));
        return ev_.apply(ev_.apply(mV, b), evalIn(c, t->kids[2]));
      }
      case Tag::ModT: {
        int l = inferUniverse(extendLock(c, t->mod), t->kids[0]);
        return sem::vUniverse(l);
      }
      case Tag::ModIntro: {
        ValuePtr inner = infer(extendLock(c, t->mod), t->kids[0]);
        return sem::vModT(t->mod, inner);
      }
      case Tag::LetMod: {
        Mod mu = t->mod, nu = t->mod2;
        TCtx lockNu = extendLock(c, nu);
        ValuePtr sTy = infer(lockNu, t->kids[1]);
        if (sTy->tag != VTag::ModT)
          throw TttError(ErrKind::TypeMismatch,
                         "modal elimination of a term of type " + show(c, sTy) +
                             ", which is not a modal type",
                         t->span, "let-mod");
        if (sTy->mod != mu)
          throw TttError(ErrKind::TypeMismatch,
                         "let-mod at modality " + std::string(modality::name(mu)) +
                             " applied to a term of type " + show(c, sTy),
                         t->span, "let-mod");
        ValuePtr A = sTy->v1;
        TermPtr At = quoteTy(c, A);
        // motive is a type over the modal variable
        TCtx mctx = extendBind(c, nu, core::modT(mu, At), sTy, t->name + "m");
        inferUniverse(mctx, t->kids[0]);
        // body lives under the composite annotation
        TCtx bctx = extendBind(c, modality::compose(nu, mu), At, A, t->name);
        ValuePtr xVar = sem::vNeutralVar(static_cast<int>(c.depth()));
        ValuePtr bodyExpected =
            ev_.eval(t->kids[0], sem::envCons(sem::vModIntro(mu, xVar), c.env));
        check(bctx, t->kids[2], bodyExpected);
        return ev_.eval(t->kids[0], sem::envCons(evalIn(lockNu, t->kids[1]), c.env));
      }
      case Tag::Bool:
      case Tag::Nat:
      case Tag::Unit:
      case Tag::Empty:
        return sem::vUniverse(0);
      case Tag::TrueLit:
      case Tag::FalseLit:
        return sem::mkV(VTag::Bool);
      case Tag::Zero:
        return sem::mkV(VTag::Nat);
      case Tag::Star:
        return sem::mkV(VTag::Unit);
      case Tag::Succ: {
        check(c, t->kids[0], sem::mkV(VTag::Nat));
        return sem::mkV(VTag::Nat);
      }
      case Tag::BoolRec: {
        ValuePtr motiveTy =
            sem::vPiHost(sem::mkV(VTag::Bool), [](ValuePtr) { return sem::vUniverse(3); });
        check(c, t->kids[0], motiveTy);
        ValuePtr mV = evalIn(c, t->kids[0]);
        check(c, t->kids[3], sem::mkV(VTag::Bool));
        check(c, t->kids[1], ev_.apply(mV, sem::mkV(VTag::True)));
        check(c, t->kids[2], ev_.apply(mV, sem::mkV(VTag::False)));
        return ev_.apply(mV, evalIn(c, t->kids[3]));
      }
      case Tag::NatRec: {
        ValuePtr motiveTy =
            sem::vPiHost(sem::mkV(VTag::Nat), [](ValuePtr) { return sem::vUniverse(3); });
        check(c, t->kids[0], motiveTy);
        ValuePtr mV = evalIn(c, t->kids[0]);
        check(c, t->kids[3], sem::mkV(VTag::Nat));
        check(c, t->kids[1], ev_.apply(mV, sem::mkV(VTag::Zero)));
        const sem::Evaluator& ev = ev_;
        ValuePtr succTy = sem::vPiHost(sem::mkV(VTag::Nat), [&ev, mV](ValuePtr n) {
          ValuePtr target = ev.apply(mV, sem::vSucc(n));
          return sem::vPiHost(ev.apply(mV, n), [target](ValuePtr) { return target; });
        });
        check(c, t->kids[2], succTy);
        return ev_.apply(mV, evalIn(c, t->kids[3]));
      }
      case Tag::EmptyRec: {
        ValuePtr motiveTy =
            sem::vPiHost(sem::mkV(VTag::Empty), [](ValuePtr) { return sem::vUniverse(3); });
        check(c, t->kids[0], motiveTy);
        check(c, t->kids[1], sem::mkV(VTag::Empty));
        ValuePtr mV = evalIn(c, t->kids[0]);
        return ev_.apply(mV, evalIn(c, t->kids[1]));
      }
      case Tag::Const: {
        const Declaration* d = sig_.find(t->name);
        if (!d)
          throw TttError(ErrKind::UnboundName, "unknown name '" + t->name + "'", t->span,
                         "constant");
        ValuePtr ty = ev_.constType(t->name);
        for (const TermPtr& a : t->kids) {
          if (ty->tag != VTag::Pi)
            throw TttError(ErrKind::NotAFunction,
                           "constant '" + t->name + "' applied at non-function type " + show(c, ty),
                           t->span, "application");
          check(extendLock(c, ty->mod), a, ty->v1);
          ty = ev_.applyClosure(ty->clo, evalIn(c, a));
        }
        return ty;
      }
    }
    throw TttError(ErrKind::IllScoped, "unhandled term tag in inference", t->span, "infer");
  }

  void check(const TCtx& c, const TermPtr& t, const ValuePtr& expected) const {
    switch (t->tag) {
      case Tag::Lam: {
        if (expected->tag != VTag::Pi)
          throw TttError(ErrKind::TypeMismatch,
                         "lambda checked against " + show(c, expected) +
                             ", which is not a function type",
                         t->span, "lambda");
        TermPtr domT = quoteTy(c, expected->v1);
        TCtx b = extendBind(c, expected->mod, domT, expected->v1, t->name);
        ValuePtr xVar = sem::vNeutralVar(static_cast<int>(c.depth()));
        check(b, t->kids[0], ev_.applyClosure(expected->clo, xVar));
        return;
      }
      case Tag::Pair: {
        if (expected->tag != VTag::Sigma)
          throw TttError(ErrKind::TypeMismatch,
                         "pair checked against " + show(c, expected) +
                             ", which is not a pair type",
                         t->span, "pair");
        check(c, t->kids[0], expected->v1);
        check(c, t->kids[1], ev_.applyClosure(expected->clo, evalIn(c, t->kids[0])));
        return;
      }
      case Tag::ModIntro: {
        if (expected->tag != VTag::ModT)
          throw TttError(ErrKind::TypeMismatch,
                         "modal constructor checked against " + show(c, expected) +
                             ", which is not a modal type",
                         t->span, "modal-intro");
        if (expected->mod != t->mod)
          throw TttError(ErrKind::TypeMismatch,
                         "modal constructor at modality " + std::string(modality::name(t->mod)) +
                             " checked against " + show(c, expected),
                         t->span, "modal-intro");
        check(extendLock(c, t->mod), t->kids[0], expected->v1);
        return;
      }
      case Tag::Refl: {
        if (expected->tag != VTag::Id)
          throw TttError(ErrKind::TypeMismatch,
                         "refl checked against " + show(c, expected) +
                             ", which is not an identity type",
                         t->span, "refl");
        if (!valuesEqual(c, expected->v1, expected->v2, expected->v3))
          throw TttError(ErrKind::TypeMismatch,
                         "refl checked against " + show(c, expected) +
                             " whose endpoints are not convertible",
                         t->span, "refl");
        return;
      }
      default: {
        ValuePtr got = infer(c, t);
        if (!subtype(c, got, expected))
          throw TttError(ErrKind::TypeMismatch,
                         "expected " + show(c, expected) + ", found " + show(c, got), t->span,
                         "conversion");
        return;
      }
    }
  }

 private:
  const Signature& sig_;
  sem::Evaluator ev_;
  sem::Quoter qt_;
};

// Builds the semantic mirror of a syntactic context.
inline TCtx tctxOf(const Checker& ck, const Context& ctx) {
  TCtx c;
  for (const core::Entry& e : ctx.entries) {
    if (e.isLock) {
      c = ck.extendLock(c, e.mod);
    } else {
      ValuePtr ty = ck.evalIn(c, e.ty);
      c = ck.extendBind(c, e.mod, e.ty, ty, e.name);
    }
  }
  return c;
}

// Checks a declaration against a signature (which must not yet contain it).
inline void checkDeclaration(const Signature& sig, const Declaration& d) {
  try {
    Checker ck(sig);
    TCtx c;
    ck.inferUniverse(c, d.ty);
    if (!d.isPostulate) ck.check(c, d.body, ck.evalIn(c, d.ty));
  } catch (TttError& e) {
    throw TttError(e.kind, "in declaration '" + d.name + "': " + e.message,
                   e.span.known() ? e.span : d.span, e.rule);
  }
}

// Type of `t` in `ctx`, as a term.
inline TermPtr inferType(const Signature& sig, const Context& ctx, const TermPtr& t) {
  Checker ck(sig);
  TCtx c = tctxOf(ck, ctx);
  return ck.quoteTy(c, ck.infer(c, t));
}

// Beta-normal eta-long form of `t`; the type is inferred first.
inline TermPtr normalizeTerm(const Signature& sig, const Context& ctx, const TermPtr& t) {
  if (core::maxFreeVar(t) >= static_cast<int>(ctx.bindCount()))
    throw TttError(ErrKind::IllScoped, "term has out-of-range variable indices", t->span,
                   "normalize");
  Checker ck(sig);
  TCtx c = tctxOf(ck, ctx);
  ValuePtr ty = ck.infer(c, t);
  return ck.quoteAt(c, ty, ck.evalIn(c, t));
}

// --- elaboration ---------------------------------------------------------------

using front::SNode;
using front::SPtr;
using front::STag;

class Elaborator {
 public:
  explicit Elaborator(const Signature& sig) : sig_(sig), ck_(sig) {}

  Checker& checker() { return ck_; }

  // Elaborates a surface term; `expected` (optional) directs introduction
  // forms and provides lambda binder types.
  TermPtr elab(const TCtx& c, const SPtr& s, const ValuePtr* expected) {
    switch (s->tag) {
      case STag::Lam:
        return elabLam(c, s, expected);
      case STag::Pair: {
        if (!expected)
          return spanned(checkedInfer(c, s, nullptr), s->span);
        if ((*expected)->tag != VTag::Sigma)
          throw TttError(ErrKind::TypeMismatch,
                         "pair checked against " + ck_.show(c, *expected) +
                             ", which is not a pair type",
                         s->span, "pair");
        TermPtr a = elab(c, s->kids[0], &(*expected)->v1);
        ValuePtr sndTy = ck_.evaluator().applyClosure((*expected)->clo, ck_.evalIn(c, a));
        TermPtr b = elab(c, s->kids[1], &sndTy);
        return spanned(core::pair(a, b), s->span);
      }
      case STag::ModIntro: {
        Mod mu = s->mod;
        if (expected) {
          if ((*expected)->tag != VTag::ModT || (*expected)->mod != mu)
            throw TttError(ErrKind::TypeMismatch,
                           "modal constructor mod<" + std::string(modality::name(mu)) +
                               "> checked against " + ck_.show(c, *expected),
                           s->span, "modal-intro");
          TermPtr body = elab(ck_.extendLock(c, mu), s->kids[0], &(*expected)->v1);
          return spanned(core::modIntro(mu, body), s->span);
        }
        TermPtr body = elab(ck_.extendLock(c, mu), s->kids[0], nullptr);
        return spanned(core::modIntro(mu, body), s->span);
      }
      case STag::Refl: {
        if (expected) {
          if ((*expected)->tag != VTag::Id)
            throw TttError(ErrKind::TypeMismatch,
                           "refl checked against " + ck_.show(c, *expected), s->span, "refl");
          if (!ck_.valuesEqual(c, (*expected)->v1, (*expected)->v2, (*expected)->v3))
            throw TttError(ErrKind::TypeMismatch,
                           "refl checked against " + ck_.show(c, *expected) +
                               " whose endpoints are not convertible",
                           s->span, "refl");
        }
        return spanned(core::refl(), s->span);
      }
      default:
        return spanned(checkedInfer(c, s, expected), s->span);
    }
  }

  // def/postulate elaboration; does not add to the signature.
  Declaration elabDecl(const front::SurfaceDecl& d) {
    try {
      Declaration out;
      out.name = d.name;
      out.isPostulate = d.isPostulate;
      out.span = d.span;
      TCtx c;
      out.ty = elab(c, d.ty, nullptr);
      ck_.inferUniverse(c, out.ty);
      if (!d.isPostulate) {
        ValuePtr tyV = ck_.evalIn(c, out.ty);
        out.body = elab(c, d.body, &tyV);
      }
      return out;
    } catch (TttError& e) {
      throw TttError(e.kind, "in declaration '" + d.name + "': " + e.message,
                     e.span.known() ? e.span : d.span, e.rule);
    }
  }

  // Context-entry sugar `x :(mu/nu) A`: a binding under mu followed by a
  // lock nu between the binding and whatever comes next.
  TCtx pushContextEntry(const TCtx& c, const std::string& name, Mod mu, Mod nu, const SPtr& ty) {
    TermPtr tyC = elab(ck_.extendLock(c, mu), ty, nullptr);
    ValuePtr tyV = ck_.evalIn(c, tyC);
    return ck_.extendLock(ck_.extendBind(c, mu, tyC, tyV, name), nu);
  }

 private:
  // synthesizing elaboration; when `expected` is given the result is verified
  // against it so that errors carry the surface span
  TermPtr checkedInfer(const TCtx& c, const SPtr& s, const ValuePtr* expected) {
    TermPtr t = elabSynth(c, s);
    if (expected) {
      ValuePtr got = ck_.infer(c, t);
      if (!ck_.subtype(c, got, *expected))
        throw TttError(ErrKind::TypeMismatch,
                       "expected " + ck_.show(c, *expected) + ", found " + ck_.show(c, got),
                       s->span, "conversion");
    }
    return t;
  }

  TermPtr elabLam(const TCtx& c, const SPtr& s, const ValuePtr* expected) {
    if (s->hasDiv)
      throw TttError(ErrKind::BadAnnotation,
                     "division annotations are context sugar, not binder annotations", s->span,
                     "lambda");
    bool annotated = s->kids.size() == 2;
    const SPtr& bodyS = s->kids.back();
    if (!expected) {
      throw TttError(ErrKind::CannotInfer,
                     "cannot infer the type of a lambda in this position; ascribe it via a "
                     "definition",
                     s->span, "lambda");
    }
    if ((*expected)->tag != VTag::Pi)
      throw TttError(ErrKind::TypeMismatch,
                     "lambda checked against " + ck_.show(c, *expected) +
                         ", which is not a function type",
                     s->span, "lambda");
    Mod mu = (*expected)->mod;
    if (s->hasMod && s->mod != mu)
      throw TttError(ErrKind::TypeMismatch,
                     "binder annotated with modality " + std::string(modality::name(s->mod)) +
                         " but the function type expects " + std::string(modality::name(mu)),
                     s->span, "lambda");
    if (annotated) {
      TermPtr domC = elab(ck_.extendLock(c, mu), s->kids[0], nullptr);
      ValuePtr domV = ck_.evalIn(c, domC);
      if (!ck_.typesEqual(c, domV, (*expected)->v1))
        throw TttError(ErrKind::TypeMismatch,
                       "binder annotated with type " + ck_.show(c, domV) +
                           " but the function type expects " + ck_.show(c, (*expected)->v1),
                       s->span, "lambda");
    }
    TermPtr domT = ck_.quoteTy(c, (*expected)->v1);
    TCtx b = ck_.extendBind(c, mu, domT, (*expected)->v1, s->name);
    ValuePtr xVar = sem::vNeutralVar(static_cast<int>(c.depth()));
    ValuePtr bodyTy = ck_.evaluator().applyClosure((*expected)->clo, xVar);
    TermPtr body = elab(b, bodyS, &bodyTy);
    return spanned(core::lam(body, s->name), s->span);
  }

  TermPtr elabSynth(const TCtx& c, const SPtr& s) {
    switch (s->tag) {
      case STag::Var: {
        for (std::size_t i = c.names.size(); i-- > 0;) {
          if (c.names[i] == s->name) {
            int idx = static_cast<int>(c.names.size() - 1 - i);
            return spanned(core::var(idx), s->span);
          }
        }
        if (sig_.find(s->name)) return spanned(core::cst(s->name), s->span);
        throw TttError(ErrKind::UnboundName, "unknown name '" + s->name + "'", s->span, "name");
      }
      case STag::Universe:
        return spanned(core::universe(s->level), s->span);
      case STag::Pi: {
        if (s->hasDiv)
          throw TttError(ErrKind::BadAnnotation,
                         "division annotations are context sugar, not binder annotations", s->span,
                         "pi");
        Mod mu = s->hasMod ? s->mod : Mod::Id;
        TermPtr dom = elab(ck_.extendLock(c, mu), s->kids[0], nullptr);
        ValuePtr domV = ck_.evalIn(c, dom);
        TCtx b = ck_.extendBind(c, mu, dom, domV, s->name);
        TermPtr cod = elab(b, s->kids[1], nullptr);
        return spanned(core::pi(mu, dom, cod, s->name), s->span);
      }
      case STag::Arrow: {
        TermPtr dom = elab(c, s->kids[0], nullptr);
        TermPtr cod = elab(c, s->kids[1], nullptr);
        return spanned(core::arrow(Mod::Id, dom, cod), s->span);
      }
      case STag::Sigma: {
        TermPtr dom = elab(c, s->kids[0], nullptr);
        ValuePtr domV = ck_.evalIn(c, dom);
        TCtx b = ck_.extendBind(c, Mod::Id, dom, domV, s->name);
        TermPtr cod = elab(b, s->kids[1], nullptr);
        return spanned(core::sigma(dom, cod, s->name), s->span);
      }
      case STag::Prod: {
        TermPtr l = elab(c, s->kids[0], nullptr);
        TermPtr r = elab(c, s->kids[1], nullptr);
        return spanned(core::sigma(l, core::shift(r, 0, 1)), s->span);
      }
      case STag::App: {
        TermPtr f = elab(c, s->kids[0], nullptr);
        ValuePtr fTy = ck_.infer(c, f);
        if (fTy->tag != VTag::Pi)
          throw TttError(ErrKind::NotAFunction,
                         "applied expression has type " + ck_.show(c, fTy) +
                             ", which is not a function",
                         s->span, "application");
        TermPtr a = elab(ck_.extendLock(c, fTy->mod), s->kids[1], &fTy->v1);
        return spanned(core::app(f, a), s->span);
      }
      case STag::Fst:
        return spanned(core::fst(elab(c, s->kids[0], nullptr)), s->span);
      case STag::Snd:
        return spanned(core::snd(elab(c, s->kids[0], nullptr)), s->span);
      case STag::Eq: {
        TermPtr lhs = elab(c, s->kids[0], nullptr);
        ValuePtr ty = ck_.infer(c, lhs);
        TermPtr rhs = elab(c, s->kids[1], &ty);
        return spanned(core::idTy(ck_.quoteTy(c, ty), lhs, rhs), s->span);
      }
      case STag::Id: {
        TermPtr A = elab(c, s->kids[0], nullptr);
        ValuePtr AV = ck_.evalIn(c, A);
        TermPtr a = elab(c, s->kids[1], &AV);
        TermPtr b = elab(c, s->kids[2], &AV);
        return spanned(core::idTy(A, a, b), s->span);
      }
      case STag::J: {
        TermPtr target = elab(c, s->kids[2], nullptr);
        ValuePtr eTy = ck_.infer(c, target);
        if (eTy->tag != VTag::Id)
          throw TttError(ErrKind::TypeMismatch,
                         "identity elimination of a term of type " + ck_.show(c, eTy), s->span,
                         "identity-elim");
        ValuePtr A = eTy->v1, a = eTy->v2;
        ValuePtr motiveTy = sem::vPiHost(A, [A, a](ValuePtr bb) {
          return sem::vPiHost(sem::vId(A, a, bb), [](ValuePtr) { return sem::vUniverse(3); });
        });
        TermPtr motive = elab(c, s->kids[0], &motiveTy);
        ValuePtr mV = ck_.evalIn(c, motive);
        ValuePtr baseTy = ck_.evaluator().apply(ck_.evaluator().apply(mV, a), sem::mkV(VTag::Refl));
        TermPtr base = elab(c, s->kids[1], &baseTy);
        return spanned(core::jElim(motive, base, target), s->span);
      }
      case STag::ModT: {
        TermPtr ty = elab(ck_.extendLock(c, s->mod), s->kids[0], nullptr);
        return spanned(core::modT(s->mod, ty), s->span);
      }
      case STag::LetMod: {
        Mod mu = s->mod, nu = s->mod2;
        TCtx lockNu = ck_.extendLock(c, nu);
        TermPtr scrut = elab(lockNu, s->kids[0], nullptr);
        ValuePtr sTy = ck_.infer(lockNu, scrut);
        if (sTy->tag != VTag::ModT || sTy->mod != mu)
          throw TttError(ErrKind::TypeMismatch,
                         "let-mod at modality " + std::string(modality::name(mu)) +
                             " applied to a term of type " + ck_.show(c, sTy),
                         s->span, "let-mod");
        ValuePtr A = sTy->v1;
        TermPtr At = ck_.quoteTy(c, A);
        TCtx mctx = ck_.extendBind(c, nu, core::modT(mu, At), sTy, s->name2);
        TermPtr motive = elab(mctx, s->kids[1], nullptr);
        ck_.inferUniverse(mctx, motive);
        TCtx bctx = ck_.extendBind(c, modality::compose(nu, mu), At, A, s->name);
        ValuePtr xVar = sem::vNeutralVar(static_cast<int>(c.depth()));
        ValuePtr bodyTy =
            ck_.evaluator().eval(motive, sem::envCons(sem::vModIntro(mu, xVar), c.env));
        TermPtr body = elab(bctx, s->kids[2], &bodyTy);
        return spanned(core::letMod(nu, mu, motive, scrut, body, s->name), s->span);
      }
      case STag::Bool:
        return spanned(core::mk(Tag::Bool), s->span);
      case STag::TrueLit:
        return spanned(core::mk(Tag::TrueLit), s->span);
      case STag::FalseLit:
        return spanned(core::mk(Tag::FalseLit), s->span);
      case STag::Nat:
        return spanned(core::mk(Tag::Nat), s->span);
      case STag::Zero:
        return spanned(core::mk(Tag::Zero), s->span);
      case STag::Unit:
        return spanned(core::mk(Tag::Unit), s->span);
      case STag::Star:
        return spanned(core::mk(Tag::Star), s->span);
      case STag::Empty:
        return spanned(core::mk(Tag::Empty), s->span);
      case STag::Succ: {
        ValuePtr natV = sem::mkV(VTag::Nat);
        return spanned(core::mk(Tag::Succ, {elab(c, s->kids[0], &natV)}), s->span);
      }
      case STag::BoolRec: {
        ValuePtr motiveTy =
            sem::vPiHost(sem::mkV(VTag::Bool), [](ValuePtr) { return sem::vUniverse(3); });
        TermPtr motive = elab(c, s->kids[0], &motiveTy);
        ValuePtr mV = ck_.evalIn(c, motive);
        ValuePtr boolV = sem::mkV(VTag::Bool);
        TermPtr scrut = elab(c, s->kids[3], &boolV);
        ValuePtr tTy = ck_.evaluator().apply(mV, sem::mkV(VTag::True));
        ValuePtr fTy = ck_.evaluator().apply(mV, sem::mkV(VTag::False));
        TermPtr tc = elab(c, s->kids[1], &tTy);
        TermPtr fc = elab(c, s->kids[2], &fTy);
        return spanned(core::mk(Tag::BoolRec, {motive, tc, fc, scrut}), s->span);
      }
      case STag::NatRec: {
        ValuePtr motiveTy =
            sem::vPiHost(sem::mkV(VTag::Nat), [](ValuePtr) { return sem::vUniverse(3); });
        TermPtr motive = elab(c, s->kids[0], &motiveTy);
        ValuePtr mV = ck_.evalIn(c, motive);
        ValuePtr natV = sem::mkV(VTag::Nat);
        TermPtr scrut = elab(c, s->kids[3], &natV);
        ValuePtr zTy = ck_.evaluator().apply(mV, sem::mkV(VTag::Zero));
        TermPtr zc = elab(c, s->kids[1], &zTy);
        const sem::Evaluator& ev = ck_.evaluator();
        ValuePtr succTy = sem::vPiHost(natV, [&ev, mV](ValuePtr n) {
          ValuePtr target = ev.apply(mV, sem::vSucc(n));
          return sem::vPiHost(ev.apply(mV, n), [target](ValuePtr) { return target; });
        });
        TermPtr sc = elab(c, s->kids[2], &succTy);
        return spanned(core::mk(Tag::NatRec, {motive, zc, sc, scrut}), s->span);
      }
      case STag::EmptyRec: {
        ValuePtr motiveTy =
            sem::vPiHost(sem::mkV(VTag::Empty), [](ValuePtr) { return sem::vUniverse(3); });
        TermPtr motive = elab(c, s->kids[0], &motiveTy);
        ValuePtr emptyV = sem::mkV(VTag::Empty);
        TermPtr scrut = elab(c, s->kids[1], &emptyV);
        return spanned(core::mk(Tag::EmptyRec, {motive, scrut}), s->span);
      }
      case STag::Lam:
      case STag::Pair:
      case STag::ModIntro:
      case STag::Refl:
        // handled by the checking direction; reaching here means no expected
        // type was available
        throw TttError(ErrKind::CannotInfer,
                       "cannot infer the type of an introduction form in this position", s->span,
                       "infer");
    }
    throw TttError(ErrKind::ParseError, "unhandled surface node", s->span, "elaborate");
  }

  static TermPtr spanned(const TermPtr& t, Span sp) {
    if (t->span.begin == sp.begin && t->span.end == sp.end) return t;
    auto r = std::make_shared<core::Term>(*t);
    r->span = sp;
    return r;
  }

  const Signature& sig_;
  Checker ck_;
};

// Parses, elaborates and checks a whole surface file, appending to `sig`.
// Returns the number of declarations added.
inline int checkText(Signature& sig, std::string_view text) {
  auto decls = front::parseFile(text);
  for (const front::SurfaceDecl& d : decls) {
    Elaborator el(sig);
    Declaration cd = el.elabDecl(d);
    checkDeclaration(sig, cd);
    sig.add(std::move(cd));
  }
  return static_cast<int>(decls.size());
}

}  // namespace ttt::check

#endif  // TTT_CHECK_HPP
