#ifndef TTT_EVAL_HPP
#define TTT_EVAL_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ttt/errors.hpp"
#include "ttt/signature.hpp"
#include "ttt/term.hpp"

// Normalization by evaluation.  Terms are interpreted into a semantic domain
// of weak-head values with closures, then read back type-directed into
// beta-normal, eta-long form (eta for Pi including modal Pi, Sigma and Unit;
// no eta for modal types).  Definitions unfold during evaluation; postulates
// stay stuck as neutral heads.
namespace ttt::sem {

using core::Context;
using core::Declaration;
using core::Signature;
using core::Tag;
using core::Term;
using core::TermPtr;
using modality::Mod;

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct EnvNode;
using EnvPtr = std::shared_ptr<const EnvNode>;

struct EnvNode {
  ValuePtr v;
  EnvPtr next;
};

inline EnvPtr envCons(ValuePtr v, EnvPtr next) {
  return std::make_shared<const EnvNode>(EnvNode{std::move(v), std::move(next)});
}

inline ValuePtr envLookup(const EnvPtr& env, int i) {
  const EnvNode* n = env.get();
  while (n && i > 0) {
    n = n->next.get();
    --i;
  }
  if (!n) throw TttError(ErrKind::IllScoped, "environment lookup out of range");
  return n->v;
}

// A delayed body: either a term under an environment or a host-level
// function (used when the read-back phase synthesizes types).
struct Closure {
  TermPtr body;
  EnvPtr env;
  std::function<ValuePtr(ValuePtr)> host;
};

enum class VTag : std::uint8_t {
  Universe,
  Pi,
  Lam,
  Sigma,
  Pair,
  Id,
  Refl,
  ModT,
  ModIntro,
  Bool,
  True,
  False,
  Nat,
  Zero,
  Succ,
  Unit,
  Star,
  Empty,
  Neutral,
};

struct SpineEntry {
  enum class Kind : std::uint8_t { App, Fst, Snd, BoolRec, NatRec, EmptyRec, J, LetMod } kind;
  ValuePtr arg;             // App
  ValuePtr motive;          // BoolRec/NatRec/EmptyRec/J
  ValuePtr c1, c2;          // BoolRec cases, NatRec zero/succ cases, J base
  Closure letMotive, letBody;  // LetMod
  Mod mu = Mod::Id, nu = Mod::Id;
};

struct Neutral {
  bool isVar = true;
  int lvl = 0;               // de Bruijn level for variable heads
  std::string constName;     // postulate head
  std::vector<SpineEntry> spine;
};

struct Value {
  VTag tag;
  Mod mod = Mod::Id;
  int idx = 0;               // universe level
  ValuePtr v1, v2, v3;       // Pi/Sigma dom = v1; Pair = v1,v2; Id = v1,v2,v3; Succ/ModT/ModIntro = v1
  Closure clo;               // Pi/Sigma cod, Lam body
  Neutral neutral;
};

inline ValuePtr mkV(VTag tag) {
  auto v = std::make_shared<Value>();
  v->tag = tag;
  return v;
}

inline ValuePtr vUniverse(int l) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Universe;
  v->idx = l;
  return v;
}

inline ValuePtr vNeutralVar(int lvl) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Neutral;
  v->neutral.isVar = true;
  v->neutral.lvl = lvl;
  return v;
}

inline ValuePtr vNeutralConst(std::string name) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Neutral;
  v->neutral.isVar = false;
  v->neutral.constName = std::move(name);
  return v;
}

inline ValuePtr extendSpine(const ValuePtr& n, SpineEntry e) {
  auto v = std::make_shared<Value>(*n);
  v->neutral.spine.push_back(std::move(e));
  return v;
}

inline ValuePtr vPiHost(ValuePtr dom, std::function<ValuePtr(ValuePtr)> cod, Mod mu = Mod::Id) {
  auto p = std::make_shared<Value>();
  p->tag = VTag::Pi;
  p->mod = mu;
  p->v1 = std::move(dom);
  p->clo.host = std::move(cod);
  return p;
}

inline ValuePtr vId(ValuePtr A, ValuePtr a, ValuePtr b) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Id;
  v->v1 = std::move(A);
  v->v2 = std::move(a);
  v->v3 = std::move(b);
  return v;
}

inline ValuePtr vModT(Mod mu, ValuePtr A) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::ModT;
  v->mod = mu;
  v->v1 = std::move(A);
  return v;
}

inline ValuePtr vModIntro(Mod mu, ValuePtr w) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::ModIntro;
  v->mod = mu;
  v->v1 = std::move(w);
  return v;
}

inline ValuePtr vSucc(ValuePtr n) {
  auto v = std::make_shared<Value>();
  v->tag = VTag::Succ;
  v->v1 = std::move(n);
  return v;
}

class Evaluator {
 public:
  explicit Evaluator(const Signature& sig) : sig_(sig) {}

  const Signature& sig() const { return sig_; }

  ValuePtr applyClosure(const Closure& c, ValuePtr a) const {
    if (c.host) return c.host(std::move(a));
    return eval(c.body, envCons(std::move(a), c.env));
  }

  ValuePtr apply(const ValuePtr& f, ValuePtr a) const {
    if (f->tag == VTag::Lam) return applyClosure(f->clo, std::move(a));
    if (f->tag == VTag::Neutral) {
      SpineEntry e;
      e.kind = SpineEntry::Kind::App;
      e.arg = std::move(a);
      return extendSpine(f, std::move(e));
    }
    throw TttError(ErrKind::IllScoped, "application of a non-function value");
  }

  ValuePtr doFst(const ValuePtr& p) const {
    if (p->tag == VTag::Pair) return p->v1;
    if (p->tag == VTag::Neutral) {
      SpineEntry e;
      e.kind = SpineEntry::Kind::Fst;
      return extendSpine(p, std::move(e));
    }
    throw TttError(ErrKind::IllScoped, "first projection of a non-pair value");
  }

  ValuePtr doSnd(const ValuePtr& p) const {
    if (p->tag == VTag::Pair) return p->v2;
    if (p->tag == VTag::Neutral) {
      SpineEntry e;
      e.kind = SpineEntry::Kind::Snd;
      return extendSpine(p, std::move(e));
    }
    throw TttError(ErrKind::IllScoped, "second projection of a non-pair value");
  }

  ValuePtr doBoolRec(ValuePtr motive, ValuePtr t, ValuePtr f, const ValuePtr& s) const {
    if (s->tag == VTag::True) return t;
    if (s->tag == VTag::False) return f;
    if (s->tag == VTag::Neutral) {
      SpineEntry e;
      e.kind = SpineEntry::Kind::BoolRec;
      e.motive = std::move(motive);
      e.c1 = std::move(t);
      e.c2 = std::move(f);
      return extendSpine(s, std::move(e));
    }
    throw TttError(ErrKind::IllScoped, "boolean recursion on a non-boolean value");
  }

  ValuePtr doNatRec(const ValuePtr& motive, const ValuePtr& z, const ValuePtr& s,
                    const ValuePtr& n) const {
    if (n->tag == VTag::Zero) return z;
    if (n->tag == VTag::Succ) {
      ValuePtr rec = doNatRec(motive, z, s, n->v1);
      return apply(apply(s, n->v1), std::move(rec));
    }
    if (n->tag == VTag::Neutral) {
      SpineEntry e;
      e.kind = SpineEntry::Kind::NatRec;
      e.motive = motive;
      e.c1 = z;
      e.c2 = s;
      return extendSpine(n, std::move(e));
    }
    throw TttError(ErrKind::IllScoped, "natural recursion on a non-numeral value");
  }

  ValuePtr doJ(ValuePtr motive, ValuePtr base, const ValuePtr& target) const {
    if (target->tag == VTag::Refl) return base;
    if (target->tag == VTag::Neutral) {
      SpineEntry e;
      e.kind = SpineEntry::Kind::J;
      e.motive = std::move(motive);
      e.c1 = std::move(base);
      return extendSpine(target, std::move(e));
    }
    throw TttError(ErrKind::IllScoped, "identity elimination on a non-path value");
  }

  ValuePtr eval(const TermPtr& t, const EnvPtr& env) const {
    switch (t->tag) {
      case Tag::Var:
        return envLookup(env, t->idx);
      case Tag::Universe:
        return vUniverse(t->idx);
      case Tag::Pi: {
        auto v = mkVCopy(VTag::Pi, t->mod);
        v->v1 = eval(t->kids[0], env);
        v->clo = Closure{t->kids[1], env, nullptr};
        return v;
      }
      case Tag::Lam: {
        auto v = mkVCopy(VTag::Lam, Mod::Id);
        v->clo = Closure{t->kids[0], env, nullptr};
        return v;
      }
      case Tag::App:
        return apply(eval(t->kids[0], env), eval(t->kids[1], env));
      case Tag::Sigma: {
        auto v = mkVCopy(VTag::Sigma, Mod::Id);
        v->v1 = eval(t->kids[0], env);
        v->clo = Closure{t->kids[1], env, nullptr};
        return v;
      }
      case Tag::Pair: {
        auto v = mkVCopy(VTag::Pair, Mod::Id);
        v->v1 = eval(t->kids[0], env);
        v->v2 = eval(t->kids[1], env);
        return v;
      }
      case Tag::Fst:
        return doFst(eval(t->kids[0], env));
      case Tag::Snd:
        return doSnd(eval(t->kids[0], env));
      case Tag::Id: {
        auto v = mkVCopy(VTag::Id, Mod::Id);
        v->v1 = eval(t->kids[0], env);
        v->v2 = eval(t->kids[1], env);
        v->v3 = eval(t->kids[2], env);
        return v;
      }
      case Tag::Refl:
        return mkV(VTag::Refl);
      case Tag::J:
        return doJ(eval(t->kids[0], env), eval(t->kids[1], env), eval(t->kids[2], env));
      case Tag::ModT: {
        auto v = mkVCopy(VTag::ModT, t->mod);
        v->v1 = eval(t->kids[0], env);
        return v;
      }
      case Tag::ModIntro: {
        auto v = mkVCopy(VTag::ModIntro, t->mod);
        v->v1 = eval(t->kids[0], env);
        return v;
      }
      case Tag::LetMod: {
        ValuePtr s = eval(t->kids[1], env);
        if (s->tag == VTag::ModIntro) return eval(t->kids[2], envCons(s->v1, env));
        if (s->tag == VTag::Neutral) {
          SpineEntry e;
          e.kind = SpineEntry::Kind::LetMod;
          e.mu = t->mod;
          e.nu = t->mod2;
          e.letMotive = Closure{t->kids[0], env, nullptr};
          e.letBody = Closure{t->kids[2], env, nullptr};
          return extendSpine(s, std::move(e));
        }
        throw TttError(ErrKind::IllScoped, "modal elimination of a non-modal value");
      }
      case Tag::Bool:
        return mkV(VTag::Bool);
      case Tag::TrueLit:
        return mkV(VTag::True);
      case Tag::FalseLit:
        return mkV(VTag::False);
      case Tag::BoolRec:
        return doBoolRec(eval(t->kids[0], env), eval(t->kids[1], env), eval(t->kids[2], env),
                         eval(t->kids[3], env));
      case Tag::Nat:
        return mkV(VTag::Nat);
      case Tag::Zero:
        return mkV(VTag::Zero);
      case Tag::Succ: {
        auto v = mkVCopy(VTag::Succ, Mod::Id);
        v->v1 = eval(t->kids[0], env);
        return v;
      }
      case Tag::NatRec:
        return doNatRec(eval(t->kids[0], env), eval(t->kids[1], env), eval(t->kids[2], env),
                        eval(t->kids[3], env));
      case Tag::Unit:
        return mkV(VTag::Unit);
      case Tag::Star:
        return mkV(VTag::Star);
      case Tag::Empty:
        return mkV(VTag::Empty);
      case Tag::EmptyRec: {
        ValuePtr s = eval(t->kids[1], env);
        if (s->tag == VTag::Neutral) {
          SpineEntry e;
          e.kind = SpineEntry::Kind::EmptyRec;
          e.motive = eval(t->kids[0], env);
          return extendSpine(s, std::move(e));
        }
        throw TttError(ErrKind::IllScoped, "absurd elimination of a canonical value");
      }
      case Tag::Const: {
        const Declaration* d = sig_.find(t->name);
        if (!d)
          throw TttError(ErrKind::UnboundName, "unknown constant '" + t->name + "'", t->span,
                         "constant");
        ValuePtr head;
        if (d->isPostulate) {
          head = vNeutralConst(t->name);
        } else {
          head = evalDef(*d);
        }
        for (const TermPtr& a : t->kids) head = apply(head, eval(a, env));
        return head;
      }
    }
    throw TttError(ErrKind::IllScoped, "unhandled term tag in evaluation");
  }

  ValuePtr constType(const std::string& name) const {
    auto it = tyCache_.find(name);
    if (it != tyCache_.end()) return it->second;
    const Declaration* d = sig_.find(name);
    if (!d) throw TttError(ErrKind::UnboundName, "unknown constant '" + name + "'");
    ValuePtr v = eval(d->ty, nullptr);
    tyCache_.emplace(name, v);
    return v;
  }

 private:
  ValuePtr evalDef(const Declaration& d) const {
    auto it = defCache_.find(d.name);
    if (it != defCache_.end()) return it->second;
    ValuePtr v = eval(d.body, nullptr);
    defCache_.emplace(d.name, v);
    return v;
  }

  static std::shared_ptr<Value> mkVCopy(VTag tag, Mod mod) {
    auto v = std::make_shared<Value>();
    v->tag = tag;
    v->mod = mod;
    return v;
  }

  const Signature& sig_;
  mutable std::map<std::string, ValuePtr> defCache_;
  mutable std::map<std::string, ValuePtr> tyCache_;
};

// --- read-back ---------------------------------------------------------------

// Read-back environment: the type of each free variable by de Bruijn level.
struct QuoteEnv {
  std::vector<ValuePtr> lvlTypes;
  std::size_t depth() const { return lvlTypes.size(); }
};

class Quoter {
 public:
  explicit Quoter(const Evaluator& ev) : ev_(ev) {}

  // Eta-long beta-normal form of `v` at type `ty`.
  TermPtr quote(QuoteEnv& q, const ValuePtr& ty, const ValuePtr& v) const {
    switch (ty->tag) {
      case VTag::Pi: {
        ValuePtr x = vNeutralVar(static_cast<int>(q.depth()));
        q.lvlTypes.push_back(ty->v1);
        TermPtr body = quote(q, ev_.applyClosure(ty->clo, x), ev_.apply(v, x));
        q.lvlTypes.pop_back();
        return core::lam(std::move(body));
      }
      case VTag::Sigma: {
        ValuePtr f = ev_.doFst(v);
        TermPtr tf = quote(q, ty->v1, f);
        TermPtr ts = quote(q, ev_.applyClosure(ty->clo, f), ev_.doSnd(v));
        return core::pair(std::move(tf), std::move(ts));
      }
      case VTag::Unit:
        return core::mk(Tag::Star);
      case VTag::ModT: {
        if (v->tag == VTag::ModIntro)
          return core::modIntro(v->mod, quote(q, ty->v1, v->v1));
        return quoteNeutralChecked(q, v);
      }
      case VTag::Id: {
        if (v->tag == VTag::Refl) return core::refl();
        return quoteNeutralChecked(q, v);
      }
      case VTag::Bool: {
        if (v->tag == VTag::True) return core::mk(Tag::TrueLit);
        if (v->tag == VTag::False) return core::mk(Tag::FalseLit);
        return quoteNeutralChecked(q, v);
      }
      case VTag::Nat: {
        if (v->tag == VTag::Zero) return core::mk(Tag::Zero);
        if (v->tag == VTag::Succ) return core::mk(Tag::Succ, {quote(q, ty, v->v1)});
        return quoteNeutralChecked(q, v);
      }
      case VTag::Empty:
        return quoteNeutralChecked(q, v);
      case VTag::Universe:
        return quoteType(q, v);
      case VTag::Neutral:
        return quoteNeutralChecked(q, v);
      default:
        throw TttError(ErrKind::IllScoped, "read-back at a non-type value");
    }
  }

  // Read-back of a value standing for a type.
  TermPtr quoteType(QuoteEnv& q, const ValuePtr& ty) const {
    switch (ty->tag) {
      case VTag::Universe:
        return core::universe(ty->idx);
      case VTag::Pi:
      case VTag::Sigma: {
        TermPtr dom = quoteType(q, ty->v1);
        ValuePtr x = vNeutralVar(static_cast<int>(q.depth()));
        q.lvlTypes.push_back(ty->v1);
        TermPtr cod = quoteType(q, ev_.applyClosure(ty->clo, x));
        q.lvlTypes.pop_back();
        if (ty->tag == VTag::Pi) return core::pi(ty->mod, std::move(dom), std::move(cod));
        return core::sigma(std::move(dom), std::move(cod));
      }
      case VTag::ModT:
        return core::modT(ty->mod, quoteType(q, ty->v1));
      case VTag::Id: {
        TermPtr a = quoteType(q, ty->v1);
        return core::idTy(std::move(a), quote(q, ty->v1, ty->v2), quote(q, ty->v1, ty->v3));
      }
      case VTag::Bool:
        return core::mk(Tag::Bool);
      case VTag::Nat:
        return core::mk(Tag::Nat);
      case VTag::Unit:
        return core::mk(Tag::Unit);
      case VTag::Empty:
        return core::mk(Tag::Empty);
      case VTag::Neutral:
        return quoteNeutralChecked(q, ty);
      default:
        throw TttError(ErrKind::IllScoped, "read-back of a non-type value as a type");
    }
  }

  // Read-back of a neutral, reconstructing the type along the spine.
  // Returns the term; the final type is available via quoteNeutralTyped.
  std::pair<TermPtr, ValuePtr> quoteNeutralTyped(QuoteEnv& q, const Neutral& n) const {
    TermPtr term;
    ValuePtr ty;
    ValuePtr val;  // the value of the prefix walked so far
    if (n.isVar) {
      if (n.lvl < 0 || n.lvl >= static_cast<int>(q.depth()))
        throw TttError(ErrKind::IllScoped, "free variable level out of range in read-back");
      term = core::var(static_cast<int>(q.depth()) - 1 - n.lvl);
      ty = q.lvlTypes[n.lvl];
      val = vNeutralVar(n.lvl);
    } else {
      term = core::cst(n.constName);
      ty = ev_.constType(n.constName);
      val = vNeutralConst(n.constName);
    }
    for (const SpineEntry& e : n.spine) {
      switch (e.kind) {
        case SpineEntry::Kind::App: {
          if (ty->tag != VTag::Pi)
            throw TttError(ErrKind::IllScoped, "spine application at a non-function type");
          TermPtr at = quote(q, ty->v1, e.arg);
          if (term->tag == Tag::Const) {
            // applications of a stuck constant stay on its spine
            auto cpy = std::make_shared<Term>(*term);
            cpy->kids.push_back(std::move(at));
            term = cpy;
          } else {
            term = core::app(std::move(term), std::move(at));
          }
          ty = ev_.applyClosure(ty->clo, e.arg);
          val = ev_.apply(val, e.arg);
          break;
        }
        case SpineEntry::Kind::Fst: {
          if (ty->tag != VTag::Sigma)
            throw TttError(ErrKind::IllScoped, "spine projection at a non-pair type");
          term = core::fst(std::move(term));
          ty = ty->v1;
          val = ev_.doFst(val);
          break;
        }
        case SpineEntry::Kind::Snd: {
          if (ty->tag != VTag::Sigma)
            throw TttError(ErrKind::IllScoped, "spine projection at a non-pair type");
          ValuePtr f = ev_.doFst(val);
          term = core::snd(std::move(term));
          ty = ev_.applyClosure(ty->clo, f);
          val = ev_.doSnd(val);
          break;
        }
        case SpineEntry::Kind::BoolRec: {
          ValuePtr motiveTy = vPiHost(mkV(VTag::Bool), [](ValuePtr) { return vUniverse(0); });
          TermPtr m = quote(q, motiveTy, e.motive);
          TermPtr tc = quote(q, ev_.apply(e.motive, mkV(VTag::True)), e.c1);
          TermPtr fc = quote(q, ev_.apply(e.motive, mkV(VTag::False)), e.c2);
          term = core::mk(Tag::BoolRec, {std::move(m), std::move(tc), std::move(fc), std::move(term)});
          ty = ev_.apply(e.motive, val);
          val = ev_.doBoolRec(e.motive, e.c1, e.c2, val);
          break;
        }
        case SpineEntry::Kind::NatRec: {
          ValuePtr natV = mkV(VTag::Nat);
          ValuePtr motiveTy = vPiHost(natV, [](ValuePtr) { return vUniverse(0); });
          TermPtr m = quote(q, motiveTy, e.motive);
          TermPtr zc = quote(q, ev_.apply(e.motive, mkV(VTag::Zero)), e.c1);
          const Evaluator& ev = ev_;
          ValuePtr motive = e.motive;
          ValuePtr succTy = vPiHost(natV, [&ev, motive](ValuePtr nv) {
            ValuePtr target = ev.apply(motive, vSucc(nv));
            return vPiHost(ev.apply(motive, nv), [target](ValuePtr) { return target; });
          });
          TermPtr sc = quote(q, succTy, e.c2);
          term = core::mk(Tag::NatRec, {std::move(m), std::move(zc), std::move(sc), std::move(term)});
          ty = ev_.apply(e.motive, val);
          val = ev_.doNatRec(e.motive, e.c1, e.c2, val);
          break;
        }
        case SpineEntry::Kind::EmptyRec: {
          ValuePtr motiveTy = vPiHost(mkV(VTag::Empty), [](ValuePtr) { return vUniverse(0); });
          TermPtr m = quote(q, motiveTy, e.motive);
          term = core::mk(Tag::EmptyRec, {std::move(m), std::move(term)});
          ty = ev_.apply(e.motive, val);
          val = extendSpineOf(val, e);
          break;
        }
        case SpineEntry::Kind::J: {
          if (ty->tag != VTag::Id)
            throw TttError(ErrKind::IllScoped, "identity elimination at a non-path type");
          ValuePtr A = ty->v1, lhs = ty->v2, rhs = ty->v3;
          ValuePtr motiveTy = vPiHost(A, [A, lhs](ValuePtr b) {
            return vPiHost(vId(A, lhs, b), [](ValuePtr) { return vUniverse(0); });
          });
          TermPtr m = quote(q, motiveTy, e.motive);
          ValuePtr baseTy = ev_.apply(ev_.apply(e.motive, lhs), mkV(VTag::Refl));
          TermPtr bc = quote(q, baseTy, e.c1);
          term = core::jElim(std::move(m), std::move(bc), std::move(term));
          ty = ev_.apply(ev_.apply(e.motive, rhs), val);
          val = ev_.doJ(e.motive, e.c1, val);
          break;
        }
        case SpineEntry::Kind::LetMod: {
          if (ty->tag != VTag::ModT)
            throw TttError(ErrKind::IllScoped, "modal elimination at a non-modal type");
          ValuePtr A = ty->v1;
          // motive: a type family over the modal type
          ValuePtr y = vNeutralVar(static_cast<int>(q.depth()));
          q.lvlTypes.push_back(ty);
          TermPtr motiveT = quoteType(q, ev_.applyClosure(e.letMotive, y));
          q.lvlTypes.pop_back();
          // body: under a binder of the underlying type
          ValuePtr x = vNeutralVar(static_cast<int>(q.depth()));
          q.lvlTypes.push_back(A);
          TermPtr bodyT = quote(q, ev_.applyClosure(e.letMotive, vModIntro(e.mu, x)),
                                ev_.applyClosure(e.letBody, x));
          q.lvlTypes.pop_back();
          term = core::letMod(e.nu, e.mu, std::move(motiveT), std::move(term), std::move(bodyT));
          ty = ev_.applyClosure(e.letMotive, val);
          val = extendSpineOf(val, e);
          break;
        }
      }
    }
    return {term, ty};
  }

 private:
  TermPtr quoteNeutralChecked(QuoteEnv& q, const ValuePtr& v) const {
    if (v->tag != VTag::Neutral)
      throw TttError(ErrKind::IllScoped, "canonical value at an unexpected type in read-back");
    return quoteNeutralTyped(q, v->neutral).first;
  }

  static ValuePtr extendSpineOf(const ValuePtr& v, const SpineEntry& e) {
    if (v->tag != VTag::Neutral)
      throw TttError(ErrKind::IllScoped, "spine extension of a canonical value");
    return extendSpine(v, e);
  }

  const Evaluator& ev_;
};

// --- entry points -------------------------------------------------------------

// Semantic mirror of a syntactic context: an environment of fresh neutrals
// plus the per-level types used by the read-back.
struct SemCtx {
  EnvPtr env;
  QuoteEnv quote;
};

inline SemCtx semCtxOf(const Evaluator& ev, const Context& ctx) {
  SemCtx s;
  for (const core::Entry& e : ctx.entries) {
    if (e.isLock) continue;
    ValuePtr ty = ev.eval(e.ty, s.env);
    ValuePtr x = vNeutralVar(static_cast<int>(s.quote.depth()));
    s.quote.lvlTypes.push_back(ty);
    s.env = envCons(x, s.env);
  }
  return s;
}

// Beta-normal, eta-long form of `t` at type `ty` in `ctx`.
inline TermPtr normalizeAt(const Signature& sig, const Context& ctx, const TermPtr& ty,
                           const TermPtr& t) {
  Evaluator ev(sig);
  SemCtx s = semCtxOf(ev, ctx);
  Quoter qt(ev);
  ValuePtr tyV = ev.eval(ty, s.env);
  return qt.quote(s.quote, tyV, ev.eval(t, s.env));
}

// Type-directed conversion: both sides are normalized at `ty` and compared
// structurally.
inline bool convertible(const Signature& sig, const Context& ctx, const TermPtr& ty,
                        const TermPtr& a, const TermPtr& b) {
  Evaluator ev(sig);
  SemCtx s = semCtxOf(ev, ctx);
  Quoter qt(ev);
  ValuePtr tyV = ev.eval(ty, s.env);
  QuoteEnv qa = s.quote;
  TermPtr na = qt.quote(qa, tyV, ev.eval(a, s.env));
  QuoteEnv qb = s.quote;
  TermPtr nb = qt.quote(qb, tyV, ev.eval(b, s.env));
  return core::alphaEq(na, nb);
}

}  // namespace ttt::sem

#endif  // TTT_EVAL_HPP
