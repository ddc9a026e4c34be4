#ifndef TTT_TERM_HPP
#define TTT_TERM_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ttt/errors.hpp"
#include "ttt/modality.hpp"

// De Bruijn syntax of the modal calculus: contexts interleave variable
// bindings (each annotated with the modality it was introduced under) with
// locks.  Variable indices count bindings only; locks are typing-side data.
namespace ttt::core {

using modality::Mod;

enum class Tag : std::uint8_t {
  Var,
  Universe,
  Pi,        // mod = binder modality; kids {dom, cod}, cod under binder
  Lam,       // kids {body}, body under binder
  App,       // kids {fn, arg}
  Sigma,     // kids {dom, cod}, cod under binder
  Pair,      // kids {fst, snd}
  Fst,
  Snd,
  Id,        // kids {ty, lhs, rhs}
  Refl,
  J,         // kids {motive, base, target}; motive is a 2-argument function term
  ModT,      // mod = mu; kids {ty}
  ModIntro,  // mod = mu; kids {body}
  LetMod,    // mod = mu, mod2 = nu; kids {motive, scrut, body}; motive and body under binder
  Bool,
  TrueLit,
  FalseLit,
  BoolRec,   // kids {motive, tcase, fcase, scrut}
  Nat,
  Zero,
  Succ,      // kids {arg}
  NatRec,    // kids {motive, zcase, scase, scrut}
  Unit,
  Star,
  Empty,
  EmptyRec,  // kids {motive, scrut}
  Const,     // name = declaration name; kids = applied spine
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Tag tag;
  Mod mod = Mod::Id;
  Mod mod2 = Mod::Id;
  int idx = 0;  // Var index or Universe level
  std::string name;  // Const name, or binder name hint for printing
  std::vector<TermPtr> kids;
  Span span{};
};

// Which kids sit under one extra binder.
inline int binderOffset(Tag t, std::size_t kid) {
  switch (t) {
    case Tag::Pi:
    case Tag::Sigma:
      return kid == 1 ? 1 : 0;
    case Tag::Lam:
      return 1;
    case Tag::LetMod:
      return (kid == 0 || kid == 2) ? 1 : 0;
    default:
      return 0;
  }
}

inline TermPtr mk(Tag tag, std::vector<TermPtr> kids = {}, Mod mod = Mod::Id,
                  Mod mod2 = Mod::Id, int idx = 0, std::string name = {}) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  t->mod = mod;
  t->mod2 = mod2;
  t->idx = idx;
  t->name = std::move(name);
  t->kids = std::move(kids);
  return t;
}

inline TermPtr var(int i) { return mk(Tag::Var, {}, Mod::Id, Mod::Id, i); }
inline TermPtr universe(int level) { return mk(Tag::Universe, {}, Mod::Id, Mod::Id, level); }
inline TermPtr pi(Mod mu, TermPtr dom, TermPtr cod, std::string hint = "") {
  return mk(Tag::Pi, {std::move(dom), std::move(cod)}, mu, Mod::Id, 0, std::move(hint));
}
inline TermPtr arrow(Mod mu, TermPtr dom, TermPtr cod);  // defined after shift
inline TermPtr lam(TermPtr body, std::string hint = "") {
  return mk(Tag::Lam, {std::move(body)}, Mod::Id, Mod::Id, 0, std::move(hint));
}
inline TermPtr app(TermPtr f, TermPtr a) { return mk(Tag::App, {std::move(f), std::move(a)}); }
inline TermPtr sigma(TermPtr dom, TermPtr cod, std::string hint = "") {
  return mk(Tag::Sigma, {std::move(dom), std::move(cod)}, Mod::Id, Mod::Id, 0, std::move(hint));
}
inline TermPtr pair(TermPtr a, TermPtr b) { return mk(Tag::Pair, {std::move(a), std::move(b)}); }
inline TermPtr fst(TermPtr p) { return mk(Tag::Fst, {std::move(p)}); }
inline TermPtr snd(TermPtr p) { return mk(Tag::Snd, {std::move(p)}); }
inline TermPtr idTy(TermPtr ty, TermPtr l, TermPtr r) {
  return mk(Tag::Id, {std::move(ty), std::move(l), std::move(r)});
}
inline TermPtr refl() { return mk(Tag::Refl); }
inline TermPtr jElim(TermPtr motive, TermPtr base, TermPtr target) {
  return mk(Tag::J, {std::move(motive), std::move(base), std::move(target)});
}
inline TermPtr modT(Mod mu, TermPtr ty) { return mk(Tag::ModT, {std::move(ty)}, mu); }
inline TermPtr modIntro(Mod mu, TermPtr body) { return mk(Tag::ModIntro, {std::move(body)}, mu); }
inline TermPtr letMod(Mod nu, Mod mu, TermPtr motive, TermPtr scrut, TermPtr body,
                      std::string hint = "") {
  return mk(Tag::LetMod, {std::move(motive), std::move(scrut), std::move(body)}, mu, nu, 0,
            std::move(hint));
}
inline TermPtr cst(std::string name, std::vector<TermPtr> spine = {}) {
  return mk(Tag::Const, std::move(spine), Mod::Id, Mod::Id, 0, std::move(name));
}

// --- shifting and substitution --------------------------------------------

inline TermPtr shift(const TermPtr& t, int cutoff, int amount) {
  if (amount == 0) return t;
  switch (t->tag) {
    case Tag::Var:
      if (t->idx >= cutoff) {
        auto r = std::make_shared<Term>(*t);
        r->idx += amount;
        return r;
      }
      return t;
    default: {
      bool changed = false;
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        TermPtr k = shift(t->kids[i], cutoff + binderOffset(t->tag, i), amount);
        changed = changed || k != t->kids[i];
        kids.push_back(std::move(k));
      }
      if (!changed) return t;
      auto r = std::make_shared<Term>(*t);
      r->kids = std::move(kids);
      return r;
    }
  }
}

inline TermPtr arrow(Mod mu, TermPtr dom, TermPtr cod) {
  return pi(mu, std::move(dom), shift(cod, 0, 1));
}

// Replaces Var j by s (shifted under the binders crossed) and lowers the
// indices above j.
inline TermPtr subst(const TermPtr& t, int j, const TermPtr& s) {
  switch (t->tag) {
    case Tag::Var:
      if (t->idx == j) return shift(s, 0, j);
      if (t->idx > j) {
        auto r = std::make_shared<Term>(*t);
        r->idx -= 1;
        return r;
      }
      return t;
    default: {
      bool changed = false;
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        TermPtr k = subst(t->kids[i], j + binderOffset(t->tag, i), s);
        changed = changed || k != t->kids[i];
        kids.push_back(std::move(k));
      }
      if (!changed) return t;
      auto r = std::make_shared<Term>(*t);
      r->kids = std::move(kids);
      return r;
    }
  }
}

// Single substitution for the innermost binding.
inline TermPtr substTop(const TermPtr& body, const TermPtr& arg) { return subst(body, 0, arg); }

// Structural equality up to spans and name hints (de Bruijn alpha-equality).
inline bool alphaEq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->tag != b->tag || a->mod != b->mod || a->mod2 != b->mod2 || a->idx != b->idx)
    return false;
  if (a->tag == Tag::Const && a->name != b->name) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!alphaEq(a->kids[i], b->kids[i])) return false;
  return true;
}

// Largest de Bruijn index referenced, for scope checks; -1 when closed.
inline int maxFreeVar(const TermPtr& t, int depth = 0) {
  if (t->tag == Tag::Var) return t->idx - depth;
  int m = -1;
  for (std::size_t i = 0; i < t->kids.size(); ++i)
    m = std::max(m, maxFreeVar(t->kids[i], depth + binderOffset(t->tag, i)));
  return m;
}

// --- contexts ---------------------------------------------------------------

struct Entry {
  bool isLock;
  Mod mod;          // lock modality, or binding annotation
  TermPtr ty;       // binding type (well-formed in the prefix extended by Lock(mod))
  std::string name; // binder name hint
};

struct Context {
  std::vector<Entry> entries;

  Context extendLock(Mod mu) const {
    Context c = *this;
    c.entries.push_back(Entry{true, mu, nullptr, {}});
    return c;
  }
  Context extendBind(Mod mu, TermPtr ty, std::string name = {}) const {
    Context c = *this;
    c.entries.push_back(Entry{false, mu, std::move(ty), std::move(name)});
    return c;
  }
  std::size_t bindCount() const {
    std::size_t n = 0;
    for (const Entry& e : entries)
      if (!e.isLock) ++n;
    return n;
  }
};

// Composite of the locks strictly between the entry addressed by `entryIndex`
// (0 = newest entry) and the end of the context: the divisor of the variable
// rule.  Access to the variable is legal iff leq(binding annotation, result).
inline Mod locksBetweenEntry(const Context& ctx, int entryIndex) {
  if (entryIndex < 0 || entryIndex >= static_cast<int>(ctx.entries.size()))
    throw TttError(ErrKind::OutOfRange,
                   "entry index " + std::to_string(entryIndex) + " out of range", {}, "variable");
  Mod acc = Mod::Id;
  int seen = 0;
  for (auto it = ctx.entries.rbegin(); it != ctx.entries.rend(); ++it, ++seen) {
    if (seen == entryIndex) {
      if (it->isLock)
        throw TttError(ErrKind::NotABinding, "entry addresses a lock, not a binding", {},
                       "variable");
      return acc;
    }
    if (it->isLock) acc = modality::compose(it->mod, acc);
  }
  throw TttError(ErrKind::OutOfRange, "unreachable", {}, "variable");
}

// Same, addressed by de Bruijn variable index (which counts bindings only).
inline Mod locksBetween(const Context& ctx, int index) {
  if (index < 0)
    throw TttError(ErrKind::OutOfRange, "negative variable index", {}, "variable");
  int binds = 0;
  int entry = 0;
  for (auto it = ctx.entries.rbegin(); it != ctx.entries.rend(); ++it, ++entry) {
    if (!it->isLock) {
      if (binds == index) return locksBetweenEntry(ctx, entry);
      ++binds;
    }
  }
  throw TttError(ErrKind::OutOfRange,
                 "variable index " + std::to_string(index) + " out of range", {}, "variable");
}

inline const Entry& lookupBind(const Context& ctx, int index) {
  int binds = 0;
  for (auto it = ctx.entries.rbegin(); it != ctx.entries.rend(); ++it) {
    if (!it->isLock) {
      if (binds == index) return *it;
      ++binds;
    }
  }
  throw TttError(ErrKind::OutOfRange,
                 "variable index " + std::to_string(index) + " out of range", {}, "variable");
}

}  // namespace ttt::core

#endif  // TTT_TERM_HPP
