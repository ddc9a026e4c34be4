#ifndef TTT_PRETTY_HPP
#define TTT_PRETTY_HPP

#include <string>
#include <vector>

#include "ttt/signature.hpp"
#include "ttt/term.hpp"

// Core-to-surface printer.  Output reparses and re-elaborates to the same
// core term, so printing normalized files is a fixpoint.
namespace ttt::pretty {

using core::Tag;
using core::Term;
using core::TermPtr;
using modality::Mod;

namespace detail {

// precedence: 0 lambda/let bodies, 1 arrow, 2 product, 3 application, 4 atom
inline bool usesVar(const TermPtr& t, int idx) {
  if (t->tag == Tag::Var) return t->idx == idx;
  for (std::size_t i = 0; i < t->kids.size(); ++i)
    if (usesVar(t->kids[i], idx + core::binderOffset(t->tag, i))) return true;
  return false;
}

// lowers indices above a vacuous binder; only valid when usesVar(t, 0) is false
inline TermPtr unshiftTop(const TermPtr& t) { return core::subst(t, 0, core::var(0)); }

struct Printer {
  std::vector<std::string> names;

  std::string freshName(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    std::string cand = base;
    while (inScope(cand)) cand += "'";
    return cand;
  }

  bool inScope(const std::string& n) const {
    for (const auto& s : names)
      if (s == n) return true;
    return false;
  }

  static std::string paren(bool need, const std::string& s) {
    return need ? "(" + s + ")" : s;
  }

  std::string modAnn(Mod m) { return std::string(modality::name(m)); }

  std::string go(const TermPtr& t, int prec) {
    switch (t->tag) {
      case Tag::Var: {
        int i = static_cast<int>(names.size()) - 1 - t->idx;
        if (i < 0) return "?v" + std::to_string(t->idx);
        return names[i];
      }
      case Tag::Universe:
        return "U" + std::to_string(t->idx);
      case Tag::Pi: {
        std::string dom = go(t->kids[0], 2);
        std::string s;
        if (t->mod == Mod::Id && !usesVar(t->kids[1], 0)) {
          // dependent-free arrow; unshift is safe because the binder is vacuous
          s = dom + " -> " + go(unshiftTop(t->kids[1]), 1);
        } else {
          std::string n = freshName(t->name);
          std::string ann = t->mod == Mod::Id ? " : " : " :(" + modAnn(t->mod) + ") ";
          names.push_back(n);
          std::string cod = go(t->kids[1], 1);
          names.pop_back();
          s = "(" + n + ann + go(t->kids[0], 1) + ") -> " + cod;
        }
        return paren(prec > 1, s);
      }
      case Tag::Lam: {
        std::string n = freshName(t->name);
        names.push_back(n);
        std::string body = go(t->kids[0], 0);
        names.pop_back();
        return paren(prec > 0, "\\" + n + ". " + body);
      }
      case Tag::App:
        return paren(prec > 3, go(t->kids[0], 3) + " " + go(t->kids[1], 4));
      case Tag::Sigma: {
        std::string s;
        if (!usesVar(t->kids[1], 0)) {
          s = go(t->kids[0], 3) + " * " + go(unshiftTop(t->kids[1]), 2);
        } else {
          std::string n = freshName(t->name);
          names.push_back(n);
          std::string cod = go(t->kids[1], 2);
          names.pop_back();
          s = "(" + n + " : " + go(t->kids[0], 1) + ") * " + cod;
        }
        return paren(prec > 2, s);
      }
      case Tag::Pair:
        return "(" + go(t->kids[0], 1) + " , " + go(t->kids[1], 1) + ")";
      case Tag::Fst:
        return paren(prec > 3, "fst " + go(t->kids[0], 4));
      case Tag::Snd:
        return paren(prec > 3, "snd " + go(t->kids[0], 4));
      case Tag::Id:
        return paren(prec > 3, "Id " + go(t->kids[0], 4) + " " + go(t->kids[1], 4) + " " +
                                   go(t->kids[2], 4));
      case Tag::Refl:
        return "refl";
      case Tag::J:
        return paren(prec > 3, "J " + go(t->kids[0], 4) + " " + go(t->kids[1], 4) + " " +
                                   go(t->kids[2], 4));
      case Tag::ModT:
        return "<" + modAnn(t->mod) + "| " + go(t->kids[0], 1) + ">";
      case Tag::ModIntro:
        return paren(prec > 3, "mod<" + modAnn(t->mod) + "> " + go(t->kids[0], 4));
      case Tag::LetMod: {
        std::string y = freshName(t->name.empty() ? "y" : t->name + "m");
        names.push_back(y);
        std::string motive = go(t->kids[0], 1);
        names.pop_back();
        std::string scrut = go(t->kids[1], 1);
        std::string x = freshName(t->name);
        names.push_back(x);
        std::string body = go(t->kids[2], 0);
        names.pop_back();
        std::string head = "let";
        if (t->mod2 != Mod::Id) head += "<" + modAnn(t->mod2) + ">";
        return paren(prec > 0, head + " mod<" + modAnn(t->mod) + "> " + x + " = " + scrut +
                                   " ret " + y + ". " + motive + " in " + body);
      }
      case Tag::Bool:
        return "Bool";
      case Tag::TrueLit:
        return "true";
      case Tag::FalseLit:
        return "false";
      case Tag::BoolRec:
        return paren(prec > 3, "indBool " + go(t->kids[0], 4) + " " + go(t->kids[1], 4) + " " +
                                   go(t->kids[2], 4) + " " + go(t->kids[3], 4));
      case Tag::Nat:
        return "Nat";
      case Tag::Zero:
        return "zero";
      case Tag::Succ:
        return paren(prec > 3, "succ " + go(t->kids[0], 4));
      case Tag::NatRec:
        return paren(prec > 3, "indNat " + go(t->kids[0], 4) + " " + go(t->kids[1], 4) + " " +
                                   go(t->kids[2], 4) + " " + go(t->kids[3], 4));
      case Tag::Unit:
        return "Unit";
      case Tag::Star:
        return "star";
      case Tag::Empty:
        return "Empty";
      case Tag::EmptyRec:
        return paren(prec > 3, "indEmpty " + go(t->kids[0], 4) + " " + go(t->kids[1], 4));
      case Tag::Const: {
        if (t->kids.empty()) return t->name;
        std::string s = t->name;
        for (const TermPtr& k : t->kids) s += " " + go(k, 4);
        return paren(prec > 3, s);
      }
    }
    return "?";
  }
};

}  // namespace detail

inline std::string print(const TermPtr& t, std::vector<std::string> scopeNames = {}) {
  detail::Printer p;
  p.names = std::move(scopeNames);
  return p.go(t, 0);
}

inline std::string printDecl(const core::Declaration& d) {
  if (d.isPostulate) return "postulate " + d.name + " : " + print(d.ty);
  return "def " + d.name + " : " + print(d.ty) + " := " + print(d.body);
}

}  // namespace ttt::pretty

#endif  // TTT_PRETTY_HPP
