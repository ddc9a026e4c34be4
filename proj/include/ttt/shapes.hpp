#ifndef TTT_SHAPES_HPP
#define TTT_SHAPES_HPP

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttt/errors.hpp"
#include "ttt/lattice.hpp"

// Decision procedures for positive sequents over interval variables:
// hypothesis atoms entail a positive (and/or) combination of atoms.
//
// SIMPLICIAL semantics quantifies assignments over the chain
// {0 < 1 < ... < k+1} with meet/join as min/max: a chain of size k+2 is
// enough because any term evaluates inside the sublattice generated by the
// k assigned values and the two bounds.
//
// CUBICAL semantics evaluates truth in the generic model, the lattice
// presented by <variables | hypotheses>.  This is sound and complete for
// positive formulas: atoms are inequalities between lattice polynomials and
// are preserved by every homomorphism, every model of the hypotheses
// receives a homomorphism from the generic model, and truth of positive
// formulas is preserved along homomorphisms; conversely the generic model is
// itself a model, so it is the universal countermodel.
namespace ttt::shapes {

using lat::LatPtr;

struct Atom {
  LatPtr lhs, rhs;
  bool isEq = false;  // lhs = rhs, otherwise lhs <= rhs
};

enum class FTag : std::uint8_t { Atom, And, Or, Top, Bot };

struct Formula;
using FormPtr = std::shared_ptr<const Formula>;

struct Formula {
  FTag tag;
  Atom atom;
  std::vector<FormPtr> kids;
};

inline FormPtr fAtom(Atom a) {
  auto f = std::make_shared<Formula>();
  f->tag = FTag::Atom;
  f->atom = std::move(a);
  return f;
}
inline FormPtr fAnd(std::vector<FormPtr> kids) {
  auto f = std::make_shared<Formula>();
  f->tag = FTag::And;
  f->kids = std::move(kids);
  return f;
}
inline FormPtr fOr(std::vector<FormPtr> kids) {
  auto f = std::make_shared<Formula>();
  f->tag = FTag::Or;
  f->kids = std::move(kids);
  return f;
}
inline FormPtr fTop() {
  auto f = std::make_shared<Formula>();
  f->tag = FTag::Top;
  return f;
}
inline FormPtr fBot() {
  auto f = std::make_shared<Formula>();
  f->tag = FTag::Bot;
  return f;
}

struct Sequent {
  std::string name;
  std::vector<std::string> vars;
  std::vector<Atom> hyps;
  FormPtr goal;
};

enum class Semantics : std::uint8_t { Simplicial, Cubical };

struct DecideOptions {
  int simplicialBound = 5;  // maximum number of variables
  int cubicalBound = 3;
  int chainSize = 0;  // 0: the default k+2
};

namespace detail {

// evaluation over the chain {0, ..., top}, meet = min, join = max
inline int evalChain(const lat::Presentation& p, const LatPtr& t,
                     const std::vector<int>& assignment, int top) {
  switch (t->tag) {
    case lat::LTag::Zero: return 0;
    case lat::LTag::One: return top;
    case lat::LTag::Gen: {
      int i = p.genIndex(t->gen);
      if (i < 0)
        throw TttError(ErrKind::UnknownGenerator, "unknown variable '" + t->gen + "'", {},
                       "shape");
      return assignment[static_cast<std::size_t>(i)];
    }
    case lat::LTag::Meet:
      return std::min(evalChain(p, t->l, assignment, top), evalChain(p, t->r, assignment, top));
    case lat::LTag::Join:
      return std::max(evalChain(p, t->l, assignment, top), evalChain(p, t->r, assignment, top));
  }
  return 0;
}

inline bool atomChain(const lat::Presentation& p, const Atom& a, const std::vector<int>& asg,
                      int top) {
  int l = evalChain(p, a.lhs, asg, top);
  int r = evalChain(p, a.rhs, asg, top);
  return a.isEq ? l == r : l <= r;
}

inline bool goalChain(const lat::Presentation& p, const FormPtr& f, const std::vector<int>& asg,
                      int top) {
  switch (f->tag) {
    case FTag::Atom: return atomChain(p, f->atom, asg, top);
    case FTag::And:
      return std::all_of(f->kids.begin(), f->kids.end(),
                         [&](const FormPtr& k) { return goalChain(p, k, asg, top); });
    case FTag::Or:
      return std::any_of(f->kids.begin(), f->kids.end(),
                         [&](const FormPtr& k) { return goalChain(p, k, asg, top); });
    case FTag::Top: return true;
    case FTag::Bot: return false;
  }
  return false;
}

inline bool goalGeneric(const lat::LatticeCtx& c, const FormPtr& f) {
  bool degenerate = c.sat.empty();
  switch (f->tag) {
    case FTag::Atom:
      if (degenerate) return true;
      return f->atom.isEq ? lat::decideEq(c, f->atom.lhs, f->atom.rhs)
                          : lat::decideLeq(c, f->atom.lhs, f->atom.rhs);
    case FTag::And:
      return std::all_of(f->kids.begin(), f->kids.end(),
                         [&](const FormPtr& k) { return goalGeneric(c, k); });
    case FTag::Or:
      return std::any_of(f->kids.begin(), f->kids.end(),
                         [&](const FormPtr& k) { return goalGeneric(c, k); });
    case FTag::Top: return true;
    case FTag::Bot: return degenerate;
  }
  return false;
}

}  // namespace detail

inline bool decide(const Sequent& seq, Semantics sem, const DecideOptions& opts = {}) {
  int k = static_cast<int>(seq.vars.size());
  lat::Presentation p;
  p.gens = seq.vars;

  if (sem == Semantics::Simplicial) {
    if (k > opts.simplicialBound)
      throw TttError(ErrKind::BoundExceeded,
                     "sequent has " + std::to_string(k) + " variables, simplicial bound is " +
                         std::to_string(opts.simplicialBound),
                     {}, "shape");
    int size = opts.chainSize > 0 ? opts.chainSize : k + 2;
    int top = size - 1;
    std::vector<int> asg(static_cast<std::size_t>(k), 0);
    while (true) {
      bool hypsHold = std::all_of(seq.hyps.begin(), seq.hyps.end(), [&](const Atom& a) {
        return detail::atomChain(p, a, asg, top);
      });
      if (hypsHold && !detail::goalChain(p, seq.goal, asg, top)) return false;
      // next assignment
      int i = 0;
      for (; i < k; ++i) {
        if (asg[static_cast<std::size_t>(i)] < top) {
          ++asg[static_cast<std::size_t>(i)];
          std::fill(asg.begin(), asg.begin() + i, 0);
          break;
        }
      }
      if (i == k) break;
    }
    return true;
  }

  // CUBICAL: truth in the generic model presented by <vars | hyps>
  if (k > opts.cubicalBound)
    throw TttError(ErrKind::BoundExceeded,
                   "sequent has " + std::to_string(k) + " variables, cubical bound is " +
                       std::to_string(opts.cubicalBound),
                   {}, "shape");
  for (const Atom& a : seq.hyps) {
    if (a.isEq)
      p.relations.emplace_back(a.lhs, a.rhs);
    else
      p.relations.emplace_back(lat::lmeet(a.lhs, a.rhs), a.lhs);  // l <= r as l/\r = l
  }
  lat::LatticeCtx c(p);
  return detail::goalGeneric(c, seq.goal);
}

struct ReportRow {
  std::string name;
  std::optional<bool> simplicial;  // empty on a per-item error
  std::optional<bool> cubical;
  std::string simplicialError, cubicalError;
};

inline std::vector<ReportRow> shapeReport(const std::vector<Sequent>& batch,
                                          const DecideOptions& opts = {}) {
  std::vector<ReportRow> rows;
  for (const Sequent& s : batch) {
    ReportRow r;
    r.name = s.name;
    try {
      r.simplicial = decide(s, Semantics::Simplicial, opts);
    } catch (const TttError& e) {
      r.simplicialError = errName(e.kind);
    }
    try {
      r.cubical = decide(s, Semantics::Cubical, opts);
    } catch (const TttError& e) {
      r.cubicalError = errName(e.kind);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// --- bundled sequents -----------------------------------------------------------

// totality of the interval order: simplicially valid, cubically not
inline Sequent totalitySequent() {
  Sequent s;
  s.name = "totality";
  s.vars = {"i", "j"};
  Atom l{lat::lgen("i"), lat::lgen("j"), false};
  Atom r{lat::lgen("j"), lat::lgen("i"), false};
  s.goal = fOr({fAtom(l), fAtom(r)});
  return s;
}

// The covering of the cylinder over the n-simplex: with v(0) = 1 and
// v(n+1) = v(n+2) = 0 built in, every point satisfies some
// v(k) >= i >= v(k+1).
inline Sequent coveringSequent(int n) {
  Sequent s;
  s.name = "phi-covering-" + std::to_string(n);
  for (int i = 1; i <= n; ++i) s.vars.push_back("v" + std::to_string(i));
  s.vars.push_back("i");
  for (int i = 1; i < n; ++i)
    s.hyps.push_back(Atom{lat::lgen("v" + std::to_string(i + 1)),
                          lat::lgen("v" + std::to_string(i)), false});
  auto vTerm = [&](int idx) -> LatPtr {
    if (idx == 0) return lat::lone();
    if (idx > n) return lat::lzero();
    return lat::lgen("v" + std::to_string(idx));
  };
  std::vector<FormPtr> disjuncts;
  for (int kk = 0; kk <= n + 1; ++kk) {
    Atom hi{lat::lgen("i"), vTerm(kk), false};      // i <= v(k)
    Atom lo{vTerm(kk + 1), lat::lgen("i"), false};  // v(k+1) <= i
    disjuncts.push_back(fAnd({fAtom(hi), fAtom(lo)}));
  }
  s.goal = fOr(std::move(disjuncts));
  return s;
}

// --- sequent file parsing --------------------------------------------------------
//
//   sequent NAME;            -- optional, one per block
//   vars i j;
//   hyp i <= j;              -- zero or more, atoms only
//   goal (i = 0) \/ (j = 1);
//
// Formulas are built from parenthesized subformulas, atoms, true, false,
// /\ and \/; finite exists expands to a disjunction:
//   exists x in {0, v1, 1} . (x <= i)
class SequentParser {
 public:
  explicit SequentParser(std::string_view src) : src_(src) {}

  std::vector<Sequent> parseAll() {
    std::vector<Sequent> out;
    int anon = 0;
    while (true) {
      skipWs();
      if (pos_ >= src_.size()) break;
      out.push_back(parseOne(anon));
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skipWs() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      } else if (src_[pos_] == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  bool lookAhead(std::string_view s) {
    skipWs();
    return src_.compare(pos_, s.size(), s) == 0;
  }
  bool eat(std::string_view s) {
    if (!lookAhead(s)) return false;
    pos_ += s.size();
    return true;
  }
  void require(std::string_view s) {
    if (!eat(s))
      throw TttError(ErrKind::ParseError,
                     "expected '" + std::string(s) + "' in sequent file at offset " +
                         std::to_string(pos_),
                     {}, "sequent");
  }
  std::string word() {
    skipWs();
    std::size_t b = pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
        ++pos_;
      } else if (c == '-' && pos_ > b && pos_ + 1 < src_.size() &&
                 std::isalnum(static_cast<unsigned char>(src_[pos_ + 1]))) {
        ++pos_;  // interior hyphens in names; `--` still starts a comment
      } else {
        break;
      }
    }
    return std::string(src_.substr(b, pos_ - b));
  }

  Sequent parseOne(int& anon) {
    Sequent s;
    if (lookAhead("sequent")) {
      require("sequent");
      s.name = word();
      require(";");
    } else {
      s.name = "sequent-" + std::to_string(anon++);
    }
    require("vars");
    while (true) {
      skipWs();
      if (eat(";")) break;
      std::string v = word();
      if (v.empty())
        throw TttError(ErrKind::ParseError, "expected variable name or ';'", {}, "sequent");
      s.vars.push_back(v);
    }
    while (lookAhead("hyp")) {
      require("hyp");
      s.hyps.push_back(parseAtomUntil(";"));
      require(";");
    }
    require("goal");
    s.goal = parseFormula();
    require(";");
    return s;
  }

  LatPtr parseTermPrefix() {
    skipWs();
    lat::LatTermParser tp(src_.substr(pos_));
    std::size_t used = 0;
    LatPtr t = tp.parsePrefix(used);
    pos_ += used;
    return t;
  }

  Atom parseAtomUntil(std::string_view) {
    LatPtr lhs = parseTermPrefix();
    skipWs();
    if (eat("<=")) return Atom{lhs, parseTermPrefix(), false};
    if (eat(">=")) return Atom{parseTermPrefix(), lhs, false};
    if (eat("=")) return Atom{lhs, parseTermPrefix(), true};
    throw TttError(ErrKind::ParseError, "expected <=, >= or = in atom", {}, "sequent");
  }

  FormPtr parseFormula() {  // disjunction level
    std::vector<FormPtr> kids{parseConj()};
    while (eat("\\/")) kids.push_back(parseConj());
    if (kids.size() == 1) return kids[0];
    return fOr(std::move(kids));
  }

  FormPtr parseConj() {
    std::vector<FormPtr> kids{parsePrim()};
    while (eat("/\\")) kids.push_back(parsePrim());
    if (kids.size() == 1) return kids[0];
    return fAnd(std::move(kids));
  }

  FormPtr parsePrim() {
    skipWs();
    if (lookAhead("true") && !std::isalnum(peekAfter(4))) {
      require("true");
      return fTop();
    }
    if (lookAhead("false") && !std::isalnum(peekAfter(5))) {
      require("false");
      return fBot();
    }
    if (lookAhead("exists")) return parseExists();
    if (lookAhead("(")) {
      // try an atom first: a parenthesized lattice term followed by a relation
      std::size_t save = pos_;
      try {
        Atom a = tryAtom();
        return fAtom(std::move(a));
      } catch (const TttError&) {
        pos_ = save;
      }
      require("(");
      FormPtr f = parseFormula();
      require(")");
      return f;
    }
    return fAtom(tryAtom());
  }

  unsigned char peekAfter(std::size_t n) const {
    std::size_t i = pos_;
    while (i < src_.size() && std::isspace(static_cast<unsigned char>(src_[i]))) ++i;
    i += n;
    return i < src_.size() ? static_cast<unsigned char>(src_[i]) : 0;
  }

  Atom tryAtom() {
    LatPtr lhs = parseTermPrefix();
    skipWs();
    if (eat("<=")) return Atom{lhs, parseTermPrefix(), false};
    if (eat(">=")) return Atom{parseTermPrefix(), lhs, false};
    if (eat("=")) return Atom{lhs, parseTermPrefix(), true};
    throw TttError(ErrKind::ParseError, "expected a relation in atom", {}, "sequent");
  }

  // exists x in {t1, ..., tn} . prim  — expanded to a disjunction
  FormPtr parseExists() {
    require("exists");
    std::string x = word();
    require("in");
    require("{");
    std::vector<LatPtr> choices;
    while (true) {
      choices.push_back(parseTermPrefix());
      skipWs();
      if (eat(",")) continue;
      require("}");
      break;
    }
    require(".");
    FormPtr body = parsePrim();
    std::vector<FormPtr> kids;
    for (const LatPtr& t : choices) kids.push_back(substFormula(body, x, t));
    return fOr(std::move(kids));
  }

  static LatPtr substTerm(const LatPtr& t, const std::string& x, const LatPtr& repl) {
    switch (t->tag) {
      case lat::LTag::Gen: return t->gen == x ? repl : t;
      case lat::LTag::Meet: return lat::lmeet(substTerm(t->l, x, repl), substTerm(t->r, x, repl));
      case lat::LTag::Join: return lat::ljoin(substTerm(t->l, x, repl), substTerm(t->r, x, repl));
      default: return t;
    }
  }

  static FormPtr substFormula(const FormPtr& f, const std::string& x, const LatPtr& repl) {
    switch (f->tag) {
      case FTag::Atom: {
        Atom a;
        a.lhs = substTerm(f->atom.lhs, x, repl);
        a.rhs = substTerm(f->atom.rhs, x, repl);
        a.isEq = f->atom.isEq;
        return fAtom(std::move(a));
      }
      case FTag::And: {
        std::vector<FormPtr> kids;
        for (const FormPtr& k : f->kids) kids.push_back(substFormula(k, x, repl));
        return fAnd(std::move(kids));
      }
      case FTag::Or: {
        std::vector<FormPtr> kids;
        for (const FormPtr& k : f->kids) kids.push_back(substFormula(k, x, repl));
        return fOr(std::move(kids));
      }
      default: return f;
    }
  }
};

inline std::vector<Sequent> parseSequents(std::string_view src) {
  return SequentParser(src).parseAll();
}

}  // namespace ttt::shapes

#endif  // TTT_SHAPES_HPP
