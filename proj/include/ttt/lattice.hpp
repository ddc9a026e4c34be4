#ifndef TTT_LATTICE_HPP
#define TTT_LATTICE_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ttt/errors.hpp"

// Finitely presented bounded distributive lattices over the interval.
//
// Elements are represented extensionally: a term denotes its truth table
// over the satisfying boolean assignments of the presentation (the
// assignments under which every relation evaluates equally).  Distributive
// lattices embed subdirectly into powers of the two-element lattice, and the
// two-element quotients of a presented lattice are exactly the satisfying
// assignments, so table identity decides equality in the presented lattice.
namespace ttt::lat {

enum class LTag : std::uint8_t { Zero, One, Gen, Meet, Join };

struct LatTerm;
using LatPtr = std::shared_ptr<const LatTerm>;

struct LatTerm {
  LTag tag;
  std::string gen;
  LatPtr l, r;
};

inline LatPtr lzero() {
  static LatPtr z = std::make_shared<LatTerm>(LatTerm{LTag::Zero, "", nullptr, nullptr});
  return z;
}
inline LatPtr lone() {
  static LatPtr o = std::make_shared<LatTerm>(LatTerm{LTag::One, "", nullptr, nullptr});
  return o;
}
inline LatPtr lgen(std::string name) {
  return std::make_shared<LatTerm>(LatTerm{LTag::Gen, std::move(name), nullptr, nullptr});
}
inline LatPtr lmeet(LatPtr a, LatPtr b) {
  return std::make_shared<LatTerm>(LatTerm{LTag::Meet, "", std::move(a), std::move(b)});
}
inline LatPtr ljoin(LatPtr a, LatPtr b) {
  return std::make_shared<LatTerm>(LatTerm{LTag::Join, "", std::move(a), std::move(b)});
}

struct Presentation {
  std::vector<std::string> gens;
  std::vector<std::pair<LatPtr, LatPtr>> relations;

  int genIndex(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i] == name) return static_cast<int>(i);
    return -1;
  }
};

// prec: 0 join context, 1 meet context, 2 atom context
inline std::string printLat(const LatPtr& t, int prec = 0) {
  switch (t->tag) {
    case LTag::Zero: return "0";
    case LTag::One: return "1";
    case LTag::Gen: return t->gen;
    case LTag::Meet: {
      std::string s = printLat(t->l, 1) + " /\\ " + printLat(t->r, 2);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case LTag::Join: {
      std::string s = printLat(t->l, 0) + " \\/ " + printLat(t->r, 1);
      return prec > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

// evaluation in the two-element lattice at a boolean assignment (bit i is
// the value of generator i)
inline bool evalBool(const Presentation& p, const LatPtr& t, std::uint32_t assignment) {
  switch (t->tag) {
    case LTag::Zero: return false;
    case LTag::One: return true;
    case LTag::Gen: {
      int i = p.genIndex(t->gen);
      if (i < 0)
        throw TttError(ErrKind::UnknownGenerator, "unknown generator '" + t->gen + "'", {},
                       "lattice");
      return (assignment >> i) & 1u;
    }
    case LTag::Meet: return evalBool(p, t->l, assignment) && evalBool(p, t->r, assignment);
    case LTag::Join: return evalBool(p, t->l, assignment) || evalBool(p, t->r, assignment);
  }
  return false;
}

// The satisfying assignments of a presentation, in increasing order; these
// are exactly the lattice homomorphisms into the two-element lattice.
struct LatticeCtx {
  Presentation pres;
  std::vector<std::uint32_t> sat;

  explicit LatticeCtx(Presentation p) : pres(std::move(p)) {
    if (pres.gens.size() > 16)
      throw TttError(ErrKind::BoundExceeded,
                     "presentations are limited to 16 generators, got " +
                         std::to_string(pres.gens.size()),
                     {}, "lattice");
    std::uint32_t total = 1u << pres.gens.size();
    for (std::uint32_t a = 0; a < total; ++a) {
      bool ok = true;
      for (const auto& [lhs, rhs] : pres.relations)
        if (evalBool(pres, lhs, a) != evalBool(pres, rhs, a)) {
          ok = false;
          break;
        }
      if (ok) sat.push_back(a);
    }
  }

  std::size_t points() const { return sat.size(); }
};

// An element of the presented lattice as a monotone truth table over the
// satisfying assignments: bit j is the value at sat[j].
struct MonoFn {
  std::uint64_t table = 0;
  std::size_t points = 0;

  bool at(std::size_t j) const { return (table >> j) & 1u; }
  bool operator==(const MonoFn& o) const { return table == o.table && points == o.points; }
  bool operator<(const MonoFn& o) const { return table < o.table; }
};

inline MonoFn normalForm(const LatticeCtx& c, const LatPtr& t) {
  if (c.sat.size() > 64)
    throw TttError(ErrKind::BoundExceeded, "too many spectrum points for a table", {}, "lattice");
  MonoFn f;
  f.points = c.sat.size();
  for (std::size_t j = 0; j < c.sat.size(); ++j)
    if (evalBool(c.pres, t, c.sat[j])) f.table |= (1ull << j);
  return f;
}

inline bool monoLeq(const MonoFn& a, const MonoFn& b) {
  return (a.table & ~b.table) == 0;
}

inline bool decideEq(const LatticeCtx& c, const LatPtr& s, const LatPtr& t) {
  return normalForm(c, s) == normalForm(c, t);
}

inline bool decideLeq(const LatticeCtx& c, const LatPtr& s, const LatPtr& t) {
  return monoLeq(normalForm(c, s), normalForm(c, t));
}

// pairs (i, j) with sat[i] <= sat[j] pointwise; used for monotonicity
inline std::vector<std::pair<int, int>> spectrumOrder(const LatticeCtx& c) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < c.sat.size(); ++i)
    for (std::size_t j = 0; j < c.sat.size(); ++j)
      if ((c.sat[i] & ~c.sat[j]) == 0) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

inline void requireEnumerable(const LatticeCtx& c, int bound) {
  if (static_cast<int>(c.pres.gens.size()) > bound)
    throw TttError(ErrKind::BoundExceeded,
                   "presentation has " + std::to_string(c.pres.gens.size()) +
                       " generators, enumeration bound is " + std::to_string(bound),
                   {}, "lattice");
  if (c.sat.size() > 16)
    throw TttError(ErrKind::BoundExceeded, "spectrum too large for enumeration", {}, "lattice");
}

// All monotone maps from the spectrum poset to {0,1}; by Birkhoff duality
// these are in bijection with the elements of the presented lattice.
inline std::vector<MonoFn> enumerateElements(const LatticeCtx& c, int bound = 4) {
  requireEnumerable(c, bound);
  auto order = spectrumOrder(c);
  std::vector<MonoFn> out;
  std::uint64_t total = 1ull << c.sat.size();
  for (std::uint64_t m = 0; m < total; ++m) {
    bool mono = true;
    for (const auto& [i, j] : order)
      if (((m >> i) & 1u) && !((m >> j) & 1u)) {
        mono = false;
        break;
      }
    if (mono) out.push_back(MonoFn{m, c.sat.size()});
  }
  return out;
}

// The sublattice of tables generated by 0, 1 and the generators under meet
// and join: the concrete image of the presented lattice.
inline std::set<MonoFn> generatedElements(const LatticeCtx& c) {
  std::set<MonoFn> out;
  out.insert(normalForm(c, lzero()));
  out.insert(normalForm(c, lone()));
  for (const std::string& g : c.pres.gens) out.insert(normalForm(c, lgen(g)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<MonoFn> cur(out.begin(), out.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i; j < cur.size(); ++j) {
        MonoFn meet{cur[i].table & cur[j].table, cur[i].points};
        MonoFn join{cur[i].table | cur[j].table, cur[i].points};
        if (out.insert(meet).second) grew = true;
        if (out.insert(join).second) grew = true;
      }
  }
  return out;
}

struct DualityReport {
  bool bijective = false;
  std::size_t latticeSize = 0;   // generated elements (the presented lattice)
  std::size_t spectrumSize = 0;  // homomorphisms to the two-element lattice
  std::size_t monotoneMaps = 0;  // functions on the spectrum
};

// Finite shadow of the duality axiom: the evaluation of lattice elements on
// spectrum points is a bijection onto the monotone maps spectrum -> {0,1}.
inline DualityReport dualityCheck(const LatticeCtx& c, int bound = 4) {
  DualityReport r;
  auto gen = generatedElements(c);
  auto all = enumerateElements(c, bound);
  r.latticeSize = gen.size();
  r.spectrumSize = c.sat.size();
  r.monotoneMaps = all.size();
  r.bijective = gen.size() == all.size() &&
                std::all_of(all.begin(), all.end(), [&](const MonoFn& f) { return gen.count(f); });
  return r;
}

// --- glue case analysis -------------------------------------------------------

// Classifies the six elements of the free lattice on {k, j}, read as
// monotone maps I^2 -> I, by their restrictions along k = 0 and k = 1.
struct GlueCase {
  std::string element;  // 0, 1, k, j, k /\ j, k \/ j
  std::string at0;      // restriction k := 0, one of const0, const1, j
  std::string at1;      // restriction k := 1
};

struct GlueReport {
  std::vector<GlueCase> cases;
  bool partitionExhaustive = false;  // the six leaves cover all elements, disjointly
  bool excludedCombinationEmpty = false;  // (at0 = j, at1 = const0) never occurs
  bool constOneLeafSingleton = false;     // at0 = const1 forces the constant 1
};

inline GlueReport glueCaseTable() {
  Presentation p;
  p.gens = {"k", "j"};
  LatticeCtx c(p);
  // assignments are bitmasks: bit0 = k, bit1 = j, so sat = {00, 01, 10, 11}
  auto named = [&](const MonoFn& f) -> std::string {
    const std::pair<LatPtr, const char*> table[] = {
        {lzero(), "0"},
        {lone(), "1"},
        {lgen("k"), "k"},
        {lgen("j"), "j"},
        {lmeet(lgen("k"), lgen("j")), "k /\\ j"},
        {ljoin(lgen("k"), lgen("j")), "k \\/ j"},
    };
    for (const auto& [t, name] : table)
      if (normalForm(c, t) == f) return name;
    return "?";
  };
  // restriction along k := v, as a function of j in {0,1}
  auto restrict01 = [&](const MonoFn& f, bool kv) -> std::string {
    bool atJ0 = false, atJ1 = false;
    for (std::size_t idx = 0; idx < c.sat.size(); ++idx) {
      bool k = c.sat[idx] & 1u, j = (c.sat[idx] >> 1) & 1u;
      if (k != kv) continue;
      if (!j) atJ0 = f.at(idx);
      if (j) atJ1 = f.at(idx);
    }
    if (!atJ0 && !atJ1) return "const0";
    if (atJ0 && atJ1) return "const1";
    if (!atJ0 && atJ1) return "j";
    return "antitone";  // impossible for monotone tables
  };

  GlueReport r;
  auto elements = enumerateElements(c);
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> leaves;
  for (const MonoFn& f : elements) {
    GlueCase gc;
    gc.element = named(f);
    gc.at0 = restrict01(f, false);
    gc.at1 = restrict01(f, true);
    leaves[{gc.at0, gc.at1}].push_back(gc.element);
    r.cases.push_back(gc);
  }
  // the six leaves of the case tree, keyed by restriction pair
  std::map<std::pair<std::string, std::string>, std::string> expected = {
      {{"const1", "const1"}, "1"},      {{"const0", "const0"}, "0"},
      {{"const0", "j"}, "k /\\ j"},     {{"const0", "const1"}, "k"},
      {{"j", "j"}, "j"},                {{"j", "const1"}, "k \\/ j"},
  };
  r.partitionExhaustive = leaves.size() == 6 && elements.size() == 6;
  for (const auto& [key, members] : leaves) {
    auto it = expected.find(key);
    if (it == expected.end() || members.size() != 1 || members[0] != it->second)
      r.partitionExhaustive = false;
  }
  r.excludedCombinationEmpty = leaves.find({"j", "const0"}) == leaves.end();
  // every element whose 0-restriction is constant 1 is the constant 1
  r.constOneLeafSingleton = true;
  for (const GlueCase& gc : r.cases)
    if (gc.at0 == "const1" && gc.element != "1") r.constOneLeafSingleton = false;
  return r;
}

// --- parsing -------------------------------------------------------------------

// term syntax: 0 1 /\ \/ ( ) identifiers; meet binds tighter than join
class LatTermParser {
 public:
  explicit LatTermParser(std::string_view src) : src_(src) {}

  LatPtr parse() {
    LatPtr t = parseJoin();
    skipWs();
    if (pos_ != src_.size())
      throw TttError(ErrKind::ParseError,
                     "trailing input in lattice term: '" + std::string(src_.substr(pos_)) + "'", {},
                     "lattice-term");
    return t;
  }

  // parses a full term and reports how far it got (for embedding in files)
  LatPtr parsePrefix(std::size_t& consumed) {
    LatPtr t = parseJoin();
    consumed = pos_;
    return t;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skipWs() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r'))
      ++pos_;
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

  LatPtr parseJoin() {
    LatPtr l = parseMeet();
    while (eat("\\/")) l = ljoin(l, parseMeet());
    return l;
  }
  LatPtr parseMeet() {
    LatPtr l = parseAtom();
    while (eat("/\\")) l = lmeet(l, parseAtom());
    return l;
  }
  LatPtr parseAtom() {
    skipWs();
    if (eat("(")) {
      LatPtr t = parseJoin();
      if (!eat(")"))
        throw TttError(ErrKind::ParseError, "expected ')' in lattice term", {}, "lattice-term");
      return t;
    }
    if (eat("0")) return lzero();
    if (eat("1")) return lone();
    std::size_t b = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
            src_[pos_] == '\''))
      ++pos_;
    if (b == pos_)
      throw TttError(ErrKind::ParseError, "expected a lattice term", {}, "lattice-term");
    return lgen(std::string(src_.substr(b, pos_ - b)));
  }
};

inline LatPtr parseLatTerm(std::string_view src) { return LatTermParser(src).parse(); }

inline void checkGenerators(const Presentation& p, const LatPtr& t) {
  if (t->tag == LTag::Gen && p.genIndex(t->gen) < 0)
    throw TttError(ErrKind::UnknownGenerator, "unknown generator '" + t->gen + "'", {}, "lattice");
  if (t->l) checkGenerators(p, t->l);
  if (t->r) checkGenerators(p, t->r);
}

// presentation files:  gens: x y;  rel: x /\ y = y;
inline Presentation parsePresentation(std::string_view src) {
  Presentation p;
  std::size_t i = 0;
  auto skipWs = [&] {
    while (i < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[i]))) {
        ++i;
      } else if (src[i] == '-' && i + 1 < src.size() && src[i + 1] == '-') {
        while (i < src.size() && src[i] != '\n') ++i;
      } else {
        break;
      }
    }
  };
  auto word = [&]() -> std::string {
    skipWs();
    std::size_t b = i;
    while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' ||
                              src[i] == '\''))
      ++i;
    return std::string(src.substr(b, i - b));
  };
  while (true) {
    skipWs();
    if (i >= src.size()) break;
    std::string kw = word();
    skipWs();
    if (i >= src.size() || src[i] != ':')
      throw TttError(ErrKind::ParseError, "expected ':' after '" + kw + "'", {}, "presentation");
    ++i;
    if (kw == "gens") {
      while (true) {
        skipWs();
        if (i < src.size() && src[i] == ';') {
          ++i;
          break;
        }
        std::string g = word();
        if (g.empty())
          throw TttError(ErrKind::ParseError, "expected generator name or ';'", {}, "presentation");
        p.gens.push_back(g);
      }
    } else if (kw == "rel") {
      skipWs();
      std::size_t semi = src.find(';', i);
      if (semi == std::string_view::npos)
        throw TttError(ErrKind::ParseError, "missing ';' after relation", {}, "presentation");
      std::string_view body = src.substr(i, semi - i);
      std::size_t eq = body.find('=');
      if (eq == std::string_view::npos)
        throw TttError(ErrKind::ParseError, "relation must have the form t = s", {},
                       "presentation");
      LatPtr lhs = parseLatTerm(body.substr(0, eq));
      LatPtr rhs = parseLatTerm(body.substr(eq + 1));
      p.relations.emplace_back(lhs, rhs);
      i = semi + 1;
    } else {
      throw TttError(ErrKind::ParseError, "expected 'gens' or 'rel', found '" + kw + "'", {},
                     "presentation");
    }
  }
  // validate relation generators now so later contexts cannot fail
  for (const auto& [lhs, rhs] : p.relations)
    for (const LatPtr& side : {lhs, rhs}) checkGenerators(p, side);
  return p;
}

}  // namespace ttt::lat

#endif  // TTT_LATTICE_HPP
