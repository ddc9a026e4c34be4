#ifndef TTT_SYNTAX_HPP
#define TTT_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttt/errors.hpp"
#include "ttt/modality.hpp"

// Surface language:
//
//   def name : TYPE := BODY
//   postulate name : TYPE
//
//   (x : A) -> B        (x :(glo) A) -> B       A -> B
//   (x : A) * B         A * B        (a , b)    fst p    snd p
//   \x. e               \(x :(glo) A). e
//   a = b               Id A a b     refl       J motive base eq
//   <glo| A>            mod<glo> e
//   let mod<glo> x = e ret y. B in e'       let<nu> mod<mu> x = ...
//   U0 U1 U2 U3   Bool true false indBool   Nat zero succ indNat
//   Unit star     Empty indEmpty
//
// Line comments start with --.  Modalities: id, op, glo, sha composed with
// `.` (right-to-left).
namespace ttt::front {

using modality::Mod;

enum class TokKind : std::uint8_t {
  Ident,
  LParen,
  RParen,
  Lt,
  Gt,
  Pipe,
  Comma,
  Dot,
  Colon,
  ColonLParen,  // `:(` with no space: binder modality annotation
  ColonEq,
  Arrow,
  Star,
  Eq,
  Slash,
  Backslash,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::uint32_t begin = 0, end = 0;
  Span span() const { return Span{begin, end}; }
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](TokKind k, std::size_t b, std::size_t e) {
    out.push_back(Token{k, std::string(src.substr(b, e - b)), static_cast<std::uint32_t>(b),
                        static_cast<std::uint32_t>(e)});
  };
  auto isIdentStart = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto isIdentChar = [&](char c) {
    return isIdentStart(c) || (c >= '0' && c <= '9') || c == '\'';
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    std::size_t b = i;
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      i += 2;
      push(TokKind::Arrow, b, i);
      continue;
    }
    if (c == ':') {
      if (i + 1 < src.size() && src[i + 1] == '=') {
        i += 2;
        push(TokKind::ColonEq, b, i);
      } else if (i + 1 < src.size() && src[i + 1] == '(') {
        i += 2;
        push(TokKind::ColonLParen, b, i);
      } else {
        ++i;
        push(TokKind::Colon, b, i);
      }
      continue;
    }
    if (isIdentStart(c)) {
      while (i < src.size() && isIdentChar(src[i])) ++i;
      push(TokKind::Ident, b, i);
      continue;
    }
    // UTF-8 aliases
    if (src.compare(i, 2, "λ") == 0) {  // lambda
      i += 2;
      push(TokKind::Backslash, b, i);
      continue;
    }
    if (src.compare(i, 3, "⟨") == 0) {  // mathematical left angle
      i += 3;
      push(TokKind::Lt, b, i);
      continue;
    }
    if (src.compare(i, 3, "⟩") == 0) {
      i += 3;
      push(TokKind::Gt, b, i);
      continue;
    }
    if (src.compare(i, 3, "∘") == 0) {  // ring operator in modality words
      i += 3;
      push(TokKind::Dot, b, i);
      continue;
    }
    switch (c) {
      case '(': push(TokKind::LParen, b, ++i); break;
      case ')': push(TokKind::RParen, b, ++i); break;
      case '<': push(TokKind::Lt, b, ++i); break;
      case '>': push(TokKind::Gt, b, ++i); break;
      case '|': push(TokKind::Pipe, b, ++i); break;
      case ',': push(TokKind::Comma, b, ++i); break;
      case '.': push(TokKind::Dot, b, ++i); break;
      case '*': push(TokKind::Star, b, ++i); break;
      case '=': push(TokKind::Eq, b, ++i); break;
      case '/': push(TokKind::Slash, b, ++i); break;
      case '\\': push(TokKind::Backslash, b, ++i); break;
      default:
        throw TttError(ErrKind::ParseError,
                       std::string("unexpected character '") + c + "'",
                       Span{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1)},
                       "lexer");
    }
  }
  out.push_back(Token{TokKind::End, "", static_cast<std::uint32_t>(src.size()),
                      static_cast<std::uint32_t>(src.size())});
  return out;
}

// --- surface AST -------------------------------------------------------------

enum class STag : std::uint8_t {
  Var,
  Universe,
  Pi,      // name, mod (hasDiv/div for context-entry sugar); kids {dom, cod}
  Arrow,   // kids {dom, cod}
  Lam,     // name; kids {body} or {dom, body} when annotated (hasMod set)
  App,
  Sigma,   // name; kids {dom, cod}
  Prod,    // kids {l, r}
  Pair,
  Fst,
  Snd,
  Eq,      // kids {lhs, rhs}; the type is inferred from lhs
  Id,      // kids {ty, lhs, rhs}
  Refl,
  J,       // kids {motive, base, target}
  ModT,    // mod; kids {ty}
  ModIntro,  // mod; kids {body}
  LetMod,  // name (x), name2 (motive binder), mod (mu), mod2 (nu); kids {scrut, motive, body}
  Bool,
  TrueLit,
  FalseLit,
  BoolRec,
  Nat,
  Zero,
  Succ,
  NatRec,
  Unit,
  Star,
  Empty,
  EmptyRec,
};

struct SNode;
using SPtr = std::shared_ptr<const SNode>;

struct SNode {
  STag tag;
  std::string name, name2;
  Mod mod = Mod::Id;
  Mod mod2 = Mod::Id;
  bool hasMod = false;  // binder carried an explicit modality annotation
  bool hasDiv = false;  // binder carried a division annotation x :(mu/nu)
  Mod div = Mod::Id;
  int level = 0;  // universe level
  std::vector<SPtr> kids;
  Span span{};
};

inline SPtr mkS(STag tag, std::vector<SPtr> kids = {}, Span span = {}) {
  auto n = std::make_shared<SNode>();
  n->tag = tag;
  n->kids = std::move(kids);
  n->span = span;
  return n;
}

struct SurfaceDecl {
  std::string name;
  bool isPostulate = false;
  SPtr ty;
  SPtr body;  // null for postulates
  Span span{};
};

// --- parser --------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  std::vector<SurfaceDecl> parseFile() {
    std::vector<SurfaceDecl> out;
    while (!at(TokKind::End)) out.push_back(parseDecl());
    return out;
  }

  SPtr parseTermOnly() {
    SPtr t = parseTerm();
    expect(TokKind::End, "end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(TokKind k) const { return peek().kind == k; }
  bool atIdent(std::string_view kw) const {
    return peek().kind == TokKind::Ident && peek().text == kw;
  }
  Token eat() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Token expect(TokKind k, const std::string& what) {
    if (!at(k))
      throw TttError(ErrKind::ParseError, "expected " + what + ", found '" + peek().text + "'",
                     peek().span(), "parser");
    return eat();
  }
  Token expectIdent(std::string_view kw) {
    if (!atIdent(kw))
      throw TttError(ErrKind::ParseError,
                     "expected '" + std::string(kw) + "', found '" + peek().text + "'",
                     peek().span(), "parser");
    return eat();
  }

  static bool isReserved(const std::string& s) {
    static const char* kws[] = {"def",     "postulate", "let",    "mod",     "ret",   "in",
                                "fst",     "snd",       "succ",   "zero",    "true",  "false",
                                "star",    "refl",      "Id",     "J",       "indBool",
                                "indNat",  "indEmpty",  "Bool",   "Nat",     "Unit",  "Empty",
                                "U0",      "U1",        "U2",     "U3"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  std::string parseBindName() {
    Token t = expect(TokKind::Ident, "an identifier");
    if (isReserved(t.text))
      throw TttError(ErrKind::ParseError, "'" + t.text + "' is a reserved word", t.span(),
                     "parser");
    return t.text;
  }

  SurfaceDecl parseDecl() {
    SurfaceDecl d;
    Token head = expect(TokKind::Ident, "'def' or 'postulate'");
    d.span = head.span();
    if (head.text == "def") {
      d.name = parseBindName();
      expect(TokKind::Colon, "':'");
      d.ty = parseTerm();
      expect(TokKind::ColonEq, "':='");
      d.body = parseTerm();
    } else if (head.text == "postulate") {
      d.isPostulate = true;
      d.name = parseBindName();
      expect(TokKind::Colon, "':'");
      d.ty = parseTerm();
    } else {
      throw TttError(ErrKind::ParseError, "expected 'def' or 'postulate', found '" + head.text + "'",
                     head.span(), "parser");
    }
    return d;
  }

  // modality word, read from the token stream (identifiers joined by '.')
  Mod parseModality() {
    modality::Word w;
    while (true) {
      Token t = expect(TokKind::Ident, "a modality generator (id, op, glo, sha)");
      if (t.text == "id") {
        // contributes nothing
      } else if (t.text == "op") {
        w.letters.push_back(modality::Gen::Op);
      } else if (t.text == "glo") {
        w.letters.push_back(modality::Gen::Glo);
      } else if (t.text == "sha") {
        w.letters.push_back(modality::Gen::Sha);
      } else {
        throw TttError(ErrKind::BadAnnotation, "unparseable modality '" + t.text + "'", t.span(),
                       "modality");
      }
      if (at(TokKind::Dot)) {
        eat();
        continue;
      }
      break;
    }
    return modality::normalize(w);
  }

  struct Binder {
    std::string name;
    bool hasMod = false;
    Mod mod = Mod::Id;
    bool hasDiv = false;
    Mod div = Mod::Id;
    SPtr dom;  // may be null for bare lambda binders
    Span span{};
  };

  // parses `x y :(mu) A` inside parens; caller consumed '('
  std::vector<Binder> parseBinderGroup() {
    std::vector<Binder> out;
    Span sp = peek().span();
    std::vector<std::string> names;
    while (at(TokKind::Ident)) names.push_back(parseBindName());
    if (names.empty())
      throw TttError(ErrKind::ParseError, "expected binder name", peek().span(), "parser");
    bool hasMod = false, hasDiv = false;
    Mod mu = Mod::Id, div = Mod::Id;
    if (at(TokKind::ColonLParen)) {
      eat();
      hasMod = true;
      mu = parseModality();
      if (at(TokKind::Slash)) {
        eat();
        hasDiv = true;
        div = parseModality();
      }
      expect(TokKind::RParen, "')' closing the modality annotation");
    } else {
      expect(TokKind::Colon, "':'");
    }
    SPtr dom = parseTerm();
    expect(TokKind::RParen, "')'");
    for (const std::string& n : names) {
      Binder b;
      b.name = n;
      b.hasMod = hasMod;
      b.mod = mu;
      b.hasDiv = hasDiv;
      b.div = div;
      b.dom = dom;
      b.span = sp;
      out.push_back(b);
    }
    return out;
  }

  // true when the upcoming tokens look like '(' IDENT+ (':' | ':(') — a binder group
  bool peekBinderGroup() const {
    if (!at(TokKind::LParen)) return false;
    int i = 1;
    bool sawIdent = false;
    while (peek(i).kind == TokKind::Ident && !isReserved(peek(i).text)) {
      sawIdent = true;
      ++i;
    }
    if (!sawIdent) return false;
    return peek(i).kind == TokKind::Colon || peek(i).kind == TokKind::ColonLParen;
  }

  SPtr parseTerm() {
    if (at(TokKind::Backslash)) return parseLambda();
    if (atIdent("let")) return parseLetMod();
    return parseArrow();
  }

  SPtr parseLambda() {
    Span sp = peek().span();
    eat();  // backslash
    std::vector<Binder> binders;
    while (true) {
      if (at(TokKind::Ident) && !isReserved(peek().text)) {
        Binder b;
        b.span = peek().span();
        b.name = parseBindName();
        binders.push_back(b);
      } else if (at(TokKind::LParen)) {
        eat();
        auto group = parseBinderGroup();
        binders.insert(binders.end(), group.begin(), group.end());
      } else {
        break;
      }
    }
    if (binders.empty())
      throw TttError(ErrKind::ParseError, "expected lambda binder", peek().span(), "parser");
    expect(TokKind::Dot, "'.' after lambda binders");
    SPtr body = parseTerm();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      auto n = std::make_shared<SNode>();
      n->tag = STag::Lam;
      n->name = it->name;
      n->hasMod = it->hasMod;
      n->mod = it->mod;
      n->hasDiv = it->hasDiv;
      n->div = it->div;
      n->span = sp;
      if (it->dom)
        n->kids = {it->dom, body};
      else
        n->kids = {body};
      body = n;
    }
    return body;
  }

  SPtr parseLetMod() {
    Span sp = peek().span();
    expectIdent("let");
    Mod nu = Mod::Id;
    if (at(TokKind::Lt)) {
      eat();
      nu = parseModality();
      expect(TokKind::Gt, "'>'");
    }
    expectIdent("mod");
    expect(TokKind::Lt, "'<'");
    Mod mu = parseModality();
    expect(TokKind::Gt, "'>'");
    std::string x = parseBindName();
    expect(TokKind::Eq, "'='");
    SPtr scrut = parseTerm();
    expectIdent("ret");
    std::string y = parseBindName();
    expect(TokKind::Dot, "'.'");
    SPtr motive = parseTerm();
    expectIdent("in");
    SPtr body = parseTerm();
    auto n = std::make_shared<SNode>();
    n->tag = STag::LetMod;
    n->name = x;
    n->name2 = y;
    n->mod = mu;
    n->mod2 = nu;
    n->kids = {scrut, motive, body};
    n->span = sp;
    return n;
  }

  SPtr parseArrow() {
    Span sp = peek().span();
    if (peekBinderGroup()) {
      std::size_t save = pos_;
      eat();  // '('
      auto binders = parseBinderGroup();
      if (at(TokKind::Arrow)) {
        eat();
        SPtr cod = parseArrow();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          auto n = std::make_shared<SNode>();
          n->tag = STag::Pi;
          n->name = it->name;
          n->hasMod = it->hasMod;
          n->mod = it->mod;
          n->hasDiv = it->hasDiv;
          n->div = it->div;
          n->kids = {it->dom, cod};
          n->span = sp;
          cod = n;
        }
        return cod;
      }
      if (at(TokKind::Star)) {
        eat();
        SPtr cod = parseProd();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          auto n = std::make_shared<SNode>();
          n->tag = STag::Sigma;
          n->name = it->name;
          if (it->hasMod || it->hasDiv)
            throw TttError(ErrKind::BadAnnotation, "pair types take no modality annotation",
                           it->span, "sigma");
          n->kids = {it->dom, cod};
          n->span = sp;
          cod = n;
        }
        // a dependent pair type may still be the domain of an arrow
        if (at(TokKind::Arrow)) {
          eat();
          SPtr rest = parseArrow();
          auto n = mkS(STag::Arrow, {cod, rest}, sp);
          return n;
        }
        return cod;
      }
      // neither: backtrack and parse as an ordinary term
      pos_ = save;
    }
    SPtr lhs = parseProd();
    if (at(TokKind::Arrow)) {
      eat();
      SPtr rhs = parseArrow();
      return mkS(STag::Arrow, {lhs, rhs}, sp);
    }
    return lhs;
  }

  SPtr parseProd() {
    Span sp = peek().span();
    if (peekBinderGroup()) {
      std::size_t save = pos_;
      eat();  // '('
      auto binders = parseBinderGroup();
      if (at(TokKind::Star)) {
        eat();
        SPtr cod = parseProd();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          auto n = std::make_shared<SNode>();
          n->tag = STag::Sigma;
          n->name = it->name;
          if (it->hasMod || it->hasDiv)
            throw TttError(ErrKind::BadAnnotation, "pair types take no modality annotation",
                           it->span, "sigma");
          n->kids = {it->dom, cod};
          n->span = sp;
          cod = n;
        }
        return cod;
      }
      pos_ = save;
    }
    SPtr lhs = parseEqLevel();
    if (at(TokKind::Star)) {
      eat();
      SPtr rhs = parseProd();
      return mkS(STag::Prod, {lhs, rhs}, sp);
    }
    return lhs;
  }

  SPtr parseEqLevel() {
    Span sp = peek().span();
    SPtr lhs = parseApp();
    if (at(TokKind::Eq)) {
      eat();
      SPtr rhs = parseApp();
      return mkS(STag::Eq, {lhs, rhs}, sp);
    }
    return lhs;
  }

  bool atAtomStart() const {
    switch (peek().kind) {
      case TokKind::Ident:
        return peek().text != "ret" && peek().text != "in" && peek().text != "def" &&
               peek().text != "postulate" && peek().text != "let";
      case TokKind::LParen:
      case TokKind::Lt:
        return true;
      default:
        return false;
    }
  }

  SPtr parseApp() {
    SPtr head = parseAtom();
    while (atAtomStart()) head = mkS(STag::App, {head, parseAtom()}, head->span);
    return head;
  }

  SPtr nullary(STag tag, Span sp) { return mkS(tag, {}, sp); }

  SPtr parseAtom() {
    Span sp = peek().span();
    if (at(TokKind::LParen)) {
      eat();
      SPtr t = parseTerm();
      if (at(TokKind::Comma)) {
        eat();
        SPtr u = parseTerm();
        expect(TokKind::RParen, "')'");
        return mkS(STag::Pair, {t, u}, sp);
      }
      expect(TokKind::RParen, "')'");
      return t;
    }
    if (at(TokKind::Lt)) {
      eat();
      Mod mu = parseModality();
      expect(TokKind::Pipe, "'|'");
      SPtr ty = parseTerm();
      expect(TokKind::Gt, "'>'");
      auto n = std::make_shared<SNode>();
      n->tag = STag::ModT;
      n->mod = mu;
      n->kids = {ty};
      n->span = sp;
      return n;
    }
    Token t = expect(TokKind::Ident, "a term");
    const std::string& s = t.text;
    if (s == "U0" || s == "U1" || s == "U2" || s == "U3") {
      auto n = std::make_shared<SNode>();
      n->tag = STag::Universe;
      n->level = s[1] - '0';
      n->span = sp;
      return n;
    }
    if (s == "Bool") return nullary(STag::Bool, sp);
    if (s == "true") return nullary(STag::TrueLit, sp);
    if (s == "false") return nullary(STag::FalseLit, sp);
    if (s == "Nat") return nullary(STag::Nat, sp);
    if (s == "zero") return nullary(STag::Zero, sp);
    if (s == "Unit") return nullary(STag::Unit, sp);
    if (s == "star") return nullary(STag::Star, sp);
    if (s == "Empty") return nullary(STag::Empty, sp);
    if (s == "refl") return nullary(STag::Refl, sp);
    if (s == "succ") return mkS(STag::Succ, {parseAtom()}, sp);
    if (s == "fst") return mkS(STag::Fst, {parseAtom()}, sp);
    if (s == "snd") return mkS(STag::Snd, {parseAtom()}, sp);
    if (s == "Id") {
      SPtr a = parseAtom(), b = parseAtom(), c = parseAtom();
      return mkS(STag::Id, {a, b, c}, sp);
    }
    if (s == "J") {
      SPtr m = parseAtom(), b = parseAtom(), e = parseAtom();
      return mkS(STag::J, {m, b, e}, sp);
    }
    if (s == "indBool") {
      SPtr m = parseAtom(), tc = parseAtom(), fc = parseAtom(), sc = parseAtom();
      return mkS(STag::BoolRec, {m, tc, fc, sc}, sp);
    }
    if (s == "indNat") {
      SPtr m = parseAtom(), z = parseAtom(), su = parseAtom(), n = parseAtom();
      return mkS(STag::NatRec, {m, z, su, n}, sp);
    }
    if (s == "indEmpty") {
      SPtr m = parseAtom(), e = parseAtom();
      return mkS(STag::EmptyRec, {m, e}, sp);
    }
    if (s == "mod") {
      expect(TokKind::Lt, "'<'");
      Mod mu = parseModality();
      expect(TokKind::Gt, "'>'");
      SPtr body = parseAtom();
      auto n = std::make_shared<SNode>();
      n->tag = STag::ModIntro;
      n->mod = mu;
      n->kids = {body};
      n->span = sp;
      return n;
    }
    if (isReserved(s))
      throw TttError(ErrKind::ParseError, "unexpected '" + s + "'", t.span(), "parser");
    auto n = std::make_shared<SNode>();
    n->tag = STag::Var;
    n->name = s;
    n->span = sp;
    return n;
  }
};

inline std::vector<SurfaceDecl> parseFile(std::string_view src) {
  return Parser(src).parseFile();
}

inline SPtr parseTerm(std::string_view src) { return Parser(src).parseTermOnly(); }

// line/column rendering for spans
inline std::string describeSpan(std::string_view src, Span sp) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < sp.begin && i < src.size(); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace ttt::front

#endif  // TTT_SYNTAX_HPP
