#ifndef TTT_MODALITY_HPP
#define TTT_MODALITY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// The one-object mode theory: an ordered monoid generated by glo, sha, op
// subject to
//
//   glo = glo.glo = glo.sha = glo.op
//   sha = sha.glo = sha.sha = sha.op
//   glo <= id = op.op <= sha
//
// Composition reads right-to-left.  Every word rewrites to one of six normal
// forms: an optional leading `op` followed by an optional `glo` or `sha`.
namespace ttt::modality {

enum class Gen : std::uint8_t { Glo, Sha, Op };

enum class Mod : std::uint8_t { Id = 0, Op = 1, Glo = 2, Sha = 3, OpGlo = 4, OpSha = 5 };

inline constexpr std::array<Mod, 6> kAllMods = {Mod::Id,  Mod::Op,    Mod::Glo,
                                                Mod::Sha, Mod::OpGlo, Mod::OpSha};

// A word over the generators; letters[0] is the outermost (leftmost) factor.
struct Word {
  std::vector<Gen> letters;
};

// Rewrites to the unique normal form.  glo/sha absorb everything to their
// right, so only the parity of the `op` prefix before the leftmost glo/sha
// matters.
inline Mod normalize(const Word& w) {
  std::size_t ops = 0;
  for (Gen g : w.letters) {
    switch (g) {
      case Gen::Op:
        ++ops;
        break;
      case Gen::Glo:
        return (ops % 2 == 1) ? Mod::OpGlo : Mod::Glo;
      case Gen::Sha:
        return (ops % 2 == 1) ? Mod::OpSha : Mod::Sha;
    }
  }
  return (ops % 2 == 1) ? Mod::Op : Mod::Id;
}

// Composition table on normal forms (result of normalizing the concatenated
// words).  Any form containing glo/sha absorbs its right factor.
inline constexpr Mod kCompose[6][6] = {
    /* id    */ {Mod::Id, Mod::Op, Mod::Glo, Mod::Sha, Mod::OpGlo, Mod::OpSha},
    /* op    */ {Mod::Op, Mod::Id, Mod::OpGlo, Mod::OpSha, Mod::Glo, Mod::Sha},
    /* glo   */ {Mod::Glo, Mod::Glo, Mod::Glo, Mod::Glo, Mod::Glo, Mod::Glo},
    /* sha   */ {Mod::Sha, Mod::Sha, Mod::Sha, Mod::Sha, Mod::Sha, Mod::Sha},
    /* op.glo*/ {Mod::OpGlo, Mod::OpGlo, Mod::OpGlo, Mod::OpGlo, Mod::OpGlo, Mod::OpGlo},
    /* op.sha*/ {Mod::OpSha, Mod::OpSha, Mod::OpSha, Mod::OpSha, Mod::OpSha, Mod::OpSha},
};

inline constexpr Mod compose(Mod a, Mod b) {
  return kCompose[static_cast<int>(a)][static_cast<int>(b)];
}

// Order table: the smallest preorder containing glo <= id and id <= sha that
// is a congruence for composition on both sides.  Embedded as data; the test
// suite recomputes the fixpoint closure and checks it agrees.
//
// Note the closure makes glo/op.glo and sha/op.sha order-isomorphic (e.g.
// glo = glo.(op.glo) <= id.(op.glo) = op.glo and op.glo = (op.glo).(op.glo)
// <= op.(op.glo) = glo), so the relation is a genuine preorder rather than a
// partial order on the six forms.
inline constexpr bool kLeq[6][6] = {
    /*          id     op     glo    sha    op.glo op.sha */
    /* id    */ {true, false, false, true, false, true},
    /* op    */ {false, true, false, true, false, true},
    /* glo   */ {true, true, true, true, true, true},
    /* sha   */ {false, false, false, true, false, true},
    /* op.glo*/ {true, true, true, true, true, true},
    /* op.sha*/ {false, false, false, true, false, true},
};

inline constexpr bool leq(Mod a, Mod b) {
  return kLeq[static_cast<int>(a)][static_cast<int>(b)];
}

inline std::string_view name(Mod m) {
  switch (m) {
    case Mod::Id: return "id";
    case Mod::Op: return "op";
    case Mod::Glo: return "glo";
    case Mod::Sha: return "sha";
    case Mod::OpGlo: return "op.glo";
    case Mod::OpSha: return "op.sha";
  }
  return "?";
}

// Parses a word:  `id`, `op`, `glo`, `sha` composed with `.` or the UTF-8
// ring operator, right-to-left.  Whitespace is ignored.
inline std::optional<Word> parseWord(std::string_view src) {
  Word out;
  std::size_t i = 0;
  bool expectFactor = true;
  auto skipWs = [&] {
    while (i < src.size() && (src[i] == ' ' || src[i] == '\t')) ++i;
  };
  skipWs();
  if (i == src.size()) return std::nullopt;  // empty input: require explicit `id`
  while (i < src.size()) {
    skipWs();
    if (i == src.size()) break;
    if (!expectFactor) {
      if (src[i] == '.') {
        ++i;
      } else if (src.compare(i, 3, "∘") == 0) {
        i += 3;
      } else {
        return std::nullopt;
      }
      expectFactor = true;
      continue;
    }
    if (src.compare(i, 2, "id") == 0) {
      i += 2;  // identity contributes no letter
    } else if (src.compare(i, 2, "op") == 0) {
      out.letters.push_back(Gen::Op);
      i += 2;
    } else if (src.compare(i, 3, "glo") == 0) {
      out.letters.push_back(Gen::Glo);
      i += 3;
    } else if (src.compare(i, 3, "sha") == 0) {
      out.letters.push_back(Gen::Sha);
      i += 3;
    } else {
      return std::nullopt;
    }
    expectFactor = false;
  }
  if (expectFactor) return std::nullopt;  // trailing composition operator
  return out;
}

inline std::optional<Mod> parseMod(std::string_view src) {
  auto w = parseWord(src);
  if (!w) return std::nullopt;
  return normalize(*w);
}

}  // namespace ttt::modality

#endif  // TTT_MODALITY_HPP
