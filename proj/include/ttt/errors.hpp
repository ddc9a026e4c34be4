#ifndef TTT_ERRORS_HPP
#define TTT_ERRORS_HPP

#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <utility>

namespace ttt {

// Byte range into the source buffer of the file being processed.
struct Span {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  bool known() const { return end > 0 || begin > 0; }
};

enum class ErrKind : std::uint8_t {
  UnboundName,
  BadAnnotation,
  VariableLocked,
  TypeMismatch,
  NotAFunction,
  UniverseError,
  OutOfRange,
  NotABinding,
  IllScoped,
  CannotInfer,
  DuplicateName,
  ParseError,
  ManifestMismatch,
  BoundExceeded,
  UnknownGenerator,
  IoError,
};

inline std::string_view errName(ErrKind k) {
  switch (k) {
    case ErrKind::UnboundName: return "UNBOUND_NAME";
    case ErrKind::BadAnnotation: return "BAD_ANNOTATION";
    case ErrKind::VariableLocked: return "VARIABLE_LOCKED";
    case ErrKind::TypeMismatch: return "TYPE_MISMATCH";
    case ErrKind::NotAFunction: return "NOT_A_FUNCTION";
    case ErrKind::UniverseError: return "UNIVERSE_ERROR";
    case ErrKind::OutOfRange: return "OUT_OF_RANGE";
    case ErrKind::NotABinding: return "NOT_A_BINDING";
    case ErrKind::IllScoped: return "ILL_SCOPED";
    case ErrKind::CannotInfer: return "CANNOT_INFER";
    case ErrKind::DuplicateName: return "DUPLICATE_NAME";
    case ErrKind::ParseError: return "PARSE_ERROR";
    case ErrKind::ManifestMismatch: return "MANIFEST_MISMATCH";
    case ErrKind::BoundExceeded: return "BOUND_EXCEEDED";
    case ErrKind::UnknownGenerator: return "UNKNOWN_GENERATOR";
    case ErrKind::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

struct TttError : std::exception {
  ErrKind kind;
  std::string message;
  Span span{};
  std::string rule;  // name of the judgment/rule that failed

  TttError(ErrKind k, std::string msg, Span s = {}, std::string r = {})
      : kind(k), message(std::move(msg)), span(s), rule(std::move(r)) {
    rendered = std::string(errName(kind));
    if (!rule.empty()) rendered += " [" + rule + "]";
    rendered += ": " + message;
  }

  const char* what() const noexcept override { return rendered.c_str(); }

 private:
  std::string rendered;
};

}  // namespace ttt

#endif  // TTT_ERRORS_HPP
