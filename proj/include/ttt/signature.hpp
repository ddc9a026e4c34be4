#ifndef TTT_SIGNATURE_HPP
#define TTT_SIGNATURE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ttt/errors.hpp"
#include "ttt/term.hpp"

namespace ttt::core {

struct Declaration {
  std::string name;
  bool isPostulate = false;
  TermPtr ty;    // closed
  TermPtr body;  // closed; null for postulates
  Span span{};
};

// Ordered list of declarations; each checks against the prefix before it.
struct Signature {
  std::vector<Declaration> decls;

  const Declaration* find(const std::string& name) const {
    auto it = byName.find(name);
    return it == byName.end() ? nullptr : &decls[it->second];
  }

  int indexOf(const std::string& name) const {
    auto it = byName.find(name);
    return it == byName.end() ? -1 : static_cast<int>(it->second);
  }

  void add(Declaration d) {
    if (byName.count(d.name))
      throw TttError(ErrKind::DuplicateName, "duplicate declaration '" + d.name + "'", d.span,
                     "signature");
    byName.emplace(d.name, decls.size());
    decls.push_back(std::move(d));
  }

 private:
  std::map<std::string, std::size_t> byName;
};

}  // namespace ttt::core

#endif  // TTT_SIGNATURE_HPP
