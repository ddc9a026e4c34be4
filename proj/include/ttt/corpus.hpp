#ifndef TTT_CORPUS_HPP
#define TTT_CORPUS_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ttt/check.hpp"
#include "ttt/errors.hpp"
#include "ttt/signature.hpp"

// The checked corpus: an ordered list of surface files with expected
// outcomes.  ACCEPT files extend one running signature (later files may use
// earlier declarations); REJECT files are checked against a copy and must
// fail with the named error kind.
namespace ttt::corpus {

struct ManifestEntry {
  std::string file;
  bool accept = true;
  std::string errorKind;  // expected kind for REJECT entries
};

struct FileResult {
  std::string file;
  bool pass = false;
  std::string expected;  // "ACCEPT" or "REJECT <KIND>"
  std::string actual;
  int declarations = 0;
  std::string message;
};

struct Report {
  std::vector<FileResult> files;
  int passed = 0;
  int failed = 0;
  int acceptedDeclarations = 0;
};

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TttError(ErrKind::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<ManifestEntry> parseManifest(const std::string& text) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    ManifestEntry e;
    std::string outcome;
    if (!(ls >> e.file)) continue;   // blank line
    if (e.file[0] == '#') continue;  // comment
    if (!(ls >> outcome))
      throw TttError(ErrKind::ParseError, "manifest line lacks an outcome: " + line, {},
                     "manifest");
    if (outcome == "ACCEPT") {
      e.accept = true;
    } else if (outcome == "REJECT") {
      e.accept = false;
      if (!(ls >> e.errorKind))
        throw TttError(ErrKind::ParseError, "REJECT entry lacks an error kind: " + line, {},
                       "manifest");
    } else {
      throw TttError(ErrKind::ParseError, "manifest outcome must be ACCEPT or REJECT: " + line, {},
                     "manifest");
    }
    out.push_back(std::move(e));
  }
  return out;
}

// Checks that the manifest lists exactly the .ttt files present in `dir`.
inline void auditManifest(const std::string& dir, const std::vector<ManifestEntry>& entries) {
  std::vector<std::string> listed;
  for (const ManifestEntry& e : entries) listed.push_back(e.file);
  std::sort(listed.begin(), listed.end());
  for (std::size_t i = 1; i < listed.size(); ++i)
    if (listed[i] == listed[i - 1])
      throw TttError(ErrKind::ManifestMismatch, "file listed twice: " + listed[i], {}, "manifest");
  std::vector<std::string> present;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".ttt") present.push_back(entry.path().filename().string());
  }
  std::sort(present.begin(), present.end());
  if (present != listed) {
    std::string msg = "manifest and directory disagree;";
    for (const std::string& f : present)
      if (!std::binary_search(listed.begin(), listed.end(), f)) msg += " unlisted: " + f;
    for (const std::string& f : listed)
      if (!std::binary_search(present.begin(), present.end(), f)) msg += " missing: " + f;
    throw TttError(ErrKind::ManifestMismatch, msg, {}, "manifest");
  }
}

inline Report runCorpus(const std::string& dir) {
  auto entries = parseManifest(readFile(dir + "/manifest"));
  auditManifest(dir, entries);
  Report rep;
  core::Signature sig;
  for (const ManifestEntry& e : entries) {
    FileResult r;
    r.file = e.file;
    r.expected = e.accept ? "ACCEPT" : "REJECT " + e.errorKind;
    std::string text = readFile(dir + "/" + e.file);
    if (e.accept) {
      try {
        r.declarations = check::checkText(sig, text);
        r.actual = "ACCEPT";
        r.pass = true;
        rep.acceptedDeclarations += r.declarations;
      } catch (const TttError& err) {
        r.actual = std::string("REJECT ") + std::string(errName(err.kind));
        r.message = err.message;
        r.pass = false;
      }
    } else {
      core::Signature scratch = sig;  // rejected declarations must not leak
      try {
        check::checkText(scratch, text);
        r.actual = "ACCEPT";
        r.pass = false;
      } catch (const TttError& err) {
        r.actual = std::string("REJECT ") + std::string(errName(err.kind));
        r.message = err.message;
        r.pass = errName(err.kind) == e.errorKind;
      }
    }
    rep.files.push_back(std::move(r));
  }
  for (const FileResult& r : rep.files) (r.pass ? rep.passed : rep.failed)++;
  return rep;
}

inline std::string renderReport(const Report& rep) {
  std::ostringstream out;
  for (const FileResult& r : rep.files) {
    out << (r.pass ? "pass" : "FAIL") << "  " << r.file << "  expected [" << r.expected
        << "] actual [" << r.actual << "]";
    if (r.declarations > 0) out << " (" << r.declarations << " declarations)";
    out << "\n";
  }
  out << rep.passed << " passed, " << rep.failed << " failed, " << rep.acceptedDeclarations
      << " declarations accepted\n";
  return out.str();
}

}  // namespace ttt::corpus

#endif  // TTT_CORPUS_HPP
