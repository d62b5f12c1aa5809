#ifndef MORPHOLEX_CORPUS_H
#define MORPHOLEX_CORPUS_H

#include <cstddef>
#include <filesystem>
#include <istream>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "morpholex/error.h"

namespace morpholex {

// One "surface/TAG" token from a tagged corpus.  Positions are 1-based;
// the column is the byte offset of the token's first character on its line.
struct Token {
  std::string surface;
  std::string tag;
  int line = 0;
  int column = 0;
};

// One input line worth of tokens.
struct TaggedSentence {
  std::vector<Token> tokens;
};

// A tagged corpus: one sentence per line, tokens separated by whitespace,
// each token written surface/TAG (the last '/' separates surface from tag,
// so surfaces may themselves contain slashes).
class Corpus {
 public:
  static Corpus from_stream(std::istream& in, Diagnostics& diags);
  static Corpus from_file(const std::filesystem::path& path, Diagnostics& diags);

  const std::vector<TaggedSentence>& sentences() const { return sentences_; }
  std::size_t token_count() const { return token_count_; }

 private:
  std::vector<TaggedSentence> sentences_;
  std::size_t token_count_ = 0;
};

// The corpus collapsed to (surface, tag) types with occurrence bookkeeping.
class TypeInventory {
 public:
  struct Entry {
    std::string surface;
    std::string tag;
    std::size_t count = 0;
    std::vector<std::pair<int, int>> positions;  // (line, column), 1-based
  };

  TypeInventory() = default;
  explicit TypeInventory(const Corpus& corpus);

  // Entries sorted by (surface, tag), byte order.
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const Entry* find(const std::string& surface, const std::string& tag) const;

 private:
  std::vector<Entry> entries_;
};

// An orthographic/tag candidate filter.  The orthographic pattern is matched
// against the uppercased surface, the tag pattern against the tag; both use
// unanchored search, so patterns anchor themselves with ^ and $ as needed.
class SurfacePattern {
 public:
  SurfacePattern(std::string orth_pattern, std::string tag_pattern);

  bool matches(const std::string& surface, const std::string& tag) const;

  const std::string& orth_pattern() const { return orth_; }
  const std::string& tag_pattern() const { return tag_; }

 private:
  std::string orth_;
  std::string tag_;
  std::regex orth_re_;
  std::regex tag_re_;
};

// All inventory entries matched by the pattern, in inventory order.
std::vector<TypeInventory::Entry> collect_candidates(
    const TypeInventory& inventory, const SurfacePattern& pattern);

// Strips inflection from a tagged surface form.  Returns candidate lemmas,
// most specific first, all lowercase; the list is non-empty for supported
// tags and empty (with a diagnostic) for unsupported ones.
std::vector<std::string> normalize_inflection(const std::string& surface,
                                              const std::string& tag,
                                              Diagnostics& diags);

// Uppercases ASCII letters; leaves other bytes alone.
std::string to_upper_ascii(const std::string& text);
// Lowercases ASCII letters; leaves other bytes alone.
std::string to_lower_ascii(const std::string& text);

}  // namespace morpholex

#endif  // MORPHOLEX_CORPUS_H
