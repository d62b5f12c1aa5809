#ifndef MORPHOLEX_LEXICON_H
#define MORPHOLEX_LEXICON_H

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "morpholex/error.h"

namespace morpholex {

enum class Pos { noun, verb, adjective, adverb, other };

std::string to_string(Pos pos);
Pos pos_from_string(const std::string& text);  // throws Error on unknown

// One lexicon entry: a lemma under a part of speech, with marker flags.
struct LexEntry {
  std::string lemma;
  Pos pos = Pos::other;
  std::set<std::string> flags;

  bool operator==(const LexEntry&) const = default;
};

// A base-form lexicon keyed by (lemma, pos).  The flag inventory starts with
// the builtin markers and can be extended by a "#!flags:" header directive.
class Lexicon {
 public:
  Lexicon();

  static Lexicon from_stream(std::istream& in);
  static Lexicon from_file(const std::filesystem::path& path);

  // Inserts or merges (same (lemma, pos) unions the flags).  Flags must be
  // in the inventory.
  void add(const LexEntry& entry);

  // True when (lemma, pos) is present and carries every flag in
  // required_flags.
  bool contains(const std::string& lemma, Pos pos,
                const std::set<std::string>& required_flags = {}) const;

  const LexEntry* find(const std::string& lemma, Pos pos) const;

  // All entries for a lemma, across parts of speech.
  std::vector<const LexEntry*> find_all(const std::string& lemma) const;

  // Every entry, in (lemma, pos) order.
  std::vector<const LexEntry*> all_entries() const;

  std::size_t size() const { return entries_.size(); }

  const std::set<std::string>& flag_inventory() const { return flag_inventory_; }
  void extend_flag_inventory(const std::string& flag);

  // Canonical form: sorted rows "lemma<TAB>pos[<TAB>flag,flag]", flags sorted
  // and comma-joined, the flags column omitted when empty.  Loading the
  // output reproduces the same lexicon and the same bytes.
  void serialize(std::ostream& out) const;

 private:
  std::map<std::pair<std::string, Pos>, LexEntry> entries_;
  std::set<std::string> flag_inventory_;
};

}  // namespace morpholex

#endif  // MORPHOLEX_LEXICON_H
