#ifndef MORPHOLEX_RULES_H
#define MORPHOLEX_RULES_H

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "morpholex/corpus.h"
#include "morpholex/error.h"
#include "morpholex/lexicon.h"

namespace morpholex {

// Where the affix attaches.  An "ending" is a word shape treated as a
// pseudo-affix: it never consults the lexicon and produces no base.
enum class AffixKind { prefix, suffix, ending };

std::string to_string(AffixKind kind);
AffixKind affix_kind_from_string(const std::string& text);

// Spelling adjustments tried, in order, between an affix-stripped residue
// and a lexicon base form.
enum class Alternation {
  identity,       // residue used as is
  e_restoration,  // intens -> intense
  y_restoration,  // glor -> glory (residue must end in a consonant)
  il_to_le,       // stabil -> stable
  undoubling,     // committ -> commit
};

// The alternations in their canonical application order.
const std::vector<Alternation>& all_alternations();

std::string to_string(Alternation alt);
Alternation alternation_from_string(const std::string& text);  // throws Error

// Residue -> base candidate, or nullopt when the adjustment does not apply.
std::optional<std::string> apply_alternation(Alternation alt,
                                             const std::string& residue);
// Base -> residue, the exact inverse: for every residue r where apply
// succeeds, invert(apply(r)) == r.
std::optional<std::string> invert_alternation(Alternation alt,
                                              const std::string& base);

// One affix rule: candidate filter, stripping instructions, base
// requirements, and the semantic features contributed to the derived word
// and to its base.
struct AffixRule {
  std::string id;      // unique, e.g. "-Aize", "Vun-"
  std::string family;  // surface affix shared by sibling senses, e.g. "-ize"
  AffixKind kind = AffixKind::suffix;
  std::string orth_pattern;  // matched against the uppercased surface
  std::string tag_pattern;   // matched against the tag
  std::string strip;         // uppercase affix material removed from the word
  Pos target_pos = Pos::other;  // category of the derived word
  bool uses_lexicon = true;     // endings set this false
  std::optional<Pos> base_pos;  // category required of the base
  std::set<std::string> base_flags;            // flags required of the base
  std::vector<Alternation> alternations;       // tried in order
  std::vector<std::string> derived_features;   // assigned to the derived word
  std::vector<std::string> base_features;      // assigned to the base

  SurfacePattern make_pattern() const {
    return SurfacePattern(orth_pattern, tag_pattern);
  }
};

// An ordered rule collection with unique ids.
class RuleCatalog {
 public:
  void add(AffixRule rule);  // throws Error on duplicate id

  const std::vector<AffixRule>& rules() const { return rules_; }
  const AffixRule* find(const std::string& id) const;
  std::size_t size() const { return rules_.size(); }

  // Number of distinct families.
  std::size_t family_count() const;

 private:
  std::vector<AffixRule> rules_;
};

// The builtin catalog: 20 rules across 18 families.  Deterministic and
// side-effect free; repeated calls build equal catalogs.
RuleCatalog builtin_rules();

// Rule-file reader/writer.  The format is blank-line-separated blocks of
// "key: value" lines; serialize emits the canonical form, and loading it
// reproduces the same bytes.  Feature ids are validated against the feature
// catalog; violations throw Error with the offending line number.
RuleCatalog load_rules(std::istream& in);
RuleCatalog load_rules_file(const std::filesystem::path& path);
void serialize_rules(const RuleCatalog& catalog, std::ostream& out);

}  // namespace morpholex

#endif  // MORPHOLEX_RULES_H
