#ifndef MORPHOLEX_ANALYZER_H
#define MORPHOLEX_ANALYZER_H

#include <memory>
#include <string>
#include <vector>

#include "morpholex/lexicon.h"
#include "morpholex/rules.h"

namespace morpholex {

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

// A node in a derivation tree.  Leaves carry no rule and name a lexicon base
// (or an invented one).  Internal nodes carry the affix rule that produced
// the word in `lemma` from the word in `base->lemma`, plus the spelling
// alternation linking the two.  Ending nodes carry a rule but no base.
struct Derivation {
  const AffixRule* rule = nullptr;
  std::string lemma;  // lowercase; for internal nodes equals synthesize(*this)
  Pos pos = Pos::other;
  bool invented = false;
  Alternation alternation = Alternation::identity;
  DerivationPtr base;
};

// Structural equality: same rule ids, lemmas, categories, alternations and
// bases.
bool same_derivation(const Derivation& a, const Derivation& b);

struct AnalyzeOptions {
  int max_depth = 3;        // maximum number of stacked affix rules
  bool invent_bases = false;
};

// All derivations of `lemma` licensed by `rule`, in deterministic order:
// direct lexicon parses first (alternation order), then nested parses
// (alternation order, then catalog order of the inner rule), then
// prefix-wrapped parses (catalog order), with any invented parse last.
// Structural duplicates keep the first occurrence.  An empty result is a
// value, not an error.
std::vector<DerivationPtr> analyze(const std::string& lemma,
                                   const AffixRule& rule,
                                   const Lexicon& lexicon,
                                   const RuleCatalog& catalog,
                                   const AnalyzeOptions& options = {});

// Rebuilds the surface lemma a tree derives.  Inverse of analysis: for every
// tree returned by analyze(lemma, ...), synthesize(tree) == lemma.
std::string synthesize(const Derivation& tree);

// Bracket notation: leaves print their lemma ("lemma*" when invented);
// suffix nodes print "[base id]" and prefix nodes "[id base]", with rule ids
// carrying their own hyphens (e.g. "[[tradition -al] -Aize]",
// "[Vun- [fast -en]]"); ending nodes print "[lemma id]".
std::string to_bracket(const Derivation& tree);

}  // namespace morpholex

#endif  // MORPHOLEX_ANALYZER_H
