#include "morpholex/analyzer.h"

#include <algorithm>
#include <regex>

#include "morpholex/corpus.h"

namespace morpholex {

bool same_derivation(const Derivation& a, const Derivation& b) {
  const std::string a_rule = a.rule ? a.rule->id : "";
  const std::string b_rule = b.rule ? b.rule->id : "";
  if (a_rule != b_rule || a.lemma != b.lemma || a.pos != b.pos ||
      a.invented != b.invented || a.alternation != b.alternation)
    return false;
  if (static_cast<bool>(a.base) != static_cast<bool>(b.base)) return false;
  if (!a.base) return true;
  return same_derivation(*a.base, *b.base);
}

namespace {

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void push_unique(std::vector<DerivationPtr>& results, DerivationPtr tree) {
  for (const DerivationPtr& existing : results) {
    if (same_derivation(*existing, *tree)) return;
  }
  results.push_back(std::move(tree));
}

DerivationPtr make_leaf(std::string lemma, Pos pos, bool invented) {
  auto node = std::make_shared<Derivation>();
  node->lemma = std::move(lemma);
  node->pos = pos;
  node->invented = invented;
  return node;
}

DerivationPtr make_node(const AffixRule& rule, std::string lemma,
                        Alternation alternation, DerivationPtr base) {
  auto node = std::make_shared<Derivation>();
  node->rule = &rule;
  node->lemma = std::move(lemma);
  node->pos = rule.target_pos;
  node->alternation = alternation;
  node->base = std::move(base);
  return node;
}

// The affix material a rule strips, as it appears in lowercase lemmas.
std::string strip_lower(const AffixRule& rule) {
  return to_lower_ascii(rule.strip);
}

}  // namespace

std::vector<DerivationPtr> analyze(const std::string& lemma,
                                   const AffixRule& rule,
                                   const Lexicon& lexicon,
                                   const RuleCatalog& catalog,
                                   const AnalyzeOptions& options) {
  std::vector<DerivationPtr> results;
  if (options.max_depth <= 0 || lemma.empty()) return results;

  if (rule.kind == AffixKind::ending) {
    // A pseudo-derivation: the word merely has the shape of the ending.
    std::regex orth(rule.orth_pattern, std::regex::ECMAScript);
    if (std::regex_search(to_upper_ascii(lemma), orth)) {
      push_unique(results, make_node(rule, lemma, Alternation::identity,
                                     nullptr));
    }
    return results;
  }

  const std::string strip = strip_lower(rule);
  std::string residue;
  if (rule.kind == AffixKind::suffix) {
    if (lemma.size() <= strip.size() || !ends_with(lemma, strip))
      return results;
    residue = lemma.substr(0, lemma.size() - strip.size());
  } else {
    if (lemma.size() <= strip.size() || !starts_with(lemma, strip))
      return results;
    residue = lemma.substr(strip.size());
  }

  // Direct parses: residue adjusted by an alternation names a lexicon base
  // of the required category and flags.
  bool direct_hit = false;
  for (Alternation alt : rule.alternations) {
    std::optional<std::string> base = apply_alternation(alt, residue);
    if (!base) continue;
    if (lexicon.contains(*base, *rule.base_pos, rule.base_flags)) {
      push_unique(results,
                  make_node(rule, lemma, alt,
                            make_leaf(*base, *rule.base_pos, false)));
      direct_hit = true;
    }
  }

  // Nested parses: the adjusted residue is itself derived, by any
  // lexicon-consulting rule that produces the category this rule needs.
  if (options.max_depth > 1) {
    AnalyzeOptions deeper = options;
    deeper.max_depth = options.max_depth - 1;
    for (Alternation alt : rule.alternations) {
      std::optional<std::string> base = apply_alternation(alt, residue);
      if (!base) continue;
      for (const AffixRule& inner : catalog.rules()) {
        if (inner.kind == AffixKind::ending) continue;
        if (inner.target_pos != *rule.base_pos) continue;
        for (DerivationPtr& sub :
             analyze(*base, inner, lexicon, catalog, deeper)) {
          push_unique(results, make_node(rule, lemma, alt, std::move(sub)));
        }
      }
    }

    // Prefix-wrapped parses: a prefix outside a suffixed word, e.g.
    // "subsidize" as [sub- [side -Nize]].  The suffix re-dispatches across
    // its family so sibling senses stay reachable under the prefix.
    if (rule.kind == AffixKind::suffix) {
      for (const AffixRule& prefix : catalog.rules()) {
        if (prefix.kind != AffixKind::prefix) continue;
        if (!prefix.base_pos || *prefix.base_pos != rule.target_pos) continue;
        const std::string pstrip = strip_lower(prefix);
        if (lemma.size() <= pstrip.size() || !starts_with(lemma, pstrip))
          continue;
        const std::string remainder = lemma.substr(pstrip.size());
        for (const AffixRule& sibling : catalog.rules()) {
          if (sibling.kind != AffixKind::suffix ||
              sibling.family != rule.family)
            continue;
          for (DerivationPtr& sub :
               analyze(remainder, sibling, lexicon, catalog, deeper)) {
            push_unique(results, make_node(prefix, lemma,
                                           Alternation::identity,
                                           std::move(sub)));
          }
        }
      }
    }
  }

  // As a last resort, posit an unknown base from the bare residue.
  if (options.invent_bases && !direct_hit) {
    push_unique(results,
                make_node(rule, lemma, Alternation::identity,
                          make_leaf(residue, *rule.base_pos, true)));
  }

  return results;
}

std::string synthesize(const Derivation& tree) {
  if (!tree.rule || !tree.base) return tree.lemma;
  const std::string inner = synthesize(*tree.base);
  if (tree.rule->kind == AffixKind::prefix)
    return strip_lower(*tree.rule) + inner;
  std::optional<std::string> residue =
      invert_alternation(tree.alternation, inner);
  if (!residue)
    throw Error("cannot synthesize '" + inner + "' under rule '" +
                tree.rule->id + "'");
  return *residue + strip_lower(*tree.rule);
}

std::string to_bracket(const Derivation& tree) {
  if (!tree.rule) return tree.invented ? tree.lemma + "*" : tree.lemma;
  if (!tree.base) return "[" + tree.lemma + " " + tree.rule->id + "]";
  if (tree.rule->kind == AffixKind::prefix)
    return "[" + tree.rule->id + " " + to_bracket(*tree.base) + "]";
  return "[" + to_bracket(*tree.base) + " " + tree.rule->id + "]";
}

}  // namespace morpholex
