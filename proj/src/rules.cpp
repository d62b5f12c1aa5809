#include "morpholex/rules.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "morpholex/corpus.h"
#include "morpholex/semantics.h"

namespace morpholex {

std::string to_string(AffixKind kind) {
  switch (kind) {
    case AffixKind::prefix: return "prefix";
    case AffixKind::suffix: return "suffix";
    case AffixKind::ending: return "ending";
  }
  throw Error("invalid affix kind value");
}

AffixKind affix_kind_from_string(const std::string& text) {
  if (text == "prefix") return AffixKind::prefix;
  if (text == "suffix") return AffixKind::suffix;
  if (text == "ending") return AffixKind::ending;
  throw Error("unknown affix kind '" + text + "'");
}

const std::vector<Alternation>& all_alternations() {
  static const std::vector<Alternation> order = {
      Alternation::identity, Alternation::e_restoration,
      Alternation::y_restoration, Alternation::il_to_le,
      Alternation::undoubling};
  return order;
}

std::string to_string(Alternation alt) {
  switch (alt) {
    case Alternation::identity: return "identity";
    case Alternation::e_restoration: return "e-restoration";
    case Alternation::y_restoration: return "y-restoration";
    case Alternation::il_to_le: return "il-to-le";
    case Alternation::undoubling: return "undoubling";
  }
  throw Error("invalid alternation value");
}

Alternation alternation_from_string(const std::string& text) {
  for (Alternation alt : all_alternations()) {
    if (to_string(alt) == text) return alt;
  }
  throw Error("unknown alternation '" + text + "'");
}

namespace {

bool is_consonant(char c) {
  static const std::string consonants = "bcdfghjklmnpqrstvwxz";
  return consonants.find(c) != std::string::npos;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::optional<std::string> apply_alternation(Alternation alt,
                                             const std::string& residue) {
  if (residue.empty()) return std::nullopt;
  switch (alt) {
    case Alternation::identity:
      return residue;
    case Alternation::e_restoration:
      return residue + "e";
    case Alternation::y_restoration:
      if (!is_consonant(residue.back())) return std::nullopt;
      return residue + "y";
    case Alternation::il_to_le:
      if (!ends_with(residue, "il") || residue.size() < 3) return std::nullopt;
      return residue.substr(0, residue.size() - 2) + "le";
    case Alternation::undoubling:
      if (residue.size() < 3) return std::nullopt;
      if (residue[residue.size() - 1] != residue[residue.size() - 2] ||
          !is_consonant(residue.back()))
        return std::nullopt;
      return residue.substr(0, residue.size() - 1);
  }
  return std::nullopt;
}

std::optional<std::string> invert_alternation(Alternation alt,
                                              const std::string& base) {
  if (base.empty()) return std::nullopt;
  switch (alt) {
    case Alternation::identity:
      return base;
    case Alternation::e_restoration:
      if (base.size() < 2 || base.back() != 'e') return std::nullopt;
      return base.substr(0, base.size() - 1);
    case Alternation::y_restoration:
      if (base.size() < 2 || base.back() != 'y' ||
          !is_consonant(base[base.size() - 2]))
        return std::nullopt;
      return base.substr(0, base.size() - 1);
    case Alternation::il_to_le:
      if (base.size() < 3 || !ends_with(base, "le")) return std::nullopt;
      return base.substr(0, base.size() - 2) + "il";
    case Alternation::undoubling:
      if (base.size() < 2 || !is_consonant(base.back())) return std::nullopt;
      return base + base.back();
  }
  return std::nullopt;
}

void RuleCatalog::add(AffixRule rule) {
  if (find(rule.id)) throw Error("duplicate rule id '" + rule.id + "'");
  rules_.push_back(std::move(rule));
}

const AffixRule* RuleCatalog::find(const std::string& id) const {
  for (const AffixRule& rule : rules_) {
    if (rule.id == id) return &rule;
  }
  return nullptr;
}

std::size_t RuleCatalog::family_count() const {
  std::set<std::string> families;
  for (const AffixRule& rule : rules_) families.insert(rule.family);
  return families.size();
}

namespace {

AffixRule make_prefix(std::string id, std::string family, std::string orth,
                      std::string strip,
                      std::vector<std::string> derived_features,
                      std::vector<std::string> base_features) {
  AffixRule rule;
  rule.id = std::move(id);
  rule.family = std::move(family);
  rule.kind = AffixKind::prefix;
  rule.orth_pattern = std::move(orth);
  rule.tag_pattern = "^V";
  rule.strip = std::move(strip);
  rule.target_pos = Pos::verb;
  rule.base_pos = Pos::verb;
  rule.alternations = {Alternation::identity};
  rule.derived_features = std::move(derived_features);
  rule.base_features = std::move(base_features);
  return rule;
}

AffixRule make_suffix(std::string id, std::string family, std::string orth,
                      std::string tags, std::string strip, Pos target,
                      Pos base, std::set<std::string> base_flags,
                      std::vector<std::string> derived_features,
                      std::vector<std::string> base_features) {
  AffixRule rule;
  rule.id = std::move(id);
  rule.family = std::move(family);
  rule.kind = AffixKind::suffix;
  rule.orth_pattern = std::move(orth);
  rule.tag_pattern = std::move(tags);
  rule.strip = std::move(strip);
  rule.target_pos = target;
  rule.base_pos = base;
  rule.base_flags = std::move(base_flags);
  rule.alternations = all_alternations();
  rule.derived_features = std::move(derived_features);
  rule.base_features = std::move(base_features);
  return rule;
}

AffixRule make_ending(std::string id, std::string orth, std::string strip,
                      std::vector<std::string> derived_features) {
  AffixRule rule;
  rule.id = id;
  rule.family = std::move(id);
  rule.kind = AffixKind::ending;
  rule.orth_pattern = std::move(orth);
  rule.tag_pattern = "^V";
  rule.strip = std::move(strip);
  rule.target_pos = Pos::verb;
  rule.uses_lexicon = false;
  rule.derived_features = std::move(derived_features);
  return rule;
}

}  // namespace

RuleCatalog builtin_rules() {
  RuleCatalog catalog;
  catalog.add(make_prefix("re-", "re-", "^RE.*", "RE",
                          {"TELIC", "RSTATE-EQ-BASE-RSTATE", "ENTAILS-BASE",
                           "PRESUPS-RSTATE"},
                          {"TELIC"}));
  catalog.add(make_prefix("Vun-", "un-", "^UN.*", "UN",
                          {"CHANGE-OF-STATE", "NEG-OF-BASE-IS-RSTATE"},
                          {"CHANGE-OF-STATE"}));
  catalog.add(make_prefix("Vde-", "de-", "^DE.*", "DE",
                          {"CHANGE-OF-STATE", "NEG-OF-BASE-IS-RSTATE"},
                          {"CHANGE-OF-STATE"}));
  catalog.add(make_suffix("-Aize", "-ize", ".*IZ(E|ING|ES|ED)$", "^V", "IZE",
                          Pos::verb, Pos::adjective,
                          {"uninflected", "latinate"},
                          {"CHANGE-OF-STATE", "RSTATE-EQ-BASE"},
                          {"IZE-DEPENDENT"}));
  catalog.add(make_suffix("-Nize", "-ize", ".*IZ(E|ING|ES|ED)$", "^V", "IZE",
                          Pos::verb, Pos::noun, {}, {"CHANGE-OF-STATE"}, {}));
  catalog.add(make_suffix("-en", "-en", ".*EN(S|ED|ING)?$", "^V", "EN",
                          Pos::verb, Pos::adjective, {"uninflected"},
                          {"CHANGE-OF-STATE", "RSTATE-EQ-BASE"},
                          {"IZE-DEPENDENT"}));
  catalog.add(make_suffix("-Aify", "-ify", ".*IF(Y|YING|IES|IED)$", "^V",
                          "IFY", Pos::verb, Pos::adjective,
                          {"uninflected", "latinate"},
                          {"CHANGE-OF-STATE", "RSTATE-EQ-BASE"},
                          {"IZE-DEPENDENT"}));
  catalog.add(make_suffix("-Nify", "-ify", ".*IF(Y|YING|IES|IED)$", "^V",
                          "IFY", Pos::verb, Pos::noun, {}, {"CHANGE-OF-STATE"},
                          {}));
  catalog.add(make_ending("-le", "(.*LE(S|D)?|.*LING)$", "LE", {"ACTIVITY"}));
  catalog.add(make_ending("-ate", ".*AT(E|ING|ES|ED)$", "ATE",
                          {"CHANGE-OF-STATE"}));
  catalog.add(make_suffix("-ee", "-ee", ".*EES?$", "^N", "EE", Pos::noun,
                          Pos::verb, {},
                          {"PART-IN-E", "SENTIENT", "NON-VOLITIONAL"}, {}));
  catalog.add(make_suffix("-er", "-er", ".*ERS?$", "^N", "ER", Pos::noun,
                          Pos::verb, {}, {"PART-IN-E"}, {}));
  catalog.add(make_suffix("-ant", "-ant", ".*ANTS?$", "^N", "ANT", Pos::noun,
                          Pos::verb, {}, {"PART-IN-E"}, {}));
  catalog.add(make_suffix("-age", "-age", ".*AGES?$", "^N", "AGE", Pos::noun,
                          Pos::verb, {}, {"EVENT-AND-RESULTANT"}, {}));
  catalog.add(make_suffix("-ment", "-ment", ".*MENTS?$", "^N", "MENT",
                          Pos::noun, Pos::verb, {},
                          {"REFERS-TO-E-OR-PROP-OR-RESULT"}, {}));
  catalog.add(make_prefix("mis-", "mis-", "^MIS.*", "MIS",
                          {"INCORRECT-MANNER"}, {}));
  catalog.add(make_suffix("-able", "-able", ".*ABLE$", "^J", "ABLE",
                          Pos::adjective, Pos::verb, {},
                          {"ABLE-TO-BE-PERFORMED"}, {}));
  catalog.add(make_suffix("-ful", "-ful", ".*FUL$", "^J", "FUL",
                          Pos::adjective, Pos::noun, {}, {"LESS-ANTONYM"},
                          {"ABSTRACT"}));
  catalog.add(make_suffix("-less", "-less", ".*LESS$", "^J", "LESS",
                          Pos::adjective, Pos::noun, {}, {"FUL-ANTONYM"}, {}));
  catalog.add(make_suffix("-ness", "-ness", ".*NESS(ES)?$", "^N", "NESS",
                          Pos::noun, Pos::adjective, {"uninflected"},
                          {"STATE-OF-HAVING-PROP-OF-BASE"}, {}));
  return catalog;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    std::string::size_type pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void fail_at(int lineno, const std::string& message) {
  std::ostringstream msg;
  msg << "rules line " << lineno << ": " << message;
  throw Error(msg.str());
}

struct Block {
  int first_line = 0;
  // key -> (value, line number)
  std::map<std::string, std::pair<std::string, int>> fields;
};

AffixRule parse_block(const Block& block) {
  static const std::set<std::string> known_keys = {
      "id",    "family", "kind",         "pattern", "tags",
      "strip", "target", "base",         "flags",   "alternations",
      "lexicon", "derived", "base-features"};
  for (const auto& [key, value] : block.fields) {
    if (!known_keys.count(key)) fail_at(value.second, "unknown key '" + key + "'");
  }
  auto required = [&](const std::string& key) -> const std::string& {
    auto it = block.fields.find(key);
    if (it == block.fields.end())
      fail_at(block.first_line, "block missing '" + key + "'");
    return it->second.first;
  };
  auto optional = [&](const std::string& key) -> std::optional<std::string> {
    auto it = block.fields.find(key);
    if (it == block.fields.end()) return std::nullopt;
    return it->second.first;
  };
  auto line_of = [&](const std::string& key) {
    auto it = block.fields.find(key);
    return it == block.fields.end() ? block.first_line : it->second.second;
  };

  AffixRule rule;
  rule.id = required("id");
  rule.family = required("family");
  try {
    rule.kind = affix_kind_from_string(required("kind"));
  } catch (const Error& e) {
    fail_at(line_of("kind"), e.what());
  }
  rule.orth_pattern = required("pattern");
  rule.tag_pattern = required("tags");
  rule.strip = required("strip");
  try {
    rule.target_pos = pos_from_string(required("target"));
  } catch (const Error& e) {
    fail_at(line_of("target"), e.what());
  }

  if (auto lexicon = optional("lexicon")) {
    if (*lexicon == "yes") rule.uses_lexicon = true;
    else if (*lexicon == "no") rule.uses_lexicon = false;
    else fail_at(line_of("lexicon"), "expected 'yes' or 'no'");
  }
  if (rule.kind == AffixKind::ending) {
    if (rule.uses_lexicon)
      fail_at(block.first_line, "kind 'ending' requires 'lexicon: no'");
  } else if (!rule.uses_lexicon) {
    fail_at(block.first_line,
            "'lexicon: no' is only valid for kind 'ending'");
  }

  if (rule.uses_lexicon) {
    try {
      rule.base_pos = pos_from_string(required("base"));
    } catch (const Error& e) {
      fail_at(line_of("base"), e.what());
    }
    if (auto flags = optional("flags")) {
      for (const std::string& flag : split(*flags, ',')) {
        if (!flag.empty()) rule.base_flags.insert(flag);
      }
    }
    if (auto alts = optional("alternations")) {
      for (const std::string& name : split(*alts, ',')) {
        if (name.empty()) continue;
        try {
          rule.alternations.push_back(alternation_from_string(name));
        } catch (const Error& e) {
          fail_at(line_of("alternations"), e.what());
        }
      }
    }
    if (rule.alternations.empty())
      fail_at(block.first_line, "block missing 'alternations'");
  } else {
    if (optional("base") || optional("flags") || optional("alternations"))
      fail_at(block.first_line,
              "kind 'ending' takes no base, flags, or alternations");
  }

  auto parse_features = [&](const std::string& key,
                            std::vector<std::string>& into) {
    if (auto text = optional(key)) {
      for (const std::string& id : split(*text, ',')) {
        if (id.empty()) continue;
        if (!find_feature(id))
          fail_at(line_of(key), "unknown feature '" + id + "'");
        into.push_back(id);
      }
    }
  };
  parse_features("derived", rule.derived_features);
  parse_features("base-features", rule.base_features);
  if (rule.kind == AffixKind::ending && !rule.base_features.empty())
    fail_at(block.first_line, "kind 'ending' takes no base features");
  return rule;
}

}  // namespace

RuleCatalog load_rules(std::istream& in) {
  std::vector<Block> blocks;
  Block current;
  std::string line;
  int lineno = 0;
  auto flush = [&]() {
    if (!current.fields.empty()) blocks.push_back(std::move(current));
    current = Block{};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    std::string::size_type colon = line.find(": ");
    if (colon == std::string::npos)
      fail_at(lineno, "expected 'key: value'");
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 2);
    if (current.fields.empty()) current.first_line = lineno;
    if (current.fields.count(key))
      fail_at(lineno, "duplicate key '" + key + "'");
    current.fields[key] = {value, lineno};
  }
  flush();

  RuleCatalog catalog;
  for (const Block& block : blocks) {
    AffixRule rule = parse_block(block);
    if (catalog.find(rule.id))
      fail_at(block.first_line, "duplicate rule id '" + rule.id + "'");
    catalog.add(std::move(rule));
  }
  return catalog;
}

RuleCatalog load_rules_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rules file: " + path.string());
  return load_rules(in);
}

void serialize_rules(const RuleCatalog& catalog, std::ostream& out) {
  bool first = true;
  for (const AffixRule& rule : catalog.rules()) {
    if (!first) out << "\n";
    first = false;
    out << "id: " << rule.id << "\n";
    out << "family: " << rule.family << "\n";
    out << "kind: " << to_string(rule.kind) << "\n";
    out << "pattern: " << rule.orth_pattern << "\n";
    out << "tags: " << rule.tag_pattern << "\n";
    out << "strip: " << rule.strip << "\n";
    out << "target: " << to_string(rule.target_pos) << "\n";
    if (rule.base_pos) out << "base: " << to_string(*rule.base_pos) << "\n";
    if (!rule.base_flags.empty()) {
      out << "flags: ";
      bool f = true;
      for (const std::string& flag : rule.base_flags) {
        if (!f) out << ",";
        out << flag;
        f = false;
      }
      out << "\n";
    }
    if (!rule.alternations.empty()) {
      out << "alternations: ";
      bool f = true;
      for (Alternation alt : rule.alternations) {
        if (!f) out << ",";
        out << to_string(alt);
        f = false;
      }
      out << "\n";
    }
    if (!rule.uses_lexicon) out << "lexicon: no\n";
    if (!rule.derived_features.empty()) {
      out << "derived: ";
      bool f = true;
      for (const std::string& id : rule.derived_features) {
        if (!f) out << ",";
        out << id;
        f = false;
      }
      out << "\n";
    }
    if (!rule.base_features.empty()) {
      out << "base-features: ";
      bool f = true;
      for (const std::string& id : rule.base_features) {
        if (!f) out << ",";
        out << id;
        f = false;
      }
      out << "\n";
    }
  }
}

}  // namespace morpholex
