#include "morpholex/semantics.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace morpholex {

namespace {

Feature monadic(std::string id, bool has_axiom, std::string doc) {
  return Feature{std::move(id), FeatureArity::monadic, has_axiom,
                 std::move(doc)};
}

Feature dyadic(std::string id, bool has_axiom, std::string doc) {
  return Feature{std::move(id), FeatureArity::dyadic, has_axiom,
                 std::move(doc)};
}

}  // namespace

const std::vector<Feature>& feature_catalog() {
  static const std::vector<Feature> catalog = {
      dyadic("TELIC", false,
             "The event has a built-in culmination with a result state."),
      dyadic("CHANGE-OF-STATE", true,
             "The event ends in its result state, which did not hold when "
             "the event began."),
      dyadic("NEG-OF-BASE-IS-RSTATE", true,
             "The result state is exactly the negation of the base's result "
             "state."),
      dyadic("RSTATE-EQ-BASE-RSTATE", false,
             "The result state equals the result state of the base verb."),
      dyadic("RSTATE-EQ-BASE", true,
             "The result state is the property named by the base."),
      dyadic("ENTAILS-BASE", true,
             "Every event of the derived verb is also an event of its base."),
      dyadic("PRESUPS-RSTATE", true,
             "The event presupposes that its result state held at the "
             "beginning."),
      monadic("IZE-DEPENDENT", true,
              "Unless brought about by a derived event, the property does "
              "not change over episodes."),
      dyadic("ACTIVITY", false,
             "An ongoing activity without a built-in culmination."),
      monadic("PART-IN-E", false,
              "The referent is a participant in the base event."),
      monadic("SENTIENT", false, "The referent is sentient."),
      monadic("NON-VOLITIONAL", false,
              "The referent takes part in the base event without acting "
              "volitionally."),
      monadic("EVENT-AND-RESULTANT", false,
              "Refers either to the base event or to what results from it."),
      monadic("REFERS-TO-E-OR-PROP-OR-RESULT", false,
              "Refers to the base event, to a proposition about it, or to "
              "its result."),
      dyadic("INCORRECT-MANNER", false,
             "The base event is performed, but in an incorrect manner."),
      monadic("ABLE-TO-BE-PERFORMED", false,
              "The base event can be performed on the referent."),
      monadic("STATE-OF-HAVING-PROP-OF-BASE", false,
              "The state of having the property named by the base."),
      monadic("ABSTRACT", false, "The referent is abstract."),
      monadic("FUL-ANTONYM", false,
              "Antonym of the '-ful' adjective built on the same base."),
      monadic("LESS-ANTONYM", false,
              "Antonym of the '-less' adjective built on the same base."),
  };
  return catalog;
}

const Feature* find_feature(const std::string& id) {
  for (const Feature& feature : feature_catalog()) {
    if (feature.id == id) return &feature;
  }
  return nullptr;
}

namespace {

PredExpr p_bare() { return PredExpr{{}, "P"}; }
PredExpr p_rstate() { return PredExpr{{"rstate"}, "P"}; }
PredExpr p_base() { return PredExpr{{"base"}, "P"}; }
PredExpr p_rstate_base() { return PredExpr{{"rstate", "base"}, "P"}; }
PredExpr p_derived() { return PredExpr{{"derived"}, "P"}; }

QuantVar ind(const char* name) { return QuantVar{name, Sort::individual}; }
QuantVar ep(const char* name) { return QuantVar{name, Sort::episode}; }

FormulaPtr change_of_state_axiom() {
  // all x,y,e [P(x,y)**e -> [exists e1: [at-end-of(e1,e) & cause(e,e1)]
  // [rstate(P)(y)**e1] & exists e2: at-beginning-of(e2,e)
  // [not rstate(P)(y)**e2]]]
  FormulaPtr end_part = mk_exists(
      {ep("e1")}, {mk_rel("at-end-of", "e1", "e"), mk_rel("cause", "e", "e1")},
      mk_pred(p_rstate(), {"y"}, "e1"));
  FormulaPtr begin_part =
      mk_exists({ep("e2")}, {mk_rel("at-beginning-of", "e2", "e")},
                mk_not(mk_pred(p_rstate(), {"y"}, "e2")));
  return mk_forall({ind("x"), ind("y"), ep("e")},
                   mk_implies(mk_pred(p_bare(), {"x", "y"}, "e"),
                              mk_and({end_part, begin_part})));
}

FormulaPtr rstate_eq_base_axiom() {
  return mk_forall(
      {ind("y"), ep("e")},
      mk_and({mk_implies(mk_pred(p_rstate(), {"y"}, "e"),
                         mk_pred(p_base(), {"y"}, "e")),
              mk_implies(mk_pred(p_base(), {"y"}, "e"),
                         mk_pred(p_rstate(), {"y"}, "e"))}));
}

FormulaPtr neg_of_base_axiom() {
  return mk_forall(
      {ind("y"), ep("e")},
      mk_and({mk_implies(mk_pred(p_rstate(), {"y"}, "e"),
                         mk_not(mk_pred(p_rstate_base(), {"y"}, "e"))),
              mk_implies(mk_not(mk_pred(p_rstate_base(), {"y"}, "e")),
                         mk_pred(p_rstate(), {"y"}, "e"))}));
}

FormulaPtr entails_base_axiom() {
  return mk_forall({ind("x"), ind("y"), ep("e")},
                   mk_implies(mk_pred(p_bare(), {"x", "y"}, "e"),
                              mk_pred(p_base(), {"x", "y"}, "e")));
}

FormulaPtr presups_rstate_axiom() {
  return mk_forall(
      {ind("x"), ind("y"), ep("e")},
      mk_implies(mk_pred(p_bare(), {"x", "y"}, "e"),
                 mk_exists({ep("e2")},
                           {mk_rel("at-beginning-of", "e2", "e")},
                           mk_pred(p_rstate(), {"y"}, "e2"))));
}

FormulaPtr ize_dependent_axiom() {
  // all y,e [P(y)**e -> [not [exists x exists e1 [derived(P)(x,y)**e1 &
  // at-end-of(e,e1)]] -> all e2 [P(y)**e2]]]
  FormulaPtr brought_about =
      mk_exists({ind("x"), ep("e1")}, {},
                mk_and({mk_pred(p_derived(), {"x", "y"}, "e1"),
                        mk_rel("at-end-of", "e", "e1")}));
  FormulaPtr stable_part =
      mk_implies(mk_not(std::move(brought_about)),
                 mk_forall({ep("e2")}, mk_pred(p_bare(), {"y"}, "e2")));
  return mk_forall({ind("y"), ep("e")},
                   mk_implies(mk_pred(p_bare(), {"y"}, "e"),
                              std::move(stable_part)));
}

}  // namespace

FormulaPtr axiom_template(const std::string& feature_id) {
  const Feature* feature = find_feature(feature_id);
  if (!feature) throw Error("unknown feature '" + feature_id + "'");
  if (!feature->has_axiom)
    throw Error("feature '" + feature_id + "' has no checkable axiom");
  if (feature_id == "CHANGE-OF-STATE") return change_of_state_axiom();
  if (feature_id == "RSTATE-EQ-BASE") return rstate_eq_base_axiom();
  if (feature_id == "NEG-OF-BASE-IS-RSTATE") return neg_of_base_axiom();
  if (feature_id == "ENTAILS-BASE") return entails_base_axiom();
  if (feature_id == "PRESUPS-RSTATE") return presups_rstate_axiom();
  if (feature_id == "IZE-DEPENDENT") return ize_dependent_axiom();
  throw Error("feature '" + feature_id + "' has no checkable axiom");
}

FormulaPtr instantiate_axiom(const std::string& feature_id,
                             const std::string& predicate) {
  return instantiate(axiom_template(feature_id), predicate);
}

std::string to_string(Role role) {
  switch (role) {
    case Role::derived: return "derived";
    case Role::base: return "base";
  }
  throw Error("invalid role value");
}

Role role_from_string(const std::string& text) {
  if (text == "derived") return Role::derived;
  if (text == "base") return Role::base;
  throw Error("unknown role '" + text + "'");
}

void AssignmentStore::add_evidence(const std::string& lemma, Pos pos,
                                   Role role, const std::string& feature,
                                   const std::string& affix,
                                   const std::string& surface,
                                   std::size_t count) {
  auto& surfaces = items_[Key{lemma, pos, role, feature}][affix];
  surfaces.try_emplace(surface, count);
}

void AssignmentStore::remove(const std::string& lemma, Pos pos, Role role,
                             const std::string& feature,
                             const std::string& affix) {
  auto it = items_.find(Key{lemma, pos, role, feature});
  if (it == items_.end()) return;
  it->second.erase(affix);
  if (it->second.empty()) items_.erase(it);
}

bool AssignmentStore::has(const std::string& lemma, Pos pos, Role role,
                          const std::string& feature,
                          const std::string& affix) const {
  auto it = items_.find(Key{lemma, pos, role, feature});
  if (it == items_.end()) return false;
  return it->second.count(affix) > 0;
}

bool AssignmentStore::lemma_attested(const std::string& lemma, Role role,
                                     const std::string& affix) const {
  for (const auto& [key, by_affix] : items_) {
    if (key.lemma != lemma || key.role != role) continue;
    if (by_affix.count(affix)) return true;
  }
  return false;
}

namespace {

std::string serialize_row(const StoreRow& row) {
  std::ostringstream line;
  line << row.lemma << "\t" << to_string(row.pos) << "\t"
       << to_string(row.role) << "\t" << row.feature << "\t" << row.affix
       << "\t";
  for (std::size_t i = 0; i < row.evidence.size(); ++i) {
    if (i) line << ",";
    line << row.evidence[i];
  }
  line << "\t" << row.tokens;
  return line.str();
}

}  // namespace

std::vector<StoreRow> AssignmentStore::rows() const {
  std::vector<StoreRow> out;
  for (const auto& [key, by_affix] : items_) {
    for (const auto& [affix, surfaces] : by_affix) {
      StoreRow row;
      row.lemma = key.lemma;
      row.pos = key.pos;
      row.role = key.role;
      row.feature = key.feature;
      row.affix = affix;
      for (const auto& [surface, count] : surfaces) {
        row.evidence.push_back(surface);
        row.tokens += count;
      }
      out.push_back(std::move(row));
    }
  }
  std::sort(out.begin(), out.end(), [](const StoreRow& a, const StoreRow& b) {
    return serialize_row(a) < serialize_row(b);
  });
  return out;
}

std::size_t AssignmentStore::row_count() const {
  std::size_t n = 0;
  for (const auto& [key, by_affix] : items_) n += by_affix.size();
  return n;
}

bool AssignmentStore::empty() const { return items_.empty(); }

void AssignmentStore::serialize(std::ostream& out) const {
  for (const StoreRow& row : rows()) out << serialize_row(row) << "\n";
}

AssignmentStore AssignmentStore::from_stream(std::istream& in) {
  AssignmentStore store;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::string::size_type start = 0;
    while (true) {
      std::string::size_type tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() != 7) {
      std::ostringstream msg;
      msg << "store line " << lineno << ": expected 7 columns, got "
          << cols.size();
      throw Error(msg.str());
    }
    std::size_t tokens = 0;
    try {
      tokens = std::stoull(cols[6]);
    } catch (...) {
      std::ostringstream msg;
      msg << "store line " << lineno << ": token count must be an integer";
      throw Error(msg.str());
    }
    Pos pos;
    Role role;
    try {
      pos = pos_from_string(cols[1]);
      role = role_from_string(cols[2]);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "store line " << lineno << ": " << e.what();
      throw Error(msg.str());
    }
    std::vector<std::string> surfaces;
    std::string::size_type s = 0;
    while (true) {
      std::string::size_type comma = cols[5].find(',', s);
      if (comma == std::string::npos) {
        surfaces.push_back(cols[5].substr(s));
        break;
      }
      surfaces.push_back(cols[5].substr(s, comma - s));
      s = comma + 1;
    }
    if (surfaces.empty() || surfaces.front().empty()) {
      std::ostringstream msg;
      msg << "store line " << lineno << ": empty evidence";
      throw Error(msg.str());
    }
    // Per-surface counts are not serialized; carry the total on the first
    // surface so the row total survives a round trip.
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
      store.add_evidence(cols[0], pos, role, cols[3], cols[4], surfaces[i],
                         i == 0 ? tokens : 0);
    }
  }
  return store;
}

AssignmentStore AssignmentStore::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open store file: " + path.string());
  return from_stream(in);
}

void AssignmentStore::merge(const AssignmentStore& other) {
  for (const auto& [key, by_affix] : other.items_) {
    for (const auto& [affix, surfaces] : by_affix) {
      for (const auto& [surface, count] : surfaces) {
        items_[key][affix].try_emplace(surface, count);
      }
    }
  }
}

void assign_features(const Derivation& tree, const std::string& surface,
                     std::size_t count, AssignmentStore& store) {
  if (!tree.rule) return;
  const AffixRule& rule = *tree.rule;
  for (const std::string& feature : rule.derived_features) {
    store.add_evidence(tree.lemma, rule.target_pos, Role::derived, feature,
                       rule.id, surface, count);
  }
  if (tree.base) {
    for (const std::string& feature : rule.base_features) {
      store.add_evidence(tree.base->lemma, tree.base->pos, Role::base,
                         feature, rule.id, surface, count);
    }
    assign_features(*tree.base, surface, count, store);
  }
}

void link_antonyms(AssignmentStore& store) {
  struct Removal {
    std::string lemma;
    Pos pos;
    Role role;
    std::string feature;
    std::string affix;
  };
  std::set<std::string> derived_lemmas;
  for (const StoreRow& row : store.rows()) {
    if (row.role == Role::derived) derived_lemmas.insert(row.lemma);
  }
  auto ends_with = [](const std::string& s, const std::string& tail) {
    return s.size() > tail.size() &&
           s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
  };
  std::vector<Removal> removals;
  for (const StoreRow& row : store.rows()) {
    std::string counterpart;
    if (row.feature == "LESS-ANTONYM") {
      if (ends_with(row.lemma, "ful"))
        counterpart = row.lemma.substr(0, row.lemma.size() - 3) + "less";
    } else if (row.feature == "FUL-ANTONYM") {
      if (ends_with(row.lemma, "less"))
        counterpart = row.lemma.substr(0, row.lemma.size() - 4) + "ful";
    } else {
      continue;
    }
    if (counterpart.empty() || !derived_lemmas.count(counterpart)) {
      removals.push_back(
          Removal{row.lemma, row.pos, row.role, row.feature, row.affix});
    }
  }
  for (const Removal& r : removals) {
    store.remove(r.lemma, r.pos, r.role, r.feature, r.affix);
  }
}

}  // namespace morpholex
