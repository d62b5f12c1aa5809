#ifndef MORPHOLEX_SEMANTICS_H
#define MORPHOLEX_SEMANTICS_H

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "morpholex/analyzer.h"
#include "morpholex/error.h"
#include "morpholex/lexicon.h"
#include "morpholex/logic.h"

namespace morpholex {

enum class FeatureArity { monadic, dyadic };

// A lexical-semantic feature.  Axiomatized features have a checkable axiom
// template; the rest are documented in prose and marked uncheckable.
struct Feature {
  std::string id;
  FeatureArity arity = FeatureArity::monadic;
  bool has_axiom = false;
  std::string doc;
};

// The fixed feature inventory, in catalog order.
const std::vector<Feature>& feature_catalog();
const Feature* find_feature(const std::string& id);

// The axiom template for an axiomatized feature, with placeholder base
// predicate "P".  Throws Error for unknown or unaxiomatized features.
FormulaPtr axiom_template(const std::string& feature_id);
// The template with "P" replaced by `predicate`.
FormulaPtr instantiate_axiom(const std::string& feature_id,
                             const std::string& predicate);

// Whether a feature row describes the derived word or its base.
enum class Role { derived, base };
std::string to_string(Role role);
Role role_from_string(const std::string& text);

// One serialized assignment: a (lemma, pos, role, feature) claim backed by
// one affix, with the surface types that evidenced it and their summed
// token count.
struct StoreRow {
  std::string lemma;
  Pos pos = Pos::other;
  Role role = Role::derived;
  std::string feature;
  std::string affix;
  std::vector<std::string> evidence;  // sorted surface types
  std::size_t tokens = 0;
};

// Accumulated feature assignments keyed by (lemma, pos, role, feature), with
// per-affix evidence.  Merging is associative and commutative; re-adding an
// already seen (key, affix, surface) is a no-op.
class AssignmentStore {
 public:
  void add_evidence(const std::string& lemma, Pos pos, Role role,
                    const std::string& feature, const std::string& affix,
                    const std::string& surface, std::size_t count);

  void remove(const std::string& lemma, Pos pos, Role role,
              const std::string& feature, const std::string& affix);

  bool has(const std::string& lemma, Pos pos, Role role,
           const std::string& feature, const std::string& affix) const;

  // True when some row claims (lemma, role) through `affix`.
  bool lemma_attested(const std::string& lemma, Role role,
                      const std::string& affix) const;

  // One row per (key, affix), sorted by serialized line bytes.
  std::vector<StoreRow> rows() const;
  std::size_t row_count() const;
  bool empty() const;

  // Tab-separated rows, no header; loading the output reproduces the same
  // store and the same bytes.
  void serialize(std::ostream& out) const;
  static AssignmentStore from_stream(std::istream& in);
  static AssignmentStore from_file(const std::filesystem::path& path);

  void merge(const AssignmentStore& other);

 private:
  struct Key {
    std::string lemma;
    Pos pos;
    Role role;
    std::string feature;
    auto operator<=>(const Key&) const = default;
  };
  // key -> affix -> surface -> token count
  std::map<Key, std::map<std::string, std::map<std::string, std::size_t>>>
      items_;
};

// Records every feature contribution of every rule node in the tree:
// derived features on the node's own lemma, base features on its immediate
// base's lemma.  `surface` and `count` identify the corpus evidence.
void assign_features(const Derivation& tree, const std::string& surface,
                     std::size_t count, AssignmentStore& store);

// Keeps an antonym-pairing row only when the opposite-suffix counterpart
// lemma is itself attested in the store; removes the rest.
void link_antonyms(AssignmentStore& store);

}  // namespace morpholex

#endif  // MORPHOLEX_SEMANTICS_H
