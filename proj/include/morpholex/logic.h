#ifndef MORPHOLEX_LOGIC_H
#define MORPHOLEX_LOGIC_H

#include <array>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "morpholex/error.h"

namespace morpholex {

enum class Sort { individual, episode };

// A predicate expression: a base predicate symbol under zero or more functor
// applications, outermost first; rstate(base(P)) has functors {rstate, base}
// and base "P".
struct PredExpr {
  std::vector<std::string> functors;
  std::string base;

  std::string render() const;
  bool operator==(const PredExpr&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// P(args)**episode
struct PredAtom {
  PredExpr pred;
  std::vector<std::string> args;  // variable names
  std::string episode;            // variable name
};

// relation(left, right) over episodes
struct RelAtom {
  std::string relation;
  std::string left;
  std::string right;
};

struct NotNode {
  FormulaPtr operand;
};

struct AndNode {
  std::vector<FormulaPtr> parts;  // at least two
};

struct ImpliesNode {
  FormulaPtr antecedent;
  FormulaPtr consequent;
};

struct QuantVar {
  std::string name;
  Sort sort = Sort::individual;
};

// all v1,v2 [body]
struct ForallNode {
  std::vector<QuantVar> vars;
  FormulaPtr body;
};

// Guarded single-variable form "exists v: guard [body]" or bare
// "exists v1 exists v2 [body]" when the guard is empty.
struct ExistsNode {
  std::vector<QuantVar> vars;
  std::vector<FormulaPtr> guard;  // guard atoms, conjoined
  FormulaPtr body;
};

struct Formula {
  std::variant<PredAtom, RelAtom, NotNode, AndNode, ImpliesNode, ForallNode,
               ExistsNode>
      node;
};

// Construction helpers.
FormulaPtr mk_pred(PredExpr pred, std::vector<std::string> args,
                   std::string episode);
FormulaPtr mk_rel(std::string relation, std::string left, std::string right);
FormulaPtr mk_not(FormulaPtr operand);
FormulaPtr mk_and(std::vector<FormulaPtr> parts);
FormulaPtr mk_implies(FormulaPtr antecedent, FormulaPtr consequent);
FormulaPtr mk_forall(std::vector<QuantVar> vars, FormulaPtr body);
FormulaPtr mk_exists(std::vector<QuantVar> vars, std::vector<FormulaPtr> guard,
                     FormulaPtr body);

// Canonical ASCII rendering; stable across runs and used verbatim in
// output and failure reports.
std::string render(const Formula& formula);
std::string render(const FormulaPtr& formula);

// Replaces the placeholder base predicate "P" with `predicate` throughout.
// Idempotent once no placeholder remains.
FormulaPtr instantiate(const FormulaPtr& formula, const std::string& predicate);

// A finite episodic model: episodes, individuals, predicates with arities,
// functor maps between predicates, episode-ordering relations, and the
// closed-world set of facts.
class Model {
 public:
  struct Fact {
    std::string pred;
    std::vector<std::string> args;
    std::string episode;
    auto operator<=>(const Fact&) const = default;
  };

  static Model from_stream(std::istream& in);
  static Model from_file(const std::filesystem::path& path);

  std::vector<std::string> episodes;
  std::vector<std::string> individuals;
  std::map<std::string, int> predicates;  // name -> arity
  // functor ("rstate" | "base" | "derived") -> pred -> pred
  std::map<std::string, std::map<std::string, std::string>> maps;
  std::set<std::array<std::string, 3>> relations;  // {relation, left, right}
  std::set<Fact> facts;

  bool holds_fact(const std::string& pred,
                  const std::vector<std::string>& args,
                  const std::string& episode) const;
  bool holds_relation(const std::string& relation, const std::string& left,
                      const std::string& right) const;

  // Resolves a predicate expression through the functor maps, innermost
  // application first.  Throws Error naming the unresolvable application.
  std::string resolve(const PredExpr& expr) const;
};

// Outcome of checking a closed formula against a model.  On failure,
// `witness` binds the quantified variables on the failing path and
// `failed_at` is the rendered subformula where the failure is attributed.
struct Verdict {
  bool holds = true;
  std::map<std::string, std::string> witness;
  std::string failed_at;
};

// Evaluates a closed formula over the model's finite domains.  Symbols are
// interpreted lazily: only atoms actually evaluated need their predicates
// declared, so a universally quantified axiom holds vacuously on an empty
// model.  Evaluating an atom whose predicate is undeclared, unresolvable, or
// of the wrong arity throws Error naming the symbol.
Verdict check_axiom(const Model& model, const FormulaPtr& formula);

}  // namespace morpholex

#endif  // MORPHOLEX_LOGIC_H
