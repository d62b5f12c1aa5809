#include "morpholex/logic.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace morpholex {

std::string PredExpr::render() const {
  std::string out = base;
  for (auto it = functors.rbegin(); it != functors.rend(); ++it)
    out = *it + "(" + out + ")";
  return out;
}

FormulaPtr mk_pred(PredExpr pred, std::vector<std::string> args,
                   std::string episode) {
  return std::make_shared<Formula>(
      Formula{PredAtom{std::move(pred), std::move(args), std::move(episode)}});
}

FormulaPtr mk_rel(std::string relation, std::string left, std::string right) {
  return std::make_shared<Formula>(
      Formula{RelAtom{std::move(relation), std::move(left), std::move(right)}});
}

FormulaPtr mk_not(FormulaPtr operand) {
  return std::make_shared<Formula>(Formula{NotNode{std::move(operand)}});
}

FormulaPtr mk_and(std::vector<FormulaPtr> parts) {
  if (parts.size() < 2) throw Error("conjunction needs at least two parts");
  return std::make_shared<Formula>(Formula{AndNode{std::move(parts)}});
}

FormulaPtr mk_implies(FormulaPtr antecedent, FormulaPtr consequent) {
  return std::make_shared<Formula>(
      Formula{ImpliesNode{std::move(antecedent), std::move(consequent)}});
}

FormulaPtr mk_forall(std::vector<QuantVar> vars, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{ForallNode{std::move(vars), std::move(body)}});
}

FormulaPtr mk_exists(std::vector<QuantVar> vars, std::vector<FormulaPtr> guard,
                     FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{ExistsNode{std::move(vars), std::move(guard), std::move(body)}});
}

namespace {

bool is_atom(const Formula& f) {
  return std::holds_alternative<PredAtom>(f.node) ||
         std::holds_alternative<RelAtom>(f.node);
}

bool is_binary(const Formula& f) {
  return std::holds_alternative<AndNode>(f.node) ||
         std::holds_alternative<ImpliesNode>(f.node);
}

// Binary connectives are bracketed when they appear as operands; atoms,
// negations, and quantified subformulas stand bare.
std::string render_operand(const FormulaPtr& f) {
  std::string text = render(*f);
  if (is_binary(*f)) return "[" + text + "]";
  return text;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string render(const Formula& formula) {
  struct Renderer {
    std::string operator()(const PredAtom& atom) const {
      return atom.pred.render() + "(" + join(atom.args, ",") + ")**" +
             atom.episode;
    }
    std::string operator()(const RelAtom& atom) const {
      return atom.relation + "(" + atom.left + "," + atom.right + ")";
    }
    std::string operator()(const NotNode& node) const {
      if (is_atom(*node.operand)) return "not " + render(*node.operand);
      return "not [" + render(*node.operand) + "]";
    }
    std::string operator()(const AndNode& node) const {
      std::vector<std::string> parts;
      parts.reserve(node.parts.size());
      for (const FormulaPtr& part : node.parts)
        parts.push_back(render_operand(part));
      return join(parts, " & ");
    }
    std::string operator()(const ImpliesNode& node) const {
      return render_operand(node.antecedent) + " -> " +
             render_operand(node.consequent);
    }
    std::string operator()(const ForallNode& node) const {
      std::vector<std::string> names;
      names.reserve(node.vars.size());
      for (const QuantVar& var : node.vars) names.push_back(var.name);
      return "all " + join(names, ",") + " [" + render(*node.body) + "]";
    }
    std::string operator()(const ExistsNode& node) const {
      std::string out;
      if (node.guard.empty()) {
        for (const QuantVar& var : node.vars) out += "exists " + var.name + " ";
      } else {
        std::vector<std::string> names;
        for (const QuantVar& var : node.vars) names.push_back(var.name);
        out = "exists " + join(names, ",") + ": ";
        if (node.guard.size() == 1) {
          out += render(*node.guard.front()) + " ";
        } else {
          std::vector<std::string> atoms;
          for (const FormulaPtr& g : node.guard) atoms.push_back(render(*g));
          out += "[" + join(atoms, " & ") + "] ";
        }
      }
      return out + "[" + render(*node.body) + "]";
    }
  };
  return std::visit(Renderer{}, formula.node);
}

std::string render(const FormulaPtr& formula) { return render(*formula); }

FormulaPtr instantiate(const FormulaPtr& formula,
                       const std::string& predicate) {
  struct Walker {
    const std::string& predicate;
    FormulaPtr operator()(const PredAtom& atom) const {
      PredAtom copy = atom;
      if (copy.pred.base == "P") copy.pred.base = predicate;
      return std::make_shared<Formula>(Formula{std::move(copy)});
    }
    FormulaPtr operator()(const RelAtom& atom) const {
      return std::make_shared<Formula>(Formula{atom});
    }
    FormulaPtr operator()(const NotNode& node) const {
      return mk_not(instantiate(node.operand, predicate));
    }
    FormulaPtr operator()(const AndNode& node) const {
      std::vector<FormulaPtr> parts;
      for (const FormulaPtr& part : node.parts)
        parts.push_back(instantiate(part, predicate));
      return mk_and(std::move(parts));
    }
    FormulaPtr operator()(const ImpliesNode& node) const {
      return mk_implies(instantiate(node.antecedent, predicate),
                        instantiate(node.consequent, predicate));
    }
    FormulaPtr operator()(const ForallNode& node) const {
      return mk_forall(node.vars, instantiate(node.body, predicate));
    }
    FormulaPtr operator()(const ExistsNode& node) const {
      std::vector<FormulaPtr> guard;
      for (const FormulaPtr& g : node.guard)
        guard.push_back(instantiate(g, predicate));
      return mk_exists(node.vars, std::move(guard),
                       instantiate(node.body, predicate));
    }
  };
  return std::visit(Walker{predicate}, formula->node);
}

namespace {

[[noreturn]] void model_fail(int lineno, const std::string& message) {
  std::ostringstream msg;
  msg << "model line " << lineno << ": " << message;
  throw Error(msg.str());
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> parts;
  std::string word;
  while (in >> word) parts.push_back(word);
  return parts;
}

const std::set<std::string>& functor_inventory() {
  static const std::set<std::string> inventory = {"rstate", "base", "derived"};
  return inventory;
}

const std::set<std::string>& relation_inventory() {
  static const std::set<std::string> inventory = {"at-end-of",
                                                  "at-beginning-of", "cause"};
  return inventory;
}

}  // namespace

Model Model::from_stream(std::istream& in) {
  Model model;
  std::string line;
  int lineno = 0;
  auto has = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string::size_type hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> words = split_ws(line);
    if (words.empty()) continue;
    const std::string& head = words[0];
    if (head == "episode") {
      if (words.size() != 2) model_fail(lineno, "expected 'episode NAME'");
      if (has(model.episodes, words[1]))
        model_fail(lineno, "duplicate episode '" + words[1] + "'");
      model.episodes.push_back(words[1]);
    } else if (head == "individual") {
      if (words.size() != 2) model_fail(lineno, "expected 'individual NAME'");
      if (has(model.individuals, words[1]))
        model_fail(lineno, "duplicate individual '" + words[1] + "'");
      model.individuals.push_back(words[1]);
    } else if (head == "pred") {
      if (words.size() != 3) model_fail(lineno, "expected 'pred NAME ARITY'");
      int arity = 0;
      try {
        arity = std::stoi(words[2]);
      } catch (...) {
        model_fail(lineno, "arity must be an integer");
      }
      if (arity < 1) model_fail(lineno, "arity must be positive");
      if (model.predicates.count(words[1]))
        model_fail(lineno, "duplicate predicate '" + words[1] + "'");
      model.predicates[words[1]] = arity;
    } else if (head == "map") {
      if (words.size() != 4) model_fail(lineno, "expected 'map FUNCTOR P Q'");
      if (!functor_inventory().count(words[1]))
        model_fail(lineno, "unknown functor '" + words[1] + "'");
      if (!model.predicates.count(words[2]))
        model_fail(lineno, "undeclared predicate '" + words[2] + "'");
      if (!model.predicates.count(words[3]))
        model_fail(lineno, "undeclared predicate '" + words[3] + "'");
      model.maps[words[1]][words[2]] = words[3];
    } else if (head == "rel") {
      if (words.size() != 4) model_fail(lineno, "expected 'rel NAME E1 E2'");
      if (!relation_inventory().count(words[1]))
        model_fail(lineno, "unknown relation '" + words[1] + "'");
      for (int k = 2; k <= 3; ++k) {
        if (!has(model.episodes, words[k]))
          model_fail(lineno, "undeclared episode '" + words[k] + "'");
      }
      model.relations.insert({words[1], words[2], words[3]});
    } else if (head == "holds") {
      // holds NAME(a,b) @ e
      std::string rest;
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (i > 1) rest += " ";
        rest += words[i];
      }
      std::string::size_type open = rest.find('(');
      std::string::size_type close = rest.find(')');
      std::string::size_type at = rest.find('@');
      if (open == std::string::npos || close == std::string::npos ||
          at == std::string::npos || close < open || at < close)
        model_fail(lineno, "expected 'holds NAME(ARGS) @ EPISODE'");
      Fact fact;
      fact.pred = rest.substr(0, open);
      std::string args_text = rest.substr(open + 1, close - open - 1);
      std::istringstream args_in(args_text);
      std::string arg;
      while (std::getline(args_in, arg, ',')) {
        std::string::size_type a = arg.find_first_not_of(" \t");
        std::string::size_type b = arg.find_last_not_of(" \t");
        if (a == std::string::npos)
          model_fail(lineno, "empty argument in fact");
        fact.args.push_back(arg.substr(a, b - a + 1));
      }
      std::string episode = rest.substr(at + 1);
      std::string::size_type a = episode.find_first_not_of(" \t");
      std::string::size_type b = episode.find_last_not_of(" \t");
      if (a == std::string::npos) model_fail(lineno, "missing episode");
      fact.episode = episode.substr(a, b - a + 1);
      auto pit = model.predicates.find(fact.pred);
      if (pit == model.predicates.end())
        model_fail(lineno, "undeclared predicate '" + fact.pred + "'");
      if (static_cast<int>(fact.args.size()) != pit->second)
        model_fail(lineno, "arity mismatch for '" + fact.pred + "'");
      for (const std::string& name : fact.args) {
        if (!has(model.individuals, name))
          model_fail(lineno, "undeclared individual '" + name + "'");
      }
      if (!has(model.episodes, fact.episode))
        model_fail(lineno, "undeclared episode '" + fact.episode + "'");
      model.facts.insert(std::move(fact));
    } else {
      model_fail(lineno, "unknown directive '" + head + "'");
    }
  }
  return model;
}

Model Model::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path.string());
  return from_stream(in);
}

bool Model::holds_fact(const std::string& pred,
                       const std::vector<std::string>& args,
                       const std::string& episode) const {
  return facts.count(Fact{pred, args, episode}) > 0;
}

bool Model::holds_relation(const std::string& relation,
                           const std::string& left,
                           const std::string& right) const {
  return relations.count({relation, left, right}) > 0;
}

std::string Model::resolve(const PredExpr& expr) const {
  std::string name = expr.base;
  for (auto it = expr.functors.rbegin(); it != expr.functors.rend(); ++it) {
    auto fit = maps.find(*it);
    const std::string application = *it + "(" + name + ")";
    if (fit == maps.end())
      throw Error("uninterpreted symbol " + application);
    auto mit = fit->second.find(name);
    if (mit == fit->second.end())
      throw Error("uninterpreted symbol " + application);
    name = mit->second;
  }
  return name;
}

namespace {

using Env = std::map<std::string, std::string>;

const std::vector<std::string>& domain_of(const Model& model, Sort sort) {
  return sort == Sort::episode ? model.episodes : model.individuals;
}

bool eval_formula(const Model& model, const Formula& f, Env& env);

// Enumerates assignments for vars[i..] in domain order; returns true when
// some suffix assignment makes pred true.
bool any_assignment(const Model& model, const std::vector<QuantVar>& vars,
                    std::size_t i, Env& env,
                    const std::function<bool(Env&)>& pred) {
  if (i == vars.size()) return pred(env);
  for (const std::string& value : domain_of(model, vars[i].sort)) {
    env[vars[i].name] = value;
    if (any_assignment(model, vars, i + 1, env, pred)) {
      env.erase(vars[i].name);
      return true;
    }
  }
  env.erase(vars[i].name);
  return false;
}

std::string lookup_var(const Env& env, const std::string& name) {
  auto it = env.find(name);
  if (it == env.end())
    throw Error("unbound variable '" + name + "' in axiom");
  return it->second;
}

bool eval_atom(const Model& model, const PredAtom& atom, Env& env) {
  const std::string name = model.resolve(atom.pred);
  auto pit = model.predicates.find(name);
  if (pit == model.predicates.end())
    throw Error("uninterpreted symbol " + name);
  if (pit->second != static_cast<int>(atom.args.size())) {
    std::ostringstream msg;
    msg << "arity mismatch for " << name << ": declared " << pit->second
        << ", used with " << atom.args.size();
    throw Error(msg.str());
  }
  std::vector<std::string> args;
  args.reserve(atom.args.size());
  for (const std::string& var : atom.args)
    args.push_back(lookup_var(env, var));
  return model.holds_fact(name, args, lookup_var(env, atom.episode));
}

bool eval_formula(const Model& model, const Formula& f, Env& env) {
  struct Eval {
    const Model& model;
    Env& env;
    bool operator()(const PredAtom& atom) const {
      return eval_atom(model, atom, env);
    }
    bool operator()(const RelAtom& atom) const {
      return model.holds_relation(atom.relation, lookup_var(env, atom.left),
                                  lookup_var(env, atom.right));
    }
    bool operator()(const NotNode& node) const {
      return !eval_formula(model, *node.operand, env);
    }
    bool operator()(const AndNode& node) const {
      for (const FormulaPtr& part : node.parts) {
        if (!eval_formula(model, *part, env)) return false;
      }
      return true;
    }
    bool operator()(const ImpliesNode& node) const {
      if (!eval_formula(model, *node.antecedent, env)) return true;
      return eval_formula(model, *node.consequent, env);
    }
    bool operator()(const ForallNode& node) const {
      return !any_assignment(model, node.vars, 0, env, [&](Env& e) {
        return !eval_formula(model, *node.body, e);
      });
    }
    bool operator()(const ExistsNode& node) const {
      return any_assignment(model, node.vars, 0, env, [&](Env& e) {
        for (const FormulaPtr& g : node.guard) {
          if (!eval_formula(model, *g, e)) return false;
        }
        return eval_formula(model, *node.body, e);
      });
    }
  };
  return std::visit(Eval{model, env}, f.node);
}

struct Failure {
  Env witness;
  std::string failed_at;
};

// Precondition: eval_formula(model, f, env) == false.  Walks to the
// subformula the failure is attributed to, collecting quantifier bindings
// along the way.
Failure explain_failure(const Model& model, const Formula& f, Env& env) {
  if (const auto* node = std::get_if<ForallNode>(&f.node)) {
    Failure inner;
    bool found = any_assignment(model, node->vars, 0, env, [&](Env& e) {
      if (eval_formula(model, *node->body, e)) return false;
      inner = explain_failure(model, *node->body, e);
      for (const QuantVar& var : node->vars)
        inner.witness.emplace(var.name, e.at(var.name));
      return true;
    });
    if (!found) throw Error("internal: failing formula has no failing case");
    return inner;
  }
  if (const auto* node = std::get_if<ImpliesNode>(&f.node)) {
    return explain_failure(model, *node->consequent, env);
  }
  if (const auto* node = std::get_if<AndNode>(&f.node)) {
    for (const FormulaPtr& part : node->parts) {
      if (!eval_formula(model, *part, env))
        return explain_failure(model, *part, env);
    }
    throw Error("internal: failing conjunction has no failing part");
  }
  if (const auto* node = std::get_if<ExistsNode>(&f.node)) {
    // The failure is attributed to the exists itself; when a single guarded
    // variable has a guard-satisfying value, bind it as the near-miss.
    Failure failure;
    failure.failed_at = render(f);
    if (node->vars.size() == 1 && !node->guard.empty()) {
      const QuantVar& var = node->vars.front();
      for (const std::string& value : domain_of(model, var.sort)) {
        env[var.name] = value;
        bool guard_ok = true;
        for (const FormulaPtr& g : node->guard) {
          if (!eval_formula(model, *g, env)) {
            guard_ok = false;
            break;
          }
        }
        env.erase(var.name);
        if (guard_ok) {
          failure.witness[var.name] = value;
          break;
        }
      }
    }
    return failure;
  }
  // Negations and atoms absorb the attribution.
  return Failure{{}, render(f)};
}

}  // namespace

Verdict check_axiom(const Model& model, const FormulaPtr& formula) {
  Env env;
  if (eval_formula(model, *formula, env)) return Verdict{true, {}, ""};
  env.clear();
  Failure failure = explain_failure(model, *formula, env);
  return Verdict{false, std::move(failure.witness),
                 std::move(failure.failed_at)};
}

}  // namespace morpholex
