#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morpholex/analyzer.h"
#include "morpholex/corpus.h"
#include "morpholex/error.h"
#include "morpholex/eval.h"
#include "morpholex/lexicon.h"
#include "morpholex/logic.h"
#include "morpholex/pipeline.h"
#include "morpholex/rules.h"
#include "morpholex/semantics.h"

namespace {

using namespace morpholex;

std::string version_string() {
  return std::string("morpholex ") + MORPHOLEX_VERSION;
}

// Rules resolution order: --rules flag, then MORPHOLEX_RULES, then builtin.
RuleCatalog load_catalog(const std::string& rules_flag) {
  if (!rules_flag.empty()) return load_rules_file(rules_flag);
  if (const char* env = std::getenv("MORPHOLEX_RULES")) {
    if (*env != '\0') return load_rules_file(env);
  }
  return builtin_rules();
}

std::string one_decimal(double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << value;
  return out.str();
}

std::set<std::string> read_lemma_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lemma file: " + path);
  std::set<std::string> lemmas;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lemmas.insert(line);
  }
  return lemmas;
}

struct ExtractArgs {
  std::string corpus;
  std::string lexicon;
  std::string rules;
  std::string out_dir;
  std::vector<std::string> affixes;
};

void run_extract(const ExtractArgs& args) {
  Diagnostics corpus_diags;
  Corpus corpus = Corpus::from_file(args.corpus, corpus_diags);
  Lexicon lexicon = Lexicon::from_file(args.lexicon);
  RuleCatalog catalog = load_catalog(args.rules);
  for (const std::string& id : args.affixes) {
    if (!catalog.find(id))
      throw CLI::ValidationError("--affix", "unknown affix id '" + id + "'");
  }
  PipelineOptions options;
  options.affix_filter = args.affixes;
  ExtractionResult result = run_extraction(corpus, lexicon, catalog, options);
  write_outputs(result, args.out_dir);
  corpus_diags.print(std::cerr);
  result.diagnostics.print(std::cerr);
}

struct AnalyzeArgs {
  std::string word;
  std::string tag;
  std::string lexicon;
  std::string rules;
  std::string affix;
  bool invent_bases = false;
};

void run_analyze(const AnalyzeArgs& args) {
  Lexicon lexicon = Lexicon::from_file(args.lexicon);
  RuleCatalog catalog = load_catalog(args.rules);
  if (!args.affix.empty() && !catalog.find(args.affix))
    throw CLI::ValidationError("--affix",
                               "unknown affix id '" + args.affix + "'");
  Diagnostics diags;
  std::vector<std::string> lemmas =
      normalize_inflection(args.word, args.tag, diags);
  diags.print(std::cerr);
  AnalyzeOptions options;
  options.invent_bases = args.invent_bases;
  std::vector<DerivationPtr> all;
  for (const AffixRule& rule : catalog.rules()) {
    if (!args.affix.empty() && rule.id != args.affix) continue;
    if (!rule.make_pattern().matches(args.word, args.tag)) continue;
    std::vector<DerivationPtr> trees;
    for (const std::string& lemma : lemmas) {
      trees = analyze(lemma, rule, lexicon, catalog, options);
      if (!trees.empty()) break;
    }
    for (DerivationPtr& tree : trees) {
      bool duplicate = false;
      for (const DerivationPtr& existing : all) {
        if (same_derivation(*existing, *tree)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) all.push_back(std::move(tree));
    }
  }
  if (all.empty()) {
    std::cerr << "no analyses for '" << args.word << "'\n";
    return;
  }
  for (const DerivationPtr& tree : all) {
    std::cout << to_bracket(*tree) << "\n";
  }
}

struct EvaluateArgs {
  std::string store;
  std::string gold;
  std::string role;
};

void run_evaluate(const EvaluateArgs& args) {
  AssignmentStore store = AssignmentStore::from_file(args.store);
  GoldStandard gold = GoldStandard::from_file(args.gold);
  PrecisionReport report =
      precision_table(store, gold, role_from_string(args.role));
  emit_report(report.rows, ReportFormat::tsv, std::cout);
  for (const UnjudgedItem& item : report.unjudged) {
    std::cerr << "UNJUDGED " << item.lemma << " " << item.affix << " "
              << item.feature << "\n";
  }
}

struct CheckModelArgs {
  std::string model;
  std::string feature;
  std::string predicate;
};

void run_check_model(const CheckModelArgs& args) {
  const Feature* feature = find_feature(args.feature);
  if (!feature)
    throw CLI::ValidationError("--axiom-of",
                               "unknown feature '" + args.feature + "'");
  if (!feature->has_axiom)
    throw CLI::ValidationError(
        "--axiom-of", "feature '" + args.feature + "' has no checkable axiom");
  Model model = Model::from_file(args.model);
  FormulaPtr axiom = instantiate_axiom(args.feature, args.predicate);
  Verdict verdict = check_axiom(model, axiom);
  if (verdict.holds) {
    std::cout << "holds\n";
    return;
  }
  std::cout << "fails\n";
  std::cout << "witness:";
  for (const auto& [var, value] : verdict.witness)
    std::cout << " " << var << "=" << value;
  std::cout << "\n";
  std::cout << "at: " << verdict.failed_at << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "morpholex: acquires lexical-semantic features of derived words from "
      "tagged corpora"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  ExtractArgs extract_args;
  CLI::App* extract = app.add_subcommand(
      "extract", "Run the extraction pipeline over a tagged corpus");
  extract->set_version_flag("--version", version_string());
  extract->add_option("--corpus", extract_args.corpus, "Tagged corpus file")
      ->required();
  extract->add_option("--lexicon", extract_args.lexicon, "Base-form lexicon")
      ->required();
  extract->add_option("--rules", extract_args.rules, "Affix rule file");
  extract->add_option("--out", extract_args.out_dir, "Output directory")
      ->required();
  extract->add_option("--affix", extract_args.affixes,
                      "Restrict to this affix id (repeatable)");
  extract->callback([&] { run_extract(extract_args); });

  AnalyzeArgs analyze_args;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Analyze one tagged word");
  analyze_cmd->set_version_flag("--version", version_string());
  analyze_cmd->add_option("word", analyze_args.word, "Surface word")
      ->required();
  analyze_cmd->add_option("--tag", analyze_args.tag, "Part-of-speech tag")
      ->required();
  analyze_cmd
      ->add_option("--lexicon", analyze_args.lexicon, "Base-form lexicon")
      ->required();
  analyze_cmd->add_option("--rules", analyze_args.rules, "Affix rule file");
  analyze_cmd->add_option("--affix", analyze_args.affix,
                          "Only analyze under this affix id");
  analyze_cmd->add_flag("--invent-bases", analyze_args.invent_bases,
                        "Posit unknown bases when the lexicon has none");
  analyze_cmd->callback([&] { run_analyze(analyze_args); });

  EvaluateArgs evaluate_args;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a store against judgments");
  evaluate->set_version_flag("--version", version_string());
  evaluate->add_option("--store", evaluate_args.store, "Assignment store TSV")
      ->required();
  evaluate->add_option("--gold", evaluate_args.gold, "Gold judgment TSV")
      ->required();
  evaluate->add_option("--role", evaluate_args.role, "Row role to score")
      ->required()
      ->check(CLI::IsMember({"derived", "base"}));
  evaluate->callback([&] { run_evaluate(evaluate_args); });

  std::string summary_table;
  CLI::App* summary = app.add_subcommand(
      "summary", "Type-weighted aggregate precision of an evaluation table");
  summary->set_version_flag("--version", version_string());
  summary->add_option("--table", summary_table, "Evaluation table TSV")
      ->required();
  summary->callback([&] {
    std::cout << one_decimal(summary_precision(
                     parse_report_tsv_file(summary_table)))
              << "\n";
  });

  std::string recall_extracted, recall_gold;
  CLI::App* recall_cmd =
      app.add_subcommand("recall", "Recall of extracted lemmas against gold");
  recall_cmd->set_version_flag("--version", version_string());
  recall_cmd
      ->add_option("--extracted", recall_extracted, "Extracted lemma list")
      ->required();
  recall_cmd->add_option("--gold", recall_gold, "Gold lemma list")->required();
  recall_cmd->callback([&] {
    std::cout << one_decimal(recall(read_lemma_set(recall_extracted),
                                    read_lemma_set(recall_gold)))
              << "\n";
  });

  std::string report_eval, report_format = "text";
  CLI::App* report_cmd =
      app.add_subcommand("report", "Render an evaluation table");
  report_cmd->set_version_flag("--version", version_string());
  report_cmd->add_option("--eval", report_eval, "Evaluation table TSV")
      ->required();
  report_cmd->add_option("--format", report_format, "Output format")
      ->check(CLI::IsMember({"text", "tsv"}));
  report_cmd->callback([&] {
    emit_report(parse_report_tsv_file(report_eval),
                report_format == "tsv" ? ReportFormat::tsv
                                       : ReportFormat::text,
                std::cout);
  });

  std::string rules_file;
  bool rules_dump = false;
  CLI::App* rules_cmd = app.add_subcommand("rules", "Show the rule catalog");
  rules_cmd->set_version_flag("--version", version_string());
  rules_cmd->add_option("--rules", rules_file, "Affix rule file");
  rules_cmd->add_flag("--dump", rules_dump,
                      "Write the catalog in rule-file form");
  rules_cmd->callback([&] {
    RuleCatalog catalog = load_catalog(rules_file);
    if (rules_dump) {
      serialize_rules(catalog, std::cout);
      return;
    }
    for (const AffixRule& rule : catalog.rules()) {
      std::cout << rule.id << "\t" << to_string(rule.kind) << "\t"
                << rule.family << "\t" << to_string(rule.target_pos) << "\n";
    }
  });

  std::string axioms_feature, axioms_predicate;
  CLI::App* axioms_cmd =
      app.add_subcommand("axioms", "Print a feature's axiom");
  axioms_cmd->set_version_flag("--version", version_string());
  axioms_cmd->add_option("feature", axioms_feature, "Feature id")->required();
  axioms_cmd->add_option("--predicate", axioms_predicate,
                         "Instantiate for this predicate");
  axioms_cmd->callback([&] {
    const Feature* feature = find_feature(axioms_feature);
    if (!feature)
      throw CLI::ValidationError("feature",
                                 "unknown feature '" + axioms_feature + "'");
    if (!feature->has_axiom) {
      std::cout << "# " << feature->id << ": declared but not axiomatized\n";
      std::cout << "# " << feature->doc << "\n";
      return;
    }
    FormulaPtr formula = axioms_predicate.empty()
                             ? axiom_template(axioms_feature)
                             : instantiate_axiom(axioms_feature,
                                                 axioms_predicate);
    std::cout << render(formula) << "\n";
  });

  CheckModelArgs check_args;
  CLI::App* check_cmd = app.add_subcommand(
      "check-model", "Check a feature's axiom against an episodic model");
  check_cmd->set_version_flag("--version", version_string());
  check_cmd->add_option("--model", check_args.model, "Episodic model file")
      ->required();
  check_cmd->add_option("--axiom-of", check_args.feature, "Feature id")
      ->required();
  check_cmd
      ->add_option("--predicate", check_args.predicate,
                   "Predicate to instantiate")
      ->required();
  check_cmd->callback([&] { run_check_model(check_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
