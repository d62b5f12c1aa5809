#include "morpholex/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "morpholex/analyzer.h"

namespace morpholex {

ExtractionResult run_extraction(const Corpus& corpus, const Lexicon& lexicon,
                                const RuleCatalog& catalog,
                                const PipelineOptions& options) {
  ExtractionResult result;
  for (const std::string& id : options.affix_filter) {
    if (!catalog.find(id)) throw Error("unknown affix id '" + id + "'");
  }
  auto is_active = [&](const AffixRule& rule) {
    if (options.affix_filter.empty()) return true;
    return std::find(options.affix_filter.begin(), options.affix_filter.end(),
                     rule.id) != options.affix_filter.end();
  };

  const TypeInventory inventory(corpus);
  AnalyzeOptions analyze_options;
  analyze_options.max_depth = options.max_depth;
  analyze_options.invent_bases = options.invent_bases;

  // Lemma candidates per (surface, tag), computed once per type.
  std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      lemma_cache;
  auto lemmas_of = [&](const TypeInventory::Entry& entry)
      -> const std::vector<std::string>& {
    auto key = std::make_pair(entry.surface, entry.tag);
    auto it = lemma_cache.find(key);
    if (it == lemma_cache.end()) {
      it = lemma_cache
               .emplace(key, normalize_inflection(entry.surface, entry.tag,
                                                  result.diagnostics))
               .first;
    }
    return it->second;
  };

  std::map<std::string, AffixReport> reports;
  // (surface, tag) -> derivations accumulated across rules, rule order
  // within each type.
  std::map<std::pair<std::string, std::string>,
           std::vector<DerivationPtr>>
      trees_by_type;

  for (const AffixRule& rule : catalog.rules()) {
    if (!is_active(rule)) continue;
    AffixReport& report = reports[rule.id];
    report.affix = rule.id;
    const SurfacePattern pattern = rule.make_pattern();
    for (const TypeInventory::Entry& entry :
         collect_candidates(inventory, pattern)) {
      ++report.candidates;
      const std::vector<std::string>& lemmas = lemmas_of(entry);
      if (lemmas.empty()) continue;
      ++report.analyzed;
      std::vector<DerivationPtr> trees;
      for (const std::string& lemma : lemmas) {
        trees = analyze(lemma, rule, lexicon, catalog, analyze_options);
        if (!trees.empty()) break;
      }
      if (trees.empty()) {
        ++report.rejected;
        continue;
      }
      auto& bucket = trees_by_type[{entry.surface, entry.tag}];
      for (DerivationPtr& tree : trees) {
        bool duplicate = false;
        for (const DerivationPtr& existing : bucket) {
          if (same_derivation(*existing, *tree)) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) bucket.push_back(std::move(tree));
      }
    }
  }

  for (const auto& [key, trees] : trees_by_type) {
    const TypeInventory::Entry* entry = inventory.find(key.first, key.second);
    for (const DerivationPtr& tree : trees) {
      assign_features(*tree, key.first, entry ? entry->count : 0,
                      result.store);
    }
  }

  link_antonyms(result.store);

  for (const StoreRow& row : result.store.rows()) {
    AffixReport& report = reports[row.affix];
    if (report.affix.empty()) report.affix = row.affix;
    ++report.assignments;
  }

  result.per_affix.reserve(reports.size());
  for (const auto& [affix, report] : reports)
    result.per_affix.push_back(report);
  return result;
}

void write_report_tsv(const std::vector<AffixReport>& rows,
                      std::ostream& out) {
  out << "affix\tcandidates\tanalyzed\trejected\tassignments\n";
  for (const AffixReport& row : rows) {
    out << row.affix << "\t" << row.candidates << "\t" << row.analyzed << "\t"
        << row.rejected << "\t" << row.assignments << "\n";
  }
}

void write_outputs(const ExtractionResult& result,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "store.tsv");
    if (!out) throw Error("cannot write " + (out_dir / "store.tsv").string());
    result.store.serialize(out);
  }
  {
    std::ofstream out(out_dir / "report.tsv");
    if (!out)
      throw Error("cannot write " + (out_dir / "report.tsv").string());
    write_report_tsv(result.per_affix, out);
  }
}

}  // namespace morpholex
