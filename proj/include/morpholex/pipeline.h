#ifndef MORPHOLEX_PIPELINE_H
#define MORPHOLEX_PIPELINE_H

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "morpholex/corpus.h"
#include "morpholex/error.h"
#include "morpholex/lexicon.h"
#include "morpholex/rules.h"
#include "morpholex/semantics.h"

namespace morpholex {

struct PipelineOptions {
  int max_depth = 3;
  bool invent_bases = false;
  // When non-empty, only these rule ids run as candidate collectors; ids
  // must exist in the catalog.  Nested analysis still sees the whole
  // catalog, so a filtered run never produces rows a full run would not.
  std::vector<std::string> affix_filter;
};

// Per-rule bookkeeping over one extraction run.
struct AffixReport {
  std::string affix;
  std::size_t candidates = 0;   // surface types matching the rule's patterns
  std::size_t analyzed = 0;     // candidates with at least one lemma form
  std::size_t rejected = 0;     // analyzed candidates with no derivation
  std::size_t assignments = 0;  // store rows carrying this affix at the end
};

struct ExtractionResult {
  AssignmentStore store;
  std::vector<AffixReport> per_affix;  // sorted by affix id
  Diagnostics diagnostics;
};

// The end-to-end extraction: collect candidates per rule, strip inflection,
// analyze against the lexicon, assign features tree-node by tree-node, and
// link antonym pairs.  Deterministic: equal inputs give equal results.
ExtractionResult run_extraction(const Corpus& corpus, const Lexicon& lexicon,
                                const RuleCatalog& catalog,
                                const PipelineOptions& options = {});

// "affix<TAB>candidates<TAB>analyzed<TAB>rejected<TAB>assignments" rows
// under a header, in the given order.
void write_report_tsv(const std::vector<AffixReport>& rows, std::ostream& out);

// Writes store.tsv and report.tsv under out_dir (created if needed).
void write_outputs(const ExtractionResult& result,
                   const std::filesystem::path& out_dir);

}  // namespace morpholex

#endif  // MORPHOLEX_PIPELINE_H
