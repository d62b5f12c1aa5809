#ifndef MORPHOLEX_EVAL_H
#define MORPHOLEX_EVAL_H

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "morpholex/error.h"
#include "morpholex/semantics.h"

namespace morpholex {

// Human judgments: (lemma, affix, feature, role) -> correct (1) or not (0).
class GoldStandard {
 public:
  static GoldStandard from_stream(std::istream& in);
  static GoldStandard from_file(const std::filesystem::path& path);

  std::optional<bool> lookup(const std::string& lemma, const std::string& affix,
                             const std::string& feature, Role role) const;
  std::size_t size() const { return judgments_.size(); }

 private:
  struct Key {
    std::string lemma;
    std::string affix;
    std::string feature;
    Role role;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, bool> judgments_;
};

// One evaluation row: judged lemma types for (feature, affix) and the share
// judged correct.  `precision` is the exact percentage 100*correct/types.
struct PrecisionRow {
  std::string feature;
  std::string affix;
  std::optional<Role> role;
  std::size_t types = 0;
  std::size_t correct = 0;
  double precision = 0.0;
};

struct UnjudgedItem {
  std::string lemma;
  std::string affix;
  std::string feature;
};

struct PrecisionReport {
  std::vector<PrecisionRow> rows;      // sorted by (affix, feature)
  std::vector<UnjudgedItem> unjudged;  // store claims absent from the gold
};

// Scores the store's `role` rows against the gold standard.  Lemmas without
// a judgment are listed as unjudged and excluded from the counts; a
// (feature, affix) pair with no judged lemma contributes no row.
PrecisionReport precision_table(const AssignmentStore& store,
                                const GoldStandard& gold, Role role);

// Type-weighted aggregate percentage: per affix, the mean of its rows'
// precisions weighted by the affix's type count (which must be consistent
// across the affix's rows; Error otherwise).
double summary_precision(const std::vector<PrecisionRow>& rows);

// 100 * |extracted intersect gold| / |gold|.  Empty gold is an Error.
double recall(const std::set<std::string>& extracted,
              const std::set<std::string>& gold);

struct CoverageStats {
  std::map<std::string, std::size_t> derived_per_affix;
  std::map<std::string, std::size_t> base_per_affix;
  std::size_t derived_total = 0;
  std::size_t base_total = 0;
  std::size_t grand_total = 0;
};

// Totals from precision tables: per-affix type counts (consistent within
// each table; Error otherwise).
CoverageStats coverage_stats(const std::vector<PrecisionRow>& derived_rows,
                             const std::vector<PrecisionRow>& base_rows);
// Distinct lemmas per (affix, role) straight from a store.
CoverageStats coverage_stats(const AssignmentStore& store);

enum class ReportFormat { text, tsv };

// Writes rows in the caller's order.  TSV: header
// "feature<TAB>affix<TAB>types<TAB>precision" with precision to one decimal.
// Text: aligned Feature/Affix/Types/Precision columns with integer percent.
void emit_report(const std::vector<PrecisionRow>& rows, ReportFormat format,
                 std::ostream& out);

// Reads the TSV form back; correct counts are reconstructed as
// round(types * precision / 100).  Emitting the result reproduces the bytes.
std::vector<PrecisionRow> parse_report_tsv(std::istream& in);
std::vector<PrecisionRow> parse_report_tsv_file(
    const std::filesystem::path& path);

}  // namespace morpholex

#endif  // MORPHOLEX_EVAL_H
