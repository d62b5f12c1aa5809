#include "morpholex/eval.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace morpholex {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
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
  return cols;
}

}  // namespace

GoldStandard GoldStandard::from_stream(std::istream& in) {
  GoldStandard gold;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols = split_tabs(line);
    if (cols.size() != 5) {
      std::ostringstream msg;
      msg << "gold line " << lineno << ": expected 5 columns, got "
          << cols.size();
      throw Error(msg.str());
    }
    Role role;
    try {
      role = role_from_string(cols[3]);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "gold line " << lineno << ": " << e.what();
      throw Error(msg.str());
    }
    bool correct;
    if (cols[4] == "1") correct = true;
    else if (cols[4] == "0") correct = false;
    else {
      std::ostringstream msg;
      msg << "gold line " << lineno << ": judgment must be 0 or 1";
      throw Error(msg.str());
    }
    Key key{cols[0], cols[1], cols[2], role};
    if (gold.judgments_.count(key)) {
      std::ostringstream msg;
      msg << "gold line " << lineno << ": duplicate judgment for '" << cols[0]
          << "'";
      throw Error(msg.str());
    }
    gold.judgments_[key] = correct;
  }
  return gold;
}

GoldStandard GoldStandard::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold file: " + path.string());
  return from_stream(in);
}

std::optional<bool> GoldStandard::lookup(const std::string& lemma,
                                         const std::string& affix,
                                         const std::string& feature,
                                         Role role) const {
  auto it = judgments_.find(Key{lemma, affix, feature, role});
  if (it == judgments_.end()) return std::nullopt;
  return it->second;
}

PrecisionReport precision_table(const AssignmentStore& store,
                                const GoldStandard& gold, Role role) {
  PrecisionReport report;
  std::map<std::pair<std::string, std::string>, std::pair<std::size_t,
                                                          std::size_t>>
      counts;  // (affix, feature) -> (types, correct)
  for (const StoreRow& row : store.rows()) {
    if (row.role != role) continue;
    std::optional<bool> judgment =
        gold.lookup(row.lemma, row.affix, row.feature, role);
    if (!judgment) {
      report.unjudged.push_back(
          UnjudgedItem{row.lemma, row.affix, row.feature});
      continue;
    }
    auto& [types, correct] = counts[{row.affix, row.feature}];
    ++types;
    if (*judgment) ++correct;
  }
  for (const auto& [key, tally] : counts) {
    PrecisionRow row;
    row.feature = key.second;
    row.affix = key.first;
    row.role = role;
    row.types = tally.first;
    row.correct = tally.second;
    row.precision = 100.0 * static_cast<double>(tally.second) /
                    static_cast<double>(tally.first);
    report.rows.push_back(std::move(row));
  }
  return report;
}

double summary_precision(const std::vector<PrecisionRow>& rows) {
  if (rows.empty()) throw Error("cannot summarize an empty table");
  struct Group {
    std::size_t types = 0;
    double precision_sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Group> groups;
  for (const PrecisionRow& row : rows) {
    Group& group = groups[row.affix];
    if (group.n == 0) {
      group.types = row.types;
    } else if (group.types != row.types) {
      throw Error("inconsistent type counts for affix '" + row.affix + "'");
    }
    group.precision_sum += row.precision;
    ++group.n;
  }
  double weighted = 0.0;
  double total_types = 0.0;
  for (const auto& [affix, group] : groups) {
    weighted += static_cast<double>(group.types) *
                (group.precision_sum / static_cast<double>(group.n));
    total_types += static_cast<double>(group.types);
  }
  if (total_types == 0.0) throw Error("cannot summarize zero types");
  return weighted / total_types;
}

double recall(const std::set<std::string>& extracted,
              const std::set<std::string>& gold) {
  if (gold.empty()) throw Error("cannot compute recall against an empty gold");
  std::size_t hit = 0;
  for (const std::string& lemma : gold) {
    if (extracted.count(lemma)) ++hit;
  }
  return 100.0 * static_cast<double>(hit) / static_cast<double>(gold.size());
}

namespace {

std::map<std::string, std::size_t> affix_types(
    const std::vector<PrecisionRow>& rows) {
  std::map<std::string, std::size_t> out;
  for (const PrecisionRow& row : rows) {
    auto [it, inserted] = out.try_emplace(row.affix, row.types);
    if (!inserted && it->second != row.types) {
      throw Error("inconsistent type counts for affix '" + row.affix + "'");
    }
  }
  return out;
}

}  // namespace

CoverageStats coverage_stats(const std::vector<PrecisionRow>& derived_rows,
                             const std::vector<PrecisionRow>& base_rows) {
  CoverageStats stats;
  stats.derived_per_affix = affix_types(derived_rows);
  stats.base_per_affix = affix_types(base_rows);
  for (const auto& [affix, n] : stats.derived_per_affix)
    stats.derived_total += n;
  for (const auto& [affix, n] : stats.base_per_affix) stats.base_total += n;
  stats.grand_total = stats.derived_total + stats.base_total;
  return stats;
}

CoverageStats coverage_stats(const AssignmentStore& store) {
  std::map<std::pair<std::string, Role>, std::set<std::string>> lemmas;
  for (const StoreRow& row : store.rows()) {
    lemmas[{row.affix, row.role}].insert(row.lemma);
  }
  CoverageStats stats;
  for (const auto& [key, set] : lemmas) {
    if (key.second == Role::derived)
      stats.derived_per_affix[key.first] = set.size();
    else
      stats.base_per_affix[key.first] = set.size();
  }
  for (const auto& [affix, n] : stats.derived_per_affix)
    stats.derived_total += n;
  for (const auto& [affix, n] : stats.base_per_affix) stats.base_total += n;
  stats.grand_total = stats.derived_total + stats.base_total;
  return stats;
}

void emit_report(const std::vector<PrecisionRow>& rows, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::tsv) {
    out << "feature\taffix\ttypes\tprecision\n";
    for (const PrecisionRow& row : rows) {
      std::ostringstream value;
      value << std::fixed << std::setprecision(1) << row.precision;
      out << row.feature << "\t" << row.affix << "\t" << row.types << "\t"
          << value.str() << "\n";
    }
    return;
  }
  const std::ios::fmtflags saved_flags = out.flags();
  std::size_t feature_w = 7;  // "Feature"
  std::size_t affix_w = 5;    // "Affix"
  std::size_t types_w = 5;    // "Types"
  for (const PrecisionRow& row : rows) {
    feature_w = std::max(feature_w, row.feature.size());
    affix_w = std::max(affix_w, row.affix.size());
    types_w = std::max(types_w, std::to_string(row.types).size());
  }
  out << std::left << std::setw(static_cast<int>(feature_w)) << "Feature"
      << "  " << std::setw(static_cast<int>(affix_w)) << "Affix"
      << "  " << std::right << std::setw(static_cast<int>(types_w)) << "Types"
      << "  " << std::setw(9) << "Precision" << "\n";
  for (const PrecisionRow& row : rows) {
    std::string percent =
        std::to_string(static_cast<long long>(std::llround(row.precision))) +
        "%";
    out << std::left << std::setw(static_cast<int>(feature_w)) << row.feature
        << "  " << std::setw(static_cast<int>(affix_w)) << row.affix << "  "
        << std::right << std::setw(static_cast<int>(types_w)) << row.types
        << "  " << std::setw(9) << percent << "\n";
  }
  out.flags(saved_flags);
}

std::vector<PrecisionRow> parse_report_tsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("empty evaluation table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "feature\taffix\ttypes\tprecision")
    throw Error("evaluation table has an unexpected header: '" + line + "'");
  std::vector<PrecisionRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols = split_tabs(line);
    if (cols.size() != 4) {
      std::ostringstream msg;
      msg << "evaluation table line " << lineno << ": expected 4 columns";
      throw Error(msg.str());
    }
    PrecisionRow row;
    row.feature = cols[0];
    row.affix = cols[1];
    try {
      row.types = std::stoull(cols[2]);
      row.precision = std::stod(cols[3]);
    } catch (...) {
      std::ostringstream msg;
      msg << "evaluation table line " << lineno << ": malformed number";
      throw Error(msg.str());
    }
    row.correct = static_cast<std::size_t>(
        std::llround(static_cast<double>(row.types) * row.precision / 100.0));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PrecisionRow> parse_report_tsv_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open evaluation table: " + path.string());
  return parse_report_tsv(in);
}

}  // namespace morpholex
