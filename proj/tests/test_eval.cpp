#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "morpholex/eval.h"
#include "test_paths.h"

using namespace morpholex;
using morpholex::testing::fixture_path;
using morpholex::testing::read_file;

namespace {

const GoldStandard& mini_gold() {
  static const GoldStandard gold =
      GoldStandard::from_file(fixture_path("mini.gold.tsv"));
  return gold;
}

const AssignmentStore& mini_store() {
  static const AssignmentStore store =
      AssignmentStore::from_file(fixture_path("mini.expected.tsv"));
  return store;
}

long tenths(double value) { return std::lround(value * 10.0); }

}  // namespace

TEST_CASE("the gold standard answers judged claims and only those") {
  const GoldStandard& gold = mini_gold();
  CHECK(gold.size() == 60);
  CHECK(gold.lookup("tree", "-ee", "SENTIENT", Role::derived) == false);
  CHECK(gold.lookup("restate", "-ate", "CHANGE-OF-STATE", Role::derived) ==
        false);
  CHECK(gold.lookup("vaporize", "-Aize", "CHANGE-OF-STATE", Role::derived) ==
        true);
  CHECK(gold.lookup("fast", "-en", "IZE-DEPENDENT", Role::base) == false);
  CHECK(gold.lookup("stable", "-Aize", "IZE-DEPENDENT", Role::base) == true);
  // Same claim, other role: never judged.
  CHECK(gold.lookup("fast", "-en", "IZE-DEPENDENT", Role::derived) ==
        std::nullopt);
  CHECK(gold.lookup("alleviate", "-ate", "CHANGE-OF-STATE", Role::derived) ==
        std::nullopt);
  CHECK(gold.lookup("glamorize", "-Nize", "CHANGE-OF-STATE", Role::derived) ==
        std::nullopt);
}

TEST_CASE("gold standard parse errors name the line") {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    CHECK_THROWS_WITH_AS(GoldStandard::from_stream(in),
                         doctest::Contains(needle.c_str()), Error);
  };
  fails_with("tree\t-ee\tSENTIENT\tderived\n",
             "gold line 1: expected 5 columns, got 4");
  fails_with("tree\t-ee\tSENTIENT\tper\t1\n", "unknown role 'per'");
  fails_with("tree\t-ee\tSENTIENT\tderived\tyes\n",
             "judgment must be 0 or 1");
  fails_with(
      "tree\t-ee\tSENTIENT\tderived\t1\ntree\t-ee\tSENTIENT\tderived\t0\n",
      "gold line 2: duplicate judgment for 'tree'");
  CHECK_THROWS_WITH_AS(GoldStandard::from_file(fixture_path("no.gold.tsv")),
                       doctest::Contains("cannot open gold file"), Error);
}

TEST_CASE("precision tables reproduce the bundled evaluation fixtures") {
  PrecisionReport derived =
      precision_table(mini_store(), mini_gold(), Role::derived);
  PrecisionReport base = precision_table(mini_store(), mini_gold(), Role::base);

  std::ostringstream derived_out, base_out;
  emit_report(derived.rows, ReportFormat::tsv, derived_out);
  emit_report(base.rows, ReportFormat::tsv, base_out);
  CHECK(derived_out.str() == read_file(fixture_path("mini.eval.derived.tsv")));
  CHECK(base_out.str() == read_file(fixture_path("mini.eval.base.tsv")));

  REQUIRE(derived.unjudged.size() == 2);
  CHECK(derived.unjudged[0].lemma == "alleviate");
  CHECK(derived.unjudged[0].affix == "-ate");
  CHECK(derived.unjudged[0].feature == "CHANGE-OF-STATE");
  CHECK(derived.unjudged[1].lemma == "glamorize");
  CHECK(derived.unjudged[1].affix == "-Nize");
  CHECK(base.unjudged.empty());

  // Unjudged lemmas are excluded from the counts: -ate has four derived
  // lemmas in the store but only three judged ones.
  bool found = false;
  for (const PrecisionRow& row : derived.rows) {
    if (row.affix == "-ate" && row.feature == "CHANGE-OF-STATE") {
      found = true;
      CHECK(row.types == 3);
      CHECK(row.correct == 1);
      CHECK(row.precision == doctest::Approx(100.0 / 3.0));
      CHECK(row.role == Role::derived);
    }
  }
  CHECK(found);
  CHECK(base.rows.size() == 7);
}

TEST_CASE("summary precision matches the published aggregates") {
  auto t1 = parse_report_tsv_file(fixture_path("table1.tsv"));
  auto t2 = parse_report_tsv_file(fixture_path("table2.tsv"));
  CHECK(tenths(summary_precision(t1)) == 754);
  CHECK(tenths(summary_precision(t2)) == 817);

  auto mini = parse_report_tsv_file(fixture_path("mini.eval.derived.tsv"));
  CHECK(tenths(summary_precision(mini)) == 862);
  // Summarizing the live table agrees to the printed decimal; it need not
  // agree exactly, since the fixture's precisions are already rounded.
  PrecisionReport derived =
      precision_table(mini_store(), mini_gold(), Role::derived);
  CHECK(tenths(summary_precision(derived.rows)) == 862);
}

TEST_CASE("summary precision rejects degenerate input") {
  CHECK_THROWS_WITH_AS(summary_precision({}),
                       doctest::Contains("empty table"), Error);
  std::vector<PrecisionRow> rows(2);
  rows[0] = {"F", "-x", std::nullopt, 3, 3, 100.0};
  rows[1] = {"G", "-x", std::nullopt, 4, 2, 50.0};
  CHECK_THROWS_WITH_AS(summary_precision(rows),
                       doctest::Contains("inconsistent type counts for affix "
                                         "'-x'"),
                       Error);
}

TEST_CASE("recall is the covered share of the gold lemmas") {
  std::set<std::string> gold;
  {
    std::istringstream in(read_file(fixture_path("recall/re.gold")));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) gold.insert(line);
    }
  }
  REQUIRE(gold.size() == 20);
  std::set<std::string> extracted = gold;
  extracted.erase("reaccommodate");
  extracted.erase("recalibrate");
  extracted.erase("reinstall");
  CHECK(recall(extracted, gold) == doctest::Approx(85.0));
  CHECK(recall(gold, gold) == doctest::Approx(100.0));
  CHECK(recall({}, gold) == doctest::Approx(0.0));
  // Extracted lemmas outside the gold change nothing.
  extracted.insert("misfile");
  CHECK(recall(extracted, gold) == doctest::Approx(85.0));
  CHECK_THROWS_WITH_AS(recall(extracted, {}), doctest::Contains("empty gold"),
                       Error);
}

TEST_CASE("coverage from the published tables") {
  CoverageStats stats =
      coverage_stats(parse_report_tsv_file(fixture_path("table1.tsv")),
                     parse_report_tsv_file(fixture_path("table2.tsv")));
  CHECK(stats.derived_total == 2124);
  CHECK(stats.base_total == 411);
  CHECK(stats.grand_total == 2535);
  CHECK(stats.derived_per_affix.at("-er") == 471);
  CHECK(stats.derived_per_affix.at("-ate") == 365);
  CHECK(stats.derived_per_affix.size() == 20);
  CHECK(stats.base_per_affix.at("-ful") == 76);
  CHECK(stats.base_per_affix.size() == 7);

  std::vector<PrecisionRow> bad(2);
  bad[0] = {"F", "-x", std::nullopt, 3, 3, 100.0};
  bad[1] = {"G", "-x", std::nullopt, 4, 2, 50.0};
  CHECK_THROWS_AS(coverage_stats(bad, {}), Error);
}

TEST_CASE("coverage from a store counts distinct lemmas per affix and role") {
  CoverageStats stats = coverage_stats(mini_store());
  CHECK(stats.derived_total == 31);
  CHECK(stats.base_total == 11);
  CHECK(stats.grand_total == 42);
  CHECK(stats.derived_per_affix.at("-ee") == 3);
  CHECK(stats.derived_per_affix.at("-ate") == 4);
  CHECK(stats.base_per_affix.at("-en") == 2);
  CHECK(stats.base_per_affix.count("-ee") == 0);
}

TEST_CASE("tsv reports round-trip byte for byte") {
  for (const std::string name :
       {"table1.tsv", "table2.tsv", "mini.eval.derived.tsv",
        "mini.eval.base.tsv"}) {
    const std::string original = read_file(fixture_path(name));
    std::istringstream in(original);
    std::vector<PrecisionRow> rows = parse_report_tsv(in);
    std::ostringstream out;
    emit_report(rows, ReportFormat::tsv, out);
    INFO("fixture=", name);
    CHECK(out.str() == original);
  }
}

TEST_CASE("parsing reconstructs correct counts by rounding") {
  std::istringstream in(
      "feature\taffix\ttypes\tprecision\n"
      "CHANGE-OF-STATE\t-Aize\t63\t78.0\n"
      "FUL-ANTONYM\t-less\t22\t77.0\n"
      "TELIC\tre-\t164\t91.0\n");
  std::vector<PrecisionRow> rows = parse_report_tsv(in);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].correct == 49);
  CHECK(rows[1].correct == 17);
  CHECK(rows[2].correct == 149);
  CHECK_FALSE(rows[0].role.has_value());
}

TEST_CASE("report parse errors") {
  auto fails_with = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    CHECK_THROWS_WITH_AS(parse_report_tsv(in), doctest::Contains(needle.c_str()),
                         Error);
  };
  fails_with("", "empty evaluation table");
  fails_with("feature\taffix\ttypes\n", "unexpected header");
  fails_with("feature\taffix\ttypes\tprecision\nTELIC\tre-\t164\n",
             "evaluation table line 2: expected 4 columns");
  fails_with("feature\taffix\ttypes\tprecision\nTELIC\tre-\tmany\t91.0\n",
             "malformed number");
  CHECK_THROWS_WITH_AS(parse_report_tsv_file(fixture_path("no.table.tsv")),
                       doctest::Contains("cannot open evaluation table"),
                       Error);
}

TEST_CASE("the text report aligns columns and rounds to whole percent") {
  std::vector<PrecisionRow> rows(1);
  rows[0] = {"TELIC", "re-", std::nullopt, 164, 149, 91.0};
  std::ostringstream out;
  emit_report(rows, ReportFormat::text, out);
  CHECK(out.str() ==
        "Feature  Affix  Types  Precision\n"
        "TELIC    re-      164        91%\n");

  SUBCASE("column widths grow with the data") {
    std::vector<PrecisionRow> wide(2);
    wide[0] = {"REFERS-TO-E-OR-PROP-OR-RESULT", "-ment", std::nullopt, 166,
               146, 88.0};
    wide[1] = {"TELIC", "re-", std::nullopt, 164, 149, 91.0};
    std::ostringstream wide_out;
    emit_report(wide, ReportFormat::text, wide_out);
    CHECK(wide_out.str() ==
          "Feature                        Affix  Types  Precision\n"
          "REFERS-TO-E-OR-PROP-OR-RESULT  -ment    166        88%\n"
          "TELIC                          re-      164        91%\n");
  }
  SUBCASE("precision is rounded, not truncated") {
    std::vector<PrecisionRow> third(1);
    third[0] = {"ACTIVITY", "-le", std::nullopt, 3, 2, 100.0 * 2.0 / 3.0};
    std::ostringstream third_out;
    emit_report(third, ReportFormat::text, third_out);
    CHECK(third_out.str() ==
          "Feature   Affix  Types  Precision\n"
          "ACTIVITY  -le        3        67%\n");
  }
}

TEST_CASE("emitting a report leaves the stream's formatting alone") {
  std::vector<PrecisionRow> rows(1);
  rows[0] = {"TELIC", "re-", std::nullopt, 164, 149, 91.0};
  std::ostringstream out;
  emit_report(rows, ReportFormat::text, out);
  emit_report(rows, ReportFormat::tsv, out);
  out << 2.5;
  const std::string text = out.str();
  CHECK(text.substr(text.size() - 3) == "2.5");
}
