#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "morpholex/pipeline.h"
#include "test_paths.h"

using namespace morpholex;
using morpholex::testing::fixture_path;
using morpholex::testing::read_file;

namespace {

const Corpus& mini_corpus() {
  static Diagnostics diags;
  static const Corpus corpus =
      Corpus::from_file(fixture_path("mini.corpus"), diags);
  return corpus;
}

const Lexicon& bundled_lexicon() {
  static const Lexicon lex = Lexicon::from_file(fixture_path("lexicon.tsv"));
  return lex;
}

const RuleCatalog& builtin_catalog() {
  static const RuleCatalog catalog = builtin_rules();
  return catalog;
}

const ExtractionResult& full_run() {
  static const ExtractionResult result =
      run_extraction(mini_corpus(), bundled_lexicon(), builtin_catalog());
  return result;
}

std::string store_bytes(const ExtractionResult& result) {
  std::ostringstream out;
  result.store.serialize(out);
  return out.str();
}

std::string report_bytes(const ExtractionResult& result) {
  std::ostringstream out;
  write_report_tsv(result.per_affix, out);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

// lemma, pos, role, feature, affix: the identity of a store row without
// its evidence columns.
std::string key_prefix(const std::string& line) {
  std::size_t pos = 0;
  for (int tabs = 0; tabs < 5; ++tabs) {
    pos = line.find('\t', pos);
    REQUIRE(pos != std::string::npos);
    ++pos;
  }
  return line.substr(0, pos - 1);
}

const AffixReport* find_report(const ExtractionResult& result,
                               const std::string& affix) {
  for (const AffixReport& row : result.per_affix) {
    if (row.affix == affix) return &row;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("a full extraction run reproduces the bundled fixtures") {
  const ExtractionResult& result = full_run();
  CHECK(store_bytes(result) == read_file(fixture_path("mini.expected.tsv")));
  CHECK(report_bytes(result) == read_file(fixture_path("mini.report.tsv")));
  CHECK(result.diagnostics.empty());
  CHECK(result.per_affix.size() == builtin_catalog().rules().size());
}

TEST_CASE("extraction is deterministic") {
  ExtractionResult again =
      run_extraction(mini_corpus(), bundled_lexicon(), builtin_catalog());
  CHECK(store_bytes(again) == store_bytes(full_run()));
  CHECK(report_bytes(again) == report_bytes(full_run()));
}

TEST_CASE("an affix filter restricts collection, not analysis") {
  PipelineOptions options;
  options.affix_filter = {"-Aize"};
  ExtractionResult filtered = run_extraction(mini_corpus(), bundled_lexicon(),
                                             builtin_catalog(), options);
  REQUIRE(filtered.per_affix.size() == 1);
  const AffixReport& row = filtered.per_affix[0];
  CHECK(row.affix == "-Aize");
  CHECK(row.candidates == 8);
  CHECK(row.analyzed == 8);
  CHECK(row.rejected == 3);
  CHECK(row.assignments == 6);

  // Nothing in this corpus reaches an -Aize node except through the -Aize
  // collector, so the filtered store is exactly the -Aize slice of the
  // full one, evidence included.
  std::string expected;
  for (const std::string& line :
       lines_of(read_file(fixture_path("mini.expected.tsv")))) {
    if (line.find("\t-Aize\t") != std::string::npos) expected += line + "\n";
  }
  CHECK(store_bytes(filtered) == expected);
}

TEST_CASE("a filtered run never invents rows a full run lacks") {
  std::set<std::string> full_keys;
  for (const std::string& line : lines_of(store_bytes(full_run()))) {
    full_keys.insert(key_prefix(line));
  }
  const std::vector<std::vector<std::string>> filters = {
      {"-ee"}, {"re-"}, {"-en", "Vun-"}, {"-ful"}, {"-ate", "-le"}};
  for (const std::vector<std::string>& filter : filters) {
    PipelineOptions options;
    options.affix_filter = filter;
    ExtractionResult filtered = run_extraction(
        mini_corpus(), bundled_lexicon(), builtin_catalog(), options);
    for (const std::string& line : lines_of(store_bytes(filtered))) {
      INFO("filter=", filter.front(), " line=", line);
      CHECK(full_keys.count(key_prefix(line)) == 1);
    }
  }
}

TEST_CASE("per-affix counters match the full run for antonym-free affixes") {
  // Candidate collection per rule is independent of the filter, and none
  // of these affixes assigns an antonym feature, so the whole counter row
  // carries over unchanged.
  for (const std::string affix : {"-ee", "re-", "-en", "Vun-"}) {
    PipelineOptions options;
    options.affix_filter = {affix};
    if (affix == "-en") options.affix_filter.push_back("Vun-");
    ExtractionResult filtered = run_extraction(
        mini_corpus(), bundled_lexicon(), builtin_catalog(), options);
    const AffixReport* got = find_report(filtered, affix);
    const AffixReport* want = find_report(full_run(), affix);
    REQUIRE(got != nullptr);
    REQUIRE(want != nullptr);
    INFO("affix=", affix);
    CHECK(got->candidates == want->candidates);
    CHECK(got->analyzed == want->analyzed);
    CHECK(got->rejected == want->rejected);
    CHECK(got->assignments == want->assignments);
  }
}

TEST_CASE("antonym linking needs both family members attested") {
  // Alone, -ful finds "colorful" but not "colorless", so the antonym row
  // is dropped; the abstract-base rows survive.
  PipelineOptions options;
  options.affix_filter = {"-ful"};
  ExtractionResult filtered = run_extraction(mini_corpus(), bundled_lexicon(),
                                             builtin_catalog(), options);
  CHECK_FALSE(
      filtered.store.lemma_attested("colorful", Role::derived, "-ful"));
  CHECK(filtered.store.has("color", Pos::noun, Role::base, "ABSTRACT",
                           "-ful"));
  CHECK(filtered.store.has("peace", Pos::noun, Role::base, "ABSTRACT",
                           "-ful"));
  CHECK(filtered.store.row_count() == 2);

  // With -less collecting too, the pair links up again.
  options.affix_filter = {"-ful", "-less"};
  ExtractionResult paired = run_extraction(mini_corpus(), bundled_lexicon(),
                                           builtin_catalog(), options);
  CHECK(paired.store.has("colorful", Pos::adjective, Role::derived,
                         "LESS-ANTONYM", "-ful"));
  CHECK(paired.store.has("colorless", Pos::adjective, Role::derived,
                         "FUL-ANTONYM", "-less"));
  CHECK_FALSE(
      paired.store.lemma_attested("peaceful", Role::derived, "-ful"));
}

TEST_CASE("unknown affix ids in the filter are rejected up front") {
  PipelineOptions options;
  options.affix_filter = {"-Aize", "-bogus"};
  CHECK_THROWS_WITH_AS(run_extraction(mini_corpus(), bundled_lexicon(),
                                      builtin_catalog(), options),
                       doctest::Contains("unknown affix id '-bogus'"), Error);
}

TEST_CASE("unsupported tags surface as diagnostics, not failures") {
  Diagnostics parse_diags;
  std::istringstream in("The/DT walkers/NNPS left/VBD ./.\n");
  Corpus corpus = Corpus::from_stream(in, parse_diags);
  REQUIRE(parse_diags.empty());

  ExtractionResult result =
      run_extraction(corpus, bundled_lexicon(), builtin_catalog());
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics.items()[0].message ==
        "unsupported tag 'NNPS' on 'walkers'");
  const AffixReport* er = find_report(result, "-er");
  REQUIRE(er != nullptr);
  CHECK(er->candidates == 1);
  CHECK(er->analyzed == 0);
  CHECK(er->rejected == 0);
  CHECK(result.store.empty());
}

TEST_CASE("write_outputs lays the run down as two files") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "morpholex-pipeline-test" / "out";
  fs::remove_all(dir.parent_path());
  write_outputs(full_run(), dir);
  CHECK(read_file(dir / "store.tsv") ==
        read_file(fixture_path("mini.expected.tsv")));
  CHECK(read_file(dir / "report.tsv") ==
        read_file(fixture_path("mini.report.tsv")));
  // Rewriting over an existing directory is fine.
  write_outputs(full_run(), dir);
  CHECK(read_file(dir / "store.tsv") ==
        read_file(fixture_path("mini.expected.tsv")));
  fs::remove_all(dir.parent_path());
}
