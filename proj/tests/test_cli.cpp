#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_paths.h"

using morpholex::testing::cli_path;
using morpholex::testing::fixture_path;
using morpholex::testing::read_file;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "morpholex-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the installed binary through the shell.  The default environment
// prefix clears MORPHOLEX_RULES so ambient settings cannot leak in; the
// rule-resolution cases pass their own.
RunResult run_cli(const std::string& args,
                  const std::string& env = "MORPHOLEX_RULES=") {
  static int counter = 0;
  const fs::path out_path =
      scratch_dir() / ("stdout." + std::to_string(counter));
  const fs::path err_path =
      scratch_dir() / ("stderr." + std::to_string(counter));
  ++counter;
  const std::string command = env + " " + cli_path() + " " + args + " > " +
                              out_path.string() + " 2> " + err_path.string();
  const int status = std::system(command.c_str());
  RunResult result;
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

std::string fx(const std::string& name) { return fixture_path(name).string(); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string mini_args() {
  return "--corpus " + fx("mini.corpus") + " --lexicon " + fx("lexicon.tsv");
}

}  // namespace

TEST_CASE("every command reports the same version") {
  for (const std::string prefix :
       {"", "extract ", "analyze ", "evaluate ", "summary ", "recall ",
        "report ", "rules ", "axioms ", "check-model "}) {
    RunResult r = run_cli(prefix + "--version");
    INFO("command=", prefix);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "morpholex 0.1.0\n");
  }
}

TEST_CASE("help is a success, misuse is exit code 1") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 1);                  // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 1);        // unknown subcommand
  CHECK(run_cli("rules --frobnicate").exit_code == 1);  // unknown flag
  CHECK(run_cli("evaluate --store " + fx("mini.expected.tsv")).exit_code ==
        1);  // missing required options
  CHECK(run_cli("evaluate --store " + fx("mini.expected.tsv") + " --gold " +
                fx("mini.gold.tsv") + " --role per")
            .exit_code == 1);  // role outside {derived, base}
  CHECK(run_cli("analyze wordize --tag VB --lexicon " + fx("lexicon.tsv") +
                " --affix -bogus")
            .exit_code == 1);
  CHECK(run_cli("axioms NO-SUCH").exit_code == 1);
  CHECK(run_cli("check-model --model " + fx("models/m1.model") +
                " --axiom-of TELIC --predicate p")
            .exit_code == 1);  // declared feature, but nothing to check
}

TEST_CASE("runtime failures are exit code 2 with an error line") {
  RunResult r = run_cli("summary --table " + fx("no-such-table.tsv"));
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.starts_with("error: cannot open evaluation table"));

  r = run_cli("extract --corpus /no/such --lexicon " + fx("lexicon.tsv") +
              " --out " + (scratch_dir() / "nowhere").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.starts_with("error: "));

  r = run_cli("check-model --model /no/such.model --axiom-of CHANGE-OF-STATE "
              "--predicate p");
  CHECK(r.exit_code == 2);
  CHECK(r.err.starts_with("error: "));
}

TEST_CASE("extract writes the fixture store and report") {
  const fs::path out_dir = scratch_dir() / "extract-full";
  RunResult r = run_cli("extract " + mini_args() + " --out " +
                        out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.empty());
  CHECK(read_file(out_dir / "store.tsv") ==
        read_file(fixture_path("mini.expected.tsv")));
  CHECK(read_file(out_dir / "report.tsv") ==
        read_file(fixture_path("mini.report.tsv")));

  SUBCASE("an affix filter narrows the report to that collector") {
    const fs::path narrow = scratch_dir() / "extract-aize";
    RunResult f = run_cli("extract " + mini_args() + " --out " +
                          narrow.string() + " --affix -Aize");
    CHECK(f.exit_code == 0);
    CHECK(read_file(narrow / "report.tsv") ==
          "affix\tcandidates\tanalyzed\trejected\tassignments\n"
          "-Aize\t8\t8\t3\t6\n");
  }
  SUBCASE("an unknown affix id fails argument validation") {
    RunResult f = run_cli("extract " + mini_args() + " --out " +
                          (scratch_dir() / "unused").string() +
                          " --affix -bogus");
    CHECK(f.exit_code == 1);
  }
}

TEST_CASE("analyze prints one bracketed tree per line") {
  const std::string base = " --lexicon " + fx("lexicon.tsv");
  const std::string extended = " --rules " + fx("rules/extended.rules");

  RunResult r = run_cli("analyze unfasten --tag VB" + base);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "[Vun- fasten]\n[Vun- [fast -en]]\n");
  CHECK(r.err.empty());

  r = run_cli("analyze centralizing --tag VBG" + base);
  CHECK(r.out == "[central -Aize]\n");

  // The spurious sub- parse coexists with the true -Nize derivation of
  // "subsidy"; each rule contributes its own trees.
  r = run_cli("analyze subsidize --tag VB" + base + extended);
  CHECK(r.out == "[sub- [side -Nize]]\n[subsidy -Nize]\n");

  r = run_cli("analyze traditionalize --tag VB" + base + extended);
  CHECK(r.out == "[[tradition -al] -Aize]\n");

  r = run_cli("analyze vaporize --tag VB --affix -Aize --invent-bases" + base);
  CHECK(r.out == "[vapor* -Aize]\n");

  SUBCASE("a word with no licensed base is reported, not an error") {
    RunResult none = run_cli("analyze hypothesize --tag VB" + base);
    CHECK(none.exit_code == 0);
    CHECK(none.out.empty());
    CHECK(none.err == "no analyses for 'hypothesize'\n");
  }
}

TEST_CASE("evaluate reproduces the fixture tables and flags unjudged rows") {
  const std::string common = "evaluate --store " + fx("mini.expected.tsv") +
                             " --gold " + fx("mini.gold.tsv");
  RunResult derived = run_cli(common + " --role derived");
  CHECK(derived.exit_code == 0);
  CHECK(derived.out == read_file(fixture_path("mini.eval.derived.tsv")));
  CHECK(derived.err ==
        "UNJUDGED alleviate -ate CHANGE-OF-STATE\n"
        "UNJUDGED glamorize -Nize CHANGE-OF-STATE\n");

  RunResult base = run_cli(common + " --role base");
  CHECK(base.out == read_file(fixture_path("mini.eval.base.tsv")));
  CHECK(base.err.empty());
}

TEST_CASE("summary prints the type-weighted precision to one decimal") {
  RunResult t1 = run_cli("summary --table " + fx("table1.tsv"));
  CHECK(t1.exit_code == 0);
  CHECK(t1.out == "75.4\n");
  CHECK(run_cli("summary --table " + fx("table2.tsv")).out == "81.7\n");
  CHECK(run_cli("summary --table " + fx("mini.eval.derived.tsv")).out ==
        "86.2\n");
}

TEST_CASE("the recall flow runs from corpus to score") {
  const fs::path out_dir = scratch_dir() / "recall-run";
  RunResult extract = run_cli("extract --corpus " + fx("recall/re.corpus") +
                              " --lexicon " + fx("lexicon.tsv") + " --out " +
                              out_dir.string() + " --affix re-");
  REQUIRE(extract.exit_code == 0);

  // Distinct derived lemmas from the store, one per line.
  std::set<std::string> lemmas;
  for (const std::string& line : lines_of(read_file(out_dir / "store.tsv"))) {
    std::istringstream row(line);
    std::string lemma, pos, role;
    std::getline(row, lemma, '\t');
    std::getline(row, pos, '\t');
    std::getline(row, role, '\t');
    if (role == "derived") lemmas.insert(lemma);
  }
  const fs::path extracted = scratch_dir() / "re.extracted";
  {
    std::ofstream out(extracted);
    for (const std::string& lemma : lemmas) out << lemma << "\n";
  }

  RunResult score = run_cli("recall --extracted " + extracted.string() +
                            " --gold " + fx("recall/re.gold"));
  CHECK(score.exit_code == 0);
  CHECK(score.out == "85.0\n");
}

TEST_CASE("report renders an evaluation table in either format") {
  RunResult tsv =
      run_cli("report --eval " + fx("table1.tsv") + " --format tsv");
  CHECK(tsv.exit_code == 0);
  CHECK(tsv.out == read_file(fixture_path("table1.tsv")));

  RunResult text = run_cli("report --eval " + fx("table2.tsv"));
  CHECK(text.exit_code == 0);
  std::vector<std::string> lines = lines_of(text.out);
  REQUIRE(lines.size() == 8);  // header + seven rows
  // Columns pad to the widest feature, CHANGE-OF-STATE.
  CHECK(lines[0] == "Feature" + std::string(15 - 7 + 2, ' ') +
                        "Affix  Types  Precision");
  CHECK(lines[1].starts_with("TELIC"));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].ends_with("%"));
  }
}

TEST_CASE("the rule catalog resolves flag, then environment, then builtin") {
  const std::string builtin_bytes =
      read_file(morpholex::testing::rules_path("builtin.rules"));
  const std::string extended_path = fx("rules/extended.rules");

  RunResult dump = run_cli("rules --dump");
  CHECK(dump.exit_code == 0);
  CHECK(dump.out == builtin_bytes);

  RunResult listing = run_cli("rules");
  std::vector<std::string> lines = lines_of(listing.out);
  REQUIRE(lines.size() == 20);
  CHECK(lines.front() == "re-\tprefix\tre-\tverb");
  CHECK(lines.back() == "-ness\tsuffix\t-ness\tnoun");

  RunResult env_dump =
      run_cli("rules --dump", "MORPHOLEX_RULES=" + extended_path);
  CHECK(env_dump.out == read_file(extended_path));
  CHECK(lines_of(run_cli("rules", "MORPHOLEX_RULES=" + extended_path).out)
            .size() == 23);

  // An explicit --rules flag wins over the environment.
  RunResult flag_beats_env =
      run_cli("rules --dump --rules " +
                  morpholex::testing::rules_path("builtin.rules").string(),
              "MORPHOLEX_RULES=" + extended_path);
  CHECK(flag_beats_env.out == builtin_bytes);
}

TEST_CASE("axioms prints templates, instantiations, or a documented stub") {
  RunResult tmpl = run_cli("axioms CHANGE-OF-STATE");
  CHECK(tmpl.exit_code == 0);
  CHECK(tmpl.out ==
        "all x,y,e [P(x,y)**e -> [exists e1: [at-end-of(e1,e) & cause(e,e1)] "
        "[rstate(P)(y)**e1] & exists e2: at-beginning-of(e2,e) [not "
        "rstate(P)(y)**e2]]]\n");

  RunResult inst = run_cli("axioms CHANGE-OF-STATE --predicate formalize");
  CHECK(inst.out ==
        "all x,y,e [formalize(x,y)**e -> [exists e1: [at-end-of(e1,e) & "
        "cause(e,e1)] [rstate(formalize)(y)**e1] & exists e2: "
        "at-beginning-of(e2,e) [not rstate(formalize)(y)**e2]]]\n");

  RunResult stub = run_cli("axioms ABSTRACT");
  CHECK(stub.exit_code == 0);
  CHECK(stub.out ==
        "# ABSTRACT: declared but not axiomatized\n"
        "# The referent is abstract.\n");
}

TEST_CASE("check-model prints a verdict, and on failure a witness") {
  const std::string common =
      " --axiom-of CHANGE-OF-STATE --predicate formalize";
  RunResult holds = run_cli("check-model --model " + fx("models/m1.model") +
                            common);
  CHECK(holds.exit_code == 0);
  CHECK(holds.out == "holds\n");

  RunResult fails = run_cli("check-model --model " +
                            fx("models/m1_mutated.model") + common);
  CHECK(fails.exit_code == 0);
  CHECK(fails.out ==
        "fails\n"
        "witness: e=e e2=e2 x=a y=b\n"
        "at: exists e2: at-beginning-of(e2,e) [not rstate(formalize)(y)"
        "**e2]\n");

  RunResult presup =
      run_cli("check-model --model " + fx("models/m1.model") +
              " --axiom-of PRESUPS-RSTATE --predicate formalize");
  CHECK(presup.out ==
        "fails\n"
        "witness: e=e e2=e2 x=a y=b\n"
        "at: exists e2: at-beginning-of(e2,e) [rstate(formalize)(y)**e2]\n");
}
