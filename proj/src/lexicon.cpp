#include "morpholex/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace morpholex {

std::string to_string(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
    case Pos::adverb: return "adverb";
    case Pos::other: return "other";
  }
  throw Error("invalid part of speech value");
}

Pos pos_from_string(const std::string& text) {
  if (text == "noun") return Pos::noun;
  if (text == "verb") return Pos::verb;
  if (text == "adjective") return Pos::adjective;
  if (text == "adverb") return Pos::adverb;
  if (text == "other") return Pos::other;
  throw Error("unknown part of speech '" + text + "'");
}

Lexicon::Lexicon() : flag_inventory_{"uninflected", "latinate", "abstract"} {}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    std::string::size_type pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::string trim(const std::string& text) {
  std::string::size_type a = text.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::string::size_type b = text.find_last_not_of(" \t");
  return text.substr(a, b - a + 1);
}

}  // namespace

Lexicon Lexicon::from_stream(std::istream& in) {
  Lexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string directive = "#!flags:";
      if (line.rfind(directive, 0) == 0) {
        for (const std::string& raw : split(line.substr(directive.size()), ',')) {
          std::string flag = trim(raw);
          if (!flag.empty()) lex.extend_flag_inventory(flag);
        }
      }
      continue;
    }
    std::istringstream fields(line);
    std::string lemma, pos_text, flags_text, extra;
    fields >> lemma >> pos_text;
    if (lemma.empty() || pos_text.empty()) {
      std::ostringstream msg;
      msg << "lexicon line " << lineno << ": expected 'lemma pos [flags]'";
      throw Error(msg.str());
    }
    fields >> flags_text;
    if (fields >> extra) {
      std::ostringstream msg;
      msg << "lexicon line " << lineno << ": too many columns";
      throw Error(msg.str());
    }
    LexEntry entry;
    entry.lemma = lemma;
    try {
      entry.pos = pos_from_string(pos_text);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "lexicon line " << lineno << ": " << e.what();
      throw Error(msg.str());
    }
    if (!flags_text.empty()) {
      for (const std::string& flag : split(flags_text, ',')) {
        if (flag.empty()) continue;
        if (!lex.flag_inventory_.count(flag)) {
          std::ostringstream msg;
          msg << "lexicon line " << lineno << ": unknown flag '" << flag << "'";
          throw Error(msg.str());
        }
        entry.flags.insert(flag);
      }
    }
    lex.add(entry);
  }
  return lex;
}

Lexicon Lexicon::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file: " + path.string());
  return from_stream(in);
}

void Lexicon::add(const LexEntry& entry) {
  for (const std::string& flag : entry.flags) {
    if (!flag_inventory_.count(flag))
      throw Error("unknown flag '" + flag + "' on lemma '" + entry.lemma + "'");
  }
  auto [it, inserted] = entries_.try_emplace({entry.lemma, entry.pos}, entry);
  if (!inserted)
    it->second.flags.insert(entry.flags.begin(), entry.flags.end());
}

bool Lexicon::contains(const std::string& lemma, Pos pos,
                       const std::set<std::string>& required_flags) const {
  const LexEntry* entry = find(lemma, pos);
  if (!entry) return false;
  return std::includes(entry->flags.begin(), entry->flags.end(),
                       required_flags.begin(), required_flags.end());
}

const LexEntry* Lexicon::find(const std::string& lemma, Pos pos) const {
  auto it = entries_.find({lemma, pos});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const LexEntry*> Lexicon::find_all(const std::string& lemma) const {
  std::vector<const LexEntry*> out;
  for (auto it = entries_.lower_bound({lemma, Pos::noun});
       it != entries_.end() && it->first.first == lemma; ++it) {
    out.push_back(&it->second);
  }
  return out;
}

std::vector<const LexEntry*> Lexicon::all_entries() const {
  std::vector<const LexEntry*> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(&entry);
  return out;
}

void Lexicon::extend_flag_inventory(const std::string& flag) {
  flag_inventory_.insert(flag);
}

void Lexicon::serialize(std::ostream& out) const {
  std::vector<std::string> lines;
  lines.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) {
    std::ostringstream line;
    line << entry.lemma << "\t" << to_string(entry.pos);
    if (!entry.flags.empty()) {
      line << "\t";
      bool first = true;
      for (const std::string& flag : entry.flags) {
        if (!first) line << ",";
        line << flag;
        first = false;
      }
    }
    lines.push_back(line.str());
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& line : lines) out << line << "\n";
}

}  // namespace morpholex
