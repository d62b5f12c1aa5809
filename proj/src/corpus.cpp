#include "morpholex/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace morpholex {

std::string to_upper_ascii(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::string to_lower_ascii(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

namespace {

// Rejects malformed UTF-8: stray continuation bytes, truncated sequences,
// overlong encodings, surrogates, and out-of-range code points.
void validate_utf8(const std::string& line, int lineno) {
  const unsigned char* bytes =
      reinterpret_cast<const unsigned char*>(line.data());
  std::size_t n = line.size();
  std::size_t i = 0;
  while (i < n) {
    unsigned char c = bytes[i];
    int extra = 0;
    unsigned int cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      std::ostringstream msg;
      msg << "corpus line " << lineno << ": invalid UTF-8 byte at offset "
          << (i + 1);
      throw Error(msg.str());
    }
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= n || (bytes[i + k] & 0xC0) != 0x80) {
        std::ostringstream msg;
        msg << "corpus line " << lineno
            << ": truncated UTF-8 sequence at offset " << (i + 1);
        throw Error(msg.str());
      }
      cp = (cp << 6) | (bytes[i + k] & 0x3F);
    }
    bool ok = (extra == 1 && cp >= 0x80) ||
              (extra == 2 && cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF)) ||
              (extra == 3 && cp >= 0x10000 && cp <= 0x10FFFF);
    if (!ok) {
      std::ostringstream msg;
      msg << "corpus line " << lineno << ": invalid UTF-8 sequence at offset "
          << (i + 1);
      throw Error(msg.str());
    }
    i += 1 + extra;
  }
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

}  // namespace

Corpus Corpus::from_stream(std::istream& in, Diagnostics& diags) {
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    validate_utf8(line, lineno);
    TaggedSentence sentence;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      if (i >= line.size()) break;
      std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      std::string chunk = line.substr(start, i - start);
      int column = static_cast<int>(start) + 1;
      std::size_t slash = chunk.rfind('/');
      if (slash == std::string::npos) {
        diags.add(lineno, column, "token '" + chunk + "' has no tag");
        continue;
      }
      std::string surface = chunk.substr(0, slash);
      std::string tag = chunk.substr(slash + 1);
      if (surface.empty() || tag.empty()) {
        diags.add(lineno, column, "token '" + chunk + "' is malformed");
        continue;
      }
      sentence.tokens.push_back(Token{surface, tag, lineno, column});
      ++corpus.token_count_;
    }
    if (!sentence.tokens.empty()) corpus.sentences_.push_back(std::move(sentence));
  }
  return corpus;
}

Corpus Corpus::from_file(const std::filesystem::path& path, Diagnostics& diags) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path.string());
  return from_stream(in, diags);
}

TypeInventory::TypeInventory(const Corpus& corpus) {
  std::map<std::pair<std::string, std::string>, Entry> index;
  for (const TaggedSentence& sentence : corpus.sentences()) {
    for (const Token& token : sentence.tokens) {
      Entry& entry = index[{token.surface, token.tag}];
      if (entry.count == 0) {
        entry.surface = token.surface;
        entry.tag = token.tag;
      }
      ++entry.count;
      entry.positions.emplace_back(token.line, token.column);
    }
  }
  entries_.reserve(index.size());
  for (auto& [key, entry] : index) entries_.push_back(std::move(entry));
}

const TypeInventory::Entry* TypeInventory::find(const std::string& surface,
                                                const std::string& tag) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), std::make_pair(surface, tag),
      [](const Entry& e, const std::pair<std::string, std::string>& key) {
        return std::tie(e.surface, e.tag) < std::tie(key.first, key.second);
      });
  if (it != entries_.end() && it->surface == surface && it->tag == tag)
    return &*it;
  return nullptr;
}

SurfacePattern::SurfacePattern(std::string orth_pattern, std::string tag_pattern)
    : orth_(std::move(orth_pattern)), tag_(std::move(tag_pattern)) {
  try {
    orth_re_ = std::regex(orth_, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw Error("invalid orthographic pattern '" + orth_ + "': " + e.what());
  }
  try {
    tag_re_ = std::regex(tag_, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw Error("invalid tag pattern '" + tag_ + "': " + e.what());
  }
}

bool SurfacePattern::matches(const std::string& surface,
                             const std::string& tag) const {
  return std::regex_search(to_upper_ascii(surface), orth_re_) &&
         std::regex_search(tag, tag_re_);
}

std::vector<TypeInventory::Entry> collect_candidates(
    const TypeInventory& inventory, const SurfacePattern& pattern) {
  std::vector<TypeInventory::Entry> out;
  for (const TypeInventory::Entry& entry : inventory.entries()) {
    if (pattern.matches(entry.surface, entry.tag)) out.push_back(entry);
  }
  return out;
}

namespace {

bool is_consonant(char c) {
  static const std::string consonants = "bcdfghjklmnpqrstvwxz";
  return consonants.find(c) != std::string::npos;
}

void push_unique(std::vector<std::string>& list, std::string value) {
  if (std::find(list.begin(), list.end(), value) == list.end())
    list.push_back(std::move(value));
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// After removing the inflectional ending, a doubled final consonant is
// collapsed: committ -> commit.
void push_undoubled(std::vector<std::string>& list, const std::string& stem) {
  if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
      is_consonant(stem.back())) {
    push_unique(list, stem.substr(0, stem.size() - 1));
  }
}

}  // namespace

std::vector<std::string> normalize_inflection(const std::string& surface,
                                              const std::string& tag,
                                              Diagnostics& diags) {
  const std::string lower = to_lower_ascii(surface);
  std::vector<std::string> lemmas;
  if (tag == "VB" || tag == "VBP" || tag == "NN" || tag == "JJ") {
    push_unique(lemmas, lower);
  } else if (tag == "VBZ" || tag == "NNS") {
    if (ends_with(lower, "ies") && lower.size() > 3)
      push_unique(lemmas, lower.substr(0, lower.size() - 3) + "y");
    if (ends_with(lower, "es") && lower.size() > 2) {
      push_unique(lemmas, lower.substr(0, lower.size() - 1));
      push_unique(lemmas, lower.substr(0, lower.size() - 2));
    }
    if (ends_with(lower, "s") && lower.size() > 1)
      push_unique(lemmas, lower.substr(0, lower.size() - 1));
    push_unique(lemmas, lower);
  } else if (tag == "VBD" || tag == "VBN") {
    if (ends_with(lower, "ed") && lower.size() > 2) {
      push_unique(lemmas, lower.substr(0, lower.size() - 1));
      std::string stem = lower.substr(0, lower.size() - 2);
      push_unique(lemmas, stem);
      push_undoubled(lemmas, stem);
    }
    push_unique(lemmas, lower);
  } else if (tag == "VBG") {
    if (ends_with(lower, "ing") && lower.size() > 3) {
      std::string stem = lower.substr(0, lower.size() - 3);
      push_unique(lemmas, stem + "e");
      push_unique(lemmas, stem);
      push_undoubled(lemmas, stem);
    }
    push_unique(lemmas, lower);
  } else {
    diags.add(0, 0, "unsupported tag '" + tag + "' on '" + surface + "'");
  }
  return lemmas;
}

}  // namespace morpholex
