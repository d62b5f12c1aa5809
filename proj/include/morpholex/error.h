#ifndef MORPHOLEX_ERROR_H
#define MORPHOLEX_ERROR_H

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace morpholex {

// Fatal condition: malformed input files, unresolvable identifiers,
// contract violations.  Callers that can continue should not throw this;
// they should record a Diagnostic instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// A recoverable problem tied to a position in an input stream.
// Lines and columns are 1-based; column 0 means "whole line".
struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;

  std::string render() const {
    std::ostringstream out;
    out << "WARN " << line << ":" << column << " " << message;
    return out.str();
  }

  bool operator==(const Diagnostic&) const = default;
};

// Accumulates diagnostics during a parse or a pipeline run.
class Diagnostics {
 public:
  void add(int line, int column, std::string message) {
    items_.push_back(Diagnostic{line, column, std::move(message)});
  }

  const std::vector<Diagnostic>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  void print(std::ostream& out) const {
    for (const Diagnostic& d : items_) out << d.render() << "\n";
  }

 private:
  std::vector<Diagnostic> items_;
};

}  // namespace morpholex

#endif  // MORPHOLEX_ERROR_H
