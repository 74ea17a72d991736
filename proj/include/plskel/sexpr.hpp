#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace plskel {

// Atom or list, with the source position of its first character (1-based).
struct Sexpr {
  bool is_list = false;
  std::string atom;
  std::vector<Sexpr> items;
  std::size_t line = 0;
  std::size_t col = 0;

  bool is_atom() const { return !is_list; }
  // First element's text for a list starting with an atom, else "".
  const std::string& head() const;
};

// Top-level expressions of a document. ';' starts a comment running to the end
// of the line. Throws SyntaxError with the offending position.
std::vector<Sexpr> parse_sexprs(std::string_view text);

}  // namespace plskel
