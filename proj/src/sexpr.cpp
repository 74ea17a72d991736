#include "plskel/sexpr.hpp"

#include <cctype>

#include "plskel/errors.hpp"

namespace plskel {

const std::string& Sexpr::head() const {
  static const std::string empty;
  if (!is_list || items.empty() || items.front().is_list) return empty;
  return items.front().atom;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexpr> document() {
    std::vector<Sexpr> out;
    skip();
    while (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw SyntaxError(line_, col_, "unexpected ')'");
      out.push_back(expr());
      skip();
    }
    return out;
  }

 private:
  Sexpr expr() {
    Sexpr e;
    e.line = line_;
    e.col = col_;
    if (text_[pos_] == '(') {
      e.is_list = true;
      advance();
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw SyntaxError(e.line, e.col, "unbalanced '(' at end of input");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(expr());
      }
    }
    while (pos_ < text_.size() && !delimiter(text_[pos_])) {
      e.atom.push_back(text_[pos_]);
      advance();
    }
    return e;
  }

  static bool delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';';
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<Sexpr> parse_sexprs(std::string_view text) { return Reader(text).document(); }

}  // namespace plskel
