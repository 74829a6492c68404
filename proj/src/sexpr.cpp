#include "mauto/sexpr.hpp"

#include <cctype>

#include "mauto/error.hpp"

namespace mauto {

bool SExpr::headed(std::string_view head) const {
  return is_list() && !items.empty() && items.front().is_atom && items.front().text == head;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return pos_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) throw Error("unexpected end of input");
    if (s_[pos_] == ')') throw Error("unexpected ')' at offset " + std::to_string(pos_));
    SExpr e;
    if (s_[pos_] == '(') {
      ++pos_;
      e.is_atom = false;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) throw Error("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    const auto start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')' && s_[pos_] != ';')
      ++pos_;
    e.text = std::string(s_.substr(start, pos_ - start));
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SExpr parse_sexpr(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.done()) throw Error("trailing input after expression");
  return e;
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

std::string to_string(const SExpr& e) {
  if (e.is_atom) return e.text;
  std::string s = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) s += ' ';
    s += to_string(e.items[i]);
  }
  return s + ")";
}

}  // namespace mauto
