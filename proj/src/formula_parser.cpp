#include <cctype>
#include <vector>

#include "pnts/error.hpp"
#include "pnts/formula.hpp"

namespace pnts {

namespace {

enum class Tok { number, ident, diamond, lparen, rparen, star, plus, oplus, ominus, join, meet, dot, tilde, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto starts = [&](std::string_view t) { return s.substr(i, t.size()) == t; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (digit(c) || (c == '-' && i + 1 < s.size() && digit(s[i + 1]))) {
      ++i;
      while (i < s.size() && digit(s[i])) ++i;
      if (i + 1 < s.size() && s[i] == '/' && digit(s[i + 1])) {
        ++i;
        while (i < s.size() && digit(s[i])) ++i;
      } else if (i + 1 < s.size() && s[i] == '.' && digit(s[i + 1])) {
        ++i;
        while (i < s.size() && digit(s[i])) ++i;
      }
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
    } else if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
    } else if (c == '<') {
      const auto close = s.find('>', i);
      if (close == std::string_view::npos) throw ParseError("unterminated diamond '<'", i);
      out.push_back({Tok::diamond, std::string(s.substr(i + 1, close - i - 1)), start});
      i = close + 1;
    } else if (starts("(+)")) {
      out.push_back({Tok::oplus, "(+)", start});
      i += 3;
    } else if (starts("(-)")) {
      out.push_back({Tok::ominus, "(-)", start});
      i += 3;
    } else if (starts("\\/")) {
      out.push_back({Tok::join, "\\/", start});
      i += 2;
    } else if (starts("/\\")) {
      out.push_back({Tok::meet, "/\\", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case '*': k = Tok::star; break;
        case '+': k = Tok::plus; break;
        case '.': k = Tok::dot; break;
        case '~': k = Tok::tilde; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", i);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw ParseError(std::string("expected ") + what, peek().pos);
  }

  bool at_binder() const {
    return peek().kind == Tok::ident && (peek().text == "mu" || peek().text == "nu");
  }

  Formula formula() {
    if (at_binder()) return binder();
    return join();
  }

  Formula binder() {
    const bool least = next().text == "mu";
    const Token& v = next();
    if (v.kind != Tok::ident || v.text == "mu" || v.text == "nu" || v.text == "prop")
      throw ParseError("expected a variable after fixpoint binder", v.pos);
    std::string name = v.text;
    expect(Tok::dot, "'.' after the bound variable");
    Formula body = formula();
    return least ? Formula::mu(std::move(name), std::move(body))
                 : Formula::nu(std::move(name), std::move(body));
  }

  Formula join() {
    Formula f = meet();
    while (accept(Tok::join)) f = Formula::join(std::move(f), meet());
    return f;
  }

  Formula meet() {
    Formula f = sum();
    while (accept(Tok::meet)) f = Formula::meet(std::move(f), sum());
    return f;
  }

  Formula sum() {
    Formula f = product();
    for (;;) {
      if (accept(Tok::plus))
        f = Formula::plus(std::move(f), product());
      else if (accept(Tok::oplus))
        f = Formula::oplus(std::move(f), product());
      else
        return f;
    }
  }

  Formula product() {
    Formula f = unary();
    for (;;) {
      if (accept(Tok::dot)) {
        f = Formula::prod(std::move(f), unary());
      } else if (accept(Tok::ominus)) {
        f = Formula::minus(std::move(f), number_literal());
      } else {
        return f;
      }
    }
  }

  Rational number_literal() {
    if (peek().kind == Tok::number) return Rational::parse(next().text);
    if (peek().kind == Tok::lparen && peek(1).kind == Tok::number && peek(2).kind == Tok::rparen) {
      ++pos_;
      Rational q = Rational::parse(next().text);
      ++pos_;
      return q;
    }
    throw ParseError("expected a rational constant", peek().pos);
  }

  bool at_scaled_number() const {
    if (peek().kind == Tok::number) return true;
    return peek().kind == Tok::lparen && peek(1).kind == Tok::number && peek(2).kind == Tok::rparen;
  }

  Formula unary() {
    if (accept(Tok::tilde)) return Formula::neg(unary());
    if (peek().kind == Tok::diamond) {
      std::string label = next().text;
      return Formula::diamond(std::move(label), unary());
    }
    if (at_binder()) return binder();
    if (at_scaled_number()) {
      Rational q = number_literal();
      if (accept(Tok::star)) return Formula::scale(q, unary());
      return Formula::constant(q);
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    if (accept(Tok::lparen)) {
      Formula f = formula();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (t.kind == Tok::ident) {
      ++pos_;
      if (t.text == "prop") {
        expect(Tok::lparen, "'(' after prop");
        const Token& name = next();
        if (name.kind != Tok::ident && name.kind != Tok::number)
          throw ParseError("expected a proposition name", name.pos);
        std::string n = name.text;
        expect(Tok::rparen, "')' closing prop(");
        return Formula::prop(std::move(n));
      }
      return Formula::var(t.text);
    }
    throw ParseError(t.kind == Tok::end ? "unexpected end of formula" : "unexpected '" + t.text + "'",
                     t.pos);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Logic& logic) {
  Formula f = Parser(text).parse();
  check_admissible(f, logic);
  return f;
}

}  // namespace pnts
