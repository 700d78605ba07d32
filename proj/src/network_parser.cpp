#include "crnkit/errors.hpp"
#include "crnkit/network.hpp"

#include <cctype>
#include <optional>

namespace crnkit {

namespace {

enum class Tok { number, ident, plus, minus, fwd, bwd, both, lbracket, rbracket, comma, semi, colon, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view s) { return line.substr(i, s.size()) == s; };
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (starts("<=>")) {
      out.push_back({Tok::both, "<=>", col});
      i += 3;
    } else if (starts("->")) {
      out.push_back({Tok::fwd, "->", col});
      i += 2;
    } else if (starts("<-")) {
      out.push_back({Tok::bwd, "<-", col});
      i += 2;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t s = i;
      while (i < line.size() && (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '.' || line[i] == '/'))
        ++i;
      out.push_back({Tok::number, std::string(line.substr(s, i - s)), col});
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t s = i;
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(line.substr(s, i - s)), col});
    } else {
      Tok k;
      switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '[': k = Tok::lbracket; break;
        case ']': k = Tok::rbracket; break;
        case ',': k = Tok::comma; break;
        case ';': k = Tok::semi; break;
        case ':': k = Tok::colon; break;
        default: throw ParseError(line_no, col, "unexpected character '" + std::string(1, c) + "'");
      }
      out.push_back({k, std::string(1, c), col});
      ++i;
    }
  }
  out.push_back({Tok::end, "", line.size() + 1});
  return out;
}

struct ParsedComplex {
  Complex complex;
  std::size_t column;
  std::optional<std::size_t> fractional_column;
};

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::size_t line_no, std::vector<std::string>& species)
      : toks_(std::move(toks)), line_(line_no), species_(species) {}

  bool at_end() const { return toks_[pos_].kind == Tok::end; }
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (toks_[pos_].kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, toks_[pos_].column, msg); }
  const Token& expect(Tok k, const char* what) {
    if (toks_[pos_].kind != k) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }

  std::size_t intern(const std::string& name) {
    for (std::size_t i = 0; i < species_.size(); ++i)
      if (species_[i] == name) return i;
    species_.push_back(name);
    return species_.size() - 1;
  }

  void species_declaration() {
    do {
      intern(expect(Tok::ident, "species name").text);
    } while (accept(Tok::comma));
    if (!at_end()) fail("unexpected token in species declaration");
  }

  ParsedComplex complex() {
    ParsedComplex pc{{}, peek().column, std::nullopt};
    if (peek().kind == Tok::number && toks_[pos_ + 1].kind != Tok::ident) {
      Rational v = number(peek());
      if (v != 0) fail("a bare number is only allowed as the empty complex \"0\"");
      ++pos_;
      return pc;
    }
    do {
      if (peek().kind == Tok::minus) fail("negative stoichiometric coefficient");
      Rational coef = 1;
      std::size_t col = peek().column;
      if (peek().kind == Tok::number) {
        coef = number(peek());
        ++pos_;
        if (coef == 0) {
          --pos_;
          fail("zero stoichiometric coefficient");
        }
      }
      const Token& name = expect(Tok::ident, "species name");
      std::size_t idx = intern(name.text);
      if (!is_integer(coef) && !pc.fractional_column) pc.fractional_column = col;
      pc.complex.coefficients[idx] += coef;
    } while (accept(Tok::plus));
    return pc;
  }

  Rate rate() {
    Rate r;
    do {
      const Token& t = peek();
      if (t.kind == Tok::minus) fail("rate coefficients must be positive");
      if (t.kind == Tok::ident) {
        r += Rate::parameter(t.text);
        ++pos_;
      } else if (t.kind == Tok::number) {
        Rational v = number(t);
        if (v == 0) fail("zero rate coefficient");
        r += Rate::literal(v);
        ++pos_;
      } else {
        fail("expected a rate (identifier or positive number)");
      }
    } while (accept(Tok::plus));
    return r;
  }

  Rational number(const Token& t) const {
    try {
      return parse_rational(t.text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_, t.column, e.what());
    }
  }

  void require_integral(const ParsedComplex& pc) const {
    if (pc.fractional_column) {
      throw ParseError(line_, *pc.fractional_column, "reactant coefficients must be integers");
    }
  }

  // chain := complex (arrow complex)+
  void chain(std::vector<ReactionStep>& steps) {
    ParsedComplex left = complex();
    bool any_arrow = false;
    while (peek().kind == Tok::fwd || peek().kind == Tok::bwd || peek().kind == Tok::both) {
      Tok arrow = peek().kind;
      ++pos_;
      expect(Tok::lbracket, "'[' after arrow");
      Rate first = rate();
      Rate second;
      if (arrow == Tok::both) {
        expect(Tok::comma, "',' between forward and backward rates");
        second = rate();
      }
      expect(Tok::rbracket, "']'");
      ParsedComplex right = complex();
      if (left.complex == right.complex) {
        throw ParseError(line_, right.column, "reaction step must change at least one species");
      }
      if (arrow == Tok::fwd || arrow == Tok::both) {
        require_integral(left);
        steps.push_back({left.complex, right.complex, first});
      }
      if (arrow == Tok::bwd || arrow == Tok::both) {
        require_integral(right);
        steps.push_back({right.complex, left.complex, arrow == Tok::both ? second : first});
      }
      left = std::move(right);
      any_arrow = true;
    }
    if (!any_arrow) fail("expected a reaction arrow (->[k], <-[k] or <=>[kf,kb])");
  }

  void parse(std::vector<ReactionStep>& steps) {
    if (peek().kind == Tok::ident && peek().text == "species" && toks_[pos_ + 1].kind == Tok::colon) {
      pos_ += 2;
      species_declaration();
      return;
    }
    do {
      if (at_end()) break;
      chain(steps);
    } while (accept(Tok::semi));
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::vector<std::string>& species_;
};

}  // namespace

ReactionNetwork parse_network(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<std::string> species;
  std::vector<ReactionStep> steps;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    LineParser(tokenize(line, line_no), line_no, species).parse(steps);
    if (end == text.size()) break;
    start = end + 1;
  }
  if (steps.empty()) throw ParseError(line_no, 1, "network has no reaction steps");
  try {
    return ReactionNetwork::build(std::move(species), std::move(steps), warnings);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, 1, e.what());
  }
}

}  // namespace crnkit
