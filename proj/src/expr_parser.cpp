#include "crnkit/expr_parser.hpp"

#include "crnkit/errors.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace crnkit {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class ExprParser {
 public:
  ExprParser(std::string_view text, std::span<const std::string> names, std::size_t line, std::size_t col_offset)
      : text_(text), names_(names), line_(line), col_offset_(col_offset) {}

  Polynomial parse_all() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_offset_ + pos_ + 1, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::size_t dim() const { return names_.size(); }

  Polynomial expr() {
    Polynomial acc(dim());
    bool first = true;
    while (true) {
      char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      if (negate) acc -= t;
      else acc += t;
      first = false;
    }
    return acc;
  }

  bool starts_factor(char c) const { return is_digit(c) || c == '.' || is_ident_start(c) || c == '('; }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos_;
        std::size_t at = pos_;
        Polynomial d = factor();
        if (d.degree() != 0 || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc *= Rational(1) / d.terms().begin()->second;
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      Polynomial f = factor();
      return c == '-' ? -f : f;
    }
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      base = pow(base, static_cast<std::uint32_t>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (is_digit(c) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.')) ++pos_;
      // Optional exponent part, only if followed by digits.
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && is_digit(text_[pos_])) {
          while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        } else {
          pos_ = save;
        }
      }
      try {
        return Polynomial::constant(dim(), parse_rational(text_.substr(start, pos_ - start)));
      } catch (const std::invalid_argument& e) {
        pos_ = start;
        fail(e.what());
      }
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return Polynomial::variable(dim(), i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    if (c == '\0') fail("unexpected end of expression");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t line_;
  std::size_t col_offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return ExprParser(text, names, 1, 0).parse_all();
}

PolynomialSystem parse_system(std::string_view text) {
  struct Pending {
    std::string rhs;
    std::size_t line;
    std::size_t column;
  };
  std::vector<std::string> names;
  std::vector<Pending> pending;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) {
      if (end == text.size()) break;
      continue;
    }
    if (!is_ident_start(line[i])) throw ParseError(line_no, i + 1, "expected a variable name");
    std::size_t name_start = i;
    while (i < line.size() && is_ident_char(line[i])) ++i;
    std::string name(line.substr(name_start, i - name_start));
    if (i >= line.size() || line[i] != '\'') throw ParseError(line_no, i + 1, "expected \"'\" after variable name");
    ++i;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] != '=') throw ParseError(line_no, i + 1, "expected '='");
    ++i;
    for (const auto& n : names) {
      if (n == name) throw ParseError(line_no, name_start + 1, "duplicate equation for '" + name + "'");
    }
    names.push_back(name);
    pending.push_back({std::string(line.substr(i)), line_no, i});
    if (end == text.size()) break;
  }
  if (names.empty()) throw ParseError(1, 1, "no equations found");

  std::vector<Polynomial> comps;
  for (const auto& p : pending) comps.push_back(ExprParser(p.rhs, names, p.line, p.column).parse_all());
  return PolynomialSystem(std::move(names), std::move(comps));
}

std::string render_system_file(const PolynomialSystem& sys) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    os << sys.names()[i] << "' = " << render(sys[i], sys.names()) << '\n';
  }
  return os.str();
}

}  // namespace crnkit
