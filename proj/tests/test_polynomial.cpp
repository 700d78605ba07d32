#include "crnkit/errors.hpp"
#include "crnkit/expr_parser.hpp"
#include "crnkit/polynomial.hpp"
#include "crnkit/rational.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace crnkit;
using testing::poly;
using testing::q;

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/4") == q(-3, 4));
  CHECK(parse_rational("0.125") == q(1, 8));
  CHECK(parse_rational("2.5e-3") == q(1, 400));
  CHECK(parse_rational("1e-3") == q(1, 1000));
  CHECK(parse_rational("4/6") == q(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(to_string(q(-6, 4)) == "-3/2");
}

TEST_CASE("integer normalization keeps signs and divides by the gcd") {
  std::vector<Rational> v{q(1, 2), q(-3, 4), q(0)};
  auto n = normalize_to_integers(v);
  CHECK(n == std::vector<Rational>{q(2), q(-3), q(0)});
  std::vector<Rational> w{q(4), q(6)};
  CHECK(normalize_to_integers(w) == std::vector<Rational>{q(2), q(3)});
}

TEST_CASE("arithmetic cancels and prunes zero terms") {
  CHECK(poly("x + y") + poly("-x") == poly("y"));
  CHECK(poly("x") * poly("y") == poly("x*y"));
  auto z = poly("x^2 + y") * Rational(0);
  CHECK(z.is_zero());
  CHECK(z.size() == 0);
  CHECK(poly("x - x").is_zero());
  CHECK_THROWS_AS(poly("x") + Polynomial::variable(3, 0), std::invalid_argument);
}

TEST_CASE("partial derivatives") {
  CHECK(partial_derivative(poly("x^2 + y^2"), 0) == poly("2x"));
  CHECK(partial_derivative(poly("x^2"), 1).is_zero());
  CHECK(partial_derivative(poly("3*x*y", {"x", "y"}), 0) == poly("3y"));
  CHECK_THROWS_AS(partial_derivative(poly("x"), 2), std::out_of_range);
}

TEST_CASE("substitution by rationals and polynomials") {
  Substitution s;
  s[0] = Rational(0);
  CHECK(substitute(poly("x^2 + y^2"), s) == poly("y^2"));

  Substitution t;
  t[0] = Rational(3);
  CHECK(substitute(poly("x"), t) == Polynomial::constant(2, 3));

  // Ellipse/hyperbola template with a=2, b=1, c=3, K=L=1 vanishes on y = x.
  Substitution line;
  line[1] = poly("x");
  CHECK(substitute(poly("-x^2 - 2*x*y + 3*y^2"), line).is_zero());
  CHECK(substitute(poly("2*x^2 - x*y - y^2"), line).is_zero());
  CHECK_THROWS(substitute(poly("x"), Substitution{{5, Rational(1)}}));
}

TEST_CASE("rendering is graded-lex descending") {
  std::vector<std::string> names{"x1", "x2", "x3"};
  CHECK(render(poly("5/3*x1^2*x3", names), names) == "5/3*x1^2*x3");
  CHECK(render(poly("y + x^2 - 1"), {std::vector<std::string>{"x", "y"}}) == "x^2 + y - 1");
  CHECK(render(poly("-x*y + 2*y^2 - x"), std::vector<std::string>{"x", "y"}) == "-x*y + 2*y^2 - x");
  CHECK(render(Polynomial(2), std::vector<std::string>{"x", "y"}) == "0");
  CHECK(default_variable_names(2) == std::vector<std::string>{"x", "y"});
  CHECK(default_variable_names(5).front() == "x1");
}

TEST_CASE("expression parser errors carry positions") {
  try {
    poly("x + * y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(poly("z"), ParseError);
  CHECK_THROWS_AS(poly("x / y"), ParseError);
  CHECK(poly("(x + y)^2") == poly("x^2 + 2*x*y + y^2"));
  CHECK(poly("x/2") == poly("1/2 x"));
  CHECK(poly("-(x - 1)") == poly("1 - x"));
}

TEST_CASE("system files parse and round-trip") {
  auto sys = parse_system("# oscillator\nx' = y\ny' = -x\n");
  CHECK(sys.dim() == 2);
  CHECK(render(sys) == "{y, -x}");
  CHECK(parse_system(render_system_file(sys)) == sys);
  CHECK_THROWS_AS(parse_system("x' = y\nx' = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_system("x = y\n"), ParseError);
}

TEST_CASE("ring axioms on random polynomials") {
  testing::Gen gen(11);
  for (int i = 0; i < 300; ++i) {
    std::size_t dim = 1 + gen.index(3);
    auto p = gen.polynomial(dim, 3);
    auto r = gen.polynomial(dim, 3);
    auto s = gen.polynomial(dim, 3);
    CHECK((p + r) + s == p + (r + s));
    CHECK(p * (r + s) == p * r + p * s);
    CHECK(p * r == r * p);
    CHECK((p - p).is_zero());
    CHECK(pow(p, 2) == p * p);
  }
}

TEST_CASE("derivative agrees with a centered finite difference") {
  testing::Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    std::size_t dim = 1 + gen.index(3);
    auto p = gen.polynomial(dim, 3, 5);
    std::vector<double> pt(dim);
    for (auto& v : pt) v = 0.5 + static_cast<double>(gen.index(100)) / 50.0;
    std::size_t var = gen.index(dim);
    auto d = partial_derivative(p, var);
    double exact = evaluate(d, std::span<const double>(pt));
    const double h = 1e-5;
    auto plus = pt, minus = pt;
    plus[var] += h;
    minus[var] -= h;
    double fd = (evaluate(p, std::span<const double>(plus)) - evaluate(p, std::span<const double>(minus))) / (2 * h);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("rendering round-trips through the parser") {
  testing::Gen gen(13);
  for (int i = 0; i < 300; ++i) {
    std::size_t dim = 1 + gen.index(4);
    auto names = default_variable_names(dim);
    auto p = gen.polynomial(dim, 3, 5);
    auto text = render(p, names);
    CHECK(parse_polynomial(text, names) == p);
    CHECK(render(parse_polynomial(text, names), names) == text);
  }
}

TEST_CASE("Lie derivative has no one-half factor") {
  auto sys = testing::ode({"1"}, {"x"});
  CHECK(lie_derivative(poly("x^2", {"x"}), sys) == poly("2x", {"x"}));
}

TEST_CASE("conversion to double rounds to nearest") {
  CHECK(crnkit::to_double(q(1, 1000)) == 0.001);
  CHECK(crnkit::to_double(q(1, 3)) == 1.0 / 3.0);
  CHECK(crnkit::to_double(q(-7, 10)) == -0.7);
  CHECK(crnkit::to_double(crnkit::parse_rational("123456789012345678901234567890")) == doctest::Approx(1.2345678901234568e29));
}
