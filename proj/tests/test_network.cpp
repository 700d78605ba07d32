#include "crnkit/errors.hpp"
#include "crnkit/json_io.hpp"
#include "crnkit/network.hpp"
#include "fixtures.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace crnkit;
using testing::q;


TEST_CASE("single step with symbolic rate") {
  auto net = parse_network("X + Z ->[a] X + Y");
  REQUIRE(net.step_count() == 1);
  CHECK(net.species() == std::vector<std::string>{"X", "Z", "Y"});
  const auto& s = net.steps()[0];
  CHECK(s.reactant[net.species_index("X")] == 1);
  CHECK(s.reactant[net.species_index("Z")] == 1);
  CHECK(s.product[net.species_index("Y")] == 1);
  CHECK(s.rate.render() == "a");
}

TEST_CASE("inflow from the empty complex") {
  auto net = parse_network("0 ->[1] X");
  REQUIRE(net.step_count() == 1);
  CHECK(net.steps()[0].reactant.empty());
  CHECK(net.steps()[0].product[0] == 1);
}

TEST_CASE("coefficients and chains") {
  auto net = parse_network("X + 2Y <-[2] 2Y ->[3] 3Y");
  REQUIRE(net.step_count() == 2);
  std::size_t y = net.species_index("Y");
  const auto& back = net.steps()[0];
  CHECK(back.reactant[y] == 2);
  CHECK(back.product[y] == 2);
  CHECK(back.product[net.species_index("X")] == 1);
  const auto& fwd = net.steps()[1];
  CHECK(fwd.reactant[y] == 2);
  CHECK(fwd.product[y] == 3);
  CHECK(fwd.rate.render() == "3");

  auto rev = parse_network("A <=>[kf,kb] B; B ->[1] C");
  CHECK(rev.step_count() == 3);
  CHECK(rev.steps()[1].rate.render() == "kb");
  CHECK(rev.steps()[1].reactant[rev.species_index("B")] == 1);
}

TEST_CASE("fractional products are allowed, fractional reactants are not") {
  auto net = parse_network("X + Z ->[1] 1/2Y + X + 1/2Z");
  CHECK(net.steps()[0].product[net.species_index("Y")] == q(1, 2));
  CHECK_THROWS_AS(parse_network("1/2X ->[1] Y"), ParseError);
}

TEST_CASE("parse errors name line and column") {
  auto expect_error = [](const char* text, std::size_t line, std::size_t column) {
    try {
      parse_network(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  expect_error("X ->[1] Y\nX ->[0] Z", 2, 6);
  expect_error("X ->[1] -Y", 1, 9);
  expect_error("X -> Y", 1, 6);
  expect_error("X ->[1] X", 1, 9);
  expect_error("X ->[1] 0Y", 1, 9);
  expect_error("X ->[-1] Y", 1, 6);
  expect_error("X $ Y", 1, 3);
}

TEST_CASE("duplicate steps merge by summing rates with a warning") {
  std::vector<std::string> warnings;
  auto net = parse_network("X ->[a] Y\nX ->[b] Y\nY ->[1] X\nY ->[2] X", &warnings);
  CHECK(net.step_count() == 2);
  CHECK(net.steps()[0].rate.render() == "a+b");
  CHECK(net.steps()[1].rate.render() == "3");
  CHECK(warnings.size() == 2);
  CHECK(parse_network(render_network(net)) == net);
}

TEST_CASE("stoichiometric matrices") {
  auto s = stoichiometric_matrices(parse_network("X ->[1] 2X"));
  CHECK(s.alpha(0, 0) == 1);
  CHECK(s.beta(0, 0) == 2);
  CHECK(s.gamma(0, 0) == 1);

  auto t = stoichiometric_matrices(parse_network("X + Y ->[1] Z"));
  CHECK(t.gamma.column(0) == std::vector<Rational>{-1, -1, 1});
}

TEST_CASE("Feinberg-Horn gamma matches the reference matrix") {
  auto net = parse_network(fixtures::kFeinbergHornNetwork);
  CHECK(net.species() == std::vector<std::string>{"A", "B", "C", "D", "E", "F", "G", "H", "J"});
  auto g = stoichiometric_matrices(net).gamma;
  auto expected = fixtures::feinberg_horn_gamma();
  REQUIRE(g.rows() == 9);
  REQUIRE(g.cols() == 10);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(g(i, j) == expected[i][j]);
}

TEST_CASE("rates bind to positive values only") {
  auto r = Rate::parameter("a");
  CHECK(r.bind({{"a", q(2)}}) == 2);
  CHECK_THROWS_AS(r.bind({}), UnboundParameter);
  CHECK_THROWS_AS(r.bind({{"a", q(0)}}), std::invalid_argument);
}

TEST_CASE("species declaration keeps order and idle species") {
  auto net = parse_network("species: X, Y, Z\nZ ->[1] X");
  CHECK(net.species() == std::vector<std::string>{"X", "Y", "Z"});
  CHECK(net.idle_species() == std::vector<std::string>{"Y"});
  CHECK_FALSE(net.is_well_formed());
}

TEST_CASE("variable names follow species names") {
  CHECK(variable_names_for(parse_network("X + Y ->[1] Z")) == std::vector<std::string>{"x", "y", "z"});
  CHECK(variable_names_for(parse_network("X + x ->[1] Z")) == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("JSON network round trip") {
  auto net = parse_network("X + Z ->[a] X + 1/2Y\n2Y ->[3/2] 0");
  auto j = to_json(net);
  CHECK(j["steps"][0]["product"]["Y"] == "1/2");
  CHECK(network_from_json(j) == net);
}

TEST_CASE("property: parse, render, parse is the identity; gamma invariants") {
  testing::Gen gen(31);
  const std::vector<std::string> species{"A", "B", "C", "D"};
  for (int t = 0; t < 300; ++t) {
    std::string text;
    std::size_t steps = 1 + gen.index(4);
    for (std::size_t s = 0; s < steps; ++s) {
      auto complex = [&]() {
        std::string c;
        std::size_t terms = gen.index(3);
        for (std::size_t i = 0; i < terms; ++i) {
          if (!c.empty()) c += " + ";
          std::size_t coef = 1 + gen.index(2);
          c += (coef > 1 ? std::to_string(coef) : "") + species[gen.index(species.size())];
        }
        return c.empty() ? std::string("0") : c;
      };
      std::string l = complex(), r = complex();
      if (l == r) continue;
      text += l + " ->[" + std::to_string(1 + gen.index(3)) + "] " + r + "\n";
    }
    ReactionNetwork net;
    try {
      net = parse_network(text);
    } catch (const ParseError&) {
      continue;  // e.g. every generated step was trivial, or "A + A -> 2A"
    }
    CHECK(parse_network(render_network(net)) == net);
    auto m = stoichiometric_matrices(net);
    for (std::size_t r = 0; r < net.step_count(); ++r) {
      bool nonzero = false;
      for (std::size_t i = 0; i < net.species_count(); ++i) nonzero = nonzero || m.gamma(i, r) != 0;
      CHECK(nonzero);
    }
    for (std::size_t i = 0; i < net.species_count(); ++i) {
      bool used = false;
      for (std::size_t r = 0; r < net.step_count(); ++r) used = used || m.alpha(i, r) + m.beta(i, r) != 0;
      CHECK(used);
    }
  }
}
