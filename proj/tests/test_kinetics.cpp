#include "crnkit/errors.hpp"
#include "crnkit/kinetics.hpp"
#include "fixtures.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace crnkit;
using testing::poly;
using testing::q;
using testing::ode;

namespace {

PolynomialSystem random_kinetic_system(testing::Gen& gen, std::size_t dim) {
  std::vector<Polynomial> comps;
  for (std::size_t m = 0; m < dim; ++m) {
    Polynomial p(dim);
    std::size_t terms = gen.index(5);
    for (std::size_t t = 0; t < terms; ++t) {
      auto mono = gen.monomial(dim, 2);
      Rational c = gen.rational();
      if (mono[m] == 0 && c < 0) c = -c;
      p.add_term(mono, c);
    }
    comps.push_back(p);
  }
  return PolynomialSystem(default_variable_names(dim), comps);
}

}  // namespace

TEST_CASE("induced ODE of the diagonal example network") {
  auto net = parse_network(fixtures::kDiagonalExampleNetwork);
  auto sys = induced_kinetic_ode(net, {{"a", q(2)}, {"b", q(3)}});
  CHECK(sys == ode({"2*y^2 - 3*x*y", "3*x^2 - 2*x*y"}));
  CHECK(sys.names() == std::vector<std::string>{"x", "y"});
  CHECK_THROWS_AS(induced_kinetic_ode(net, {{"a", q(2)}}), UnboundParameter);
  CHECK_THROWS_AS(induced_kinetic_ode(net, {{"a", q(2)}, {"b", q(-1)}}), std::invalid_argument);
}

TEST_CASE("induced ODE: outflow and the mixed-sign example network") {
  CHECK(induced_kinetic_ode(parse_network("X ->[1] 0")) == ode({"-x"}));
  auto net = parse_network("X + Z ->[a] X + Y <-[a] Y + Z");
  auto sys = induced_kinetic_ode(net, {{"a", q(5)}});
  // Species order is X, Z, Y (first appearance).
  CHECK(sys == ode({"5*y*z", "-5*x*z - 5*y*z", "5*x*z"}, {"x", "z", "y"}));
}

TEST_CASE("negative cross-effect fixtures") {
  auto osc = negative_cross_effect(ode({"y", "-x"}));
  CHECK_FALSE(osc.is_kinetic);
  REQUIRE(osc.violations.size() == 1);
  CHECK(osc.violations[0].component == 1);
  CHECK(osc.violations[0].monomial == Monomial::variable(2, 0));
  CHECK(osc.violations[0].coefficient == -1);

  auto feinberg = negative_cross_effect(ode({"y + y^2 - 2*y*z + z^2", "0", "0"}));
  REQUIRE(feinberg.violations.size() == 1);
  CHECK(feinberg.violations[0].component == 0);
  CHECK(feinberg.violations[0].monomial == Monomial::variable(3, 1) * Monomial::variable(3, 2));
  CHECK(feinberg.violations[0].coefficient == -2);

  CHECK(negative_cross_effect(ode({"2*y^2 - 3*x*y", "3*x^2 - 2*x*y"})).is_kinetic);

  auto four = negative_cross_effect(ode({"1", "1 - 4*y*x^2 + 5*x*y + 6*z + 7*w", "x + 2*y", "-x*y"}));
  REQUIRE(four.violations.size() == 1);
  CHECK(four.violations[0].component == 3);
  CHECK(four.violations[0].monomial == Monomial::variable(4, 0) * Monomial::variable(4, 1));
  CHECK(four.violations[0].coefficient == -1);
}

TEST_CASE("inward-pointing on the boundary yet not kinetic") {
  auto sys = ode({"y + y^2 - 2*y*z + z^2", "0", "0"});
  const double samples[] = {0.0, 0.25, 0.5, 1.0, 2.0, 7.0};
  for (double y : samples)
    for (double z : samples) {
      std::vector<double> pt{0.0, y, z};
      CHECK(evaluate(sys[0], std::span<const double>(pt)) >= 0.0);
    }
  CHECK_FALSE(negative_cross_effect(sys).is_kinetic);
}

TEST_CASE("canonical realization of the diagonal example") {
  auto sys = ode({"2*y^2 - 3*x*y", "3*x^2 - 2*x*y"});
  auto r = canonical_realization(sys);
  CHECK(r.well_formed);
  auto expected = parse_network("species: X, Y\n2Y ->[2] X + 2Y\nX + Y ->[3] Y\n2X ->[3] 2X + Y\nX + Y ->[2] X");
  CHECK(r.network.step_count() == 4);
  for (const auto& s : expected.steps()) {
    bool found = false;
    for (const auto& t : r.network.steps()) found = found || s == t;
    CHECK(found);
  }
  CHECK(induced_kinetic_ode(r.network) == sys);
}

TEST_CASE("canonical realization edge cases") {
  auto zero = canonical_realization(PolynomialSystem::zero(2));
  CHECK(zero.network.step_count() == 0);
  CHECK_FALSE(zero.well_formed);
  CHECK(zero.idle_species == std::vector<std::string>{"X", "Y"});

  auto out = canonical_realization(ode({"-x"}));
  REQUIRE(out.network.step_count() == 1);
  CHECK(out.network.steps()[0].reactant[0] == 1);
  CHECK(out.network.steps()[0].product.empty());

  try {
    canonical_realization(ode({"y", "-x"}));
    FAIL("expected NotKinetic");
  } catch (const NotKinetic& e) {
    CHECK(e.report().violations.size() == 1);
  }
}

TEST_CASE("property: realization round trip on random kinetic systems") {
  testing::Gen gen(41);
  for (int t = 0; t < 400; ++t) {
    std::size_t dim = 1 + gen.index(4);
    auto sys = random_kinetic_system(gen, dim);
    REQUIRE(negative_cross_effect(sys).is_kinetic);
    auto r = canonical_realization(sys);
    CHECK(induced_kinetic_ode(r.network) == sys);
  }
}

TEST_CASE("property: every network induces a kinetic ODE") {
  testing::Gen gen(42);
  const char* sp[] = {"A", "B", "C"};
  for (int t = 0; t < 300; ++t) {
    std::string text;
    for (int s = 0; s < 3; ++s) {
      auto complex = [&]() {
        std::string c;
        for (std::size_t i = 0, n = gen.index(3); i < n; ++i) c += (c.empty() ? "" : " + ") + std::string(sp[gen.index(3)]);
        return c.empty() ? std::string("0") : c;
      };
      auto l = complex(), r = complex();
      if (l != r) text += l + " ->[" + std::to_string(1 + gen.index(4)) + "] " + r + "\n";
    }
    ReactionNetwork net;
    try {
      net = parse_network(text);
    } catch (const ParseError&) {
      continue;
    }
    CHECK(negative_cross_effect(induced_kinetic_ode(net)).is_kinetic);
  }
}

TEST_CASE("property: monomial criterion versus boundary evaluation") {
  testing::Gen gen(43);
  const double grid[] = {0.0, 0.5, 1.0, 2.0, 3.0};
  for (int t = 0; t < 400; ++t) {
    std::size_t dim = 2 + gen.index(2);
    std::vector<Polynomial> comps;
    for (std::size_t m = 0; m < dim; ++m) comps.push_back(gen.polynomial(dim, 2, 4));
    PolynomialSystem sys(default_variable_names(dim), comps);
    auto rep = negative_cross_effect(sys);

    for (std::size_t m = 0; m < dim; ++m) {
      bool reported = false;
      for (const auto& v : rep.violations) reported = reported || v.component == m;

      // Soundness: a boundary point with f_m < 0 forces a reported violation.
      std::vector<double> pt(dim, 0.0);
      std::size_t cells = 1;
      for (std::size_t i = 0; i + 1 < dim; ++i) cells *= 5;
      bool witness = false;
      for (std::size_t c = 0; c < cells && !witness; ++c) {
        std::size_t rest = c;
        for (std::size_t i = 0; i < dim; ++i) {
          if (i == m) continue;
          pt[i] = grid[rest % 5];
          rest /= 5;
        }
        pt[m] = 0.0;
        witness = evaluate(sys[m], std::span<const double>(pt)) < 0.0;
      }
      if (witness) CHECK(reported);

      // Converse for exposed monomials: along s * 1_S the extreme-degree coefficient sum
      // is negative, so some s gives f_m < 0.
      for (const auto& v : rep.violations) {
        if (v.component != m) continue;
        std::vector<bool> support(dim);
        for (std::size_t i = 0; i < dim; ++i) support[i] = v.monomial[i] > 0;
        std::map<std::uint32_t, Rational> by_degree;
        for (const auto& [mono, coef] : sys[m].terms()) {
          bool inside = true;
          for (std::size_t i = 0; i < dim; ++i) inside = inside && (mono[i] == 0 || support[i]);
          if (inside) by_degree[mono.degree()] += coef;
        }
        std::erase_if(by_degree, [](const auto& kv) { return kv.second == 0; });
        if (by_degree.empty()) continue;
        bool exposed = by_degree.begin()->second < 0 || by_degree.rbegin()->second < 0;
        if (!exposed) continue;
        bool found = false;
        for (int k = -20; k <= 20 && !found; ++k) {
          std::vector<Rational> pt_q(dim, Rational(0));
          Rational s = k >= 0 ? Rational(1L << k) : Rational(1, 1L << -k);
          for (std::size_t i = 0; i < dim; ++i)
            if (support[i]) pt_q[i] = s;
          found = evaluate(sys[m], std::span<const Rational>(pt_q)) < 0;
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("divergence") {
  auto sys = ode({"2*y^2 + 3*z^2 - 4*x*y - 6*x*z", "4*x^2 + 5*z^2 - 2*x*y - 7*y*z",
                     "6*x^2 + 7*y^2 - 3*x*z - 5*y*z"});
  CHECK(divergence(sys) == poly("-5*x - 9*y - 13*z", {"x", "y", "z"}));
  CHECK(divergence(ode({"y", "-x"})).is_zero());
  CHECK(divergence(ode({"-x^2", "0"})) == poly("-2x"));
}

TEST_CASE("no-periodic-orbit certificate") {
  auto sys = ode({"2*y^2 + 3*z^2 - 4*x*y - 6*x*z", "4*x^2 + 5*z^2 - 2*x*y - 7*y*z",
                     "6*x^2 + 7*y^2 - 3*x*z - 5*y*z"});
  auto v = poly("x^2 + y^2 + z^2", {"x", "y", "z"});
  auto cert = no_periodic_orbit_certificate(sys, &v);
  CHECK(cert.divergence_negative);
  CHECK(cert.has_first_integral);
  CHECK(cert.certified());
  CHECK_FALSE(no_periodic_orbit_certificate(sys).certified());

  auto wrong = poly("x^2", {"x", "y", "z"});
  CHECK_FALSE(no_periodic_orbit_certificate(sys, &wrong).has_first_integral);

  CHECK_FALSE(no_periodic_orbit_certificate(ode({"y", "-x"})).divergence_negative);
  CHECK_FALSE(no_periodic_orbit_certificate(ode({"x^2", "y"})).divergence_negative);
}
