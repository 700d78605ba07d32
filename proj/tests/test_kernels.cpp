#include "crnkit/qfi.hpp"
#include "crnkit/sim.hpp"
#include "crnkit/sim_kernels.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

using namespace crnkit;
using testing::Gen;
using testing::ode;

namespace {

std::vector<KernelIsa> available() {
  std::vector<KernelIsa> out;
  for (auto isa : {KernelIsa::scalar, KernelIsa::avx2, KernelIsa::neon})
    if (isa_available(isa)) out.push_back(isa);
  return out;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

double evaluate(const Polynomial& p, const std::vector<double>& x) {
  double acc = 0;
  for (const auto& [mono, coef] : p.terms()) {
    double term = coef.get_d();
    for (std::size_t i = 0; i < mono.dim(); ++i) term *= std::pow(x[i], mono[i]);
    acc += term;
  }
  return acc;
}

}  // namespace

TEST_CASE("compiled systems list factors with repetition") {
  auto sys = ode({"2*x^2*y - 1/2", "3*y"});
  auto c = compile(sys);
  CHECK(c.dim == 2);
  REQUIRE(c.term_count() == 3);
  CHECK(c.factor_offset.size() == 4);
  std::size_t cubic = 0;
  for (std::size_t t = 0; t < c.term_count(); ++t) {
    std::size_t n = c.factor_offset[t + 1] - c.factor_offset[t];
    if (n == 3) {
      ++cubic;
      CHECK(c.coefficient[t] == 2.0);
      CHECK(c.component[t] == 0);
      std::vector<std::uint32_t> f(c.factors.begin() + c.factor_offset[t], c.factors.begin() + c.factor_offset[t + 1]);
      std::sort(f.begin(), f.end());
      CHECK(f == std::vector<std::uint32_t>{0, 0, 1});
    }
  }
  CHECK(cubic == 1);
}

TEST_CASE("ISA availability and dispatch") {
  CHECK(isa_available(KernelIsa::scalar));
  CHECK(isa_available(best_available_isa()));
  for (auto isa : {KernelIsa::scalar, KernelIsa::avx2, KernelIsa::neon}) {
    if (isa_available(isa)) {
      CHECK(kernels(isa).eval != nullptr);
    } else {
      CHECK_THROWS_AS(kernels(isa), std::invalid_argument);
    }
  }
  CHECK(to_string(KernelIsa::avx2) == "avx2");
}

TEST_CASE("scalar eval agrees with direct polynomial evaluation") {
  Gen g(21);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t dim = 1 + g.index(4);
    std::vector<Polynomial> comps;
    for (std::size_t m = 0; m < dim; ++m) comps.push_back(g.polynomial(dim, 3, 5));
    PolynomialSystem sys(default_variable_names(dim), comps);
    auto c = compile(sys);
    std::size_t lanes = 1 + g.index(6);
    auto x = random_values(rng, dim * lanes);
    std::vector<double> out(dim * lanes);
    kernels(KernelIsa::scalar).eval(view(c), x.data(), out.data(), lanes);
    for (std::size_t l = 0; l < lanes; ++l) {
      std::vector<double> point(dim);
      for (std::size_t m = 0; m < dim; ++m) point[m] = x[m * lanes + l];
      for (std::size_t m = 0; m < dim; ++m) CHECK(out[m * lanes + l] == doctest::Approx(evaluate(sys[m], point)));
    }
  }
}

TEST_CASE("every ISA matches the scalar kernels bit for bit") {
  Gen g(22);
  std::mt19937_64 rng(22);
  const auto& ref = kernels(KernelIsa::scalar);
  for (auto isa : available()) {
    const auto& k = kernels(isa);
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t dim = 1 + g.index(4);
      std::vector<Polynomial> comps;
      for (std::size_t m = 0; m < dim; ++m) comps.push_back(g.polynomial(dim, 3, 6));
      auto c = compile(PolynomialSystem(default_variable_names(dim), comps));
      std::size_t lanes = 1 + g.index(11);
      std::size_t n = dim * lanes;
      auto x = random_values(rng, n);
      std::vector<double> a(n), b(n);
      ref.eval(view(c), x.data(), a.data(), lanes);
      k.eval(view(c), x.data(), b.data(), lanes);
      CHECK(same_bits(a, b));

      auto y = random_values(rng, n), k1 = random_values(rng, n), k2 = random_values(rng, n),
           k3 = random_values(rng, n), k4 = random_values(rng, n);
      double h = std::uniform_real_distribution<double>(1e-4, 1e-1)(rng);
      ref.axpy(a.data(), y.data(), h, k1.data(), n);
      k.axpy(b.data(), y.data(), h, k1.data(), n);
      CHECK(same_bits(a, b));
      ref.rk4_combine(a.data(), y.data(), h / 6, k1.data(), k2.data(), k3.data(), k4.data(), n);
      k.rk4_combine(b.data(), y.data(), h / 6, k1.data(), k2.data(), k3.data(), k4.data(), n);
      CHECK(same_bits(a, b));
    }
  }
}

TEST_CASE("batched RK4 reproduces single-trajectory runs exactly") {
  auto sys = generate_diagonal_system({{1, 1, 1}, RationalMatrix::from_rows({{0, 2, 3}, {4, 0, 5}, {6, 7, 0}})});
  auto v = QuadraticCandidate::diagonal({1, 1, 1});
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> x0s;
  for (int i = 0; i < 7; ++i) x0s.push_back({dist(rng), dist(rng), dist(rng)});

  for (auto projection : {Projection::off, Projection::level_set}) {
    for (auto isa : available()) {
      SimConfig cfg;
      cfg.step = 1e-2;
      cfg.t_end = 2.0;
      cfg.stride = 7;
      cfg.projection = projection;
      cfg.isa = isa;
      auto batch = integrate_batch(sys, x0s, cfg, v);
      REQUIRE(batch.size() == x0s.size());
      cfg.isa = KernelIsa::scalar;
      for (std::size_t i = 0; i < x0s.size(); ++i) {
        auto single = integrate(sys, x0s[i], cfg, v);
        CHECK(same_bits(batch[i].times, single.times));
        CHECK(same_bits(batch[i].invariant_values, single.invariant_values));
        REQUIRE(batch[i].states.size() == single.states.size());
        for (std::size_t s = 0; s < single.states.size(); ++s) CHECK(same_bits(batch[i].states[s], single.states[s]));
      }
    }
  }
}

TEST_CASE("batch lanes fail independently") {
  SimConfig cfg;
  cfg.step = 1e-2;
  cfg.t_end = 3.0;
  auto batch = integrate_batch(ode({"x^2"}, {"x"}), {{0.1}, {1.0}, {0.2}}, cfg);
  REQUIRE(batch.size() == 3);
  CHECK(batch[0].status == SimStatus::completed);
  CHECK(batch[1].status == SimStatus::blow_up);
  CHECK(batch[2].status == SimStatus::completed);
  CHECK(batch[0].times.back() == 3.0);
  CHECK(batch[1].last_valid_time < 3.0);
  CHECK(integrate_batch(ode({"x^2"}, {"x"}), {}, cfg).empty());
}
