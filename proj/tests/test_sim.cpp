#include "crnkit/kinetics.hpp"
#include "crnkit/network.hpp"
#include "crnkit/qfi.hpp"
#include "crnkit/sim.hpp"
#include "fixtures.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace crnkit;
using testing::ode;
using testing::poly;

namespace {

PolynomialSystem diagonal2() { return ode({"2*y^2 - 3*x*y", "3*x^2 - 2*x*y"}); }

PolynomialSystem diagonal3() {
  return ode({"2*y^2 + 3*z^2 - 4*x*y - 6*x*z", "4*x^2 + 5*z^2 - 2*x*y - 7*y*z", "6*x^2 + 7*y^2 - 3*x*z - 5*y*z"});
}

QuadraticCandidate unit_circle(std::size_t dim) { return QuadraticCandidate::diagonal(std::vector<Rational>(dim, 1)); }

SimConfig rk4(double dt, double t_end = 10.0) {
  SimConfig cfg;
  cfg.step = dt;
  cfg.t_end = t_end;
  return cfg;
}

double max_drift(const PolynomialSystem& sys, const std::vector<double>& x0, double dt) {
  auto traj = integrate(sys, x0, rk4(dt), unit_circle(sys.dim()));
  REQUIRE(traj.status == SimStatus::completed);
  return drift_report(traj).max_abs_drift;
}

}  // namespace

TEST_CASE("trajectory shape: start, end, stride and monotone times") {
  auto cfg = rk4(1e-2, 1.0);
  cfg.stride = 10;
  auto traj = integrate(diagonal2(), {1, 0}, cfg, unit_circle(2));
  REQUIRE(traj.status == SimStatus::completed);
  CHECK(traj.times.size() == 11);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == 1.0);
  CHECK(traj.states.front() == std::vector<double>{1, 0});
  CHECK(traj.invariant_values.size() == traj.times.size());
  for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
  for (const auto& s : traj.states)
    for (double v : s) CHECK(std::isfinite(v));
  CHECK(traj.last_valid_time == 1.0);

  // A t_end that is not a multiple of the step gets one shortened final step.
  auto odd = integrate(diagonal2(), {1, 0}, rk4(0.3, 1.0));
  CHECK(odd.times.size() == 5);
  CHECK(odd.times.back() == 1.0);
  CHECK(odd.invariant_values.empty());
}

TEST_CASE("drift bounds on the two- and three-species diagonal systems") {
  CHECK(max_drift(diagonal2(), {1, 0}, 1e-3) <= 1e-6);
  CHECK(max_drift(diagonal3(), {std::sqrt(0.5), std::sqrt(0.5), 0}, 1e-3) <= 1e-6);
  CHECK(max_drift(diagonal2(), {1, 0}, 1e-1) > max_drift(diagonal2(), {1, 0}, 1e-3));
}

TEST_CASE("halving the step improves drift at fourth order") {
  for (auto [sys, x0] : {std::pair{diagonal2(), std::vector<double>{1, 0}},
                         std::pair{diagonal3(), std::vector<double>{std::sqrt(0.5), std::sqrt(0.5), 0}}}) {
    double coarse = max_drift(sys, x0, 1e-2);
    double fine = max_drift(sys, x0, 5e-3);
    INFO("coarse " << coarse << " fine " << fine);
    CHECK(coarse / fine >= 8);
    CHECK(coarse / fine <= 32);
  }
}

TEST_CASE("zero system stays put exactly") {
  auto traj = integrate(PolynomialSystem::zero(2), {0.25, 0.75}, rk4(1e-2, 1.0), unit_circle(2));
  CHECK(drift_report(traj).max_abs_drift == 0.0);
  CHECK(traj.states.back() == std::vector<double>{0.25, 0.75});
}

TEST_CASE("level-set projection keeps the invariant at its initial value") {
  auto cfg = rk4(5e-2);
  cfg.projection = Projection::level_set;
  auto v = QuadraticCandidate::diagonal({1, 2, 3});
  auto sys = generate_diagonal_system({{1, 2, 3}, RationalMatrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})});
  auto traj = integrate(sys, {0.2, 0.5, 0.3}, cfg, v);
  auto rep = drift_report(traj);
  CHECK(rep.max_abs_drift <= 1e-12 * rep.initial_value);

  cfg.projection = Projection::off;
  CHECK(drift_report(integrate(sys, {0.2, 0.5, 0.3}, cfg, v)).max_abs_drift > rep.max_abs_drift);

  cfg.projection = Projection::level_set;
  CHECK_THROWS_AS(integrate(diagonal2(), {1, 0}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(integrate(diagonal2(), {1, 0}, cfg, QuadraticCandidate::from_polynomial(poly("x^2 + x*y + y^2"))),
                  std::invalid_argument);
}

TEST_CASE("linear conservation law of a network is kept to rounding") {
  auto net = parse_network("A + B ->[1] C\nC ->[2] A + B\nC ->[1/2] D\nD ->[3] A + B");
  auto sys = induced_kinetic_ode(net);
  std::vector<double> rho{1, 1, 2, 2};
  auto traj = integrate(sys, {1, 0.5, 0.25, 0}, rk4(1e-2));
  REQUIRE(traj.status == SimStatus::completed);
  auto total = [&](const std::vector<double>& s) {
    double acc = 0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += rho[i] * s[i];
    return acc;
  };
  double start = total(traj.states.front());
  for (const auto& s : traj.states) CHECK(std::abs(total(s) - start) <= 1e-8);
}

TEST_CASE("positivity: tiny overshoot is clamped, larger violations abort") {
  auto drain = ode({"-1"}, {"x"});
  auto clamp = integrate(drain, {5e-13}, rk4(1e-12, 1e-12));
  CHECK(clamp.status == SimStatus::completed);
  REQUIRE(clamp.positivity_events.size() == 1);
  CHECK(clamp.positivity_events[0].clamped);
  CHECK(clamp.positivity_events[0].component == 0);
  CHECK(clamp.states.back()[0] == 0.0);

  auto abort = integrate(drain, {1}, rk4(0.3, 2.0));
  CHECK(abort.status == SimStatus::positivity_violation);
  REQUIRE_FALSE(abort.positivity_events.empty());
  CHECK_FALSE(abort.positivity_events.back().clamped);
  CHECK(abort.last_valid_time == doctest::Approx(0.9));
  CHECK(abort.times.back() == abort.last_valid_time);
}

TEST_CASE("finite-time blow-up stops the run") {
  auto traj = integrate(ode({"x^2"}, {"x"}), {1}, rk4(1e-2, 3.0));
  CHECK(traj.status == SimStatus::blow_up);
  CHECK(traj.last_valid_time > 0.9);
  CHECK(traj.last_valid_time < 3.0);
  for (const auto& s : traj.states) CHECK(std::isfinite(s[0]));
}

TEST_CASE("adaptive RKF45 tracks the invariant and lands on t_end") {
  SimConfig cfg;
  cfg.method = Method::rkf45_adaptive;
  cfg.tolerance = 1e-10;
  cfg.step = 1e-2;
  auto traj = integrate(diagonal2(), {1, 0}, cfg, unit_circle(2));
  REQUIRE(traj.status == SimStatus::completed);
  CHECK(traj.times.back() == 10.0);
  CHECK(drift_report(traj).max_abs_drift <= 1e-6);
  CHECK_THROWS_AS(integrate_batch(diagonal2(), {{1, 0}}, cfg), std::invalid_argument);
  CHECK(parse_method("rkf45") == Method::rkf45_adaptive);
  CHECK(parse_method("rk4") == Method::rk4_fixed);
  CHECK_THROWS_AS(parse_method("euler"), std::invalid_argument);
}

TEST_CASE("CSV export") {
  auto traj = integrate(diagonal2(), {1, 0}, rk4(0.5, 1.0), unit_circle(2));
  std::ostringstream os;
  write_csv(os, traj, {"x", "y"});
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x,y,V");
  std::getline(is, line);
  CHECK(line == "0,1,0,1");
  std::size_t rows = 1;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == traj.times.size());

  std::ostringstream plain;
  write_csv(plain, integrate(diagonal2(), {1, 0}, rk4(0.5, 1.0)), {"x", "y"});
  CHECK(plain.str().rfind("t,x,y\n", 0) == 0);
}

TEST_CASE("configuration and input validation") {
  auto bad = [](auto mutate) {
    SimConfig cfg;
    mutate(cfg);
    return cfg;
  };
  CHECK_THROWS_AS(validate(bad([](SimConfig& c) { c.step = 0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](SimConfig& c) { c.tolerance = -1; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](SimConfig& c) { c.t_end = 0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate(bad([](SimConfig& c) { c.stride = 0; })), std::invalid_argument);
  CHECK_NOTHROW(validate(SimConfig{}));

  CHECK_THROWS_AS(integrate(diagonal2(), {1}, rk4(1e-2)), std::invalid_argument);
  CHECK_THROWS_AS(integrate(diagonal2(), {1, -1}, rk4(1e-2)), std::invalid_argument);
  CHECK_THROWS_AS(integrate(diagonal2(), {1, NAN}, rk4(1e-2)), std::invalid_argument);
  CHECK_THROWS_AS(integrate(diagonal2(), {1, 0}, rk4(1e-2), unit_circle(3)), std::invalid_argument);

  Trajectory empty;
  CHECK_THROWS_AS(drift_report(empty), std::invalid_argument);
}
