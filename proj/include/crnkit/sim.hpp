#pragma once

#include "crnkit/polynomial.hpp"
#include "crnkit/qfi.hpp"
#include "crnkit/sim_kernels.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crnkit {

enum class Method { rk4_fixed, rkf45_adaptive };
enum class Projection { off, level_set };

std::string to_string(Method m);
Method parse_method(const std::string& text);  // "rk4" or "rkf45"

struct SimConfig {
  Method method = Method::rk4_fixed;
  double step = 1e-3;        // fixed step, or the initial step for rkf45
  double tolerance = 1e-9;   // rkf45 only, used as both absolute and relative tolerance
  double t_end = 10.0;
  std::size_t stride = 1;    // keep every stride-th accepted step (the final state is always kept)
  Projection projection = Projection::off;
  std::optional<KernelIsa> isa;  // default: best available
};

// Throws std::invalid_argument unless step, tolerance, t_end and stride are positive.
void validate(const SimConfig& cfg);

// A component that went negative. Values in [-1e-12, 0) are clamped to 0 and integration
// continues; anything below aborts the run.
struct PositivityEvent {
  double time;
  std::size_t component;
  double value;
  bool clamped;
};

enum class SimStatus { completed, blow_up, positivity_violation };
std::string to_string(SimStatus s);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> invariant_values;  // empty unless an invariant was attached
  std::vector<PositivityEvent> positivity_events;
  SimStatus status = SimStatus::completed;
  double last_valid_time = 0.0;
};

inline constexpr double kClampThreshold = -1e-12;

// Throws std::invalid_argument for a dimension mismatch, a negative or nonfinite x0, or
// level-set projection with an invariant that is not a positive diagonal form.
Trajectory integrate(const PolynomialSystem& sys, const std::vector<double>& x0, const SimConfig& cfg,
                     const std::optional<QuadraticCandidate>& invariant = std::nullopt);

// Fixed-step RK4 over many initial conditions at once, one SIMD lane per trajectory.
// Each result equals integrate() on the same initial condition bit for bit.
std::vector<Trajectory> integrate_batch(const PolynomialSystem& sys, const std::vector<std::vector<double>>& x0s,
                                        const SimConfig& cfg,
                                        const std::optional<QuadraticCandidate>& invariant = std::nullopt);

struct DriftReport {
  double initial_value = 0.0;
  double max_abs_drift = 0.0;
  double final_drift = 0.0;
  std::size_t positivity_events = 0;
};

// Throws std::invalid_argument when the trajectory carries no invariant values.
DriftReport drift_report(const Trajectory& traj);

// Header "t,<names>[,V]", values printed with %.17g.
void write_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& names);

}  // namespace crnkit
