#include "crnkit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace crnkit {

std::string to_string(Method m) { return m == Method::rk4_fixed ? "rk4" : "rkf45"; }

Method parse_method(const std::string& text) {
  if (text == "rk4") return Method::rk4_fixed;
  if (text == "rkf45") return Method::rkf45_adaptive;
  throw std::invalid_argument("unknown method '" + text + "' (expected rk4 or rkf45)");
}

std::string to_string(SimStatus s) {
  switch (s) {
    case SimStatus::completed: return "completed";
    case SimStatus::blow_up: return "blow_up";
    case SimStatus::positivity_violation: return "positivity_violation";
  }
  return "unknown";
}

void validate(const SimConfig& cfg) {
  if (!(cfg.step > 0) || !std::isfinite(cfg.step)) throw std::invalid_argument("step must be positive");
  if (!(cfg.t_end > 0) || !std::isfinite(cfg.t_end)) throw std::invalid_argument("t_end must be positive");
  if (!(cfg.tolerance > 0) || !std::isfinite(cfg.tolerance))
    throw std::invalid_argument("tolerance must be positive");
  if (cfg.stride == 0) throw std::invalid_argument("stride must be positive");
}

namespace {

// Dense double copy of V; evaluated in a fixed order so every caller rounds the same way.
class QuadraticEvaluator {
 public:
  explicit QuadraticEvaluator(const QuadraticCandidate& v) : dim_(v.dim()), constant_(to_double(v.constant)) {
    for (std::size_t i = 0; i < dim_; ++i) {
      linear_.push_back(to_double(v.linear[i]));
      for (std::size_t j = 0; j < dim_; ++j) q_.push_back(to_double(v.q(i, j)));
    }
  }

  // Reads component i at x[i * stride].
  double operator()(const double* x, std::size_t stride) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) row = row + q_[i * dim_ + j] * x[j * stride];
      s = s + (row + linear_[i]) * x[i * stride];
    }
    return s + constant_;
  }

 private:
  std::size_t dim_;
  std::vector<double> q_;
  std::vector<double> linear_;
  double constant_;
};

bool is_positive_diagonal(const QuadraticCandidate& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v.linear[i] != 0 || v.q(i, i) <= 0) return false;
    for (std::size_t j = 0; j < v.dim(); ++j)
      if (i != j && v.q(i, j) != 0) return false;
  }
  return v.constant == 0;
}

void check_inputs(const PolynomialSystem& sys, const std::vector<double>& x0, const SimConfig& cfg,
                  const std::optional<QuadraticCandidate>& invariant) {
  validate(cfg);
  if (x0.size() != sys.dim()) throw std::invalid_argument("initial condition has the wrong dimension");
  for (double v : x0)
    if (!std::isfinite(v) || v < 0) throw std::invalid_argument("initial condition must be finite and nonnegative");
  if (invariant && invariant->dim() != sys.dim()) throw std::invalid_argument("invariant has the wrong dimension");
  if (cfg.projection == Projection::level_set) {
    if (!invariant) throw std::invalid_argument("level-set projection needs an invariant");
    if (!is_positive_diagonal(*invariant))
      throw std::invalid_argument("level-set projection supports positive diagonal invariants only");
  }
}

// Per-lane bookkeeping shared by both integrators.
class Lane {
 public:
  Lane(const SimConfig& cfg, const QuadraticEvaluator* v) : cfg_(cfg), v_(v) {}

  void start(const double* x, std::size_t stride, std::size_t dim) {
    if (v_) v0_ = (*v_)(x, stride);
    record(0.0, x, stride, dim);
  }

  bool active() const { return active_; }

  // Post-step checks on an accepted state; may modify x (clamping, projection).
  void accept(double t_prev, double t, double* x, std::size_t stride, std::size_t dim, bool sample) {
    if (!active_) return;
    for (std::size_t m = 0; m < dim; ++m) {
      if (!std::isfinite(x[m * stride])) return stop(SimStatus::blow_up, t_prev);
    }
    for (std::size_t m = 0; m < dim; ++m) {
      double& v = x[m * stride];
      if (v >= 0) continue;
      if (v < kClampThreshold) {
        traj_.positivity_events.push_back({t, m, v, false});
        return stop(SimStatus::positivity_violation, t_prev);
      }
      traj_.positivity_events.push_back({t, m, v, true});
      v = 0.0;
    }
    if (cfg_.projection == Projection::level_set) {
      double value = (*v_)(x, stride);
      if (value > 0) {
        double scale = std::sqrt(v0_ / value);
        for (std::size_t m = 0; m < dim; ++m) x[m * stride] = x[m * stride] * scale;
      }
    }
    traj_.last_valid_time = t;
    if (sample) record(t, x, stride, dim);
  }

  Trajectory take() { return std::move(traj_); }

 private:
  void stop(SimStatus status, double t_prev) {
    traj_.status = status;
    traj_.last_valid_time = t_prev;
    active_ = false;
  }

  void record(double t, const double* x, std::size_t stride, std::size_t dim) {
    std::vector<double> state(dim);
    for (std::size_t m = 0; m < dim; ++m) state[m] = x[m * stride];
    traj_.times.push_back(t);
    traj_.states.push_back(std::move(state));
    if (v_) traj_.invariant_values.push_back((*v_)(x, stride));
  }

  const SimConfig& cfg_;
  const QuadraticEvaluator* v_;
  double v0_ = 0.0;
  bool active_ = true;
  Trajectory traj_;
};

// Full steps of size dt, then one shortened step if dt does not divide t_end.
struct Schedule {
  std::size_t full_steps;
  double remainder;
};

Schedule schedule(double t_end, double dt) {
  double q = t_end / dt;
  double n = std::round(q);
  if (n >= 1 && std::abs(q - n) <= 1e-9 * q) return {static_cast<std::size_t>(n), 0.0};
  double full = std::floor(q);
  return {static_cast<std::size_t>(full), t_end - full * dt};
}

std::vector<Trajectory> run_rk4(const PolynomialSystem& sys, const std::vector<std::vector<double>>& x0s,
                                const SimConfig& cfg, const std::optional<QuadraticCandidate>& invariant) {
  const std::size_t dim = sys.dim();
  const std::size_t lanes = x0s.size();
  const std::size_t n = dim * lanes;
  const CompiledSystem compiled = compile(sys);
  const SystemView sv = view(compiled);
  const KernelTable& k = kernels(cfg.isa.value_or(best_available_isa()));
  std::optional<QuadraticEvaluator> veval;
  if (invariant) veval.emplace(*invariant);

  std::vector<double> y(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t l = 0; l < lanes; ++l)
    for (std::size_t m = 0; m < dim; ++m) y[m * lanes + l] = x0s[l][m];

  std::vector<Lane> state;
  state.reserve(lanes);
  for (std::size_t l = 0; l < lanes; ++l) {
    state.emplace_back(cfg, veval ? &*veval : nullptr);
    state.back().start(y.data() + l, lanes, dim);
  }

  const Schedule plan = schedule(cfg.t_end, cfg.step);
  const std::size_t total = plan.full_steps + (plan.remainder > 0 ? 1 : 0);
  double t_prev = 0.0;
  for (std::size_t i = 1; i <= total; ++i) {
    const bool last = i == total;
    const double h = (i <= plan.full_steps) ? cfg.step : plan.remainder;
    const double t = last ? cfg.t_end : static_cast<double>(i) * cfg.step;
    k.eval(sv, y.data(), k1.data(), lanes);
    k.axpy(tmp.data(), y.data(), 0.5 * h, k1.data(), n);
    k.eval(sv, tmp.data(), k2.data(), lanes);
    k.axpy(tmp.data(), y.data(), 0.5 * h, k2.data(), n);
    k.eval(sv, tmp.data(), k3.data(), lanes);
    k.axpy(tmp.data(), y.data(), h, k3.data(), n);
    k.eval(sv, tmp.data(), k4.data(), lanes);
    k.rk4_combine(y.data(), y.data(), h / 6.0, k1.data(), k2.data(), k3.data(), k4.data(), n);

    bool any = false;
    for (std::size_t l = 0; l < lanes; ++l) {
      state[l].accept(t_prev, t, y.data() + l, lanes, dim, last || i % cfg.stride == 0);
      any = any || state[l].active();
    }
    if (!any) break;
    t_prev = t;
  }

  std::vector<Trajectory> out;
  for (auto& s : state) out.push_back(s.take());
  return out;
}

// Runge-Kutta-Fehlberg 4(5), advancing with the fifth-order solution.
Trajectory run_rkf45(const PolynomialSystem& sys, const std::vector<double>& x0, const SimConfig& cfg,
                     const std::optional<QuadraticCandidate>& invariant) {
  static constexpr double a[6][5] = {
      {0, 0, 0, 0, 0},
      {1.0 / 4, 0, 0, 0, 0},
      {3.0 / 32, 9.0 / 32, 0, 0, 0},
      {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197, 0, 0},
      {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104, 0},
      {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40},
  };
  static constexpr double b5[6] = {16.0 / 135, 0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50, 2.0 / 55};
  static constexpr double b4[6] = {25.0 / 216, 0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0};

  const std::size_t dim = sys.dim();
  const CompiledSystem compiled = compile(sys);
  const SystemView sv = view(compiled);
  const KernelTable& k = *detail::scalar_kernels();
  std::optional<QuadraticEvaluator> veval;
  if (invariant) veval.emplace(*invariant);

  std::vector<double> y = x0, stage(dim), y5(dim);
  std::vector<std::vector<double>> ks(6, std::vector<double>(dim));
  Lane lane(cfg, veval ? &*veval : nullptr);
  lane.start(y.data(), 1, dim);

  double t = 0.0;
  double h = std::min(cfg.step, cfg.t_end);
  std::size_t accepted = 0;
  while (lane.active() && t < cfg.t_end) {
    const bool hits_end = t + h >= cfg.t_end;
    if (hits_end) h = cfg.t_end - t;
    for (int s = 0; s < 6; ++s) {
      for (std::size_t m = 0; m < dim; ++m) {
        double acc = 0.0;
        for (int j = 0; j < s; ++j) acc = acc + a[s][j] * ks[j][m];
        stage[m] = y[m] + h * acc;
      }
      k.eval(sv, stage.data(), ks[s].data(), 1);
    }
    double err = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
      double s5 = 0.0, s4 = 0.0;
      for (int j = 0; j < 6; ++j) {
        s5 = s5 + b5[j] * ks[j][m];
        s4 = s4 + b4[j] * ks[j][m];
      }
      y5[m] = y[m] + h * s5;
      const double scale = cfg.tolerance * (1.0 + std::max(std::abs(y[m]), std::abs(y5[m])));
      err = std::max(err, std::abs(h * (s5 - s4)) / scale);
    }
    if (!std::isfinite(err)) err = 1e10;
    if (err <= 1.0) {
      const double t_next = hits_end ? cfg.t_end : t + h;
      y = y5;
      ++accepted;
      lane.accept(t, t_next, y.data(), 1, dim, hits_end || accepted % cfg.stride == 0);
      t = t_next;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (lane.active() && t < cfg.t_end && h < 1e-14 * std::max(1.0, t)) {
      // Step size collapsed: the solution is escaping to infinity.
      Trajectory traj = lane.take();
      traj.status = SimStatus::blow_up;
      traj.last_valid_time = t;
      return traj;
    }
  }
  return lane.take();
}

}  // namespace

Trajectory integrate(const PolynomialSystem& sys, const std::vector<double>& x0, const SimConfig& cfg,
                     const std::optional<QuadraticCandidate>& invariant) {
  check_inputs(sys, x0, cfg, invariant);
  if (cfg.method == Method::rkf45_adaptive) return run_rkf45(sys, x0, cfg, invariant);
  return std::move(run_rk4(sys, {x0}, cfg, invariant).front());
}

std::vector<Trajectory> integrate_batch(const PolynomialSystem& sys, const std::vector<std::vector<double>>& x0s,
                                        const SimConfig& cfg, const std::optional<QuadraticCandidate>& invariant) {
  if (cfg.method != Method::rk4_fixed) throw std::invalid_argument("batch integration supports rk4 only");
  for (const auto& x0 : x0s) check_inputs(sys, x0, cfg, invariant);
  if (x0s.empty()) return {};
  return run_rk4(sys, x0s, cfg, invariant);
}

DriftReport drift_report(const Trajectory& traj) {
  if (traj.invariant_values.empty()) throw std::invalid_argument("trajectory has no invariant attached");
  DriftReport r;
  r.initial_value = traj.invariant_values.front();
  for (double v : traj.invariant_values) r.max_abs_drift = std::max(r.max_abs_drift, std::abs(v - r.initial_value));
  r.final_drift = traj.invariant_values.back() - r.initial_value;
  r.positivity_events = traj.positivity_events.size();
  return r;
}

void write_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& names) {
  const bool with_v = !traj.invariant_values.empty();
  out << 't';
  for (const auto& n : names) out << ',' << n;
  if (with_v) out << ",V";
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    put(traj.times[i]);
    for (double v : traj.states[i]) {
      out << ',';
      put(v);
    }
    if (with_v) {
      out << ',';
      put(traj.invariant_values[i]);
    }
    out << '\n';
  }
}

}  // namespace crnkit
