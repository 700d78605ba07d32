#include "crnkit/cli.hpp"

#include "crnkit/conservation.hpp"
#include "crnkit/errors.hpp"
#include "crnkit/expr_parser.hpp"
#include "crnkit/json_io.hpp"
#include "crnkit/kinetics.hpp"
#include "crnkit/network.hpp"
#include "crnkit/qfi.hpp"
#include "crnkit/sim.hpp"

#include <CLI11.hpp>
#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <variant>

#ifndef CRNKIT_VERSION
#define CRNKIT_VERSION "dev"
#endif

namespace crnkit {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

Rational rational_arg(const std::string& text, const std::string& what) {
  try {
    return parse_rational(trim(text));
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
}

std::vector<Rational> vector_arg(const std::string& text, const std::string& what) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(rational_arg(part, what));
  return out;
}

RationalMatrix matrix_arg(const std::string& text, const std::string& what) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : split(text, ';')) rows.push_back(vector_arg(row, what));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw UsageError(what + ": rows have different lengths");
  return RationalMatrix::from_rows(rows);
}

// "1/2", "0.25" or "sqrt(1/2)".
double initial_value_arg(const std::string& raw) {
  std::string text = trim(raw);
  if (text.rfind("sqrt(", 0) == 0 && text.back() == ')') {
    Rational r = rational_arg(text.substr(5, text.size() - 6), "--x0");
    if (r < 0) throw UsageError("--x0: sqrt of a negative number");
    return std::sqrt(to_double(r));
  }
  return to_double(rational_arg(text, "--x0"));
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_system(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    auto eq = line.find('=');
    auto quote = line.find('\'');
    if (eq != std::string::npos && quote != std::string::npos && quote < eq) return true;
  }
  return false;
}

struct Input {
  std::string path;
  std::string digest;
  std::variant<ReactionNetwork, PolynomialSystem> value;
  std::vector<std::string> warnings;

  const ReactionNetwork* network() const { return std::get_if<ReactionNetwork>(&value); }
};

Input load(const std::string& path) {
  const std::string text = read_input(path);
  Input in{path, fnv1a_hex(text), PolynomialSystem{}, {}};
  try {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      Json j = Json::parse(text);
      if (j.contains("steps")) in.value = network_from_json(j);
      else in.value = system_from_json(j);
    } else if (looks_like_system(text)) {
      in.value = parse_system(text);
    } else {
      in.value = parse_network(text, &in.warnings);
    }
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
  return in;
}

struct Globals {
  bool json = false;
  std::vector<std::string> params;
  std::string out_dir;
  std::uint64_t seed = 0;
};

// Everything a command produces; written to stdout and, with --out, to files.
struct Run {
  Globals g;
  ParameterBinding binding;
  bool color = false;
  std::ostringstream report;
  std::vector<std::pair<std::string, std::string>> artifacts;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::ostream* err = nullptr;

  std::string yes_no(bool v) const {
    if (!color) return v ? "yes" : "no";
    return v ? "\033[32myes\033[0m" : "\033[31mno\033[0m";
  }

  Input input(const std::string& path) {
    Input in = load(path);
    for (const auto& w : in.warnings) *err << "warning: " << w << '\n';
    inputs.emplace_back(path, in.digest);
    return in;
  }

  PolynomialSystem system(const Input& in) const {
    if (const auto* net = in.network()) return induced_kinetic_ode(*net, binding);
    return std::get<PolynomialSystem>(in.value);
  }
};

ParameterBinding parse_params(const std::vector<std::string>& raw) {
  ParameterBinding out;
  for (const auto& item : raw) {
    for (const auto& kv : split(item, ',')) {
      if (kv.empty()) continue;
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--params expects name=value, got '" + kv + "'");
      std::string name = trim(kv.substr(0, eq));
      Rational v = rational_arg(kv.substr(eq + 1), "--params " + name);
      if (v <= 0) throw UsageError("--params " + name + ": rate must be positive");
      out[name] = v;
    }
  }
  return out;
}

std::string tuple(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

QuadraticCandidate invariant_arg(const std::string& text, const PolynomialSystem& sys) {
  try {
    return QuadraticCandidate::from_polynomial(parse_polynomial(text, sys.names()));
  } catch (const ParseError& e) {
    throw UsageError(std::string("--invariant: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--invariant: ") + e.what());
  }
}

void print_violations(Run& run, const CrossEffectReport& rep, const PolynomialSystem& sys) {
  for (const auto& v : rep.violations) {
    run.report << "  negative cross-effect in " << sys.names()[v.component] << "': term "
               << render(Polynomial::term(v.monomial, v.coefficient), sys.names()) << '\n';
  }
}

// ---- parse / odes / realize -------------------------------------------------------------

int cmd_parse(Run& run, const std::string& file) {
  Input in = run.input(file);
  if (const auto* net = in.network()) {
    if (run.g.json) run.report << to_json(*net).dump(2) << '\n';
    else run.report << render_network(*net);
  } else {
    const auto& sys = std::get<PolynomialSystem>(in.value);
    if (run.g.json) run.report << to_json(sys).dump(2) << '\n';
    else run.report << render_system_file(sys);
  }
  return 0;
}

int cmd_odes(Run& run, const std::string& file) {
  PolynomialSystem sys = run.system(run.input(file));
  if (run.g.json) run.report << to_json(sys).dump(2) << '\n';
  else run.report << render(sys) << '\n';
  return 0;
}

int cmd_realize(Run& run, const std::string& file) {
  PolynomialSystem sys = run.system(run.input(file));
  try {
    Realization r = canonical_realization(sys);
    if (run.g.json) {
      Json j = {{"network", to_json(r.network)}, {"well_formed", r.well_formed}, {"idle_species", r.idle_species}};
      run.report << j.dump(2) << '\n';
    } else {
      run.report << render_network(r.network);
      if (!r.well_formed) {
        run.report << "# degenerate: species taking part in no step:";
        for (const auto& s : r.idle_species) run.report << ' ' << s;
        run.report << '\n';
      }
    }
    return 0;
  } catch (const NotKinetic& e) {
    if (run.g.json) {
      run.report << Json{{"error", "not kinetic"}, {"cross_effect", to_json(e.report(), sys.names())}}.dump(2) << '\n';
    } else {
      run.report << "not kinetic: no mass-action realization exists\n";
      print_violations(run, e.report(), sys);
    }
    return 1;
  }
}

// ---- check ----------------------------------------------------------------------------

struct CheckOptions {
  std::string which;
  std::string filter = "none";
  std::string invariant;
  std::string rho;
};

int check_kinetic(Run& run, const PolynomialSystem& sys) {
  auto rep = negative_cross_effect(sys);
  if (run.g.json) {
    Json j = to_json(rep, sys.names());
    j["verdict"] = rep.is_kinetic;
    run.report << j.dump(2) << '\n';
  } else {
    run.report << "kinetic: " << run.yes_no(rep.is_kinetic) << '\n';
    print_violations(run, rep, sys);
  }
  return rep.is_kinetic ? 0 : 1;
}

int check_conservation(Run& run, const Input& in, ConservationMode mode, const std::string& rho_text) {
  const ReactionNetwork* net = in.network();
  std::optional<PolynomialSystem> sys;
  if (mode == ConservationMode::stoichiometric) {
    if (!net) throw UsageError("conserve-stoich needs a reaction network, not an ODE system");
  } else {
    sys = run.system(in);
  }
  const std::size_t dim = net ? net->species_count() : sys->dim();

  std::optional<ConservationVector> witness;
  bool holds;
  if (!rho_text.empty()) {
    ConservationVector cand{vector_arg(rho_text, "--rho"), mode};
    if (cand.rho.size() != dim) throw UsageError("--rho: expected " + std::to_string(dim) + " entries");
    holds = mode == ConservationMode::stoichiometric ? verify_conservation(cand, *net) : verify_conservation(cand, *sys);
    witness = cand;
  } else {
    witness = mode == ConservationMode::stoichiometric ? stoichiometric_conservation(*net) : kinetic_conservation(*sys);
    holds = witness.has_value();
  }

  if (run.g.json) {
    Json j = conservation_report(mode, witness, net, sys ? &*sys : nullptr);
    j["exists"] = holds;
    j["verdict"] = holds;
    if (!rho_text.empty()) j["supplied"] = true;
    run.report << j.dump(2) << '\n';
  } else {
    run.report << to_string(mode) << " mass conservation: " << run.yes_no(holds) << '\n';
    if (witness) {
      run.report << (rho_text.empty() ? "witness: " : "candidate: ") << tuple(witness->rho) << '\n';
      if (mode == ConservationMode::stoichiometric) {
        run.report << "rho^T gamma: " << tuple(stoichiometric_residual(witness->rho, *net)) << '\n';
      } else {
        run.report << "rho^T f: " << render(kinetic_residual(witness->rho, *sys), sys->names()) << '\n';
      }
    }
  }
  return holds ? 0 : 1;
}

void print_integral_report(Run& run, const FirstIntegralReport& rep, const PolynomialSystem& sys) {
  run.report << "quadratic first integral: " << run.yes_no(rep.found) << '\n';
  if (rep.candidate) run.report << "V = " << render(rep.candidate->to_polynomial(), sys.names()) << '\n';
  if (!rep.log_form.empty()) run.report << "V = " << rep.log_form << '\n';
  if (rep.signature) run.report << "signature: " << to_string(*rep.signature) << '\n';
  run.report << "solution space dimension: " << rep.witness_basis.size() << '\n';
  for (const auto& b : rep.witness_basis) run.report << "  " << render(b.to_polynomial(), sys.names()) << '\n';
}

int check_qfi(Run& run, const PolynomialSystem& sys, const CheckOptions& opt) {
  if (!opt.invariant.empty()) {
    auto v = invariant_arg(opt.invariant, sys);
    Polynomial lie = lie_derivative_quadratic(v, sys);
    bool holds = lie.is_zero();
    if (run.g.json) {
      run.report << Json{{"verdict", holds},
                         {"candidate", to_json(v, sys.names())},
                         {"lie_derivative", render(lie, sys.names())}}
                        .dump(2)
                 << '\n';
    } else {
      run.report << "first integral: " << run.yes_no(holds) << '\n'
                 << "Lie derivative: " << render(lie, sys.names()) << '\n';
    }
    return holds ? 0 : 1;
  }
  SignatureFilter filter;
  try {
    filter = parse_signature_filter(opt.filter);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--filter: ") + e.what());
  }
  auto rep = find_quadratic_first_integrals(sys, filter);
  if (run.g.json) {
    Json j = to_json(rep, sys.names());
    j["filter"] = to_string(filter);
    j["verdict"] = rep.found;
    run.report << j.dump(2) << '\n';
  } else {
    print_integral_report(run, rep, sys);
  }
  return rep.found ? 0 : 1;
}

int check_log_lv(Run& run, const PolynomialSystem& sys) {
  if (sys.dim() != 2) throw UsageError("log-lv needs a two-dimensional system");
  bool holds = lotka_volterra_log_check(sys);
  if (run.g.json) run.report << Json{{"verdict", holds}, {"V", "x + y - ln(x) - ln(y)"}}.dump(2) << '\n';
  else run.report << "x + y - ln(x) - ln(y) is a first integral: " << run.yes_no(holds) << '\n';
  return holds ? 0 : 1;
}

int check_no_periodic(Run& run, const PolynomialSystem& sys, const CheckOptions& opt) {
  std::optional<Polynomial> integral;
  if (!opt.invariant.empty()) {
    try {
      integral = parse_polynomial(opt.invariant, sys.names());
    } catch (const ParseError& e) {
      throw UsageError(std::string("--invariant: ") + e.what());
    }
  } else {
    auto rep = find_quadratic_first_integrals(sys, SignatureFilter::none);
    if (rep.candidate) integral = rep.candidate->to_polynomial();
  }
  auto cert = no_periodic_orbit_certificate(sys, integral ? &*integral : nullptr);
  if (run.g.json) {
    Json j = {{"verdict", cert.certified()},
              {"divergence", render(cert.divergence, sys.names())},
              {"divergence_negative", cert.divergence_negative},
              {"has_first_integral", cert.has_first_integral}};
    if (integral) j["first_integral"] = render(*integral, sys.names());
    run.report << j.dump(2) << '\n';
  } else {
    run.report << "divergence: " << render(cert.divergence, sys.names()) << '\n'
               << "divergence negative on the open orthant: " << run.yes_no(cert.divergence_negative) << '\n'
               << "first integral: " << (integral ? render(*integral, sys.names()) : std::string("none")) << " ("
               << (cert.has_first_integral ? "verified" : "not verified") << ")\n"
               << "no periodic orbit: " << (cert.certified() ? "certified" : "inconclusive") << '\n';
  }
  return cert.certified() ? 0 : 1;
}

int cmd_check(Run& run, const std::string& file, const CheckOptions& opt) {
  Input in = run.input(file);
  if (opt.which == "conserve-stoich") return check_conservation(run, in, ConservationMode::stoichiometric, opt.rho);
  if (opt.which == "conserve-kinetic") return check_conservation(run, in, ConservationMode::kinetic, opt.rho);
  PolynomialSystem sys = run.system(in);
  if (opt.which == "kinetic") return check_kinetic(run, sys);
  if (opt.which == "qfi") return check_qfi(run, sys, opt);
  if (opt.which == "log-lv") return check_log_lv(run, sys);
  if (opt.which == "no-periodic") return check_no_periodic(run, sys, opt);
  throw UsageError("unknown --which '" + opt.which + "'");
}

// ---- generate -------------------------------------------------------------------------

struct GenerateOptions {
  std::string family;
  std::map<std::string, std::string> values;  // option name without dashes -> text
  bool random = false;
  std::size_t dim = 0;
};

struct Generated {
  PolynomialSystem sys;
  QuadraticCandidate v;
  Json params;
  std::optional<ReactionNetwork> network;  // family-specific realization, if any
};

class ParamReader {
 public:
  explicit ParamReader(const GenerateOptions& o) : o_(o) {}
  bool has(const std::string& k) const { return o_.values.count(k) > 0; }
  Rational scalar(const std::string& k, Rational fallback = 0) const {
    return has(k) ? rational_arg(o_.values.at(k), "--" + k) : fallback;
  }
  std::vector<Rational> vec(const std::string& k) const {
    if (!has(k)) throw UsageError(o_.family + ": --" + k + " is required");
    return vector_arg(o_.values.at(k), "--" + k);
  }
  RationalMatrix mat(const std::string& k) const {
    if (!has(k)) throw UsageError(o_.family + ": --" + k + " is required");
    return matrix_arg(o_.values.at(k), "--" + k);
  }

 private:
  const GenerateOptions& o_;
};

std::string matrix_text(const RationalMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
  }
  return s;
}

std::string vector_text(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

// Small random parameters that satisfy the family's constraints.
class RandomParams {
 public:
  explicit RandomParams(std::uint64_t seed) : rng_(seed) {}
  Rational pick(std::initializer_list<Rational> choices) {
    std::uniform_int_distribution<std::size_t> d(0, choices.size() - 1);
    return *(choices.begin() + d(rng_));
  }
  std::size_t range(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  Rational positive() { return pick({Rational(1), Rational(2), Rational(3), Rational(1, 2)}); }
  Rational nonneg() { return pick({Rational(0), Rational(1), Rational(2), Rational(1, 2)}); }
  Rational any() { return pick({Rational(-2), Rational(-1), Rational(0), Rational(1), Rational(2)}); }

 private:
  std::mt19937_64 rng_;
};

void randomize(GenerateOptions& o, std::uint64_t seed) {
  RandomParams r(seed);
  auto& v = o.values;
  auto set = [&](const std::string& k, const Rational& x) { v[k] = to_string(x); };
  if (o.family == "diagonal") {
    std::size_t m = o.dim ? o.dim : r.range(2, 4);
    std::vector<Rational> a(m);
    RationalMatrix k(m, m);
    for (auto& x : a) x = r.positive();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) k(i, j) = r.nonneg();
    v["a"] = vector_text(a);
    v["K"] = matrix_text(k);
  } else if (o.family == "mixed-sign") {
    std::size_t kk = r.range(1, 2), ll = r.range(1, 2);
    std::vector<Rational> a(kk), b(ll), rx(kk), ry(ll);
    RationalMatrix coupling(kk, ll);
    for (auto& x : a) x = r.positive();
    for (auto& x : b) x = r.positive();
    for (auto& x : rx) x = r.positive();
    for (auto& x : ry) x = r.positive();
    for (std::size_t i = 0; i < kk; ++i)
      for (std::size_t j = 0; j < ll; ++j) coupling(i, j) = r.nonneg();
    v["x-weights"] = vector_text(a);
    v["y-weights"] = vector_text(b);
    v["A"] = matrix_text(coupling);
    auto rho = rx;
    rho.insert(rho.end(), ry.begin(), ry.end());
    rho.push_back(r.positive());
    v["rho"] = vector_text(rho);
  } else if (o.family == "shifted") {
    Rational big_a = r.nonneg(), big_b = r.nonneg();
    Rational a = r.any(), b = r.any();
    if (a < 0) big_b = 0;
    if (b < 0) big_a = 0;
    set("A", big_a);
    set("B", big_b);
    set("a", a);
    set("b", b);
  } else {
    BinaryFamily f = parse_binary_family(o.family);
    for (const char* k : {"K", "L", "M", "N", "R"}) set(k, r.nonneg());
    set("S", r.any());
    Rational a = r.positive(), b, c = r.positive();
    switch (f) {
      case BinaryFamily::ellipse_hyperbola:
        do b = r.any(); while (a * c == b * b);
        for (const char* k : {"M", "N", "R", "S"}) set(k, 0);
        break;
      case BinaryFamily::parabolic_plus:
      case BinaryFamily::parabolic_minus: {
        Rational p = r.pick({1, 2}), q = r.pick({1, 2, 3});
        a = p * p, b = p * q, c = q * q;
        if (f == BinaryFamily::parabolic_plus) set("R", 0);
        break;
      }
      case BinaryFamily::indefinite:
        do b = r.any(); while (b == 0);
        for (const char* k : {"N", "R", "S"}) set(k, 0);
        break;
      case BinaryFamily::rank_one:
        do b = r.any(); while (b == 0);
        c = 0;
        for (const char* k : {"L", "N", "R"}) set(k, 0);
        break;
    }
    set("a", a);
    set("b", b);
    set("c", c);
  }
}

Generated generate(const GenerateOptions& o) {
  ParamReader p(o);
  Generated g;
  if (o.family == "diagonal") {
    DiagonalParams d{p.vec("a"), p.mat("K")};
    g.sys = generate_diagonal_system(d);
    g.v = QuadraticCandidate::diagonal(d.a);
    g.params = {{"a", vector_text(d.a)}, {"K", matrix_text(d.k)}};
  } else if (o.family == "mixed-sign") {
    MixedSignParams m;
    m.a = p.vec("x-weights");
    m.b = p.vec("y-weights");
    m.coupling = p.mat("A");
    if (m.coupling.rows() != m.a.size() || m.coupling.cols() != m.b.size()) {
      throw UsageError("mixed-sign: --A must have one row per x weight and one column per y weight");
    }
    std::vector<Rational> rho(m.a.size() + m.b.size() + 1, Rational(1));
    if (p.has("rho")) rho = p.vec("rho");
    if (rho.size() != m.a.size() + m.b.size() + 1) {
      throw UsageError("mixed-sign: --rho needs " + std::to_string(m.a.size() + m.b.size() + 1) + " entries");
    }
    m.rho_x.assign(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(m.a.size()));
    m.rho_y.assign(rho.begin() + static_cast<std::ptrdiff_t>(m.a.size()), rho.end() - 1);
    m.rho_z = rho.back();
    g.sys = generate_mixed_sign_system(m);
    g.v = mixed_sign_invariant(m);
    g.network = mixed_sign_realization(m);
    g.params = {{"x-weights", vector_text(m.a)},
                {"y-weights", vector_text(m.b)},
                {"A", matrix_text(m.coupling)},
                {"rho", vector_text(rho)}};
  } else if (o.family == "shifted") {
    ShiftedParams s{p.scalar("A"), p.scalar("B"), p.scalar("a"), p.scalar("b")};
    g.sys = generate_shifted_system(s);
    g.v = shifted_invariant(s);
    g.params = {{"A", to_string(s.big_a)}, {"B", to_string(s.big_b)}, {"a", to_string(s.a)}, {"b", to_string(s.b)}};
  } else {
    BinaryFormParams b;
    try {
      b.family = parse_binary_family(o.family);
    } catch (const std::invalid_argument&) {
      throw UsageError("unknown family '" + o.family +
                       "' (expected diagonal, mixed-sign, shifted, ellipse_hyperbola, parabolic_plus, "
                       "parabolic_minus, indefinite or rank_one)");
    }
    b.a = p.scalar("a");
    b.b = p.scalar("b");
    b.c = p.scalar("c");
    b.k = p.scalar("K");
    b.l = p.scalar("L");
    b.m = p.scalar("M");
    b.n = p.scalar("N");
    b.r = p.scalar("R");
    b.s = p.scalar("S");
    g.sys = generate_binary_form_system(b);
    g.v = binary_form_invariant(b);
    g.params = {{"a", to_string(b.a)}, {"b", to_string(b.b)}, {"c", to_string(b.c)}, {"K", to_string(b.k)},
                {"L", to_string(b.l)}, {"M", to_string(b.m)}, {"N", to_string(b.n)}, {"R", to_string(b.r)},
                {"S", to_string(b.s)}};
  }
  return g;
}

int cmd_generate(Run& run, GenerateOptions opt) {
  if (opt.random) randomize(opt, run.g.seed);
  Generated g = generate(opt);
  const auto& names = g.sys.names();
  Realization canon = canonical_realization(g.sys);
  const ReactionNetwork& net = g.network ? *g.network : canon.network;
  const bool kinetic = negative_cross_effect(g.sys).is_kinetic;
  const bool integral = is_first_integral(g.v, g.sys);
  const bool reproduces = canon.network.step_count() == 0 || induced_kinetic_ode(net) == g.sys;

  Json stamp = {{"kinetic", kinetic}, {"first_integral", integral}, {"realization_reproduces_system", reproduces}};
  if (run.g.json) {
    Json j = {{"family", opt.family},
              {"params", g.params},
              {"system", to_json(g.sys)},
              {"V", render(g.v.to_polynomial(), names)},
              {"network", to_json(net)},
              {"verification", stamp}};
    run.report << j.dump(2) << '\n';
  } else {
    run.report << "family: " << opt.family << '\n';
    for (const auto& [k, v] : g.params.items()) run.report << "  " << k << " = " << v.get<std::string>() << '\n';
    run.report << "system: " << render(g.sys) << '\n'
               << "V = " << render(g.v.to_polynomial(), names) << '\n'
               << "network:\n"
               << render_network(net);
    if (!canon.well_formed && !g.network) run.report << "# degenerate: the system is zero, no reaction steps\n";
    auto ok = [&](bool v) { return std::string(v ? "ok" : "FAILED"); };
    run.report << "verification: kinetic " << ok(kinetic) << ", Lie derivative of V vanishes " << ok(integral)
               << ", realization reproduces the system " << ok(reproduces) << '\n';
  }
  run.artifacts.emplace_back("system.txt", render_system_file(g.sys));
  run.artifacts.emplace_back("network.crn", render_network(net));
  return kinetic && integral && reproduces ? 0 : 1;
}

// ---- simulate -------------------------------------------------------------------------

struct SimulateOptions {
  std::string x0;
  std::string dt = "1/1000";
  std::string t_end = "10";
  std::string method = "rk4";
  std::string tolerance = "1e-9";
  std::size_t stride = 1;
  std::string projection = "off";
  std::string invariant;
  std::string isa;
};

int cmd_simulate(Run& run, const std::string& file, const SimulateOptions& opt) {
  PolynomialSystem sys = run.system(run.input(file));
  std::vector<double> x0;
  for (const auto& part : split(opt.x0, ',')) x0.push_back(initial_value_arg(part));
  if (x0.size() != sys.dim()) throw UsageError("--x0: expected " + std::to_string(sys.dim()) + " values");

  SimConfig cfg;
  try {
    cfg.method = parse_method(opt.method);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.step = to_double(rational_arg(opt.dt, "--dt"));
  cfg.t_end = to_double(rational_arg(opt.t_end, "--t-end"));
  cfg.tolerance = to_double(rational_arg(opt.tolerance, "--tol"));
  cfg.stride = opt.stride;
  if (opt.projection == "level-set") cfg.projection = Projection::level_set;
  else if (opt.projection != "off") throw UsageError("--projection must be off or level-set");
  if (!opt.isa.empty()) {
    if (opt.isa == "scalar") cfg.isa = KernelIsa::scalar;
    else if (opt.isa == "avx2") cfg.isa = KernelIsa::avx2;
    else if (opt.isa == "neon") cfg.isa = KernelIsa::neon;
    else throw UsageError("--isa must be scalar, avx2 or neon");
    if (!isa_available(*cfg.isa)) throw UsageError("--isa " + opt.isa + " is not available here");
  }
  std::optional<QuadraticCandidate> v;
  if (!opt.invariant.empty()) v = invariant_arg(opt.invariant, sys);

  Trajectory traj;
  try {
    traj = integrate(sys, x0, cfg, v);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::ostringstream csv;
  write_csv(csv, traj, sys.names());
  Json summary = {{"status", to_string(traj.status)},
                  {"last_valid_time", traj.last_valid_time},
                  {"samples", traj.times.size()},
                  {"positivity_events", traj.positivity_events.size()}};
  if (v) summary["drift"] = to_json(drift_report(traj));

  run.artifacts.emplace_back("trajectory.csv", csv.str());
  if (run.g.out_dir.empty() && !run.g.json) {
    run.report << csv.str();
  } else if (run.g.json) {
    run.report << summary.dump(2) << '\n';
  } else {
    run.report << "status: " << to_string(traj.status) << '\n' << "samples: " << traj.times.size() << '\n';
    if (v) {
      auto d = drift_report(traj);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", d.max_abs_drift);
      run.report << "max |V - V0|: " << buf << '\n';
    }
    run.report << "positivity events: " << traj.positivity_events.size() << '\n';
  }
  if (traj.status != SimStatus::completed) {
    *run.err << "simulation aborted: " << to_string(traj.status) << " after t = " << traj.last_valid_time << '\n';
    return 1;
  }
  return 0;
}

// ---- output ---------------------------------------------------------------------------

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << content;
}

void write_outputs(Run& run, const std::string& command, const std::vector<std::string>& args, const Json& config) {
  namespace fs = std::filesystem;
  fs::path dir(run.g.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create '" + dir.string() + "': " + ec.message());

  run.artifacts.emplace_back(command + (run.g.json ? ".json" : ".txt"), run.report.str());
  Json outputs = Json::object();
  for (const auto& [name, content] : run.artifacts) {
    write_file(dir / name, content);
    outputs[name] = fnv1a_hex(content);
  }
  Json inputs = Json::array();
  for (const auto& [path, digest] : run.inputs) inputs.push_back({{"path", path}, {"fnv1a64", digest}});
  Json params = Json::object();
  for (const auto& [k, v] : run.binding) params[k] = to_string(v);
  Json manifest = {{"tool", "crnkit"},
                   {"version", CRNKIT_VERSION},
                   {"command", command},
                   {"args", args},
                   {"inputs", inputs},
                   {"params", params},
                   {"config", config},
                   {"outputs", outputs}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Json options_of(const CLI::App* sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    auto res = opt->results();
    std::string joined;
    for (std::size_t i = 0; i < res.size(); ++i) joined += (i ? " " : "") + res[i];
    j[opt->get_name()] = joined;
  }
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"crnkit: reaction networks, kinetic ODEs and their quadratic first integrals", "crnkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("crnkit ") + CRNKIT_VERSION);

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--params", g.params, "Rate bindings name=value (repeatable, comma separated)");
  app.add_option("--out", g.out_dir, "Write outputs and manifest.json into DIR");
  app.add_option("--seed", g.seed, "Seed for generate --random");

  std::string file;
  auto* parse = app.add_subcommand("parse", "Parse a network or ODE file and print its canonical form");
  parse->add_option("file", file, "Input file ('-' for stdin)")->required();
  auto* odes = app.add_subcommand("odes", "Induced mass-action ODE of a network");
  odes->add_option("file", file, "Input file")->required();
  auto* realize = app.add_subcommand("realize", "Canonical reaction network of a kinetic ODE");
  realize->add_option("file", file, "Input file")->required();

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "Decide a property of a network or ODE");
  check->add_option("file", file, "Input file")->required();
  check->add_option("--which", check_opt.which, "Property to decide")
      ->required()
      ->check(CLI::IsMember({"kinetic", "conserve-stoich", "conserve-kinetic", "qfi", "log-lv", "no-periodic"}));
  check->add_option("--filter", check_opt.filter, "qfi: none, positive-diagonal, definite or indefinite");
  check->add_option("--invariant", check_opt.invariant, "Candidate first integral to verify instead of searching");
  check->add_option("--rho", check_opt.rho, "Conservation vector to verify instead of searching");

  GenerateOptions gen_opt;
  auto* gen = app.add_subcommand("generate", "Generate a system of a first-integral family");
  gen->add_option("family", gen_opt.family, "Family name")->required();
  gen->add_flag("--random", gen_opt.random, "Draw valid parameters from --seed");
  gen->add_option("--dim", gen_opt.dim, "diagonal --random: dimension");
  const std::vector<std::string> gen_keys = {"a", "b", "c", "K", "L", "M", "N", "R", "S", "A", "B",
                                             "x-weights", "y-weights", "rho"};
  std::map<std::string, std::string> gen_values;
  for (const auto& k : gen_keys) gen->add_option("--" + k, gen_values[k], "Family parameter " + k);

  SimulateOptions sim_opt;
  auto* sim = app.add_subcommand("simulate", "Integrate numerically and monitor an invariant");
  sim->add_option("file", file, "Input file")->required();
  sim->add_option("--x0", sim_opt.x0, "Initial state, comma separated (sqrt(r) allowed)")->required();
  sim->add_option("--dt", sim_opt.dt, "Step size (initial step for rkf45)");
  sim->add_option("--t-end", sim_opt.t_end, "End time");
  sim->add_option("--method", sim_opt.method, "rk4 or rkf45");
  sim->add_option("--tol", sim_opt.tolerance, "rkf45 tolerance");
  sim->add_option("--stride", sim_opt.stride, "Keep every n-th step");
  sim->add_option("--projection", sim_opt.projection, "off or level-set");
  sim->add_option("--invariant", sim_opt.invariant, "Quadratic V to monitor");
  sim->add_option("--isa", sim_opt.isa, "Kernel: scalar, avx2 or neon");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Run run;
  run.g = g;
  run.err = &err;
  run.color = !g.json && std::getenv("CRNKIT_NO_COLOR") == nullptr && &out == &std::cout && isatty(STDOUT_FILENO);

  CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();
  int code = 2;
  try {
    run.binding = parse_params(g.params);
    if (active == parse) code = cmd_parse(run, file);
    else if (active == odes) code = cmd_odes(run, file);
    else if (active == realize) code = cmd_realize(run, file);
    else if (active == check) code = cmd_check(run, file, check_opt);
    else if (active == sim) code = cmd_simulate(run, file, sim_opt);
    else if (active == gen) {
      for (const auto& k : gen_keys)
        if (gen->count("--" + k)) gen_opt.values[k] = gen_values[k];
      code = cmd_generate(run, gen_opt);
    }
    out << run.report.str();
    if (!g.out_dir.empty()) write_outputs(run, command, args, options_of(active));
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UnboundParameter& e) {
    err << "error: " << e.what() << " (bind it with --params " << e.name() << "=VALUE)\n";
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace crnkit
