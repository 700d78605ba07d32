#pragma once

#include "crnkit/linalg.hpp"

#include <optional>
#include <vector>

namespace crnkit {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational objective;
};

// Exact two-phase simplex with Bland's rule:
//   minimize c^T x  subject to  A x = b,  x >= 0.
// An empty cost vector asks for feasibility only.
LpResult solve_lp(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c);

// Looks for v = N lambda (lambda free) with every v_i >= 1, minimizing sum(v).
// N is n x d (basis vectors as columns). Returns v, or nullopt if no strictly
// positive vector lies in the column span.
std::optional<std::vector<Rational>> positive_vector_in_span(const RationalMatrix& basis);

}  // namespace crnkit
