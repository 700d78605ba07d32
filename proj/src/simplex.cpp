#include "crnkit/simplex.hpp"

#include <stdexcept>

namespace crnkit {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows, cols + 1), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_(r, c); }
  Rational& rhs(std::size_t r) { return t_(r, cols_); }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return rows_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = Rational(1) / t_(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) t_(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || t_(i, c) == 0) continue;
      const Rational f = t_(i, c);
      for (std::size_t j = 0; j <= cols_; ++j) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    RationalMatrix next(rows_ - 1, cols_ + 1);
    for (std::size_t i = 0, k = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j <= cols_; ++j) next(k, j) = t_(i, j);
      ++k;
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  // Minimizes cost over columns with allowed[c]; returns false if unbounded.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_ && entering == cols_; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
          if (t_(i, j) != 0) reduced -= cost[basis_[i]] * t_(i, j);
        }
        if (reduced < 0) entering = j;
      }
      if (entering == cols_) return true;

      std::size_t leaving = rows_;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_(i, entering) <= 0) continue;
        Rational ratio = t_(i, cols_) / t_(i, entering);
        if (leaving == rows_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_) return false;
      pivot(leaving, entering);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  RationalMatrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve_lp: rhs length mismatch");
  if (!c.empty() && c.size() != n) throw std::invalid_argument("solve_lp: cost length mismatch");

  // Columns: n structural, then m artificial.
  Tableau tab(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    tab.at(i, n + i) = 1;
    tab.rhs(i) = flip ? Rational(-b[i]) : b[i];
    tab.basis()[i] = n + i;
  }

  std::vector<Rational> phase1_cost(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1_cost[n + i] = 1;
  std::vector<bool> allowed(n + m, true);
  tab.optimize(phase1_cost, allowed);

  Rational infeasibility = 0;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] >= n) infeasibility += tab.rhs(i);
  LpResult result;
  if (infeasibility != 0) return result;

  // Drive zero-valued artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < n && tab.at(i, j) == 0) ++j;
    if (j < n) {
      tab.pivot(i, j);
      ++i;
    } else {
      tab.drop_row(i);
    }
  }

  for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;
  std::vector<Rational> cost(n + m);
  if (!c.empty())
    for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!tab.optimize(cost, allowed)) {
    result.status = LpStatus::unbounded;
    return result;
  }

  result.status = LpStatus::optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < n) result.x[tab.basis()[i]] = tab.rhs(i);
  result.objective = 0;
  if (!c.empty())
    for (std::size_t j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  return result;
}

std::optional<std::vector<Rational>> positive_vector_in_span(const RationalMatrix& basis) {
  const std::size_t n = basis.rows();
  const std::size_t d = basis.cols();
  if (n == 0) return std::vector<Rational>{};
  if (d == 0) return std::nullopt;

  // Variables: lambda+ (d), lambda- (d), surplus s (n).  N l+ - N l- - s = 1, minimize sum s.
  RationalMatrix a(n, 2 * d + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      a(i, j) = basis(i, j);
      a(i, d + j) = -basis(i, j);
    }
    a(i, 2 * d + i) = -1;
  }
  std::vector<Rational> b(n, Rational(1));
  std::vector<Rational> c(2 * d + n);
  for (std::size_t i = 0; i < n; ++i) c[2 * d + i] = 1;

  LpResult lp = solve_lp(a, b, c);
  if (lp.status != LpStatus::optimal) return std::nullopt;
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1 + lp.x[2 * d + i];
  return v;
}

}  // namespace crnkit
