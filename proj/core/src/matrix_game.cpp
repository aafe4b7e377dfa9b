#include "netres/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace netres {

namespace {

constexpr double kPivotTol = 1e-11;

// Dense tableau simplex for  max sum(y)  s.t.  G y <= 1, y >= 0  with
// G > 0 entrywise (so the program is bounded and the slack basis feasible).
// Bland's rule keeps it finite under degeneracy. On return `y` holds the
// primal solution and `duals` the reduced costs on the slack columns, which
// solve the dual program.
void simplex_positive(const std::vector<std::vector<double>>& g,
                      std::vector<double>& y, std::vector<double>& duals) {
  const int m = static_cast<int>(g.size());
  const int n = static_cast<int>(g[0].size());
  const int cols = n + m + 1;  // vars, slacks, rhs

  std::vector<std::vector<double>> tab(m, std::vector<double>(cols, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = g[i][j];
    tab[i][n + i] = 1.0;
    tab[i][cols - 1] = 1.0;
    basis[i] = n + i;
  }
  // Objective row stores c_j - z_j; positive entries can still improve.
  std::vector<double> obj(cols, 0.0);
  for (int j = 0; j < n; ++j) obj[j] = 1.0;

  bool optimal = false;
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (obj[j] > kPivotTol) {
        enter = j;  // Bland: first improving column
        break;
      }
    }
    if (enter < 0) {
      optimal = true;
      break;
    }

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (tab[i][enter] > kPivotTol) {
        double ratio = tab[i][cols - 1] / tab[i][enter];
        if (ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol &&
             (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      throw std::runtime_error("matrix game LP unbounded; payoff shift failed");
    }

    const double pivot = tab[leave][enter];
    for (int j = 0; j < cols; ++j) tab[leave][j] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double factor = tab[i][enter];
      if (factor == 0.0) continue;
      for (int j = 0; j < cols; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    const double obj_factor = obj[enter];
    for (int j = 0; j < cols; ++j) obj[j] -= obj_factor * tab[leave][j];
    basis[leave] = enter;
  }
  if (!optimal) {
    throw std::runtime_error("matrix game simplex did not reach optimality");
  }

  y.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) y[basis[i]] = tab[i][cols - 1];
  }
  duals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    duals[i] = -obj[n + i];  // reduced cost of slack i at optimality
  }
}

void clean_distribution(std::vector<double>& p) {
  double total = 0.0;
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
    total += v;
  }
  if (total <= 0.0) {
    // Degenerate fallback; cannot happen for a bounded feasible LP.
    p.assign(p.size(), 1.0 / static_cast<double>(p.size()));
    return;
  }
  for (double& v : p) v /= total;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff) {
  if (payoff.empty() || payoff[0].empty()) {
    throw std::domain_error("matrix game needs a nonempty payoff matrix");
  }
  const int m = static_cast<int>(payoff.size());
  const int n = static_cast<int>(payoff[0].size());
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& row : payoff) {
    if (static_cast<int>(row.size()) != n) {
      throw std::domain_error("matrix game payoff matrix is ragged");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw std::domain_error("matrix game payoff matrix has a non-finite entry");
      }
      lo = std::min(lo, v);
    }
  }

  // Shift so every entry is >= 1; the game value shifts by the same amount
  // and the optimal strategies are unchanged.
  const double shift = 1.0 - lo;
  // Column player's program: max sum(y) s.t. (M + shift) y <= 1.
  std::vector<std::vector<double>> g(m, std::vector<double>(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) g[i][j] = payoff[i][j] + shift;
  }

  std::vector<double> y;
  std::vector<double> x;
  simplex_positive(g, y, x);

  double y_sum = 0.0;
  for (double v : y) y_sum += v;
  if (y_sum <= 0.0) {
    throw std::runtime_error("matrix game LP produced an empty solution");
  }
  const double shifted_value = 1.0 / y_sum;

  MatrixGameSolution sol;
  sol.value = shifted_value - shift;
  sol.col_strategy.assign(n, 0.0);
  for (int j = 0; j < n; ++j) sol.col_strategy[j] = y[j] * shifted_value;
  sol.row_strategy.assign(m, 0.0);
  for (int i = 0; i < m; ++i) sol.row_strategy[i] = x[i] * shifted_value;
  clean_distribution(sol.row_strategy);
  clean_distribution(sol.col_strategy);
  return sol;
}

}  // namespace netres
