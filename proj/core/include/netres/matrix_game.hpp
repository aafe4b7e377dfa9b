#pragma once

#include <vector>

namespace netres {

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;  // maximizer
  std::vector<double> col_strategy;  // minimizer
};

/// Value and optimal mixed strategies of a finite zero-sum matrix game.
/// `payoff[i][j]` is the payoff to the row player (the maximizer). Solved
/// through the standard linear-programming formulation after shifting the
/// matrix positive; the returned strategies satisfy the saddle condition to
/// simplex accuracy. NaN or infinite entries raise std::domain_error.
MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff);

}  // namespace netres
