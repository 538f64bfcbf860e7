#pragma once

/**
 * @file lm.hpp
 * @brief Damped Gauss-Newton (Levenberg-Marquardt) on SU(2)^n x R^m.
 *
 * Unknowns are generator images updated by left multiplication with
 * exp(delta), plus real scalars.  Equations are word identities
 *
 *     eval(lhs) = eval(rhs) * diag(e^{i t})
 *
 * with t either fixed or an affine function of one scalar, and optional
 * extra scalar constraints c(gens, scalars) = 0 (differenced numerically).
 */

#include <functional>
#include <span>
#include <vector>

#include "pillow/knot_groups.hpp"
#include "pillow/su2.hpp"

namespace pillow {

struct WordEquation {
  Word lhs;
  Word rhs;
  bool diagonal_target = false;  // if false the target factor is the identity
  double angle = 0.0;
  int scalar_index = -1;  // when >= 0, t = angle + scalars[scalar_index]
};

using ScalarConstraint =
    std::function<double(std::span<const Su2Elem>, std::span<const double>)>;

struct LmProblem {
  std::size_t n_generators = 0;
  std::size_t n_scalars = 0;
  std::vector<WordEquation> equations;
  std::vector<ScalarConstraint> constraints;
};

struct LmOptions {
  double tol = 1e-13;
  int max_iters = 100;
};

struct LmResult {
  std::vector<Su2Elem> gens;
  std::vector<double> scalars;
  double residual = 0.0;  // max over equations (4-vector) and |constraints|
  int iterations = 0;
  bool converged = false;
};

// Max residual of the problem at the given point.
double problem_residual(const LmProblem& prob, std::span<const Su2Elem> gens,
                        std::span<const double> scalars);

LmResult solve_lm(const LmProblem& prob, std::vector<Su2Elem> gens, std::vector<double> scalars,
                  const LmOptions& opts = {});

}  // namespace pillow
