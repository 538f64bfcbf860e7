#include "pillow/lm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

namespace pillow {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Rotation matrix of v -> q v q^{-1} for unit q.
Mat3 rotation(const Quaternion& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

struct WordEval {
  Quaternion value;
  // Per generator, sum of signed adjoint matrices: dW = pure(S_g delta_g) W.
  std::vector<Mat3> sens;
  std::vector<bool> touched;
};

WordEval eval_with_sensitivity(const Word& w, std::span<const Su2Elem> gens) {
  WordEval out;
  out.sens.assign(gens.size(), Mat3{});
  out.touched.assign(gens.size(), false);
  Quaternion acc{1.0, 0.0, 0.0, 0.0};
  for (int letter : w) {
    const std::size_t g = static_cast<std::size_t>(std::abs(letter)) - 1;
    const Quaternion e = letter > 0 ? gens[g].quat() : gens[g].inverse().quat();
    const Quaternion before = acc;
    acc = acc * e;
    // x -> exp(d) x contributes Ad_{P} d; x^{-1} -> x^{-1} exp(-d)
    // contributes -Ad_{P x^{-1}} d.
    const Mat3 r = rotation(letter > 0 ? before : acc);
    const double s = letter > 0 ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out.sens[g][i][j] += s * r[i][j];
    }
    out.touched[g] = true;
  }
  out.value = acc;
  return out;
}

Quaternion target_factor(const WordEquation& eq, std::span<const double> scalars) {
  if (!eq.diagonal_target) return {1.0, 0.0, 0.0, 0.0};
  double t = eq.angle;
  if (eq.scalar_index >= 0) t += scalars[static_cast<std::size_t>(eq.scalar_index)];
  return {std::cos(t), std::sin(t), 0.0, 0.0};
}

Quaternion eval_plain(const Word& w, std::span<const Su2Elem> gens) {
  Quaternion acc{1.0, 0.0, 0.0, 0.0};
  for (int letter : w) {
    const std::size_t g = static_cast<std::size_t>(std::abs(letter)) - 1;
    acc = acc * (letter > 0 ? gens[g].quat() : gens[g].inverse().quat());
  }
  return acc;
}

Eigen::VectorXd residual_vector(const LmProblem& prob, std::span<const Su2Elem> gens,
                                std::span<const double> scalars) {
  const std::size_t m = 4 * prob.equations.size() + prob.constraints.size();
  Eigen::VectorXd r(static_cast<Eigen::Index>(m));
  Eigen::Index row = 0;
  for (const WordEquation& eq : prob.equations) {
    const Quaternion d = eval_plain(eq.lhs, gens) - eval_plain(eq.rhs, gens) * target_factor(eq, scalars);
    r(row++) = d.w;
    r(row++) = d.x;
    r(row++) = d.y;
    r(row++) = d.z;
  }
  for (const ScalarConstraint& c : prob.constraints) r(row++) = c(gens, scalars);
  return r;
}

double max_residual(const LmProblem& prob, const Eigen::VectorXd& r) {
  double worst = 0.0;
  Eigen::Index row = 0;
  for (std::size_t e = 0; e < prob.equations.size(); ++e, row += 4) {
    worst = std::max(worst, r.segment(row, 4).norm());
  }
  for (std::size_t c = 0; c < prob.constraints.size(); ++c) worst = std::max(worst, std::abs(r(row++)));
  return worst;
}

void retract(std::vector<Su2Elem>& gens, std::vector<double>& scalars, const Eigen::VectorXd& delta) {
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Eigen::Index o = static_cast<Eigen::Index>(3 * g);
    gens[g] = Su2Elem::exp({delta(o), delta(o + 1), delta(o + 2)}) * gens[g];
  }
  for (std::size_t s = 0; s < scalars.size(); ++s) {
    scalars[s] += delta(static_cast<Eigen::Index>(3 * gens.size() + s));
  }
}

Eigen::MatrixXd jacobian(const LmProblem& prob, const std::vector<Su2Elem>& gens,
                         const std::vector<double>& scalars) {
  const std::size_t n = 3 * gens.size() + scalars.size();
  const std::size_t m = 4 * prob.equations.size() + prob.constraints.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  Eigen::Index row = 0;
  for (const WordEquation& eq : prob.equations) {
    const WordEval L = eval_with_sensitivity(eq.lhs, gens);
    const WordEval R = eval_with_sensitivity(eq.rhs, gens);
    const Quaternion T = target_factor(eq, scalars);
    const Quaternion RT = R.value * T;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (!L.touched[g] && !R.touched[g]) continue;
      for (int k = 0; k < 3; ++k) {
        const Vec3 vl{L.sens[g][0][k], L.sens[g][1][k], L.sens[g][2][k]};
        const Vec3 vr{R.sens[g][0][k], R.sens[g][1][k], R.sens[g][2][k]};
        const Quaternion d = Quaternion::pure(vl) * L.value - Quaternion::pure(vr) * RT;
        const Eigen::Index col = static_cast<Eigen::Index>(3 * g + k);
        J(row, col) = d.w;
        J(row + 1, col) = d.x;
        J(row + 2, col) = d.y;
        J(row + 3, col) = d.z;
      }
    }
    if (eq.diagonal_target && eq.scalar_index >= 0) {
      const Quaternion d = (RT * Quaternion{0.0, 1.0, 0.0, 0.0}) * -1.0;
      const Eigen::Index col = static_cast<Eigen::Index>(3 * gens.size() + eq.scalar_index);
      J(row, col) = d.w;
      J(row + 1, col) = d.x;
      J(row + 2, col) = d.y;
      J(row + 3, col) = d.z;
    }
    row += 4;
  }
  if (!prob.constraints.empty()) {
    const double h = 1e-7;
    for (std::size_t col = 0; col < n; ++col) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
      e(static_cast<Eigen::Index>(col)) = h;
      std::vector<Su2Elem> gp = gens, gm = gens;
      std::vector<double> sp = scalars, sm = scalars;
      retract(gp, sp, e);
      retract(gm, sm, -e);
      for (std::size_t c = 0; c < prob.constraints.size(); ++c) {
        const double d = (prob.constraints[c](gp, sp) - prob.constraints[c](gm, sm)) / (2 * h);
        J(row + static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(col)) = d;
      }
    }
  }
  return J;
}

}  // namespace

double problem_residual(const LmProblem& prob, std::span<const Su2Elem> gens,
                        std::span<const double> scalars) {
  return max_residual(prob, residual_vector(prob, gens, scalars));
}

LmResult solve_lm(const LmProblem& prob, std::vector<Su2Elem> gens, std::vector<double> scalars,
                  const LmOptions& opts) {
  LmResult res;
  Eigen::VectorXd r = residual_vector(prob, gens, scalars);
  double cost = r.squaredNorm();
  double mu = 1e-2;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    if (max_residual(prob, r) < opts.tol) break;
    const Eigen::MatrixXd J = jacobian(prob, gens, scalars);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      // Damping proportional to |r| keeps fast local convergence on
      // non-isolated solution sets (gauge orbits).
      const double lambda = mu * std::sqrt(cost) + 1e-15;
      Eigen::MatrixXd A = JtJ;
      A.diagonal().array() += lambda;
      const Eigen::VectorXd delta = A.ldlt().solve(-g);
      if (!delta.allFinite()) {
        mu *= 8.0;
        continue;
      }
      std::vector<Su2Elem> gt = gens;
      std::vector<double> st = scalars;
      retract(gt, st, delta);
      const Eigen::VectorXd rt = residual_vector(prob, gt, st);
      const double ct = rt.squaredNorm();
      if (ct < cost) {
        gens = std::move(gt);
        scalars = std::move(st);
        r = rt;
        cost = ct;
        mu = std::max(mu * 0.25, 1e-8);
        accepted = true;
      } else {
        mu *= 8.0;
      }
    }
    if (!accepted) break;
  }
  res.gens = std::move(gens);
  res.scalars = std::move(scalars);
  res.residual = max_residual(prob, r);
  res.iterations = it;
  res.converged = res.residual < opts.tol;
  return res;
}

}  // namespace pillow
