#pragma once

/**
 * @file shear.hpp
 * @brief Shearing maps of the pillowcase and their compositions.
 *
 * A profile is an even 2pi-periodic function g(t) = sum a_k cos(kt) with
 * derivative f = g'.  A step with primitive direction d = (d1, d2) acts on
 * the torus cover by
 *
 *     v -> v + f(l(v)) d,   l(v) = s (d2 alpha - d1 beta),
 *
 * where the sign s makes the first nonzero coefficient of l positive.  For
 * d = (0,1) this is (alpha, beta) -> (alpha, beta + f(alpha)); for d = (1,0)
 * it is (alpha, beta) -> (alpha + f(beta), beta).  Since l(d) = 0 the
 * Jacobian is unipotent, and oddness of f makes the map commute with the
 * involution v -> -v.
 */

#include <array>
#include <string>
#include <vector>

#include "pillow/charvar.hpp"
#include "pillow/io.hpp"
#include "pillow/knot_groups.hpp"
#include "pillow/pillowcase.hpp"

namespace pillow {

struct ClassFunctionProfile {
  std::vector<double> a;  // cosine coefficients a_0 .. a_m

  double g(double t) const;
  double f(double t) const;        // g'
  double f_prime(double t) const;  // g''
  ClassFunctionProfile negated() const;
  bool is_constant() const;
};

struct ShearStep {
  std::array<int, 2> direction{0, 1};
  ClassFunctionProfile profile;
};

struct ShearProgram {
  std::vector<ShearStep> steps;

  // Steps reversed with negated profiles.
  ShearProgram inverse() const;
  ShearProgram then(const ShearProgram& next) const;
};

// Throws Malformed when the direction is not primitive.
void validate(const ShearStep& s);

// The functional l for a direction, as integer coefficients of (alpha, beta).
std::array<int, 2> transverse_functional(std::array<int, 2> direction);

Planar apply_shear_cover(const ShearStep& s, Planar v);
PillowPoint apply_shear(const ShearStep& s, const PillowPoint& p);
Planar apply_program_cover(const ShearProgram& prog, Planar v);
PillowPoint apply_program(const ShearProgram& prog, const PillowPoint& p);

// Image of a curve, refined so every output segment is shorter than max_step.
PillowCurve apply_program(const ShearProgram& prog, const PillowCurve& c,
                          double max_step = kDefaultMaxStep);

struct FitOptions {
  int budget = 40;          // maximum number of steps
  double tol = 1e-3;        // target distance
  int degree = 32;          // cosine degree of each profile
};

enum class FitStatus { Ok, BudgetExceeded };

struct FitResult {
  ShearProgram program;
  double distance = 0.0;   // Hausdorff distance of the image of c0 to the target
  FitStatus status = FitStatus::Ok;
  bool target_embedded = true;
  std::string target_problem;  // validation message when not embedded
  int rounds = 0;
};

// Greedy fit: each round tries the directions (0,1), (1,0), (1,1), (1,-1) and
// keeps the step that brings the image of the straight path c0 closest to the
// target.  Never throws on failure to reach
// tol; the result carries the best program and the achieved distance.
FitResult fit_program_to_path(const PillowCurve& target, const FitOptions& opts = {});

struct CriticalPoint {
  RepPoint rep;
  std::string source;    // label of the image curve it came from
  int multiplicity = 2;  // double cover annotation
  double curve_residual = 0.0;  // |beta of the pulled-back point - pi| mod 2pi
};

struct PerturbedCriticalSet {
  PillowCurve c_prime;
  std::vector<CriticalPoint> points;
  std::vector<PillowCurve> image;
};

PerturbedCriticalSet perturbed_critical_set(const KnotPresentation& k, const ShearProgram& prog,
                                            const TraceConfig& cfg);

// Same, reusing an already traced image.
PerturbedCriticalSet perturbed_critical_set(const KnotPresentation& k, const ShearProgram& prog,
                                            const TraceResult& traced, const TraceConfig& cfg);

Json to_json(const ShearProgram& p);
ShearProgram program_from_json(const Json& j);
Json to_json(const FitResult& r);
Json to_json(const PerturbedCriticalSet& s);

}  // namespace pillow
