#pragma once

/**
 * @file splice.hpp
 * @brief Irreducible representations of a splice from intersections of
 * pillowcase images.
 *
 * The gluing identifies mu_1 with lambda_2 and lambda_1 with mu_2, so the
 * right image is read with its coordinates exchanged.  Each intersection of
 * the left image with the transposed right image off the abelian loci lifts
 * to a pair of representations glued by an aligner g with
 *
 *     rho_1(mu_1) = g rho_2(lambda_2) g^-1,   rho_1(lambda_1) = g rho_2(mu_2) g^-1.
 */

#include <string>
#include <vector>

#include "pillow/charvar.hpp"
#include "pillow/io.hpp"
#include "pillow/knot_groups.hpp"
#include "pillow/pillowcase.hpp"
#include "pillow/su2.hpp"

namespace pillow {

// Pointwise (alpha, beta) -> (beta, alpha) on the torus cover, refolded.
PillowCurve transpose_image(const PillowCurve& c);

// The c minimizing sum |c from_i c^-1 - to_i| over pure parts (Kabsch).
Su2Elem best_conjugator(const std::vector<Su2Elem>& from, const std::vector<Su2Elem>& to);

struct SpliceRep {
  PillowPoint point;  // (mu_1 angle = lambda_2 angle, lambda_1 angle = mu_2 angle)
  RepPoint left;
  RepPoint right;
  Su2Elem aligner;
  double residual = 0.0;    // relators of both sides and both gluing equations
  double commutator = 0.0;  // max commutator_norm over the combined images
  bool irreducible = false;
};

struct SpliceResult {
  std::vector<SpliceRep> reps;
  std::vector<PillowCurve> left_image;
  std::vector<PillowCurve> right_image;       // untransposed
  std::vector<PillowCurve> right_transposed;
  int candidates = 0;  // intersections before the abelian filter
  int filtered = 0;    // intersections dropped near the abelian loci
  std::string note;
};

// Residual of a glued pair: relators of both sides plus both gluing equations,
// evaluated directly.
double splice_residual(const SpliceProblem& p, const std::vector<Su2Elem>& left,
                       const std::vector<Su2Elem>& right, const Su2Elem& aligner);

// Throws NoIntersections when nothing survives the abelian filter and
// LiftFailed when a surviving intersection does not lift.
SpliceResult find_splice_reps(const SpliceProblem& p, const TraceConfig& cfg);

// Literature note for the trefoil-trefoil splice, empty otherwise.
std::string casson_note(const SpliceProblem& p);

Json to_json(const SpliceRep& r);
Json to_json(const SpliceResult& r);

}  // namespace pillow
