#pragma once

/**
 * @file charvar.hpp
 * @brief SU(2) representations of knot groups and their pillowcase images.
 *
 * At a fixed meridian angle alpha the meridian is pinned to diag(e^{i alpha})
 * and the relators are solved by multistart Levenberg-Marquardt.  Solutions
 * are normalized into a gauge slice (a designated generator's axis rotated
 * into the half-plane y = 0, z > 0) and deduplicated.  Sweeping alpha and
 * linking solutions by proximity in assignment space yields the image curves.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "pillow/io.hpp"
#include "pillow/knot_groups.hpp"
#include "pillow/pillowcase.hpp"
#include "pillow/su2.hpp"

namespace pillow {

struct TraceConfig {
  double step = 0.005;
  double alpha_min = 0.0;
  double alpha_max = kPi;
  double newton_tol = 1e-13;     // solver target
  double residual_tol = 1e-10;   // acceptance
  int max_newton_iters = 100;
  int restarts = 64;
  std::uint64_t rng_seed = 1;
  double dedup_radius = 1e-6;
  double max_curve_step = kDefaultMaxStep;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Throws Malformed when a field is out of range.
void validate(const TraceConfig& cfg);

struct RepPoint {
  std::vector<Su2Elem> assignment;
  double residual = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool irreducible = false;
};

Json to_json(const RepPoint& r);

// Max 4-vector deviation of the relators, evaluated independently.
double relator_residual(const KnotPresentation& k, const std::vector<Su2Elem>& gens);

// max over generator pairs of commutator_norm.
double max_commutator(const std::vector<Su2Elem>& gens);

// Fills residual, (alpha, beta) and the irreducible flag from an assignment.
RepPoint make_rep_point(const KnotPresentation& k, std::vector<Su2Elem> gens);

// Gauge slice: meridian diagonal with nonnegative angle, then the first
// generator off the meridian axis rotated into y = 0, z > 0.
void normalize_gauge(const KnotPresentation& k, std::vector<Su2Elem>& gens);

// The abelian representation g -> diag(e^{i phi(g) alpha}).
std::vector<Su2Elem> abelian_rep(const KnotPresentation& k, double alpha);

// Max 4-vector distance between two assignments.
double assignment_distance(const std::vector<Su2Elem>& a, const std::vector<Su2Elem>& b);

struct AlphaCensus {
  std::vector<RepPoint> reps;  // abelian class first, then irreducibles
  int starts = 0;
  int converged = 0;
};

// All classes found at a fixed meridian angle.  `stream` selects the
// random stream (seed, stream); trace_image passes the grid index.
AlphaCensus census_at_alpha(const KnotPresentation& k, double alpha, const TraceConfig& cfg,
                            std::uint64_t stream = 0);

// Representatives found at alpha: the abelian class plus irreducibles.
// Throws NoConvergence if no start (including the abelian one) converges.
std::vector<RepPoint> solve_at_alpha(const KnotPresentation& k, double alpha, const TraceConfig& cfg);

// Warm-started solve at alpha from a nearby assignment.
bool polish_at_alpha(const KnotPresentation& k, double alpha, const std::vector<Su2Elem>& start,
                     const TraceConfig& cfg, RepPoint& out);

struct TraceResult {
  std::vector<PillowCurve> curves;  // irreducible arcs, then the abelian curve
  std::vector<std::vector<RepPoint>> branch_reps;  // per irreducible curve
};

TraceResult trace_branches(const KnotPresentation& k, const TraceConfig& cfg);

// Irreducible arcs labelled "<knot>/irreducible/<i>" plus "<knot>/abelian".
std::vector<PillowCurve> trace_image(const KnotPresentation& k, const TraceConfig& cfg);

struct ClosedFormArc {
  double theta_x = 0.0;
  double theta_y = 0.0;
  double c = 0.0;  // angle of rho(x^p): 0 or pi
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  long slope = 0;  // beta = c + slope * alpha, slope = -pq

  double beta(double alpha) const { return c + static_cast<double>(slope) * alpha; }
};

std::vector<ClosedFormArc> torus_knot_closed_form(int p, int q);

// Polyline of a closed-form arc in the cylinder, spacing at most `spacing`.
PillowCurve closed_form_curve(const ClosedFormArc& arc, double spacing = 1e-3);

// min over vertices of min(alpha, pi - alpha) over curves whose label marks
// them irreducible.  Throws EmptyInput if there are none.
double min_distance_to_cut_lines(const std::vector<PillowCurve>& curves);

bool is_irreducible_label(const std::string& label);

// Closes an arc whose endpoints lie on the abelian locus beta = 0 by running
// back along that locus.  Throws BadEndpoints when an endpoint is farther
// than tol from it.
PillowCurve close_along_abelian(const PillowCurve& arc, double tol = 1e-3);

}  // namespace pillow
