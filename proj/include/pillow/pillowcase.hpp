#pragma once

/**
 * @file pillowcase.hpp
 * @brief The pillowcase R(T^2), its cut-open cylinder, and polyline curves.
 *
 * Points of the torus cover R^2 map to the pillowcase by 2pi-periodicity in
 * both coordinates and the involution (a, b) -> (2pi - a, 2pi - b).  The
 * canonical domain is alpha in [0, pi], beta in [0, 2pi); on the two edges
 * alpha = 0 and alpha = pi the involution still acts (beta -> 2pi - beta), and
 * the canonical representative there has beta in [0, pi].
 *
 * Curves are stored upstairs in the cylinder C = [0, pi] x R/2piZ together with
 * an integer lift per vertex, so that beta + 2pi * lift varies continuously
 * along every segment.  A curve that passes through an edge of the pillowcase
 * is recorded as two consecutive edge vertices (a, b) and (a, 2pi - b); the
 * segment between them is a "fold jump" of zero length in the pillowcase.
 */

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pillow/su2.hpp"

namespace pillow {

using Planar = std::array<double, 2>;

struct PillowPoint {
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const PillowPoint&, const PillowPoint&) = default;
};

struct CylinderPoint {
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const CylinderPoint&, const CylinderPoint&) = default;
};

PillowPoint canonicalize(double a, double b);
inline PillowPoint canonicalize(Planar p) { return canonicalize(p[0], p[1]); }

// Cylinder representative: alpha folded into [0, pi], beta reduced mod 2pi,
// without the edge identification.
CylinderPoint to_cylinder(double a, double b);

bool is_corner(const PillowPoint& p, double tol = 0.0);

// Distance in the pillowcase quotient metric (flat metric of the cover).
double pillow_distance(const PillowPoint& p, const PillowPoint& q);

// Default tolerances.
inline constexpr double kDefaultMaxStep = 0.05;
inline constexpr double kIntersectTol = 1e-6;
inline constexpr double kMergeRadius = 1e-4;

inline constexpr PillowPoint kCornerP{0.0, kPi};
inline constexpr PillowPoint kCornerQ{kPi, kPi};

class PillowCurve {
 public:
  PillowCurve() = default;

  // Builds a curve from samples of a continuous path in the torus cover.
  // Edge crossings are located by interpolation and recorded as fold jumps.
  static PillowCurve from_raw(std::span<const Planar> raw, bool closed, std::string label);

  // Builds from stored cylinder points and lifts (as in the JSON format).
  // Fold jumps are inferred: consecutive vertices on the same edge with
  // mirrored beta.
  static PillowCurve from_stored(std::vector<CylinderPoint> points, std::vector<int> lifts,
                                 bool closed, std::string label);

  const std::vector<CylinderPoint>& points() const { return points_; }
  const std::vector<int>& lifts() const { return lifts_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  bool closed() const { return closed_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t segment_count() const { return points_.empty() ? 0 : points_.size() - 1; }

  // Vertex i as (alpha, beta + 2pi * lift_i).
  Planar lifted(std::size_t i) const;
  PillowPoint folded(std::size_t i) const;
  std::vector<PillowPoint> folded_points() const;

  bool is_fold_jump(std::size_t segment) const { return fold_jump_[segment]; }
  bool has_fold_jumps() const;

  // Longest non-jump segment, in the cylinder metric.
  double max_step() const;

  PillowCurve reversed() const;
  // Inserts the midpoint of every non-jump segment.
  PillowCurve refined() const;

  // Continuous unfolded path through the cover (undoes fold jumps).
  std::vector<Planar> cover_path() const;

 private:
  std::vector<CylinderPoint> points_;
  std::vector<int> lifts_;
  std::vector<bool> fold_jump_;  // one per segment
  bool closed_ = false;
  std::string label_;
};

struct CurveIntersection {
  PillowPoint point;
  std::size_t segment_a = 0;
  std::size_t segment_b = 0;
};

// All intersections of two canonical curves, including those created by the
// edge identifications; deduplicated within merge_radius and sorted by
// (alpha, beta).  Collinear overlaps longer than tol throw
// Error(DegenerateOverlap) listing the overlapping segment pairs.
std::vector<CurveIntersection> intersect_curves(const PillowCurve& a, const PillowCurve& b,
                                                double tol = kIntersectTol,
                                                double merge_radius = kMergeRadius);

// Segment pairs that overlap collinearly, as reported by DegenerateOverlap.
std::vector<std::array<std::size_t, 2>> overlapping_segments(const PillowCurve& a,
                                                             const PillowCurve& b,
                                                             double tol = kIntersectTol);

// Total signed winding of beta around R/2piZ ("beta increasing" is +1).
int homology_class_in_cylinder(const PillowCurve& c);

PillowCurve abelian_locus(double max_step = kDefaultMaxStep);

// Distance from a point to a curve in the cylinder metric.
double distance_to_curve(const PillowPoint& p, const PillowCurve& c);

// Symmetric Hausdorff distance in the cylinder metric, evaluated on samples
// spaced at most `spacing` apart along both curves (fold jumps skipped).
double hausdorff_distance(const PillowCurve& a, const PillowCurve& b, double spacing = 1e-5);

// Vertex-based symmetric distance: every vertex of each curve against the
// other polyline.  Exact for piecewise-linear data up to the sampling of the
// curves themselves.
double vertex_hausdorff_distance(const PillowCurve& a, const PillowCurve& b);

namespace path {
struct Straight {};
struct Graph {
  std::function<double(double)> beta_of_alpha;
};
struct Polyline {
  std::vector<Planar> raw;
};
}  // namespace path

using PathSpec = std::variant<path::Straight, path::Graph, path::Polyline>;

// An embedded path from P = (0, pi) to Q = (pi, pi) avoiding (0,0) and (pi,0).
// Throws NotEmbedded (self-intersection or discontinuity), BadEndpoints, or
// HitsForbiddenCorner.
PillowCurve path_P_to_Q(const PathSpec& spec, double max_step = kDefaultMaxStep);

// Validation used by path_P_to_Q, also applied to curves loaded from files.
void validate_path_P_to_Q(const PillowCurve& c);

}  // namespace pillow
