#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pillow/error.hpp"
#include "pillow/pillowcase.hpp"

using namespace pillow;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no pillow::Error thrown";
  return ErrorKind::Io;
}

PillowCurve segment(Planar a, Planar b, int n, std::string label) {
  std::vector<Planar> raw;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    raw.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
  }
  return PillowCurve::from_raw(raw, false, std::move(label));
}

PillowCurve vertical_loop(double alpha, int n, bool up) {
  std::vector<Planar> raw;
  for (int i = 0; i <= n; ++i) raw.push_back({alpha, (up ? 1.0 : -1.0) * kTwoPi * i / n});
  return PillowCurve::from_raw(raw, true, "loop");
}

}  // namespace

TEST(Canonicalize, InteriorPoints) {
  const PillowPoint p = canonicalize(1.0, 2.0);
  EXPECT_DOUBLE_EQ(p.alpha, 1.0);
  EXPECT_DOUBLE_EQ(p.beta, 2.0);
  const PillowPoint q = canonicalize(kTwoPi - 1.0, kTwoPi - 2.0);
  EXPECT_NEAR(q.alpha, 1.0, 1e-15);
  EXPECT_NEAR(q.beta, 2.0, 1e-15);
}

TEST(Canonicalize, EdgeRepresentativeHasBetaAtMostPi) {
  const PillowPoint p = canonicalize(0.0, 1.5 * kPi);
  EXPECT_DOUBLE_EQ(p.alpha, 0.0);
  EXPECT_NEAR(p.beta, 0.5 * kPi, 1e-15);
  const PillowPoint q = canonicalize(kPi, 1.75 * kPi);
  EXPECT_NEAR(q.beta, 0.25 * kPi, 1e-15);
}

TEST(Canonicalize, InvariantUnderLatticeAndInvolutionProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  std::uniform_int_distribution<int> m(-3, 3);
  for (int n = 0; n < 2000; ++n) {
    const double a = u(rng);
    const double b = u(rng);
    const PillowPoint p = canonicalize(a, b);
    EXPECT_GE(p.alpha, 0.0);
    EXPECT_LE(p.alpha, kPi);
    EXPECT_GE(p.beta, 0.0);
    EXPECT_LT(p.beta, kTwoPi);
    const PillowPoint q = canonicalize(a + kTwoPi * m(rng), b + kTwoPi * m(rng));
    EXPECT_LT(pillow_distance(p, q), 1e-12);
    const PillowPoint r = canonicalize(-a, -b);
    EXPECT_LT(pillow_distance(p, r), 1e-12);
    const PillowPoint again = canonicalize(p.alpha, p.beta);
    EXPECT_LT(pillow_distance(p, again), 1e-15);
  }
}

TEST(Canonicalize, CylinderKeepsEdgeBeta) {
  const CylinderPoint c = to_cylinder(0.0, 1.5 * kPi);
  EXPECT_DOUBLE_EQ(c.alpha, 0.0);
  EXPECT_NEAR(c.beta, 1.5 * kPi, 1e-15);
  const CylinderPoint d = to_cylinder(-1.0, 1.0);
  EXPECT_NEAR(d.alpha, 1.0, 1e-15);
  EXPECT_NEAR(d.beta, kTwoPi - 1.0, 1e-15);
}

TEST(Corners, Recognized) {
  EXPECT_TRUE(is_corner({0.0, 0.0}));
  EXPECT_TRUE(is_corner(kCornerP));
  EXPECT_TRUE(is_corner(kCornerQ));
  EXPECT_TRUE(is_corner({kPi, 0.0}));
  EXPECT_FALSE(is_corner({0.5, 0.0}));
  EXPECT_TRUE(is_corner({1e-9, kPi}, 1e-8));
}

TEST(PillowDistance, MetricProperties) {
  EXPECT_NEAR(pillow_distance({0.5, 0.1}, {0.5, kTwoPi - 0.1}), 0.2, 1e-15);
  EXPECT_NEAR(pillow_distance({0.1, 1.0}, {0.1, 1.0}), 0.0, 0.0);
  // across the edge alpha = 0: (0.1, 1) is close to (0.1, 2pi - 1) reflected
  EXPECT_NEAR(pillow_distance({0.1, 1.0}, {0.1, kTwoPi - 1.0}), 0.2, 1e-14);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(0.0, kPi);
  std::uniform_real_distribution<double> ub(0.0, kTwoPi);
  for (int n = 0; n < 500; ++n) {
    const PillowPoint p{ua(rng), ub(rng)};
    const PillowPoint q{ua(rng), ub(rng)};
    const PillowPoint r{ua(rng), ub(rng)};
    EXPECT_NEAR(pillow_distance(p, q), pillow_distance(q, p), 1e-14);
    EXPECT_LE(pillow_distance(p, r), pillow_distance(p, q) + pillow_distance(q, r) + 1e-12);
  }
}

TEST(PillowCurve, FromRawRecordsFoldJump) {
  const PillowCurve c = segment({0.5, 1.0}, {-0.5, 1.4}, 10, "cross");
  EXPECT_TRUE(c.has_fold_jumps());
  for (const PillowPoint& p : c.folded_points()) {
    EXPECT_GE(p.alpha, 0.0);
    EXPECT_LE(p.alpha, kPi);
  }
  // the unfolded path goes back to the raw endpoints
  const std::vector<Planar> cover = c.cover_path();
  EXPECT_NEAR(cover.front()[0], 0.5, 1e-15);
  EXPECT_NEAR(std::abs(cover.back()[0]), 0.5, 1e-12);
}

TEST(PillowCurve, LiftsAreContinuous) {
  std::vector<Planar> raw;
  for (int i = 0; i <= 400; ++i) raw.push_back({1.0 + 0.001 * i, -3.0 * kPi * i / 400.0});
  const PillowCurve c = PillowCurve::from_raw(raw, false, "spiral");
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (c.is_fold_jump(i)) continue;
    EXPECT_LT(std::abs(c.lifted(i + 1)[1] - c.lifted(i)[1]), 0.1);
  }
  EXPECT_NEAR(c.lifted(c.size() - 1)[1] - c.lifted(0)[1], -3.0 * kPi, 1e-12);
}

TEST(PillowCurve, RefinedHalvesMaxStep) {
  const PillowCurve c = segment({0.5, 1.0}, {2.5, 3.0}, 4, "seg");
  const PillowCurve r = c.refined();
  EXPECT_EQ(r.size(), 2 * c.size() - 1);
  EXPECT_NEAR(r.max_step(), c.max_step() / 2.0, 1e-14);
}

TEST(PillowCurve, FromStoredRoundTrip) {
  const PillowCurve c = segment({0.5, 1.0}, {-0.5, 1.4}, 10, "cross");
  const PillowCurve d = PillowCurve::from_stored(c.points(), c.lifts(), c.closed(), c.label());
  ASSERT_EQ(d.size(), c.size());
  for (std::size_t i = 0; i < c.segment_count(); ++i) EXPECT_EQ(d.is_fold_jump(i), c.is_fold_jump(i));
}

TEST(Intersections, TwoSegmentsMeetOnce) {
  const PillowCurve a = segment({0.5, 0.5}, {2.5, 2.5}, 20, "a");
  const PillowCurve b = segment({0.5, 2.5}, {2.5, 0.5}, 20, "b");
  const auto hits = intersect_curves(a, b);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_NEAR(hits[0].point.alpha, 1.5, 1e-12);
  EXPECT_NEAR(hits[0].point.beta, 1.5, 1e-12);
}

TEST(Intersections, AcrossEdgeIdentification) {
  // Near the edge alpha = 0 the point (0.1, 1) is identified with (-0.1, -1).
  const PillowCurve a = segment({0.2, 1.0}, {0.2, 2.0}, 10, "a");
  const PillowCurve b = segment({0.1, kTwoPi - 1.5}, {0.3, kTwoPi - 1.5}, 10, "b");
  const auto hits = intersect_curves(a, b);
  EXPECT_TRUE(hits.empty());
  const PillowCurve c = segment({-0.3, -1.5}, {0.4, -1.5}, 10, "c");
  const auto through = intersect_curves(a, c);
  ASSERT_EQ(through.size(), 1u);
  EXPECT_NEAR(through[0].point.alpha, 0.2, 1e-12);
  EXPECT_NEAR(through[0].point.beta, 1.5, 1e-12);
}

TEST(Intersections, SortedAndSymmetric) {
  std::vector<Planar> raw;
  for (int i = 0; i <= 600; ++i) {
    const double a = 0.2 + 2.7 * i / 600.0;
    raw.push_back({a, kPi + 1.2 * std::sin(3.0 * a)});
  }
  const PillowCurve wave = PillowCurve::from_raw(raw, false, "wave");
  const PillowCurve line = segment({0.1, kPi}, {3.0, kPi}, 30, "line");
  const auto ab = intersect_curves(wave, line);
  const auto ba = intersect_curves(line, wave);
  ASSERT_EQ(ab.size(), ba.size());
  // sin(3a) = 0 for a in (0.2, 2.9): a = pi/3, 2pi/3
  ASSERT_EQ(ab.size(), 2u);
  EXPECT_NEAR(ab[0].point.alpha, kPi / 3, 1e-4);
  EXPECT_NEAR(ab[1].point.alpha, 2 * kPi / 3, 1e-4);
  for (std::size_t i = 0; i < ab.size(); ++i) EXPECT_LT(pillow_distance(ab[i].point, ba[i].point), 1e-12);
}

TEST(Intersections, CollinearOverlapThrows) {
  const PillowCurve a = segment({0.5, 1.0}, {2.0, 1.0}, 5, "a");
  const PillowCurve b = segment({1.0, 1.0}, {2.5, 1.0}, 5, "b");
  EXPECT_EQ(kind_of([&] { intersect_curves(a, b); }), ErrorKind::DegenerateOverlap);
  EXPECT_FALSE(overlapping_segments(a, b).empty());
}

TEST(HomologyClass, VerticalLoops) {
  EXPECT_EQ(homology_class_in_cylinder(vertical_loop(1.0, 100, true)), 1);
  EXPECT_EQ(homology_class_in_cylinder(vertical_loop(1.0, 100, false)), -1);
  EXPECT_EQ(homology_class_in_cylinder(vertical_loop(1.0, 100, true).reversed()), -1);
}

TEST(HomologyClass, ContractibleLoopIsZero) {
  std::vector<Planar> raw;
  for (int i = 0; i <= 200; ++i) {
    const double t = kTwoPi * i / 200;
    raw.push_back({1.5 + 0.5 * std::cos(t), 3.0 + 0.5 * std::sin(t)});
  }
  EXPECT_EQ(homology_class_in_cylinder(PillowCurve::from_raw(raw, true, "circle")), 0);
}

TEST(HomologyClass, StableUnderRefinement) {
  std::vector<Planar> raw;
  for (int i = 0; i <= 300; ++i) {
    const double t = static_cast<double>(i) / 300;
    raw.push_back({1.5 + 0.3 * std::sin(kTwoPi * t), 3.0 * kTwoPi * t});
  }
  const PillowCurve c = PillowCurve::from_raw(raw, true, "triple");
  EXPECT_EQ(homology_class_in_cylinder(c), 3);
  EXPECT_EQ(homology_class_in_cylinder(c.refined()), 3);
  EXPECT_EQ(homology_class_in_cylinder(c.refined().refined()), 3);
}

TEST(HomologyClass, Errors) {
  const PillowCurve open = segment({0.5, 1.0}, {1.0, 2.0}, 5, "open");
  EXPECT_EQ(kind_of([&] { homology_class_in_cylinder(open); }), ErrorKind::NotClosed);
  std::vector<Planar> raw;
  for (int i = 0; i <= 100; ++i) {
    const double t = kTwoPi * i / 100;
    raw.push_back({0.3 * std::cos(t), 3.0 + 0.3 * std::sin(t)});
  }
  const PillowCurve edge = PillowCurve::from_raw(raw, true, "edge");
  EXPECT_EQ(kind_of([&] { homology_class_in_cylinder(edge); }), ErrorKind::CrossesCutLine);
}

TEST(Hausdorff, ParallelLines) {
  const PillowCurve a = segment({0.5, 1.0}, {2.5, 1.0}, 20, "a");
  const PillowCurve b = segment({0.5, 1.25}, {2.5, 1.25}, 7, "b");
  EXPECT_NEAR(hausdorff_distance(a, b, 1e-3), 0.25, 1e-12);
  EXPECT_NEAR(vertex_hausdorff_distance(a, b), 0.25, 1e-12);
  EXPECT_NEAR(hausdorff_distance(a, a), 0.0, 1e-15);
  EXPECT_NEAR(distance_to_curve({1.0, 2.0}, a), 1.0, 1e-12);
}

TEST(Hausdorff, SeesUnmatchedTail) {
  const PillowCurve a = segment({0.5, 1.0}, {2.5, 1.0}, 20, "a");
  const PillowCurve b = segment({0.5, 1.0}, {2.0, 1.0}, 20, "b");
  EXPECT_NEAR(hausdorff_distance(a, b, 1e-3), 0.5, 1e-12);
}

TEST(AbelianLocus, IsBetaZero) {
  const PillowCurve ab = abelian_locus();
  EXPECT_LE(ab.max_step(), kDefaultMaxStep + 1e-15);
  for (const PillowPoint& p : ab.folded_points()) EXPECT_NEAR(std::min(p.beta, kTwoPi - p.beta), 0.0, 1e-15);
  EXPECT_NEAR(ab.folded(0).alpha, 0.0, 1e-15);
  EXPECT_NEAR(ab.folded(ab.size() - 1).alpha, kPi, 1e-15);
}

TEST(PathPtoQ, StraightAndGraph) {
  const PillowCurve c0 = path_P_to_Q(path::Straight{});
  EXPECT_LT(pillow_distance(c0.folded(0), kCornerP), 1e-15);
  EXPECT_LT(pillow_distance(c0.folded(c0.size() - 1), kCornerQ), 1e-15);
  EXPECT_LE(c0.max_step(), kDefaultMaxStep + 1e-15);
  const PillowCurve g = path_P_to_Q(path::Graph{[](double a) { return kPi + 0.5 * std::sin(a); }});
  for (const CylinderPoint& p : g.points()) EXPECT_NEAR(p.beta, kPi + 0.5 * std::sin(p.alpha), 1e-12);
  // chord sag of a graph with |g''| <= 0.5
  const double h = g.max_step();
  EXPECT_LE(distance_to_curve({kPi / 2, kPi + 0.5}, g), 0.5 * h * h / 8 + 1e-12);
}

TEST(PathPtoQ, Rejections) {
  EXPECT_EQ(kind_of([] { path_P_to_Q(path::Graph{[](double a) { return kPi + a; }}); }), ErrorKind::BadEndpoints);
  const std::vector<Planar> corner{{0.0, kPi}, {kPi / 2, 0.5 * kPi}, {kPi, 0.0}, {kPi, 0.5 * kPi}, {kPi, kPi}};
  EXPECT_EQ(kind_of([&] { path_P_to_Q(path::Polyline{corner}); }), ErrorKind::HitsForbiddenCorner);
  const std::vector<Planar> loop{{0.0, kPi}, {2.0, kPi + 1.0}, {2.0, kPi - 1.0}, {1.0, kPi + 1.0}, {kPi, kPi}};
  EXPECT_EQ(kind_of([&] { path_P_to_Q(path::Polyline{loop}); }), ErrorKind::NotEmbedded);
}
