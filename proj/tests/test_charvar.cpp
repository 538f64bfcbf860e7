#include <gtest/gtest.h>

#include <cmath>

#include "pillow/charvar.hpp"
#include "pillow/error.hpp"

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

TraceConfig single_thread() {
  TraceConfig cfg;
  cfg.threads = 1;
  return cfg;
}

double beta_distance(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

const TraceResult& trefoil_trace() {
  static const TraceResult tr = trace_branches(torus_knot(2, 3), single_thread());
  return tr;
}

}  // namespace

TEST(TraceConfig, Validation) {
  TraceConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.step = 0.0;
  EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::Malformed);
  cfg = {};
  cfg.alpha_max = 4.0;
  EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::Malformed);
  cfg = {};
  cfg.residual_tol = -1.0;
  EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::Malformed);
  cfg = {};
  cfg.restarts = -1;
  EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::Malformed);
}

TEST(AbelianRep, SatisfiesRelatorsAndReadsAlphaZero) {
  for (const KnotPresentation& k : {torus_knot(2, 3), torus_knot(3, 4), unknot()}) {
    const std::vector<Su2Elem> g = abelian_rep(k, 0.8);
    EXPECT_LT(relator_residual(k, g), 1e-14) << k.label;
    EXPECT_LT(max_commutator(g), 1e-14) << k.label;
    const RepPoint r = make_rep_point(k, g);
    EXPECT_NEAR(r.alpha, 0.8, 1e-12) << k.label;
    EXPECT_NEAR(std::min(r.beta, kTwoPi - r.beta), 0.0, 1e-12) << k.label;
    EXPECT_FALSE(r.irreducible);
  }
}

TEST(Residuals, RelatorResidualSeesViolation) {
  const KnotPresentation k = torus_knot(2, 3);
  const std::vector<Su2Elem> g{Su2Elem::diagonal(0.3), Su2Elem(0, 0, 1, 0)};
  EXPECT_GT(relator_residual(k, g), 0.1);
  EXPECT_GT(max_commutator(g), 0.1);
  EXPECT_NEAR(assignment_distance(g, g), 0.0, 0.0);
  EXPECT_NEAR(assignment_distance(g, {Su2Elem::diagonal(0.3), Su2Elem(0, 0, -1, 0)}), 2.0, 1e-15);
}

TEST(SolveAtAlpha, TrefoilMatchesClosedFormPointwise) {
  const KnotPresentation k = torus_knot(2, 3);
  for (double alpha : {0.6, 1.0, kPi / 3, 1.8, 2.5}) {
    const std::vector<RepPoint> reps = solve_at_alpha(k, alpha, single_thread());
    ASSERT_EQ(reps.size(), 2u) << alpha;
    EXPECT_FALSE(reps[0].irreducible);
    const RepPoint& irr = reps[1];
    EXPECT_TRUE(irr.irreducible);
    EXPECT_NEAR(irr.alpha, alpha, 1e-12);
    EXPECT_LT(beta_distance(irr.beta, kPi - 6.0 * alpha), 1e-9) << alpha;
    EXPECT_LT(irr.residual, 1e-10);
    EXPECT_GT(max_commutator(irr.assignment), 1e-6);
  }
}

TEST(SolveAtAlpha, ReadsMeridianAndLongitudeAngles) {
  const KnotPresentation k = torus_knot(3, 4);
  for (const RepPoint& r : solve_at_alpha(k, 1.2, single_thread())) {
    EXPECT_LT(distance(eval_word(k.meridian, r.assignment), Su2Elem::diagonal(r.alpha)), 1e-9);
    EXPECT_LT(distance(eval_word(k.longitude, r.assignment), Su2Elem::diagonal(r.beta)), 1e-9);
  }
}

TEST(SolveAtAlpha, OutsideArcOnlyAbelian) {
  const std::vector<RepPoint> reps = solve_at_alpha(torus_knot(2, 3), 0.3, single_thread());
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_FALSE(reps[0].irreducible);
}

TEST(SolveAtAlpha, UnknotIsAbelianOnly) {
  const std::vector<RepPoint> reps = solve_at_alpha(unknot(), 1.0, single_thread());
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_FALSE(reps[0].irreducible);
}

TEST(Census, DeterministicForSeedAndStream) {
  const KnotPresentation k = torus_knot(3, 5);
  const AlphaCensus a = census_at_alpha(k, 1.1, single_thread(), 5);
  const AlphaCensus b = census_at_alpha(k, 1.1, single_thread(), 5);
  ASSERT_EQ(a.reps.size(), b.reps.size());
  for (std::size_t i = 0; i < a.reps.size(); ++i) {
    EXPECT_EQ(a.reps[i].alpha, b.reps[i].alpha);
    EXPECT_EQ(a.reps[i].beta, b.reps[i].beta);
  }
  EXPECT_EQ(a.starts, b.starts);
}

TEST(NormalizeGauge, IsIdempotentAndPreservesPoint) {
  const KnotPresentation k = torus_knot(2, 5);
  const std::vector<RepPoint> reps = solve_at_alpha(k, 1.3, single_thread());
  for (const RepPoint& r : reps) {
    std::vector<Su2Elem> g = r.assignment;
    // conjugate away from the slice and back
    const Su2Elem c(0.3, -0.2, 0.8, 0.1);
    for (Su2Elem& x : g) x = conjugate_by(c, x);
    normalize_gauge(k, g);
    EXPECT_LT(assignment_distance(g, r.assignment), 1e-9);
    const RepPoint back = make_rep_point(k, g);
    EXPECT_NEAR(back.alpha, r.alpha, 1e-9);
    EXPECT_LT(beta_distance(back.beta, r.beta), 1e-9);
  }
}

TEST(ClosedForm, TrefoilArc) {
  const std::vector<ClosedFormArc> arcs = torus_knot_closed_form(2, 3);
  ASSERT_EQ(arcs.size(), 1u);
  EXPECT_EQ(arcs[0].slope, -6);
  EXPECT_NEAR(arcs[0].alpha_lo, kPi / 6, 1e-12);
  EXPECT_NEAR(arcs[0].alpha_hi, 5 * kPi / 6, 1e-12);
  EXPECT_LT(beta_distance(arcs[0].beta(1.0), kPi - 6.0), 1e-12);
}

TEST(ClosedForm, ArcCountsAndEndpointsAreAlexanderRoots) {
  // (p-1)(q-1)/2 arcs; endpoints at alpha = pi k / pq with p, q not dividing k
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}, {2, 7}}) {
    const std::vector<ClosedFormArc> arcs = torus_knot_closed_form(p, q);
    EXPECT_EQ(static_cast<int>(arcs.size()), (p - 1) * (q - 1) / 2) << p << "," << q;
    for (const ClosedFormArc& a : arcs) {
      EXPECT_EQ(a.slope, -static_cast<long>(p) * q);
      for (double e : {a.alpha_lo, a.alpha_hi}) {
        const double k = e * p * q / kPi;
        const long kr = std::lround(k);
        EXPECT_NEAR(k, static_cast<double>(kr), 1e-9);
        EXPECT_NE(kr % p, 0);
        EXPECT_NE(kr % q, 0);
      }
      // the arc ends on the abelian locus
      EXPECT_LT(beta_distance(a.beta(a.alpha_lo), 0.0), 1e-9);
      EXPECT_LT(beta_distance(a.beta(a.alpha_hi), 0.0), 1e-9);
    }
  }
}

TEST(ClosedForm, CurveSpacing) {
  const PillowCurve c = closed_form_curve(torus_knot_closed_form(2, 3)[0], 1e-3);
  EXPECT_LE(c.max_step(), 1e-3 + 1e-12);
  for (const PillowPoint& p : c.folded_points()) {
    EXPECT_LT(beta_distance(p.beta, kPi - 6.0 * p.alpha), 1e-9);
  }
}

TEST(TraceBranches, TrefoilMatchesClosedForm) {
  const TraceResult& tr = trefoil_trace();
  ASSERT_EQ(tr.branch_reps.size(), 1u);
  ASSERT_EQ(tr.curves.size(), 2u);
  EXPECT_TRUE(is_irreducible_label(tr.curves[0].label()));
  EXPECT_FALSE(is_irreducible_label(tr.curves[1].label()));
  const PillowCurve oracle = closed_form_curve(torus_knot_closed_form(2, 3)[0], 1e-4);
  EXPECT_LT(vertex_hausdorff_distance(tr.curves[0], oracle), 1e-4);
  for (const RepPoint& r : tr.branch_reps[0]) {
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_TRUE(r.irreducible);
  }
}

TEST(TraceBranches, ClassClosedAlongAbelianLocus) {
  const TraceResult& tr = trefoil_trace();
  const PillowCurve closed = close_along_abelian(tr.curves[0]);
  EXPECT_TRUE(closed.closed());
  // beta = pi - 6 alpha falls by 4 pi between pi/6 and 5 pi/6
  EXPECT_EQ(homology_class_in_cylinder(closed), -2);
  EXPECT_EQ(homology_class_in_cylinder(closed.refined()), -2);
  EXPECT_EQ(homology_class_in_cylinder(close_along_abelian(tr.curves[0].reversed())), 2);
}

TEST(TraceBranches, CloseRejectsInteriorEndpoints) {
  std::vector<Planar> raw{{1.0, 1.0}, {1.2, 1.5}};
  const PillowCurve c = PillowCurve::from_raw(raw, false, "x/irreducible/0");
  EXPECT_EQ(kind_of([&] { close_along_abelian(c); }), ErrorKind::BadEndpoints);
}

TEST(TraceBranches, CutLineDistance) {
  EXPECT_NEAR(min_distance_to_cut_lines(trefoil_trace().curves), kPi / 6, 1e-3);
  EXPECT_EQ(kind_of([] { min_distance_to_cut_lines({abelian_locus()}); }), ErrorKind::EmptyInput);
}

TEST(TraceBranches, UnknotHasOnlyAbelianCurve) {
  TraceConfig cfg = single_thread();
  cfg.step = 0.05;
  const TraceResult tr = trace_branches(unknot(), cfg);
  EXPECT_TRUE(tr.branch_reps.empty());
  ASSERT_EQ(tr.curves.size(), 1u);
  EXPECT_NE(tr.curves[0].label().find("abelian"), std::string::npos);
}

TEST(TraceBranches, ThreadCountDoesNotChangeResult) {
  TraceConfig a = single_thread();
  a.step = 0.02;
  TraceConfig b = a;
  b.threads = 3;
  const TraceResult ra = trace_branches(torus_knot(2, 5), a);
  const TraceResult rb = trace_branches(torus_knot(2, 5), b);
  ASSERT_EQ(ra.curves.size(), rb.curves.size());
  for (std::size_t i = 0; i < ra.curves.size(); ++i) {
    EXPECT_EQ(ra.curves[i].points(), rb.curves[i].points());
    EXPECT_EQ(ra.curves[i].label(), rb.curves[i].label());
  }
}

TEST(TraceImage, LabelsAndFamily) {
  TraceConfig cfg = single_thread();
  cfg.step = 0.01;
  const std::vector<PillowCurve> curves = trace_image(torus_knot(3, 4), cfg);
  ASSERT_EQ(curves.size(), 4u);
  EXPECT_EQ(curves[0].label(), "T(3,4)/irreducible/0");
  EXPECT_EQ(curves.back().label(), "T(3,4)/abelian");
}
