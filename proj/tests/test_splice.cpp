#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pillow/error.hpp"
#include "pillow/splice.hpp"

using namespace pillow;

namespace {

TraceConfig single_thread() {
  TraceConfig cfg;
  cfg.threads = 1;
  return cfg;
}

const SpliceResult& trefoil_splice() {
  static const SpliceResult r = find_splice_reps(splice(torus_knot(2, 3), torus_knot(2, 3)), single_thread());
  return r;
}

// Intersections of the trefoil arc beta = pi - 6 alpha with its transpose.
// The preimage of the arc in the torus is {b = pi - 6a, a mod pi in (pi/6, 5pi/6)};
// substituting b gives 35 a = pi mod 2 pi, so a = pi j / 35 with j odd.
std::vector<double> analytic_witness_alphas() {
  std::vector<double> out;
  for (int j = 1; j < 35; j += 2) {
    const double a = kPi * j / 35;
    if (a <= kPi / 6 || a >= 5 * kPi / 6) continue;
    const double b = std::fmod(std::fmod(kPi - 6 * a, kPi) + kPi, kPi);
    if (b > kPi / 6 && b < 5 * kPi / 6) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST(Transpose, AbelianLocusBecomesEdge) {
  const PillowCurve t = transpose_image(abelian_locus());
  for (const PillowPoint& p : t.folded_points()) EXPECT_NEAR(p.alpha, 0.0, 1e-15);
  EXPECT_EQ(t.label(), "abelian^T");
}

TEST(Transpose, IsAnInvolution) {
  std::vector<Planar> raw;
  for (int i = 0; i <= 200; ++i) {
    const double a = 0.3 + 2.4 * i / 200;
    raw.push_back({a, 1.0 + 0.8 * std::sin(2 * a)});
  }
  const PillowCurve c = PillowCurve::from_raw(raw, false, "c");
  const PillowCurve tt = transpose_image(transpose_image(c));
  EXPECT_LT(vertex_hausdorff_distance(c, tt), 1e-12);
  const PillowCurve t = transpose_image(c);
  for (std::size_t i = 0; i < c.size(); i += 17) {
    const PillowPoint p = c.folded(i);
    EXPECT_LT(distance_to_curve(canonicalize(p.beta, p.alpha), t), 1e-12);
  }
}

TEST(BestConjugator, RecoversRotation) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    const Su2Elem g(n(rng), n(rng), n(rng), n(rng));
    std::vector<Su2Elem> from{Su2Elem(n(rng), n(rng), n(rng), n(rng)), Su2Elem(n(rng), n(rng), n(rng), n(rng))};
    std::vector<Su2Elem> to;
    for (const Su2Elem& f : from) to.push_back(conjugate_by(g, f));
    const Su2Elem c = best_conjugator(from, to);
    for (std::size_t i = 0; i < from.size(); ++i) EXPECT_LT(distance(conjugate_by(c, from[i]), to[i]), 1e-12);
  }
}

TEST(FindSpliceReps, TrefoilCountMatchesAnalyticOracle) {
  const SpliceResult& r = trefoil_splice();
  const std::vector<double> want = analytic_witness_alphas();
  ASSERT_EQ(want.size(), 8u);
  ASSERT_EQ(r.reps.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(r.reps[i].point.alpha, want[i], 1e-8);
}

TEST(FindSpliceReps, WitnessesSatisfyGluing) {
  const SpliceProblem p = splice(torus_knot(2, 3), torus_knot(2, 3));
  for (const SpliceRep& s : trefoil_splice().reps) {
    EXPECT_LT(s.residual, 1e-8);
    EXPECT_LT(splice_residual(p, s.left.assignment, s.right.assignment, s.aligner), 1e-8);
    EXPECT_TRUE(s.irreducible);
    EXPECT_GT(s.commutator, 1e-6);
    const Su2Elem mu1 = eval_word(p.left.meridian, s.left.assignment);
    const Su2Elem la2 = eval_word(p.right.longitude, s.right.assignment);
    EXPECT_LT(distance(mu1, conjugate_by(s.aligner, la2)), 1e-8);
    // the right side sits at the transposed point
    EXPECT_LT(pillow_distance({s.right.alpha, s.right.beta}, canonicalize(s.point.beta, s.point.alpha)), 1e-8);
  }
}

TEST(FindSpliceReps, ResultIsSortedAndSerialized) {
  const SpliceResult& r = trefoil_splice();
  for (std::size_t i = 1; i < r.reps.size(); ++i) EXPECT_LT(r.reps[i - 1].point.alpha, r.reps[i].point.alpha);
  const Json j = to_json(r);
  EXPECT_EQ(j["count"], r.reps.size());
  EXPECT_EQ(j["reps"].size(), r.reps.size());
  EXPECT_GE(r.candidates, static_cast<int>(r.reps.size()));
  EXPECT_FALSE(r.note.empty());
}

TEST(FindSpliceReps, ResidualDetectsBrokenGluing) {
  const SpliceProblem p = splice(torus_knot(2, 3), torus_knot(2, 3));
  const SpliceRep& s = trefoil_splice().reps.front();
  EXPECT_GT(splice_residual(p, s.left.assignment, s.right.assignment, Su2Elem(0.6, 0.0, 0.8, 0.0)), 1e-3);
}

TEST(FindSpliceReps, UnknotSideHasNoWitnesses) {
  TraceConfig cfg = single_thread();
  cfg.step = 0.02;
  try {
    find_splice_reps(splice(unknot(), torus_knot(2, 3)), cfg);
    FAIL() << "expected NoIntersections";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoIntersections);
  }
}

TEST(CassonNote, OnlyForTrefoilPair) {
  EXPECT_FALSE(casson_note(splice(torus_knot(2, 3), torus_knot(2, 3))).empty());
  EXPECT_TRUE(casson_note(splice(torus_knot(2, 3), torus_knot(2, 5))).empty());
}
