#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "pillow/error.hpp"
#include "pillow/knot_groups.hpp"

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

Vec3 random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v{n(rng), n(rng), n(rng)};
  return (1.0 / v.norm()) * v;
}

long dot_phi(const std::vector<long>& phi, const std::vector<long>& v) {
  return std::inner_product(phi.begin(), phi.end(), v.begin(), 0L);
}

}  // namespace

TEST(Words, InverseConcatPower) {
  const Word w{1, -2, 2, 1};
  EXPECT_EQ(word_inverse(w), (Word{-1, -2, 2, -1}));
  EXPECT_EQ(word_concat({1}, {-2}), (Word{1, -2}));
  EXPECT_EQ(word_power({1, 2}, 2), (Word{1, 2, 1, 2}));
  EXPECT_EQ(word_power({1, 2}, -1), (Word{-2, -1}));
  EXPECT_TRUE(word_power({1}, 0).empty());
}

TEST(Words, EvalMatchesProducts) {
  std::mt19937_64 rng(1);
  const std::vector<Su2Elem> g{Su2Elem::from_axis_angle(random_axis(rng), 0.7),
                               Su2Elem::from_axis_angle(random_axis(rng), 1.9)};
  EXPECT_LT(distance(eval_word({1, -2, 1}, g), g[0] * g[1].inverse() * g[0]), 1e-15);
  EXPECT_EQ(eval_word({}, g), Su2Elem::identity());
  const Word w{1, 2, -1, 2, 2};
  EXPECT_LT(distance(eval_word(word_concat(w, word_inverse(w)), g), Su2Elem::identity()), 1e-14);
  EXPECT_EQ(kind_of([&] { eval_word({3}, g); }), ErrorKind::Malformed);
  EXPECT_EQ(kind_of([&] { eval_word({0}, g); }), ErrorKind::Malformed);
}

TEST(Words, Abelianize) {
  EXPECT_EQ(abelianize({1, 1, -2, 1, 2, 2}, 2), (std::vector<long>{3, 1}));
  EXPECT_EQ(abelianize({}, 3), (std::vector<long>{0, 0, 0}));
}

TEST(TorusKnot, TrefoilPresentation) {
  const KnotPresentation k = torus_knot(2, 3);
  EXPECT_EQ(k.generator_count(), 2u);
  ASSERT_EQ(k.relators.size(), 1u);
  EXPECT_EQ(k.relators[0], (Word{1, 1, -2, -2, -2}));
  // meridian x^u y^v with u q + v p = 1, u minimal
  EXPECT_EQ(k.meridian, (Word{1, -2}));
}

TEST(TorusKnot, RejectsBadParameters) {
  EXPECT_EQ(kind_of([] { torus_knot(2, 4); }), ErrorKind::NotCoprime);
  EXPECT_EQ(kind_of([] { torus_knot(1, 3); }), ErrorKind::NotCoprime);
  EXPECT_EQ(kind_of([] { torus_knot(6, 9); }), ErrorKind::NotCoprime);
}

TEST(TorusKnot, PeripheralHomologyProperty) {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}, {2, 7}, {4, 5}, {5, 7}}) {
    const KnotPresentation k = torus_knot(p, q);
    const PeripheralReport r = validate_peripheral(k);
    EXPECT_TRUE(r.torsion.empty()) << k.label;
    EXPECT_EQ(r.free_rank, 1u) << k.label;
    EXPECT_EQ(std::abs(r.meridian_image), 1) << k.label;
    EXPECT_EQ(r.longitude_image, 0) << k.label;
    EXPECT_EQ(dot_phi(r.abelian_functional, abelianize(k.meridian, 2)), 1) << k.label;
    EXPECT_EQ(dot_phi(r.abelian_functional, abelianize(k.longitude, 2)), 0) << k.label;
    for (const Word& rel : k.relators) EXPECT_EQ(dot_phi(r.abelian_functional, abelianize(rel, 2)), 0) << k.label;
  }
}

TEST(TorusKnot, PeripheralPairCommutesInExplicitReps) {
  // x -> angle pi a/p, y -> angle pi b/q about independent axes with a = b
  // mod 2 makes x^p = y^q = +-1 central, so every such pair is a representation.
  std::mt19937_64 rng(2);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
    const KnotPresentation k = torus_knot(p, q);
    for (int a = 1; a < p; ++a) {
      for (int b = 1; b < q; ++b) {
        if ((a - b) % 2 != 0) continue;
        const std::vector<Su2Elem> g{Su2Elem::from_axis_angle(random_axis(rng), kPi * a / p),
                                     Su2Elem::from_axis_angle(random_axis(rng), kPi * b / q)};
        for (const Word& rel : k.relators) EXPECT_LT(distance(eval_word(rel, g), Su2Elem::identity()), 1e-12);
        EXPECT_LT(commutator_norm(eval_word(k.meridian, g), eval_word(k.longitude, g)), 1e-12) << k.label;
      }
    }
  }
}

TEST(Unknot, Presentation) {
  const KnotPresentation k = unknot();
  EXPECT_EQ(k.generator_count(), 1u);
  EXPECT_TRUE(k.relators.empty());
  EXPECT_TRUE(k.longitude.empty());
  const PeripheralReport r = validate_peripheral(k);
  EXPECT_EQ(r.free_rank, 1u);
  EXPECT_EQ(r.meridian_image, 1);
}

TEST(Peripheral, BadHomologyDetected) {
  KnotPresentation torsion;
  torsion.label = "torsion";
  torsion.generators = {"x", "y"};
  torsion.relators = {{1, 1, 2, 2}};
  torsion.meridian = {1};
  EXPECT_EQ(kind_of([&] { validate_peripheral(torsion); }), ErrorKind::BadHomology);

  KnotPresentation free2;
  free2.label = "free";
  free2.generators = {"x", "y"};
  free2.meridian = {1};
  EXPECT_EQ(kind_of([&] { validate_peripheral(free2); }), ErrorKind::BadHomology);

  KnotPresentation wrong_longitude = torus_knot(2, 3);
  wrong_longitude.longitude = {1};
  EXPECT_EQ(kind_of([&] { validate_peripheral(wrong_longitude); }), ErrorKind::BadHomology);

  KnotPresentation wrong_meridian = torus_knot(2, 3);
  wrong_meridian.meridian = {1};
  EXPECT_EQ(kind_of([&] { validate_peripheral(wrong_meridian); }), ErrorKind::BadHomology);
}

TEST(Peripheral, SummaryDescribesHomology) {
  const PeripheralReport r = validate_peripheral(torus_knot(3, 4));
  EXPECT_EQ(r.summary.rfind("H1 = Z^1;", 0), 0u) << r.summary;
  EXPECT_NE(r.summary.find("longitude -> 0"), std::string::npos) << r.summary;
}

TEST(ResolveKnot, BuiltinsAndErrors) {
  EXPECT_EQ(resolve_knot("trefoil").label, "trefoil");
  EXPECT_TRUE(resolve_knot("trefoil").same_presentation(torus_knot(2, 3)));
  EXPECT_TRUE(resolve_knot("torus:3,5").same_presentation(torus_knot(3, 5)));
  EXPECT_EQ(resolve_knot("unknot").generator_count(), 1u);
  EXPECT_EQ(kind_of([] { resolve_knot("torus:3"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { resolve_knot("torus:3,x"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { resolve_knot("torus:2,4"); }), ErrorKind::NotCoprime);
  EXPECT_EQ(kind_of([] { resolve_knot("/nonexistent/knot.json"); }), ErrorKind::Io);
}

TEST(Splice, KeepsBothSides) {
  const SpliceProblem p = splice(torus_knot(2, 3), torus_knot(2, 5));
  EXPECT_TRUE(p.left.same_presentation(torus_knot(2, 3)));
  EXPECT_TRUE(p.right.same_presentation(torus_knot(2, 5)));
}
