#include <gtest/gtest.h>

#include <cmath>

#include "pillow/svg.hpp"
#include "test_support.hpp"

using namespace pillow;

namespace {

PillowCurve wave() {
  std::vector<Planar> raw;
  for (int i = 0; i <= 60; ++i) {
    const double a = 0.3 + 2.5 * i / 60;
    raw.push_back({a, kPi - 2.0 * a});
  }
  return PillowCurve::from_raw(raw, false, "demo/irreducible/0");
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Svg, MatchesGolden) {
  const std::string svg =
      emit_svg({wave(), abelian_locus()}, {{{kPi / 2, kPi}, "mark <a>"}, {{1.0, 0.5}, "b"}}, "demo & test");
  std::string want;
  EXPECT_TRUE(pillow::testing::matches_golden("demo.svg", svg, &want)) << svg;
}

TEST(Svg, WellFormedAndEscaped) {
  const std::string svg = emit_svg({wave()}, {{{1.0, 1.0}, "x<y"}}, "a & b");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("a &amp; b"), std::string::npos);
  EXPECT_NE(svg.find("x&lt;y"), std::string::npos);
  EXPECT_EQ(svg.find("x<y"), std::string::npos);
}

TEST(Svg, IndependentOfInputOrder) {
  const PillowCurve a = wave();
  const PillowCurve b = abelian_locus();
  const std::vector<SvgMark> m1{{{1.0, 1.0}, "p"}, {{0.5, 2.0}, "q"}};
  const std::vector<SvgMark> m2{m1[1], m1[0]};
  EXPECT_EQ(emit_svg({a, b}, m1), emit_svg({b, a}, m2));
}

TEST(Svg, WrapsAcrossBetaZero) {
  // beta = pi - 2 alpha crosses 0 once on (0.3, 2.8), so the wave is drawn in two pieces
  const std::string one = emit_svg({wave()}, {});
  const std::string none = emit_svg({}, {});
  EXPECT_EQ(count(one, "<polyline") - count(none, "<polyline"), 2u);
}

TEST(Svg, AbelianCurvesAreRed) {
  const std::string base = emit_svg({}, {});
  const std::string with = emit_svg({abelian_locus()}, {});
  EXPECT_GT(count(with, "stroke=\"#d62728\""), count(base, "stroke=\"#d62728\""));
}
