#include "pillow/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>

namespace pillow {

namespace {

constexpr double kScale = 120.0;
constexpr double kLeft = 60.0;
constexpr double kTop = 50.0;
constexpr double kWidth = 500.0;
constexpr double kHeight = 900.0;
constexpr std::array<const char*, 8> kPalette{"#1f4fb4", "#2a8c3a", "#7a3fb0", "#d07a12",
                                              "#138a8a", "#8c5a2b", "#b0306b", "#555555"};

double sx(double alpha) { return kLeft + kScale * alpha; }
double sy(double beta) { return kTop + kScale * (kTwoPi - beta); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string polyline(const std::vector<CylinderPoint>& pts, const std::string& color, double width) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt::format("{:.1f}", width) +
                  "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s += fmt::format("{}{:.2f},{:.2f}", i == 0 ? "" : " ", sx(pts[i].alpha), sy(pts[i].beta));
  }
  return s + "\"/>\n";
}

// Splits a curve where consecutive stored points are not joined in the
// fundamental domain: fold jumps and wraps across beta = 0.
std::vector<std::vector<CylinderPoint>> pieces(const PillowCurve& c) {
  std::vector<std::vector<CylinderPoint>> out;
  const auto& pts = c.points();
  const auto& lifts = c.lifts();
  std::vector<CylinderPoint> cur;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && (c.is_fold_jump(i - 1) || lifts[i] != lifts[i - 1])) {
      if (!c.is_fold_jump(i - 1)) {
        // Finish the segment at the wrap line and restart on the other side.
        const double b0 = pts[i - 1].beta + kTwoPi * lifts[i - 1];
        const double b1 = pts[i].beta + kTwoPi * lifts[i];
        const double edge = kTwoPi * std::max(lifts[i - 1], lifts[i]);
        const double t = (edge - b0) / (b1 - b0);
        const double a = pts[i - 1].alpha + t * (pts[i].alpha - pts[i - 1].alpha);
        const bool up = b1 > b0;
        cur.push_back({a, up ? kTwoPi : 0.0});
        if (cur.size() > 1) out.push_back(cur);
        cur = {{a, up ? 0.0 : kTwoPi}};
      } else {
        if (cur.size() > 1) out.push_back(cur);
        cur.clear();
      }
    }
    cur.push_back(pts[i]);
  }
  if (c.closed() && !pts.empty() && lifts.back() == lifts.front()) cur.push_back(pts.front());
  if (cur.size() > 1) out.push_back(cur);
  return out;
}

}  // namespace

std::string emit_svg(const std::vector<PillowCurve>& curves, const std::vector<SvgMark>& marks,
                     const std::string& title) {
  std::string s;
  s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.0f} {:.0f}\" width=\"{:.0f}\" "
                   "height=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"14\">\n",
                   kWidth, kHeight, kWidth, kHeight);
  s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, kHeight);
  if (!title.empty()) s += fmt::format("<text x=\"{:.2f}\" y=\"30\">{}</text>\n", kLeft, escape(title));

  // Fundamental domain, the beta = pi midline and axis labels.
  s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
                   "stroke=\"black\" stroke-width=\"1.5\"/>\n",
                   sx(0), sy(kTwoPi), sx(kPi) - sx(0), sy(0) - sy(kTwoPi));
  s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#999999\" "
                   "stroke-dasharray=\"4 4\"/>\n",
                   sx(0), sy(kPi), sx(kPi), sy(kPi));
  const std::array<std::pair<double, const char*>, 3> ab{{{0.0, "0"}, {kPi / 2, "&#960;/2"}, {kPi, "&#960;"}}};
  for (const auto& [v, t] : ab) {
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", sx(v), sy(0) + 20, t);
  }
  const std::array<std::pair<double, const char*>, 3> bb{{{0.0, "0"}, {kPi, "&#960;"}, {kTwoPi, "2&#960;"}}};
  for (const auto& [v, t] : bb) {
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", sx(0) - 8, sy(v) + 5, t);
  }
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">&#945;</text>\n", sx(kPi / 2), sy(0) + 40);
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">&#946;</text>\n", sx(0) - 45, sy(kPi) + 5);

  // Abelian locus on beta = 0, which is also the top edge.
  for (double b : {0.0, kTwoPi}) {
    s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#d62728\" "
                     "stroke-width=\"3\"/>\n",
                     sx(0), sy(b), sx(kPi), sy(b));
  }

  std::vector<const PillowCurve*> order;
  for (const PillowCurve& c : curves) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const PillowCurve* a, const PillowCurve* b) { return a->label() < b->label(); });
  std::size_t color = 0;
  std::string legend;
  double legend_y = sy(0) + 70;
  for (const PillowCurve* c : order) {
    const bool abelian = c->label().find("abelian") != std::string::npos;
    const std::string col = abelian ? "#d62728" : kPalette[color++ % kPalette.size()];
    s += "<g class=\"curve\" data-label=\"" + escape(c->label()) + "\">\n";
    for (const auto& piece : pieces(*c)) s += polyline(piece, col, abelian ? 3.0 : 2.0);
    s += "</g>\n";
    legend += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                          "stroke-width=\"3\"/>\n<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n",
                          sx(0), legend_y, sx(0) + 30, legend_y, col, sx(0) + 40, legend_y + 5,
                          escape(c->label()));
    legend_y += 20;
  }
  s += legend;

  // Corners: (0,0) ~ (0,2pi) and (pi,0) ~ (pi,2pi) filled, P and Q hollow.
  for (double a : {0.0, kPi}) {
    for (double b : {0.0, kTwoPi}) {
      s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" fill=\"black\"/>\n", sx(a), sy(b));
    }
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"5\" fill=\"white\" stroke=\"black\" "
                     "stroke-width=\"1.5\"/>\n",
                     sx(a), sy(kPi));
  }
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">P</text>\n", sx(0) - 8, sy(kPi) - 10);
  s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">Q</text>\n", sx(kPi) + 8, sy(kPi) - 10);

  std::vector<SvgMark> ms = marks;
  std::sort(ms.begin(), ms.end(), [](const SvgMark& a, const SvgMark& b) {
    if (a.point.alpha != b.point.alpha) return a.point.alpha < b.point.alpha;
    return a.point.beta < b.point.beta;
  });
  for (const SvgMark& m : ms) {
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"#ffd700\" stroke=\"black\" "
                     "stroke-width=\"1.2\"><title>{}</title></circle>\n",
                     sx(m.point.alpha), sy(m.point.beta), escape(m.label));
  }
  s += "</svg>\n";
  return s;
}

}  // namespace pillow
