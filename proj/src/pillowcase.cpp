#include "pillow/pillowcase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "pillow/error.hpp"

namespace pillow {

namespace {

double reduce_2pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Representative of t mod 2pi in [-pi, pi].
double wrap_pm_pi(double t) { return std::remainder(t, kTwoPi); }

double cross2(Planar a, Planar b) { return a[0] * b[1] - a[1] * b[0]; }
Planar sub(Planar a, Planar b) { return {a[0] - b[0], a[1] - b[1]}; }
Planar add(Planar a, Planar b) { return {a[0] + b[0], a[1] + b[1]}; }
Planar scale(double s, Planar a) { return {s * a[0], s * a[1]}; }
double norm2(Planar a) { return std::hypot(a[0], a[1]); }

double point_segment_distance(Planar p, Planar a, Planar b) {
  const Planar ab = sub(b, a);
  const double len2 = ab[0] * ab[0] + ab[1] * ab[1];
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2, 0.0, 1.0);
  return norm2(sub(p, add(a, scale(t, ab))));
}

}  // namespace

PillowPoint canonicalize(double a, double b) {
  double al = reduce_2pi(a);
  double be = reduce_2pi(b);
  if (al > kPi) {
    al = kTwoPi - al;
    be = reduce_2pi(kTwoPi - be);
  }
  if ((al == 0.0 || al == kPi) && be > kPi) be = reduce_2pi(kTwoPi - be);
  return {al, be};
}

CylinderPoint to_cylinder(double a, double b) {
  double al = reduce_2pi(a);
  double be = reduce_2pi(b);
  if (al > kPi) {
    al = kTwoPi - al;
    be = reduce_2pi(kTwoPi - be);
  }
  return {al, be};
}

bool is_corner(const PillowPoint& p, double tol) {
  const bool a_edge = std::abs(p.alpha) <= tol || std::abs(p.alpha - kPi) <= tol;
  const double b = std::min(p.beta, kTwoPi - p.beta);
  const bool b_edge = b <= tol || std::abs(p.beta - kPi) <= tol;
  return a_edge && b_edge;
}

double pillow_distance(const PillowPoint& p, const PillowPoint& q) {
  double best = std::numeric_limits<double>::infinity();
  for (int s : {1, -1}) {
    for (int m = -1; m <= 1; ++m) {
      const double da = p.alpha - (s * q.alpha + kTwoPi * m);
      const double db = wrap_pm_pi(p.beta - s * q.beta);
      best = std::min(best, std::hypot(da, db));
    }
  }
  return best;
}

// --- PillowCurve ---------------------------------------------------------

namespace {

struct Emitted {
  double alpha;
  double beta_unwrapped;
  bool jump_before;
};

// Sheet n covers alpha in [n pi, (n+1) pi].  Even sheets are translates of
// the fundamental strip, odd sheets are mirrored by the involution.
Emitted in_sheet(Planar r, long sheet) {
  const double t = r[0] - static_cast<double>(sheet) * kPi;
  if (sheet % 2 == 0) return {std::clamp(t, 0.0, kPi), r[1], false};
  return {std::clamp(kPi - t, 0.0, kPi), -r[1], false};
}

// If a is (numerically) on a sheet boundary, its index; otherwise nullopt.
std::optional<long> boundary_index(double a) {
  const double q = a / kPi;
  const double n = std::round(q);
  if (std::abs(q - n) < 1e-12) return static_cast<long>(n);
  return std::nullopt;
}

long sheet_moving(double a, int dir, long current) {
  if (auto n = boundary_index(a)) {
    if (dir > 0) return *n;
    if (dir < 0) return *n - 1;
    return current;
  }
  return static_cast<long>(std::floor(a / kPi));
}

}  // namespace

PillowCurve PillowCurve::from_raw(std::span<const Planar> raw, bool closed, std::string label) {
  PillowCurve c;
  c.closed_ = closed;
  c.label_ = std::move(label);
  if (raw.empty()) return c;

  std::vector<Emitted> out;
  long sheet = 0;
  if (raw.size() >= 2) {
    const double d = raw[1][0] - raw[0][0];
    sheet = sheet_moving(raw[0][0], d > 0 ? 1 : (d < 0 ? -1 : 0),
                         static_cast<long>(std::floor(raw[0][0] / kPi)));
  } else {
    sheet = static_cast<long>(std::floor(raw[0][0] / kPi));
  }
  out.push_back(in_sheet(raw[0], sheet));

  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    const Planar r0 = raw[i];
    const Planar r1 = raw[i + 1];
    const double da = r1[0] - r0[0];
    const int dir = da > 0 ? 1 : (da < 0 ? -1 : 0);
    const long start = sheet_moving(r0[0], dir, sheet);
    if (start != sheet) {
      Emitted e = in_sheet(r0, start);
      e.jump_before = true;
      out.push_back(e);
      sheet = start;
    }
    if (dir != 0) {
      // Sheet boundaries strictly inside the segment, in travel order.
      const double lo = std::min(r0[0], r1[0]);
      const double hi = std::max(r0[0], r1[0]);
      const long n_first = static_cast<long>(std::floor(lo / kPi)) + 1;
      const long n_last = static_cast<long>(std::ceil(hi / kPi)) - 1;
      const auto b_lo = boundary_index(lo);
      const auto b_hi = boundary_index(hi);
      std::vector<long> bounds;
      for (long n = n_first; n <= n_last; ++n) {
        if ((b_lo && *b_lo == n) || (b_hi && *b_hi == n)) continue;
        bounds.push_back(n);
      }
      if (dir < 0) std::reverse(bounds.begin(), bounds.end());
      for (long n : bounds) {
        const double x = static_cast<double>(n) * kPi;
        const double t = (x - r0[0]) / da;
        const Planar e{x, r0[1] + t * (r1[1] - r0[1])};
        out.push_back(in_sheet(e, sheet));
        sheet = dir > 0 ? n : n - 1;
        Emitted m = in_sheet(e, sheet);
        m.jump_before = true;
        out.push_back(m);
      }
    }
    out.push_back(in_sheet(r1, sheet));
  }

  // Drop repeated vertices that carry no jump.
  std::vector<Emitted> clean;
  for (const Emitted& e : out) {
    if (!clean.empty() && !e.jump_before && clean.back().alpha == e.alpha &&
        clean.back().beta_unwrapped == e.beta_unwrapped) {
      continue;
    }
    clean.push_back(e);
  }

  for (std::size_t i = 0; i < clean.size(); ++i) {
    const Emitted& e = clean[i];
    const double b = reduce_2pi(e.beta_unwrapped);
    c.points_.push_back({e.alpha, b});
    c.lifts_.push_back(static_cast<int>(std::lround((e.beta_unwrapped - b) / kTwoPi)));
    if (i > 0) c.fold_jump_.push_back(e.jump_before);
  }
  return c;
}

PillowCurve PillowCurve::from_stored(std::vector<CylinderPoint> points, std::vector<int> lifts,
                                     bool closed, std::string label) {
  if (points.size() != lifts.size()) {
    throw Error(ErrorKind::Malformed, "points and lifts differ in length");
  }
  PillowCurve c;
  c.closed_ = closed;
  c.label_ = std::move(label);
  for (const CylinderPoint& p : points) {
    if (!(p.alpha >= 0.0 && p.alpha <= kPi) || !(p.beta >= 0.0 && p.beta < kTwoPi)) {
      throw Error(ErrorKind::Malformed, "curve point outside the cylinder domain");
    }
  }
  c.points_ = std::move(points);
  c.lifts_ = std::move(lifts);
  for (std::size_t i = 0; i + 1 < c.points_.size(); ++i) {
    const CylinderPoint& a = c.points_[i];
    const CylinderPoint& b = c.points_[i + 1];
    const bool same_edge = a.alpha == b.alpha && (a.alpha == 0.0 || a.alpha == kPi);
    const Planar la = c.lifted(i);
    const Planar lb = c.lifted(i + 1);
    const bool mirrored =
        std::abs(wrap_pm_pi(la[1] + lb[1])) < 1e-12 && std::abs(la[1] - lb[1]) > 1e-12;
    c.fold_jump_.push_back(same_edge && mirrored);
  }
  return c;
}

Planar PillowCurve::lifted(std::size_t i) const {
  return {points_[i].alpha, points_[i].beta + kTwoPi * lifts_[i]};
}

PillowPoint PillowCurve::folded(std::size_t i) const {
  return canonicalize(points_[i].alpha, points_[i].beta);
}

std::vector<PillowPoint> PillowCurve::folded_points() const {
  std::vector<PillowPoint> out;
  out.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) out.push_back(folded(i));
  return out;
}

bool PillowCurve::has_fold_jumps() const {
  return std::any_of(fold_jump_.begin(), fold_jump_.end(), [](bool b) { return b; });
}

double PillowCurve::max_step() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (fold_jump_[i]) continue;
    m = std::max(m, norm2(sub(lifted(i + 1), lifted(i))));
  }
  return m;
}

PillowCurve PillowCurve::reversed() const {
  PillowCurve r = *this;
  std::reverse(r.points_.begin(), r.points_.end());
  std::reverse(r.lifts_.begin(), r.lifts_.end());
  std::reverse(r.fold_jump_.begin(), r.fold_jump_.end());
  return r;
}

PillowCurve PillowCurve::refined() const {
  PillowCurve r;
  r.closed_ = closed_;
  r.label_ = label_;
  if (points_.empty()) return r;
  r.points_.push_back(points_[0]);
  r.lifts_.push_back(lifts_[0]);
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (!fold_jump_[i]) {
      const Planar a = lifted(i);
      const Planar b = lifted(i + 1);
      const double mb = 0.5 * (a[1] + b[1]);
      const double red = reduce_2pi(mb);
      r.points_.push_back({0.5 * (a[0] + b[0]), red});
      r.lifts_.push_back(static_cast<int>(std::lround((mb - red) / kTwoPi)));
      r.fold_jump_.push_back(false);
    }
    r.points_.push_back(points_[i + 1]);
    r.lifts_.push_back(lifts_[i + 1]);
    r.fold_jump_.push_back(fold_jump_[i]);
  }
  return r;
}

std::vector<Planar> PillowCurve::cover_path() const {
  // Current cover transform v -> (s * v) + offset.
  double s = 1.0;
  Planar off{0.0, 0.0};
  std::vector<Planar> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i > 0 && fold_jump_[i - 1]) {
      const double e = points_[i].alpha;
      off = {s * 2.0 * e + off[0], off[1]};
      s = -s;
      const Planar v = lifted(i);
      // The mirrored vertex lands on the previous cover point.
      const Planar img{s * v[0] + off[0], s * v[1] + off[1]};
      off[1] += out.back()[1] - img[1];
      continue;
    }
    const Planar v = lifted(i);
    out.push_back({s * v[0] + off[0], s * v[1] + off[1]});
  }
  return out;
}

// --- intersections -------------------------------------------------------

namespace {

struct Candidate {
  Planar point;
  std::size_t seg_a;
  std::size_t seg_b;
};

struct ScanResult {
  std::vector<Candidate> hits;
  std::vector<std::array<std::size_t, 2>> overlaps;
};

enum class SegHit { None, Point, Overlap };

// Intersection of closed segments [a0,a1] and [b0,b1] with tolerance.
SegHit segment_intersection(Planar a0, Planar a1, Planar b0, Planar b1, double tol, Planar& out) {
  const Planar r = sub(a1, a0);
  const Planar s = sub(b1, b0);
  const double lr = norm2(r);
  const double ls = norm2(s);
  if (lr == 0.0 || ls == 0.0) return SegHit::None;
  const double denom = cross2(r, s);
  const Planar qp = sub(b0, a0);
  if (std::abs(denom) <= 1e-14 * lr * ls) {
    if (std::abs(cross2(qp, r)) / lr > tol) return SegHit::None;
    const double t0 = (qp[0] * r[0] + qp[1] * r[1]) / (lr * lr);
    const Planar q1 = sub(b1, a0);
    const double t1 = (q1[0] * r[0] + q1[1] * r[1]) / (lr * lr);
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(1.0, std::max(t0, t1));
    if ((hi - lo) * lr > tol) return SegHit::Overlap;
    if ((hi - lo) * lr < -tol) return SegHit::None;
    const double t = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
    out = add(a0, scale(t, r));
    return SegHit::Point;
  }
  const double t = cross2(qp, s) / denom;
  const double u = cross2(qp, r) / denom;
  if (t < -tol / lr || t > 1.0 + tol / lr || u < -tol / ls || u > 1.0 + tol / ls) {
    return SegHit::None;
  }
  out = add(a0, scale(std::clamp(t, 0.0, 1.0), r));
  return SegHit::Point;
}

template <class Skip>
ScanResult scan_segments(const PillowCurve& a, const PillowCurve& b, double tol, Skip skip) {
  ScanResult res;
  for (std::size_t i = 0; i < a.segment_count(); ++i) {
    if (a.is_fold_jump(i)) continue;
    const Planar a0 = a.lifted(i);
    const Planar a1 = a.lifted(i + 1);
    const double amin_a = std::min(a0[0], a1[0]);
    const double amax_a = std::max(a0[0], a1[0]);
    const double bmin_a = std::min(a0[1], a1[1]);
    const double bmax_a = std::max(a0[1], a1[1]);
    for (std::size_t j = 0; j < b.segment_count(); ++j) {
      if (b.is_fold_jump(j) || skip(i, j)) continue;
      const Planar p0 = b.lifted(j);
      const Planar p1 = b.lifted(j + 1);
      bool overlapped = false;
      // Images of segment j under identity and the two edge reflections.
      for (int refl = 0; refl < 3; ++refl) {
        Planar b0 = p0;
        Planar b1 = p1;
        double edge = 0.0;
        if (refl > 0) {
          edge = refl == 1 ? 0.0 : kPi;
          b0 = {2.0 * edge - p0[0], -p0[1]};
          b1 = {2.0 * edge - p1[0], -p1[1]};
        }
        const double amin_b = std::min(b0[0], b1[0]);
        const double amax_b = std::max(b0[0], b1[0]);
        if (amax_b < amin_a - tol || amin_b > amax_a + tol) continue;
        const double bmin_b = std::min(b0[1], b1[1]);
        const double bmax_b = std::max(b0[1], b1[1]);
        const long k_lo = static_cast<long>(std::ceil((bmin_a - bmax_b - tol) / kTwoPi));
        const long k_hi = static_cast<long>(std::floor((bmax_a - bmin_b + tol) / kTwoPi));
        for (long k = k_lo; k <= k_hi; ++k) {
          const Planar shift{0.0, kTwoPi * static_cast<double>(k)};
          Planar hit{};
          const SegHit h = segment_intersection(a0, a1, add(b0, shift), add(b1, shift), tol, hit);
          if (h == SegHit::Overlap) {
            overlapped = true;
          } else if (h == SegHit::Point) {
            if (refl > 0 && std::abs(hit[0] - edge) > tol) continue;
            res.hits.push_back({hit, i, j});
          }
        }
      }
      if (overlapped) res.overlaps.push_back({i, j});
    }
  }
  return res;
}

std::vector<CurveIntersection> merge_hits(const std::vector<Candidate>& hits, double merge_radius) {
  std::vector<CurveIntersection> all;
  all.reserve(hits.size());
  for (const Candidate& c : hits) all.push_back({canonicalize(c.point), c.seg_a, c.seg_b});
  std::sort(all.begin(), all.end(), [](const CurveIntersection& x, const CurveIntersection& y) {
    if (x.point.alpha != y.point.alpha) return x.point.alpha < y.point.alpha;
    if (x.point.beta != y.point.beta) return x.point.beta < y.point.beta;
    if (x.segment_a != y.segment_a) return x.segment_a < y.segment_a;
    return x.segment_b < y.segment_b;
  });
  std::vector<CurveIntersection> kept;
  for (const CurveIntersection& c : all) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const CurveIntersection& k) {
      return pillow_distance(k.point, c.point) <= merge_radius;
    });
    if (!dup) kept.push_back(c);
  }
  return kept;
}

}  // namespace

std::vector<CurveIntersection> intersect_curves(const PillowCurve& a, const PillowCurve& b,
                                                double tol, double merge_radius) {
  const ScanResult res = scan_segments(a, b, tol, [](std::size_t, std::size_t) { return false; });
  if (!res.overlaps.empty()) {
    std::string msg = std::to_string(res.overlaps.size()) + " collinear segment pair(s), first (" +
                      std::to_string(res.overlaps.front()[0]) + ", " +
                      std::to_string(res.overlaps.front()[1]) + ")";
    throw Error(ErrorKind::DegenerateOverlap, msg);
  }
  return merge_hits(res.hits, merge_radius);
}

std::vector<std::array<std::size_t, 2>> overlapping_segments(const PillowCurve& a,
                                                             const PillowCurve& b, double tol) {
  return scan_segments(a, b, tol, [](std::size_t, std::size_t) { return false; }).overlaps;
}

int homology_class_in_cylinder(const PillowCurve& c) {
  if (!c.closed() || c.size() < 2) throw Error(ErrorKind::NotClosed, "curve is not closed");
  if (pillow_distance(c.folded(0), c.folded(c.size() - 1)) > 1e-9) {
    throw Error(ErrorKind::NotClosed, "endpoints differ");
  }
  if (c.has_fold_jumps()) {
    throw Error(ErrorKind::CrossesCutLine, "curve passes through an edge identification");
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) total += c.lifted(i + 1)[1] - c.lifted(i)[1];
  // Closing gap between last and first vertex, measured in the cylinder.
  total += wrap_pm_pi(c.points().front().beta - c.points().back().beta);
  return static_cast<int>(std::lround(total / kTwoPi));
}

PillowCurve abelian_locus(double max_step) {
  const int n = std::max(1, static_cast<int>(std::ceil(kPi / max_step)));
  std::vector<Planar> raw;
  raw.reserve(n + 1);
  for (int k = 0; k <= n; ++k) raw.push_back({kPi * k / n, 0.0});
  raw.back()[0] = kPi;
  return PillowCurve::from_raw(raw, false, "abelian");
}

namespace {

double segment_distance_pillow(const PillowPoint& p, Planar a0, Planar a1) {
  double best = std::numeric_limits<double>::infinity();
  const double mid = 0.5 * (a0[1] + a1[1]);
  const bool wide = std::abs(a1[1] - a0[1]) > kPi;
  auto image = [&](Planar q) {
    const double k0 = std::round((mid - q[1]) / kTwoPi);
    best = std::min(best, point_segment_distance({q[0], q[1] + kTwoPi * k0}, a0, a1));
    if (wide) {
      best = std::min(best, point_segment_distance({q[0], q[1] + kTwoPi * (k0 - 1)}, a0, a1));
      best = std::min(best, point_segment_distance({q[0], q[1] + kTwoPi * (k0 + 1)}, a0, a1));
    }
  };
  image({p.alpha, p.beta});
  // Mirror images across the edges; only closer when p is near that edge.
  if (p.alpha < best) image({-p.alpha, -p.beta});
  if (kPi - p.alpha < best) image({kTwoPi - p.alpha, -p.beta});
  return best;
}

// Bucketed segment index over the cylinder for fast nearest-segment queries.
class SegmentGrid {
 public:
  explicit SegmentGrid(const PillowCurve& c, double cell = 0.01) : curve_(c), cell_(cell) {
    na_ = static_cast<int>(std::ceil(kPi / cell_)) + 1;
    nb_ = static_cast<int>(std::ceil(kTwoPi / cell_));
    // Beta cells tile the circle exactly so lifts map to the same cell.
    cell_b_ = kTwoPi / nb_;
    cells_.resize(static_cast<std::size_t>(na_) * nb_);
    for (std::size_t i = 0; i < c.segment_count(); ++i) {
      if (c.is_fold_jump(i)) continue;
      segs_.push_back(i);
      const Planar a = c.lifted(i);
      const Planar b = c.lifted(i + 1);
      const int ia0 = a_index(std::min(a[0], b[0]));
      const int ia1 = a_index(std::max(a[0], b[0]));
      const long ib0 = static_cast<long>(std::floor(std::min(a[1], b[1]) / cell_b_));
      const long ib1 = static_cast<long>(std::floor(std::max(a[1], b[1]) / cell_b_));
      for (int ia = ia0; ia <= ia1; ++ia) {
        for (long ib = ib0; ib <= std::min(ib1, ib0 + nb_ - 1); ++ib) {
          cells_[cell_at(ia, ib)].push_back(i);
        }
      }
    }
  }

  double distance(const PillowPoint& p) const {
    if (segs_.empty()) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    const bool near_edge = std::min(p.alpha, kPi - p.alpha) < 0.5;
    auto scan_block = [&](double alpha, double beta, long radius) {
      const int ia = a_index(alpha);
      const long ib = static_cast<long>(std::floor(beta / cell_b_));
      const long span_b = std::min<long>(radius, nb_ / 2);
      for (long da = -radius; da <= radius; ++da) {
        const long a = ia + da;
        if (a < 0 || a >= na_) continue;
        for (long db = -span_b; db <= span_b; ++db) {
          for (std::size_t s : cells_[cell_at(static_cast<int>(a), ib + db)]) {
            best = std::min(best, segment_distance_pillow(p, curve_.lifted(s), curve_.lifted(s + 1)));
          }
        }
      }
    };
    // Grow the searched block until it certifies the nearest segment.
    const double cmin = std::min(cell_, cell_b_);
    for (long radius = 1; radius <= 8; radius *= 2) {
      best = std::numeric_limits<double>::infinity();
      scan_block(p.alpha, p.beta, radius);
      if (near_edge) scan_block(p.alpha, reduce_2pi(-p.beta), radius);
      if (best <= static_cast<double>(radius) * cmin) return best;
    }
    for (std::size_t s : segs_) {
      best = std::min(best, segment_distance_pillow(p, curve_.lifted(s), curve_.lifted(s + 1)));
    }
    return best;
  }

 private:
  int a_index(double a) const { return std::clamp(static_cast<int>(std::floor(a / cell_)), 0, na_ - 1); }
  std::size_t cell_at(int ia, long ib) const {
    long m = ib % nb_;
    if (m < 0) m += nb_;
    return static_cast<std::size_t>(ia) * nb_ + static_cast<std::size_t>(m);
  }

  const PillowCurve& curve_;
  double cell_;
  double cell_b_ = 0.0;
  int na_ = 0;
  int nb_ = 0;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<std::size_t> segs_;
};

double one_sided_sampled(const PillowCurve& from, const SegmentGrid& to, double spacing) {
  double worst = 0.0;
  if (from.size() == 1) return to.distance(from.folded(0));
  for (std::size_t i = 0; i < from.segment_count(); ++i) {
    if (from.is_fold_jump(i)) continue;
    const Planar a = from.lifted(i);
    const Planar b = from.lifted(i + 1);
    const int n = std::max(1, static_cast<int>(std::ceil(norm2(sub(b, a)) / spacing)));
    const int start = i == 0 ? 0 : 1;
    for (int k = start; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      worst = std::max(worst, to.distance(canonicalize(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))));
    }
  }
  return worst;
}

}  // namespace

double distance_to_curve(const PillowPoint& p, const PillowCurve& c) {
  double best = std::numeric_limits<double>::infinity();
  if (c.size() == 1) return pillow_distance(p, c.folded(0));
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    if (c.is_fold_jump(i)) continue;
    best = std::min(best, segment_distance_pillow(p, c.lifted(i), c.lifted(i + 1)));
  }
  return best;
}

double hausdorff_distance(const PillowCurve& a, const PillowCurve& b, double spacing) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  const SegmentGrid ga(a);
  const SegmentGrid gb(b);
  return std::max(one_sided_sampled(a, gb, spacing), one_sided_sampled(b, ga, spacing));
}

double vertex_hausdorff_distance(const PillowCurve& a, const PillowCurve& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  const SegmentGrid ga(a);
  const SegmentGrid gb(b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, gb.distance(a.folded(i)));
  for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, ga.distance(b.folded(i)));
  return worst;
}

// --- paths from P to Q ---------------------------------------------------

namespace {

std::vector<Planar> sample_graph(const std::function<double(double)>& f, double max_step) {
  std::vector<Planar> pts;
  const int n0 = std::max(2, static_cast<int>(std::ceil(kPi / max_step)));
  std::vector<Planar> coarse;
  for (int k = 0; k <= n0; ++k) {
    const double a = k == n0 ? kPi : kPi * k / n0;
    coarse.push_back({a, f(a)});
  }
  pts.push_back(coarse[0]);
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    // Bisect until each raw step is below max_step; a step that does not
    // shrink under bisection is a jump in the function.
    std::vector<std::pair<Planar, Planar>> stack{{coarse[i], coarse[i + 1]}};
    while (!stack.empty()) {
      auto [p, q] = stack.back();
      stack.pop_back();
      if (norm2(sub(q, p)) < max_step) {
        pts.push_back(q);
        continue;
      }
      const double width = q[0] - p[0];
      if (width < 1e-9) {
        throw Error(ErrorKind::NotEmbedded,
                    "path is discontinuous near alpha = " + std::to_string(p[0]));
      }
      const double am = 0.5 * (p[0] + q[0]);
      const Planar m{am, f(am)};
      stack.push_back({m, q});
      stack.push_back({p, m});
    }
  }
  return pts;
}

std::vector<Planar> densify(const std::vector<Planar>& raw, double max_step) {
  std::vector<Planar> out;
  if (raw.empty()) return out;
  out.push_back(raw[0]);
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    const double len = norm2(sub(raw[i + 1], raw[i]));
    const int n = std::max(1, static_cast<int>(std::ceil(len / (0.999 * max_step))));
    for (int k = 1; k <= n; ++k) {
      const double t = static_cast<double>(k) / n;
      out.push_back(add(raw[i], scale(t, sub(raw[i + 1], raw[i]))));
    }
  }
  return out;
}

}  // namespace

PillowCurve path_P_to_Q(const PathSpec& spec, double max_step) {
  std::vector<Planar> raw;
  if (std::holds_alternative<path::Straight>(spec)) {
    raw = sample_graph([](double) { return kPi; }, max_step);
  } else if (const auto* g = std::get_if<path::Graph>(&spec)) {
    raw = sample_graph(g->beta_of_alpha, max_step);
  } else {
    const auto& poly = std::get<path::Polyline>(spec).raw;
    if (poly.size() < 2) throw Error(ErrorKind::BadEndpoints, "polyline needs at least two points");
    raw = densify(poly, max_step);
  }
  PillowCurve c = PillowCurve::from_raw(raw, false, "path");
  validate_path_P_to_Q(c);
  return c;
}

void validate_path_P_to_Q(const PillowCurve& c) {
  if (c.size() < 2) throw Error(ErrorKind::BadEndpoints, "path has fewer than two points");
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    if (c.is_fold_jump(i)) continue;
    if (norm2(sub(c.lifted(i + 1), c.lifted(i))) > 0.5) {
      throw Error(ErrorKind::NotEmbedded, "path is discontinuous at segment " + std::to_string(i));
    }
  }
  if (pillow_distance(c.folded(0), kCornerP) > 1e-9 ||
      pillow_distance(c.folded(c.size() - 1), kCornerQ) > 1e-9) {
    throw Error(ErrorKind::BadEndpoints, "path must run from (0, pi) to (pi, pi)");
  }
  for (const PillowPoint& corner : {PillowPoint{0.0, 0.0}, PillowPoint{kPi, 0.0}}) {
    if (distance_to_curve(corner, c) <= 1e-6) {
      throw Error(ErrorKind::HitsForbiddenCorner, "path meets a forbidden corner");
    }
  }
  // Segments adjacent in the polyline, or adjacent across a fold jump, share
  // a vertex and are not compared.
  auto adjacent = [&](std::size_t i, std::size_t j) {
    const std::size_t lo = std::min(i, j);
    const std::size_t hi = std::max(i, j);
    if (hi - lo <= 1) return true;
    if (hi - lo == 2 && c.is_fold_jump(lo + 1)) return true;
    return false;
  };
  const ScanResult res = scan_segments(c, c, 1e-12, adjacent);
  if (!res.overlaps.empty()) {
    throw Error(ErrorKind::NotEmbedded, "path overlaps itself");
  }
  for (const Candidate& h : res.hits) {
    const PillowPoint p = canonicalize(h.point);
    // Endpoint contacts at P and Q are shared by the first/last segments.
    if (pillow_distance(p, kCornerP) < 1e-9 || pillow_distance(p, kCornerQ) < 1e-9) {
      const bool first_or_last = std::min(h.seg_a, h.seg_b) == 0 ||
                                 std::max(h.seg_a, h.seg_b) + 1 == c.segment_count();
      if (first_or_last) continue;
    }
    throw Error(ErrorKind::NotEmbedded, "path intersects itself near (" + std::to_string(p.alpha) +
                                            ", " + std::to_string(p.beta) + ")");
  }
}

}  // namespace pillow
