#include "pillow/splice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>

#include "pillow/error.hpp"
#include "pillow/lm.hpp"

namespace pillow {

PillowCurve transpose_image(const PillowCurve& c) {
  if (c.empty()) return c;
  std::vector<Planar> raw;
  for (const Planar& v : c.cover_path()) raw.push_back({v[1], v[0]});
  return PillowCurve::from_raw(raw, c.closed(), c.label() + "^T");
}

Su2Elem best_conjugator(const std::vector<Su2Elem>& from, const std::vector<Su2Elem>& to) {
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < from.size() && i < to.size(); ++i) {
    const Vec3 a = from[i].vec();
    const Vec3 b = to[i].vec();
    H += Eigen::Vector3d(a.x, a.y, a.z) * Eigen::Vector3d(b.x, b.y, b.z).transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d U = svd.matrixU();
  const Eigen::Matrix3d V = svd.matrixV();
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  D(2, 2) = (V * U.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  const Eigen::Quaterniond q(Eigen::Matrix3d(V * D * U.transpose()));
  return {q.w(), q.x(), q.y(), q.z()};
}

double splice_residual(const SpliceProblem& p, const std::vector<Su2Elem>& left,
                       const std::vector<Su2Elem>& right, const Su2Elem& aligner) {
  double r = std::max(relator_residual(p.left, left), relator_residual(p.right, right));
  const Su2Elem mu1 = eval_word(p.left.meridian, left);
  const Su2Elem la1 = eval_word(p.left.longitude, left);
  const Su2Elem mu2 = eval_word(p.right.meridian, right);
  const Su2Elem la2 = eval_word(p.right.longitude, right);
  r = std::max(r, distance(mu1, conjugate_by(aligner, la2)));
  r = std::max(r, distance(la1, conjugate_by(aligner, mu2)));
  return r;
}

namespace {

const RepPoint* nearest_rep(const std::vector<RepPoint>& reps, const PillowPoint& p) {
  const RepPoint* best = nullptr;
  double bd = std::numeric_limits<double>::infinity();
  for (const RepPoint& r : reps) {
    const double d = pillow_distance({r.alpha, r.beta}, p);
    if (d < bd) {
      bd = d;
      best = &r;
    }
  }
  return best;
}

Word shifted(const Word& w, int n) {
  Word out;
  for (int g : w) out.push_back(g > 0 ? g + n : g - n);
  return out;
}

// Presentation of the amalgam: left generators, then right ones.
KnotPresentation amalgam(const SpliceProblem& p) {
  KnotPresentation a;
  a.label = p.left.label + "+" + p.right.label;
  for (const std::string& g : p.left.generators) a.generators.push_back("L." + g);
  for (const std::string& g : p.right.generators) a.generators.push_back("R." + g);
  const int n1 = static_cast<int>(p.left.generators.size());
  a.relators = p.left.relators;
  for (const Word& r : p.right.relators) a.relators.push_back(shifted(r, n1));
  a.meridian = p.left.meridian;
  a.longitude = p.left.longitude;
  return a;
}

bool near_abelian(const PillowPoint& x, double tol) {
  return x.alpha < tol || x.alpha > kPi - tol || x.beta < tol || x.beta > kTwoPi - tol;
}

}  // namespace

SpliceResult find_splice_reps(const SpliceProblem& p, const TraceConfig& cfg) {
  validate(cfg);
  SpliceResult res;
  res.note = casson_note(p);
  const TraceResult L = trace_branches(p.left, cfg);
  const TraceResult R = p.right.same_presentation(p.left) ? L : trace_branches(p.right, cfg);
  res.left_image = L.curves;
  res.right_image = R.curves;
  for (const PillowCurve& c : R.curves) res.right_transposed.push_back(transpose_image(c));

  const KnotPresentation A = amalgam(p);
  const std::size_t n1 = p.left.generator_count();
  LmProblem prob;
  prob.n_generators = A.generator_count();
  for (const Word& r : A.relators) prob.equations.push_back({r, {}, false, 0.0, -1});
  const int shift = static_cast<int>(n1);
  prob.equations.push_back({p.left.meridian, shifted(p.right.longitude, shift), false, 0.0, -1});
  prob.equations.push_back({p.left.longitude, shifted(p.right.meridian, shift), false, 0.0, -1});

  for (std::size_t i = 0; i < L.branch_reps.size(); ++i) {
    for (std::size_t j = 0; j < R.branch_reps.size(); ++j) {
      for (const CurveIntersection& hit : intersect_curves(L.curves[i], res.right_transposed[j])) {
        ++res.candidates;
        if (near_abelian(hit.point, kMergeRadius)) {
          ++res.filtered;
          continue;
        }
        const RepPoint* lseed = nearest_rep(L.branch_reps[i], hit.point);
        const RepPoint* rseed = nearest_rep(R.branch_reps[j], canonicalize({hit.point.beta, hit.point.alpha}));
        if (lseed == nullptr || rseed == nullptr) continue;

        const std::vector<Su2Elem>& l0 = lseed->assignment;
        const std::vector<Su2Elem>& r0 = rseed->assignment;
        const Su2Elem g0 =
            best_conjugator({eval_word(p.right.longitude, r0), eval_word(p.right.meridian, r0)},
                            {eval_word(p.left.meridian, l0), eval_word(p.left.longitude, l0)});
        std::vector<Su2Elem> gens = l0;
        for (const Su2Elem& r : r0) gens.push_back(conjugate_by(g0, r));
        const LmResult lm = solve_lm(prob, gens, {}, {1e-14, 4 * cfg.max_newton_iters});
        gens = lm.gens;
        normalize_gauge(A, gens);

        std::vector<Su2Elem> left(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(n1));
        std::vector<Su2Elem> glued(gens.begin() + static_cast<std::ptrdiff_t>(n1), gens.end());
        std::vector<Su2Elem> right = glued;
        normalize_gauge(p.right, right);
        SpliceRep rep;
        rep.aligner = best_conjugator(right, glued);
        rep.residual = splice_residual(p, left, right, rep.aligner);
        if (!(rep.residual < 1e-8)) {
          throw Error(ErrorKind::LiftFailed,
                      "intersection near (" + std::to_string(hit.point.alpha) + ", " +
                          std::to_string(hit.point.beta) + ") did not lift: residual " +
                          std::to_string(rep.residual) + " after " + std::to_string(lm.iterations) +
                          " iterations");
        }
        rep.commutator = max_commutator(gens);
        rep.irreducible = rep.commutator > 1e-6;
        rep.left = make_rep_point(p.left, left);
        rep.right = make_rep_point(p.right, right);
        rep.point = {rep.left.alpha, rep.left.beta};
        const bool dup = std::any_of(res.reps.begin(), res.reps.end(), [&](const SpliceRep& o) {
          return assignment_distance(o.left.assignment, rep.left.assignment) < 1e-6 &&
                 assignment_distance(o.right.assignment, rep.right.assignment) < 1e-6;
        });
        if (!dup) res.reps.push_back(std::move(rep));
      }
    }
  }
  if (res.reps.empty()) {
    throw Error(ErrorKind::NoIntersections,
                "no intersections off the abelian loci (" + std::to_string(res.candidates) +
                    " candidates, " + std::to_string(res.filtered) + " filtered)");
  }
  std::sort(res.reps.begin(), res.reps.end(), [](const SpliceRep& a, const SpliceRep& b) {
    if (a.point.alpha != b.point.alpha) return a.point.alpha < b.point.alpha;
    return a.point.beta < b.point.beta;
  });
  return res;
}

std::string casson_note(const SpliceProblem& p) {
  const KnotPresentation t = torus_knot(2, 3);
  if (!p.left.same_presentation(t) || !p.right.same_presentation(t)) return {};
  return "The splice of two right-handed trefoil exteriors is known to have Casson invariant zero "
         "(Fukuhara-Maruyama; Boyer-Nicas), so the representations found here are not detected by "
         "a signed count. No Casson invariant is computed.";
}

Json to_json(const SpliceRep& r) {
  Json j;
  j["point"] = Json::array({r.point.alpha, r.point.beta});
  j["residual"] = r.residual;
  j["commutator"] = r.commutator;
  j["irreducible"] = r.irreducible;
  Json la = Json::array();
  for (const Su2Elem& g : r.left.assignment) la.push_back(to_json(g));
  Json ra = Json::array();
  for (const Su2Elem& g : r.right.assignment) ra.push_back(to_json(g));
  j["left_assignment"] = std::move(la);
  j["right_assignment"] = std::move(ra);
  j["aligner"] = to_json(r.aligner);
  return j;
}

Json to_json(const SpliceResult& r) {
  Json reps = Json::array();
  for (const SpliceRep& s : r.reps) reps.push_back(to_json(s));
  Json j;
  j["count"] = r.reps.size();
  j["candidates"] = r.candidates;
  j["filtered"] = r.filtered;
  j["note"] = r.note;
  j["reps"] = std::move(reps);
  return j;
}

}  // namespace pillow
