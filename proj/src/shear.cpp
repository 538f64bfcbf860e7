#include "pillow/shear.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "pillow/error.hpp"
#include "pillow/lm.hpp"

namespace pillow {

double ClassFunctionProfile::g(double t) const {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::cos(static_cast<double>(k) * t);
  return s;
}

double ClassFunctionProfile::f(double t) const {
  double s = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double kk = static_cast<double>(k);
    s -= kk * a[k] * std::sin(kk * t);
  }
  return s;
}

double ClassFunctionProfile::f_prime(double t) const {
  double s = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double kk = static_cast<double>(k);
    s -= kk * kk * a[k] * std::cos(kk * t);
  }
  return s;
}

ClassFunctionProfile ClassFunctionProfile::negated() const {
  ClassFunctionProfile p = *this;
  for (double& c : p.a) c = -c;
  return p;
}

bool ClassFunctionProfile::is_constant() const {
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (a[k] != 0.0) return false;
  }
  return true;
}

ShearProgram ShearProgram::inverse() const {
  ShearProgram inv;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) inv.steps.push_back({it->direction, it->profile.negated()});
  return inv;
}

ShearProgram ShearProgram::then(const ShearProgram& next) const {
  ShearProgram p = *this;
  p.steps.insert(p.steps.end(), next.steps.begin(), next.steps.end());
  return p;
}

void validate(const ShearStep& s) {
  if (std::gcd(std::abs(s.direction[0]), std::abs(s.direction[1])) != 1) {
    throw Error(ErrorKind::Malformed, "shear direction (" + std::to_string(s.direction[0]) + ", " +
                                          std::to_string(s.direction[1]) + ") is not primitive");
  }
}

std::array<int, 2> transverse_functional(std::array<int, 2> d) {
  std::array<int, 2> l{d[1], -d[0]};
  if (l[0] < 0 || (l[0] == 0 && l[1] < 0)) l = {-l[0], -l[1]};
  return l;
}

Planar apply_shear_cover(const ShearStep& s, Planar v) {
  if (s.profile.is_constant()) return v;
  const std::array<int, 2> l = transverse_functional(s.direction);
  const double t = l[0] * v[0] + l[1] * v[1];
  const double f = s.profile.f(t);
  return {v[0] + f * s.direction[0], v[1] + f * s.direction[1]};
}

PillowPoint apply_shear(const ShearStep& s, const PillowPoint& p) {
  return canonicalize(apply_shear_cover(s, {p.alpha, p.beta}));
}

Planar apply_program_cover(const ShearProgram& prog, Planar v) {
  for (const ShearStep& s : prog.steps) v = apply_shear_cover(s, v);
  return v;
}

PillowPoint apply_program(const ShearProgram& prog, const PillowPoint& p) {
  return canonicalize(apply_program_cover(prog, {p.alpha, p.beta}));
}

PillowCurve apply_program(const ShearProgram& prog, const PillowCurve& c, double max_step) {
  for (const ShearStep& s : prog.steps) validate(s);
  if (prog.steps.empty() || c.empty()) return c;
  const std::vector<Planar> src = c.cover_path();
  std::vector<Planar> out;
  out.push_back(apply_program_cover(prog, src[0]));
  for (std::size_t i = 0; i + 1 < src.size(); ++i) {
    struct Piece {
      Planar a, b, fb;
      int depth;
    };
    std::vector<Piece> stack{{src[i], src[i + 1], apply_program_cover(prog, src[i + 1]), 0}};
    while (!stack.empty()) {
      Piece pc = stack.back();
      const Planar fa = out.back();
      if (std::hypot(pc.fb[0] - fa[0], pc.fb[1] - fa[1]) <= max_step || pc.depth > 40) {
        out.push_back(pc.fb);
        stack.pop_back();
        continue;
      }
      stack.pop_back();
      const Planar m{0.5 * (pc.a[0] + pc.b[0]), 0.5 * (pc.a[1] + pc.b[1])};
      const Planar fm = apply_program_cover(prog, m);
      stack.push_back({m, pc.b, pc.fb, pc.depth + 1});
      stack.push_back({pc.a, m, fm, pc.depth + 1});
    }
  }
  return PillowCurve::from_raw(out, c.closed(), c.label());
}

// --- fitting ---------------------------------------------------------------

namespace {

// Parameter t of the crossing of the line v + t d with the path that is
// nearest to v.
bool nearest_crossing(const std::vector<Planar>& path, Planar v, std::array<int, 2> d, double& out) {
  const double dx = d[0];
  const double dy = d[1];
  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Planar& a = path[i];
    const Planar& b = path[i + 1];
    const double ex = b[0] - a[0];
    const double ey = b[1] - a[1];
    const double den = dx * ey - dy * ex;
    const double wx = a[0] - v[0];
    const double wy = a[1] - v[1];
    double t = 0.0;
    if (std::abs(den) < 1e-15) {
      if (std::abs(wx * dy - wy * dx) > 1e-12) continue;
      // Segment lies on the line; take its point closest to v.
      const double n2 = dx * dx + dy * dy;
      const double ta = (wx * dx + wy * dy) / n2;
      const double tb = ((b[0] - v[0]) * dx + (b[1] - v[1]) * dy) / n2;
      t = std::clamp(0.0, std::min(ta, tb), std::max(ta, tb));
    } else {
      const double u = (dx * wy - dy * wx) / den;
      if (u < 0.0 || u > 1.0) continue;
      t = (wx * ey - wy * ex) / den;
    }
    if (std::abs(t) < best) {
      best = std::abs(t);
      out = t;
      found = true;
    }
  }
  return found;
}

// Least-squares sine series sum b_k sin(k x) through (x_i, d_i); returns the
// cosine profile whose derivative it is.
ClassFunctionProfile fit_profile(const std::vector<double>& x, const std::vector<double>& d, int degree) {
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd A(n, degree);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 1; k <= degree; ++k) A(i, k - 1) = std::sin(k * x[static_cast<std::size_t>(i)]);
    rhs(i) = d[static_cast<std::size_t>(i)];
  }
  Eigen::MatrixXd N = A.transpose() * A;
  N.diagonal().array() += 1e-12 * (1.0 + N.diagonal().maxCoeff());
  const Eigen::VectorXd b = N.ldlt().solve(A.transpose() * rhs);
  ClassFunctionProfile p;
  p.a.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  for (int k = 1; k <= degree; ++k) p.a[static_cast<std::size_t>(k)] = -b(k - 1) / k;
  return p;
}

double fit_distance(const PillowCurve& image, const PillowCurve& target) {
  return hausdorff_distance(image, target, 1e-3);
}

}  // namespace

FitResult fit_program_to_path(const PillowCurve& target, const FitOptions& opts) {
  FitResult res;
  try {
    validate_path_P_to_Q(target);
  } catch (const Error& e) {
    res.target_embedded = false;
    res.target_problem = e.what();
  }
  const std::vector<Planar> tgt = target.cover_path();

  // Sample c0 at the target's alpha values when the target is a graph, so
  // that exactly representable targets are matched vertex for vertex.
  bool graph = tgt.size() >= 2;
  for (std::size_t i = 0; i + 1 < tgt.size() && graph; ++i) graph = tgt[i + 1][0] > tgt[i][0];
  graph = graph && std::abs(tgt.front()[0]) < 1e-12 && std::abs(tgt.back()[0] - kPi) < 1e-12;
  std::vector<Planar> base;
  if (graph) {
    for (const Planar& p : tgt) base.push_back({p[0], kPi});
    base.front()[0] = 0.0;
    base.back()[0] = kPi;
  } else {
    const int n = 400;
    for (int i = 0; i <= n; ++i) base.push_back({kPi * i / n, kPi});
  }
  const PillowCurve c0 = PillowCurve::from_raw(base, false, "c0");

  static constexpr std::array<std::array<int, 2>, 4> kDirections{{{0, 1}, {1, 0}, {1, 1}, {1, -1}}};
  ShearProgram prog;
  double dist = fit_distance(c0, target);
  while (static_cast<int>(prog.steps.size()) < opts.budget && dist > opts.tol) {
    ++res.rounds;
    ShearProgram best_prog;
    double best = dist;
    for (const std::array<int, 2>& d : kDirections) {
      const std::array<int, 2> l = transverse_functional(d);
      std::vector<double> xs;
      std::vector<double> ts;
      for (const Planar& b : base) {
        const Planar v = apply_program_cover(prog, b);
        double t = 0.0;
        if (!nearest_crossing(tgt, v, d, t)) continue;
        xs.push_back(l[0] * v[0] + l[1] * v[1]);
        ts.push_back(t);
      }
      if (xs.size() < 2) continue;
      const ClassFunctionProfile prof = fit_profile(xs, ts, opts.degree);
      for (double s : {1.0, 0.5, 0.25}) {
        ShearStep step{d, prof};
        for (double& c : step.profile.a) c *= s;
        ShearProgram trial = prog;
        trial.steps.push_back(std::move(step));
        const double dt = fit_distance(apply_program(trial, c0), target);
        if (dt < best) {
          best = dt;
          best_prog = std::move(trial);
          break;
        }
      }
    }
    if (best_prog.steps.empty()) break;
    prog = std::move(best_prog);
    dist = best;
  }
  res.program = std::move(prog);
  res.distance = dist;
  res.status = dist <= opts.tol ? FitStatus::Ok : FitStatus::BudgetExceeded;
  return res;
}

// --- perturbed critical set -----------------------------------------------

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

}  // namespace

PerturbedCriticalSet perturbed_critical_set(const KnotPresentation& k, const ShearProgram& prog,
                                            const TraceConfig& cfg) {
  return perturbed_critical_set(k, prog, trace_branches(k, cfg), cfg);
}

PerturbedCriticalSet perturbed_critical_set(const KnotPresentation& k, const ShearProgram& prog,
                                            const TraceResult& traced, const TraceConfig& cfg) {
  PerturbedCriticalSet out;
  out.c_prime = apply_program(prog, path_P_to_Q(path::Straight{}));
  out.c_prime.set_label("c'");
  out.image = traced.curves;
  const ShearProgram inv = prog.inverse();

  LmProblem prob;
  prob.n_generators = k.generator_count();
  prob.n_scalars = 1;
  for (const Word& r : k.relators) prob.equations.push_back({r, {}, false, 0.0, -1});
  prob.equations.push_back({k.meridian, {}, true, 0.0, 0});
  const Word longitude = k.longitude;
  auto pulled_back_offset = [inv, longitude](std::span<const Su2Elem> gens, std::span<const double> s) {
    const Su2Elem l = eval_word(longitude, gens);
    const double beta = std::atan2(l.x(), l.w());
    const Planar v = apply_program_cover(inv, {s[0], beta});
    return std::remainder(v[1] - kPi, kTwoPi);
  };
  prob.constraints.push_back(pulled_back_offset);

  std::vector<CriticalPoint> found;
  for (std::size_t ci = 0; ci < traced.curves.size(); ++ci) {
    const PillowCurve& curve = traced.curves[ci];
    const bool irreducible = ci < traced.branch_reps.size();
    for (const CurveIntersection& hit : intersect_curves(curve, out.c_prime)) {
      std::vector<Su2Elem> seed;
      if (irreducible) {
        const RepPoint* r = nearest_rep(traced.branch_reps[ci], hit.point);
        if (r == nullptr) continue;
        seed = r->assignment;
      } else {
        seed = abelian_rep(k, hit.point.alpha);
      }
      LmResult lm = solve_lm(prob, seed, {hit.point.alpha}, {1e-14, cfg.max_newton_iters});
      std::vector<Su2Elem> gens = lm.gens;
      normalize_gauge(k, gens);
      RepPoint rp = make_rep_point(k, std::move(gens));
      const double curve_res = std::abs(pulled_back_offset(lm.gens, lm.scalars));
      if (!(rp.residual < 1e-9) || !(curve_res < 1e-8)) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const CriticalPoint& c) {
        return assignment_distance(c.rep.assignment, rp.assignment) < 1e-6;
      });
      if (dup) continue;
      found.push_back({std::move(rp), curve.label(), 2, curve_res});
    }
  }
  std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.rep.alpha != b.rep.alpha) return a.rep.alpha < b.rep.alpha;
    return a.rep.beta < b.rep.beta;
  });
  out.points = std::move(found);
  return out;
}

// --- JSON ------------------------------------------------------------------

Json to_json(const ShearProgram& p) {
  Json steps = Json::array();
  for (const ShearStep& s : p.steps) {
    Json j;
    j["direction"] = Json::array({s.direction[0], s.direction[1]});
    j["cosine_coeffs"] = s.profile.a;
    steps.push_back(std::move(j));
  }
  Json j;
  j["steps"] = std::move(steps);
  return j;
}

ShearProgram program_from_json(const Json& j) {
  try {
    ShearProgram p;
    for (const Json& s : j.at("steps")) {
      ShearStep step;
      const auto d = s.at("direction").get<std::vector<int>>();
      if (d.size() != 2) throw Error(ErrorKind::Malformed, "direction must have two entries");
      step.direction = {d[0], d[1]};
      step.profile.a = s.at("cosine_coeffs").get<std::vector<double>>();
      validate(step);
      p.steps.push_back(std::move(step));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("program JSON: ") + e.what());
  }
}

Json to_json(const FitResult& r) {
  Json j;
  j["status"] = r.status == FitStatus::Ok ? "ok" : "BudgetExceeded";
  j["distance"] = r.distance;
  j["steps"] = r.program.steps.size();
  j["rounds"] = r.rounds;
  j["target_embedded"] = r.target_embedded;
  if (!r.target_embedded) j["target_problem"] = r.target_problem;
  j["program"] = to_json(r.program);
  return j;
}

Json to_json(const PerturbedCriticalSet& s) {
  Json pts = Json::array();
  for (const CriticalPoint& c : s.points) {
    Json j = to_json(c.rep);
    j["source"] = c.source;
    j["multiplicity"] = c.multiplicity;
    j["curve_residual"] = c.curve_residual;
    pts.push_back(std::move(j));
  }
  Json j;
  j["count"] = s.points.size();
  j["points"] = std::move(pts);
  j["c_prime"] = to_json(s.c_prime);
  return j;
}

}  // namespace pillow
