#include "pillow/charvar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "pillow/error.hpp"
#include "pillow/lm.hpp"

namespace pillow {

void validate(const TraceConfig& cfg) {
  if (!(cfg.step > 0.0)) throw Error(ErrorKind::Malformed, "step must be positive");
  if (!(cfg.newton_tol > 0.0) || !(cfg.residual_tol > 0.0) || !(cfg.dedup_radius > 0.0)) {
    throw Error(ErrorKind::Malformed, "tolerances must be positive");
  }
  if (cfg.max_newton_iters <= 0 || cfg.restarts < 0) {
    throw Error(ErrorKind::Malformed, "iteration and restart counts must be positive");
  }
  if (!(cfg.alpha_min >= 0.0) || !(cfg.alpha_max <= kPi) || !(cfg.alpha_min < cfg.alpha_max)) {
    throw Error(ErrorKind::Malformed, "alpha range must lie in [0, pi]");
  }
  if (!(cfg.max_curve_step > 0.0)) throw Error(ErrorKind::Malformed, "max curve step must be positive");
}

double relator_residual(const KnotPresentation& k, const std::vector<Su2Elem>& gens) {
  double worst = 0.0;
  for (const Word& r : k.relators) {
    Quaternion acc{1.0, 0.0, 0.0, 0.0};
    for (int letter : r) {
      const Su2Elem& g = gens[static_cast<std::size_t>(std::abs(letter)) - 1];
      acc = acc * (letter > 0 ? g.quat() : g.inverse().quat());
    }
    worst = std::max(worst, (acc - Quaternion{1.0, 0.0, 0.0, 0.0}).norm());
  }
  return worst;
}

double max_commutator(const std::vector<Su2Elem>& gens) {
  double worst = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      worst = std::max(worst, commutator_norm(gens[i], gens[j]));
    }
  }
  return worst;
}

RepPoint make_rep_point(const KnotPresentation& k, std::vector<Su2Elem> gens) {
  RepPoint rp;
  const Su2Elem m = eval_word(k.meridian, gens);
  const Su2Elem l = eval_word(k.longitude, gens);
  double a = 0.0;
  double b = 0.0;
  if (!m.is_central(1e-12)) {
    const DiagonalForm d = conjugate_to_diagonal(m);
    a = d.angle;
    b = signed_angle_in_frame(l, d.frame, 1e-6);
  } else {
    const DiagonalForm d = conjugate_to_diagonal(l);
    a = signed_angle_in_frame(m, d.frame, 1e-6);
    b = d.angle;
  }
  const PillowPoint p = canonicalize(a, b);
  rp.alpha = p.alpha;
  rp.beta = p.beta;
  rp.residual = relator_residual(k, gens);
  rp.irreducible = max_commutator(gens) > 1e-6;
  rp.assignment = std::move(gens);
  return rp;
}

namespace {

void conjugate_all(std::vector<Su2Elem>& gens, const Su2Elem& g) {
  for (Su2Elem& e : gens) e = conjugate_by(g, e);
}

}  // namespace

void normalize_gauge(const KnotPresentation& k, std::vector<Su2Elem>& gens) {
  const Su2Elem m = eval_word(k.meridian, gens);
  if (!m.is_central(1e-9)) {
    conjugate_all(gens, conjugate_to_diagonal(m).frame);
  } else {
    for (const Su2Elem& g : gens) {
      if (!g.is_central(1e-9)) {
        conjugate_all(gens, conjugate_to_diagonal(g).frame);
        break;
      }
    }
  }
  for (const Su2Elem& g : gens) {
    const double perp = std::hypot(g.y(), g.z());
    if (perp > 1e-6) {
      const double t = 0.5 * (0.5 * kPi - std::atan2(g.z(), g.y()));
      conjugate_all(gens, Su2Elem::diagonal(t));
      break;
    }
  }
}

std::vector<Su2Elem> abelian_rep(const KnotPresentation& k, double alpha) {
  const PeripheralReport rep = validate_peripheral(k);
  std::vector<Su2Elem> gens;
  for (long phi : rep.abelian_functional) gens.push_back(Su2Elem::diagonal(static_cast<double>(phi) * alpha));
  return gens;
}

double assignment_distance(const std::vector<Su2Elem>& a, const std::vector<Su2Elem>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) worst = std::max(worst, distance(a[i], b[i]));
  return worst;
}

namespace {

LmProblem pinned_problem(const KnotPresentation& k, double alpha) {
  LmProblem prob;
  prob.n_generators = k.generator_count();
  for (const Word& r : k.relators) prob.equations.push_back({r, {}, false, 0.0, -1});
  prob.equations.push_back({k.meridian, {}, true, alpha, -1});
  return prob;
}

Su2Elem haar(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
    if (w * w + x * x + y * y + z * z > 1e-12) return {w, x, y, z};
  }
}

bool lex_less(const RepPoint& a, const RepPoint& b) {
  if (a.beta != b.beta) return a.beta < b.beta;
  for (std::size_t i = 0; i < a.assignment.size(); ++i) {
    const auto ca = a.assignment[i].components();
    const auto cb = b.assignment[i].components();
    if (ca != cb) return ca < cb;
  }
  return false;
}

}  // namespace

bool polish_at_alpha(const KnotPresentation& k, double alpha, const std::vector<Su2Elem>& start,
                     const TraceConfig& cfg, RepPoint& out) {
  const LmProblem prob = pinned_problem(k, alpha);
  LmResult r = solve_lm(prob, start, {}, {cfg.newton_tol, cfg.max_newton_iters});
  if (!(r.residual < cfg.residual_tol)) return false;
  normalize_gauge(k, r.gens);
  out = make_rep_point(k, std::move(r.gens));
  return out.residual < cfg.residual_tol;
}

AlphaCensus census_at_alpha(const KnotPresentation& k, double alpha, const TraceConfig& cfg,
                            std::uint64_t stream) {
  AlphaCensus census;
  const LmProblem prob = pinned_problem(k, alpha);
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);

  std::vector<Su2Elem> ab = abelian_rep(k, alpha);
  RepPoint abelian = make_rep_point(k, ab);
  ++census.starts;
  if (abelian.residual < cfg.residual_tol) {
    ++census.converged;
    census.reps.push_back(abelian);
  }

  std::vector<RepPoint> irr;
  for (int s = 0; s < cfg.restarts; ++s) {
    std::vector<Su2Elem> start;
    for (std::size_t g = 0; g < k.generator_count(); ++g) start.push_back(haar(rng));
    ++census.starts;
    LmResult r = solve_lm(prob, std::move(start), {}, {cfg.newton_tol, cfg.max_newton_iters});
    if (!(r.residual < cfg.residual_tol)) continue;
    ++census.converged;
    normalize_gauge(k, r.gens);
    RepPoint rp = make_rep_point(k, std::move(r.gens));
    if (!rp.irreducible || !(rp.residual < cfg.residual_tol)) continue;
    const bool dup = std::any_of(irr.begin(), irr.end(), [&](const RepPoint& o) {
      return assignment_distance(o.assignment, rp.assignment) < cfg.dedup_radius;
    });
    if (!dup) irr.push_back(std::move(rp));
  }
  std::sort(irr.begin(), irr.end(), lex_less);
  for (RepPoint& r : irr) census.reps.push_back(std::move(r));
  return census;
}

std::vector<RepPoint> solve_at_alpha(const KnotPresentation& k, double alpha, const TraceConfig& cfg) {
  validate(cfg);
  if (!(alpha >= 0.0 && alpha <= kPi)) throw Error(ErrorKind::Malformed, "alpha must lie in [0, pi]");
  AlphaCensus c = census_at_alpha(k, alpha, cfg, 0);
  if (c.converged == 0) {
    throw Error(ErrorKind::NoConvergence, "no start converged at alpha = " + std::to_string(alpha) +
                                              " (" + std::to_string(c.starts) + " starts)");
  }
  return std::move(c.reps);
}

// --- tracing -------------------------------------------------------------

namespace {

struct Node {
  double alpha;
  RepPoint rep;
};

using Chain = std::vector<Node>;

constexpr double kLinkRadius = 0.5;
constexpr double kSameRadius = 1e-6;

bool contains(const std::vector<RepPoint>& set, const RepPoint& r) {
  return std::any_of(set.begin(), set.end(), [&](const RepPoint& o) {
    return assignment_distance(o.assignment, r.assignment) < kSameRadius;
  });
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

// Pushes the end of a chain toward the point where the branch stops
// existing, by bisection between the last good alpha and `beyond`.
void refine_end(const KnotPresentation& k, const TraceConfig& cfg, Chain& chain, bool at_back,
                double beyond) {
  Node cur = at_back ? chain.back() : chain.front();
  double good = cur.alpha;
  double bad = beyond;
  std::vector<Node> found;
  for (int it = 0; it < 60 && std::abs(bad - good) > 1e-10; ++it) {
    const double mid = 0.5 * (good + bad);
    RepPoint r;
    if (polish_at_alpha(k, mid, cur.rep.assignment, cfg, r) && r.irreducible &&
        assignment_distance(r.assignment, cur.rep.assignment) < kLinkRadius) {
      cur = {mid, std::move(r)};
      found.push_back(cur);
      good = mid;
    } else {
      bad = mid;
    }
  }
  if (at_back) {
    chain.insert(chain.end(), found.begin(), found.end());
  } else {
    chain.insert(chain.begin(), found.rbegin(), found.rend());
  }
}

double unwrap_near(double beta, double ref) {
  return beta + kTwoPi * std::round((ref - beta) / kTwoPi);
}

void densify(const KnotPresentation& k, const TraceConfig& cfg, Chain& chain) {
  Chain out;
  out.push_back(chain.front());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    std::vector<Node> stack{chain[i + 1]};
    int budget = 4096;
    while (!stack.empty()) {
      const Node& a = out.back();
      const Node b = stack.back();
      const double db = unwrap_near(b.rep.beta, a.rep.beta) - a.rep.beta;
      const double len = std::hypot(b.alpha - a.alpha, db);
      if (len < cfg.max_curve_step * 0.98 || budget-- <= 0) {
        out.push_back(b);
        stack.pop_back();
        continue;
      }
      const double mid = 0.5 * (a.alpha + b.alpha);
      RepPoint r;
      if (!polish_at_alpha(k, mid, a.rep.assignment, cfg, r) || !r.irreducible) {
        out.push_back(b);
        stack.pop_back();
        continue;
      }
      stack.push_back({mid, std::move(r)});
    }
  }
  chain = std::move(out);
}

double end_commutator(const Node& n) { return max_commutator(n.rep.assignment); }

}  // namespace

TraceResult trace_branches(const KnotPresentation& k, const TraceConfig& cfg) {
  validate(cfg);
  validate_peripheral(k);
  const double range = cfg.alpha_max - cfg.alpha_min;
  const std::size_t K = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(range / cfg.step)));
  std::vector<double> alphas(K + 1);
  for (std::size_t i = 0; i <= K; ++i) alphas[i] = cfg.alpha_min + range * static_cast<double>(i) / K;
  alphas[K] = cfg.alpha_max;

  std::vector<AlphaCensus> census(K + 1);
  parallel_for(K + 1, cfg.threads, [&](std::size_t i) { census[i] = census_at_alpha(k, alphas[i], cfg, i); });

  std::vector<std::vector<RepPoint>> irr(K + 1);
  std::vector<RepPoint> abelian;
  for (std::size_t i = 0; i <= K; ++i) {
    for (RepPoint& r : census[i].reps) {
      if (r.irreducible) {
        irr[i].push_back(std::move(r));
      } else if (abelian.size() == i) {
        abelian.push_back(std::move(r));
      }
    }
    if (abelian.size() == i) abelian.push_back(make_rep_point(k, abelian_rep(k, alphas[i])));
  }

  // Fill census gaps by continuation from neighbouring grid points.
  for (int pass = 0; pass < 4; ++pass) {
    bool added = false;
    for (int dir : {1, -1}) {
      for (std::size_t step = 0; step < K; ++step) {
        const std::size_t from = dir > 0 ? step : K - step;
        const std::size_t to = dir > 0 ? from + 1 : from - 1;
        const std::vector<RepPoint> src = irr[from];
        for (const RepPoint& r : src) {
          RepPoint out;
          if (polish_at_alpha(k, alphas[to], r.assignment, cfg, out) && out.irreducible &&
              assignment_distance(out.assignment, r.assignment) < kLinkRadius && !contains(irr[to], out)) {
            irr[to].push_back(std::move(out));
            added = true;
          }
        }
      }
    }
    if (!added) break;
  }

  // Link consecutive grid points by greedy nearest pairs.
  std::vector<std::vector<int>> next(K + 1);
  std::vector<std::vector<bool>> has_prev(K + 1);
  for (std::size_t i = 0; i <= K; ++i) {
    next[i].assign(irr[i].size(), -1);
    has_prev[i].assign(irr[i].size(), false);
  }
  for (std::size_t i = 0; i < K; ++i) {
    struct Pair {
      double d;
      std::size_t a, b;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < irr[i].size(); ++a) {
      for (std::size_t b = 0; b < irr[i + 1].size(); ++b) {
        const double d = assignment_distance(irr[i][a].assignment, irr[i + 1][b].assignment);
        if (d < kLinkRadius) pairs.push_back({d, a, b});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
      return std::tie(x.d, x.a, x.b) < std::tie(y.d, y.a, y.b);
    });
    for (const Pair& p : pairs) {
      if (next[i][p.a] >= 0 || has_prev[i + 1][p.b]) continue;
      next[i][p.a] = static_cast<int>(p.b);
      has_prev[i + 1][p.b] = true;
    }
  }

  std::vector<Chain> chains;
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // first, last grid index
  for (std::size_t i = 0; i <= K; ++i) {
    for (std::size_t a = 0; a < irr[i].size(); ++a) {
      if (has_prev[i][a]) continue;
      Chain c;
      std::size_t gi = i;
      std::size_t idx = a;
      for (;;) {
        c.push_back({alphas[gi], irr[gi][idx]});
        if (gi == K || next[gi][idx] < 0) break;
        idx = static_cast<std::size_t>(next[gi][idx]);
        ++gi;
      }
      spans.emplace_back(i, gi);
      chains.push_back(std::move(c));
    }
  }

  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto [first, last] = spans[c];
    if (first > 0) refine_end(k, cfg, chains[c], false, alphas[first - 1]);
    if (last < K) refine_end(k, cfg, chains[c], true, alphas[last + 1]);
  }

  // Join chains meeting at a fold in alpha (ends close in assignment space
  // and away from the reducible locus).
  std::vector<bool> closed(chains.size(), false);
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < chains.size() && !merged; ++a) {
      if (chains[a].empty() || closed[a]) continue;
      for (std::size_t b = a; b < chains.size() && !merged; ++b) {
        if (chains[b].empty() || closed[b]) continue;
        for (int ea = 0; ea < 2 && !merged; ++ea) {
          for (int eb = 0; eb < 2 && !merged; ++eb) {
            if (a == b && ea == eb) continue;
            const Node& na = ea == 0 ? chains[a].front() : chains[a].back();
            const Node& nb = eb == 0 ? chains[b].front() : chains[b].back();
            if (end_commutator(na) < 1e-3 || end_commutator(nb) < 1e-3) continue;
            if (assignment_distance(na.rep.assignment, nb.rep.assignment) > 1e-3) continue;
            if (a == b) {
              if (chains[a].size() > 2) {
                chains[a].push_back(chains[a].front());
                closed[a] = true;
                merged = true;
              }
              continue;
            }
            Chain ca = chains[a];
            Chain cb = chains[b];
            if (ea == 0) std::reverse(ca.begin(), ca.end());
            if (eb == 1) std::reverse(cb.begin(), cb.end());
            ca.insert(ca.end(), cb.begin(), cb.end());
            chains[a] = std::move(ca);
            chains[b].clear();
            merged = true;
          }
        }
      }
    }
  }

  std::vector<std::pair<Chain, bool>> kept;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (chains[c].size() >= 2) kept.emplace_back(std::move(chains[c]), closed[c]);
  }
  for (auto& [chain, is_closed] : kept) densify(k, cfg, chain);
  std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
    const Node& a = x.first.front();
    const Node& b = y.first.front();
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.rep.beta < b.rep.beta;
  });

  TraceResult res;
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Chain& chain = kept[c].first;
    std::vector<Planar> raw;
    double prev = chain.front().rep.beta;
    std::vector<RepPoint> reps;
    for (const Node& n : chain) {
      const double b = unwrap_near(n.rep.beta, prev);
      raw.push_back({n.rep.alpha, b});
      prev = b;
      reps.push_back(n.rep);
    }
    res.curves.push_back(PillowCurve::from_raw(raw, kept[c].second,
                                               k.label + "/irreducible/" + std::to_string(c)));
    res.branch_reps.push_back(std::move(reps));
  }
  std::vector<Planar> ab;
  for (std::size_t i = 0; i <= K; ++i) {
    ab.push_back({abelian[i].alpha, unwrap_near(abelian[i].beta, 0.0)});
  }
  res.curves.push_back(PillowCurve::from_raw(ab, false, k.label + "/abelian"));
  return res;
}

std::vector<PillowCurve> trace_image(const KnotPresentation& k, const TraceConfig& cfg) {
  return trace_branches(k, cfg).curves;
}

// --- closed form -----------------------------------------------------------

std::vector<ClosedFormArc> torus_knot_closed_form(int p, int q) {
  const KnotPresentation k = torus_knot(p, q);  // validates coprimality
  long u = 0;
  long v = 0;
  for (int g : k.meridian) (std::abs(g) == 1 ? u : v) += g > 0 ? 1 : -1;
  auto fold = [](double t) { return std::acos(std::clamp(std::cos(t), -1.0, 1.0)); };
  const int ap = std::abs(p);
  const int aq = std::abs(q);
  std::vector<ClosedFormArc> arcs;
  for (int kx = 1; kx < ap; ++kx) {
    for (int jy = 1; jy < aq; ++jy) {
      if ((kx - jy) % 2 != 0) continue;
      ClosedFormArc arc;
      arc.theta_x = kPi * kx / ap;
      arc.theta_y = kPi * jy / aq;
      arc.c = kx % 2 == 0 ? 0.0 : kPi;
      arc.slope = -static_cast<long>(p) * q;
      const double A = static_cast<double>(u) * arc.theta_x;
      const double B = static_cast<double>(v) * arc.theta_y;
      const double f1 = fold(A + B);
      const double f2 = fold(A - B);
      arc.alpha_lo = std::min(f1, f2);
      arc.alpha_hi = std::max(f1, f2);
      if (arc.alpha_hi - arc.alpha_lo > 1e-12) arcs.push_back(arc);
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const ClosedFormArc& a, const ClosedFormArc& b) {
    return std::tie(a.alpha_lo, a.alpha_hi, a.c) < std::tie(b.alpha_lo, b.alpha_hi, b.c);
  });
  return arcs;
}

PillowCurve closed_form_curve(const ClosedFormArc& arc, double spacing) {
  const double len = (arc.alpha_hi - arc.alpha_lo) * std::hypot(1.0, static_cast<double>(arc.slope));
  const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
  std::vector<Planar> raw;
  raw.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double a = i == n ? arc.alpha_hi : arc.alpha_lo + (arc.alpha_hi - arc.alpha_lo) * i / n;
    raw.push_back({a, arc.beta(a)});
  }
  return PillowCurve::from_raw(raw, false, "closed-form");
}

Json to_json(const RepPoint& r) {
  Json gens = Json::array();
  for (const Su2Elem& g : r.assignment) gens.push_back(to_json(g));
  Json j;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["irreducible"] = r.irreducible;
  j["residual"] = r.residual;
  j["assignment"] = std::move(gens);
  return j;
}

bool is_irreducible_label(const std::string& label) {
  return label.find("/irreducible") != std::string::npos;
}

PillowCurve close_along_abelian(const PillowCurve& arc, double tol) {
  if (arc.size() < 2) throw Error(ErrorKind::EmptyInput, "arc has fewer than two points");
  std::vector<Planar> raw = arc.cover_path();
  const Planar a = raw.front();
  const Planar b = raw.back();
  for (const Planar& e : {a, b}) {
    if (std::abs(std::remainder(e[1], kTwoPi)) > tol) {
      throw Error(ErrorKind::BadEndpoints, "arc endpoint beta " + std::to_string(e[1]) + " is not on the abelian locus");
    }
  }
  const double beta = b[1] - std::remainder(b[1], kTwoPi);
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(a[0] - b[0]) / (0.9 * kDefaultMaxStep))));
  raw.back()[1] = beta;
  for (int i = 1; i <= n; ++i) raw.push_back({b[0] + (a[0] - b[0]) * i / n, beta});
  raw.front()[1] = a[1] - std::remainder(a[1], kTwoPi);
  return PillowCurve::from_raw(raw, true, arc.label() + "+abelian");
}

double min_distance_to_cut_lines(const std::vector<PillowCurve>& curves) {
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const PillowCurve& c : curves) {
    if (!is_irreducible_label(c.label()) || c.empty()) continue;
    any = true;
    for (const CylinderPoint& p : c.points()) best = std::min(best, std::min(p.alpha, kPi - p.alpha));
  }
  if (!any) throw Error(ErrorKind::EmptyInput, "no irreducible curves");
  return best;
}

}  // namespace pillow
