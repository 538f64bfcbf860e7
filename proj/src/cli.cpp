#include "pillow/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>

#include "CLI11.hpp"
#include "pillow/charvar.hpp"
#include "pillow/error.hpp"
#include "pillow/io.hpp"
#include "pillow/knot_groups.hpp"
#include "pillow/shear.hpp"
#include "pillow/splice.hpp"
#include "pillow/surgery.hpp"
#include "pillow/svg.hpp"

namespace pillow {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  double tol = 0.0;  // 0: the module default
  double step = 0.005;
  std::string out = "out";
  std::string format = "both";
  unsigned threads = 0;
};

class Artifacts {
 public:
  Artifacts(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  bool json() const { return g_.format != "svg"; }
  bool svg() const { return g_.format != "json"; }

  void write(const std::string& name, const std::string& contents) {
    const std::string path = (std::filesystem::path(g_.out) / name).string();
    write_file_atomic(path, contents);
    out_ << "wrote " << path << "\n";
  }
  void write_json(const std::string& name, const Json& j) {
    if (json()) write(name, dump(j));
  }
  void write_svg(const std::string& name, const std::string& svg) {
    if (this->svg()) write(name, svg);
  }

 private:
  const Globals& g_;
  std::ostream& out_;
};

TraceConfig trace_config(const Globals& g) {
  TraceConfig cfg;
  cfg.step = g.step;
  cfg.rng_seed = g.seed;
  cfg.threads = g.threads;
  if (g.tol > 0.0) cfg.residual_tol = g.tol;
  validate(cfg);
  return cfg;
}

Json config_json(const Globals& g, const TraceConfig& cfg) {
  Json j;
  j["seed"] = g.seed;
  j["step"] = cfg.step;
  j["residual_tol"] = cfg.residual_tol;
  j["restarts"] = cfg.restarts;
  return j;
}

std::string fixed(double x) { return fmt::format("{:.6f}", x); }

int cmd_charvar(const Globals& g, const std::string& knot, std::ostream& out) {
  const KnotPresentation k = resolve_knot(knot);
  const TraceConfig cfg = trace_config(g);
  const TraceResult tr = trace_branches(k, cfg);
  Artifacts art(g, out);

  Json curves = Json::array();
  for (const PillowCurve& c : tr.curves) curves.push_back(to_json(c));
  Json doc;
  doc["knot"] = to_json(k);
  doc["config"] = config_json(g, cfg);
  doc["curves"] = std::move(curves);
  art.write_json("curves.json", doc);

  Json branches = Json::array();
  for (std::size_t i = 0; i < tr.branch_reps.size(); ++i) {
    Json reps = Json::array();
    for (const RepPoint& r : tr.branch_reps[i]) reps.push_back(to_json(r));
    branches.push_back({{"label", tr.curves[i].label()}, {"reps", std::move(reps)}});
  }
  art.write_json("reps.json", {{"knot", k.label}, {"branches", std::move(branches)}});
  art.write_svg("image.svg", emit_svg(tr.curves, {}, "image of R(" + k.label + ")"));

  out << "knot " << k.label << ": " << tr.branch_reps.size() << " irreducible arc(s)\n";
  for (std::size_t i = 0; i < tr.branch_reps.size(); ++i) {
    const PillowCurve& c = tr.curves[i];
    double lo = kPi;
    double hi = 0.0;
    for (const CylinderPoint& p : c.points()) {
      lo = std::min(lo, p.alpha);
      hi = std::max(hi, p.alpha);
    }
    out << "  " << c.label() << ": alpha in [" << fixed(lo) << ", " << fixed(hi) << "]";
    try {
      const int cls = homology_class_in_cylinder(close_along_abelian(c));
      out << ", class closed along the abelian locus " << cls;
    } catch (const Error& e) {
      out << ", not closable (" << e.what() << ")";
    }
    out << "\n";
  }
  if (!tr.branch_reps.empty()) out << "min distance to cut lines " << fixed(min_distance_to_cut_lines(tr.curves)) << "\n";
  return 0;
}

ShearProgram read_program(const std::string& path) {
  if (path.empty()) return {};
  return program_from_json(read_json_file(path));
}

int cmd_shear_fit(const Globals& g, const std::string& target, int budget, int degree, std::ostream& out) {
  const PillowCurve tgt = read_curve_json(target);
  FitOptions opts;
  opts.budget = budget;
  opts.degree = degree;
  if (g.tol > 0.0) opts.tol = g.tol;
  const FitResult r = fit_program_to_path(tgt, opts);
  Artifacts art(g, out);
  art.write_json("fit.json", to_json(r));
  art.write_json("program.json", to_json(r.program));
  PillowCurve image = apply_program(r.program, path_P_to_Q(path::Straight{}));
  image.set_label("image of c0");
  PillowCurve t = tgt;
  if (t.label().empty()) t.set_label("target");
  art.write_svg("fit.svg", emit_svg({t, image}, {}, "shear fit"));
  out << "fit: " << r.program.steps.size() << " step(s), distance " << fmt::format("{:.3e}", r.distance) << ", "
      << (r.status == FitStatus::Ok ? "ok" : "BudgetExceeded") << "\n";
  if (!r.target_embedded) out << "target is not embedded: " << r.target_problem << "\n";
  return r.status == FitStatus::Ok ? 0 : 2;
}

int cmd_shear_apply(const Globals& g, const std::string& program, const std::string& curve, std::ostream& out) {
  const ShearProgram prog = read_program(program);
  const PillowCurve c = read_curve_json(curve);
  const PillowCurve img = apply_program(prog, c);
  Artifacts art(g, out);
  art.write_json("curve.json", to_json(img));
  art.write_svg("curve.svg", emit_svg({c, img}, {}, "shear image"));
  out << "image: " << img.size() << " points\n";
  return 0;
}

int cmd_shear_critical(const Globals& g, const std::string& knot, const std::string& program, bool expect_nonempty,
                       std::ostream& out) {
  const KnotPresentation k = resolve_knot(knot);
  const ShearProgram prog = read_program(program);
  const TraceConfig cfg = trace_config(g);
  const PerturbedCriticalSet s = perturbed_critical_set(k, prog, cfg);
  Artifacts art(g, out);
  art.write_json("critical.json", to_json(s));
  std::vector<PillowCurve> curves = s.image;
  curves.push_back(s.c_prime);
  std::vector<SvgMark> marks;
  for (const CriticalPoint& c : s.points) marks.push_back({{c.rep.alpha, c.rep.beta}, c.source});
  art.write_svg("critical.svg", emit_svg(curves, marks, "R(" + k.label + " | c')"));
  out << "critical set: " << s.points.size() << " point(s), each of multiplicity 2\n";
  for (const CriticalPoint& c : s.points) {
    out << "  (" << fixed(c.rep.alpha) << ", " << fixed(c.rep.beta) << ") from " << c.source << "\n";
  }
  return expect_nonempty && s.points.empty() ? 2 : 0;
}

int cmd_splice(const Globals& g, const std::string& left, const std::string& right, bool expect_nonempty,
               std::ostream& out, std::ostream& err) {
  const SpliceProblem p = splice(resolve_knot(left), resolve_knot(right));
  const TraceConfig cfg = trace_config(g);
  Artifacts art(g, out);
  SpliceResult r;
  try {
    r = find_splice_reps(p, cfg);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoIntersections) throw;
    Json j{{"count", 0}, {"error", e.what()}, {"note", casson_note(p)}, {"reps", Json::array()}};
    art.write_json("splice.json", j);
    out << "splice " << p.left.label << " / " << p.right.label << ": no witnesses\n";
    err << e.what() << "\n";
    return expect_nonempty ? 2 : 0;
  }
  art.write_json("splice.json", to_json(r));
  std::vector<PillowCurve> curves = r.left_image;
  for (const PillowCurve& c : r.right_transposed) curves.push_back(c);
  std::vector<SvgMark> marks;
  for (std::size_t i = 0; i < r.reps.size(); ++i) marks.push_back({r.reps[i].point, "witness " + std::to_string(i)});
  art.write_svg("splice.svg", emit_svg(curves, marks, "splice of " + p.left.label + " and " + p.right.label));
  out << "splice " << p.left.label << " / " << p.right.label << ": " << r.reps.size() << " irreducible witness(es)\n";
  for (const SpliceRep& s : r.reps) {
    out << "  (" << fixed(s.point.alpha) << ", " << fixed(s.point.beta) << ") residual "
        << fmt::format("{:.1e}", s.residual) << "\n";
  }
  if (!r.note.empty()) out << "note: " << r.note << "\n";
  return 0;
}

int cmd_triangle_run(const Globals& g, const std::string& axioms, int window, std::ostream& out) {
  const surgery::RunResult r = surgery::run(read_json_file(axioms), window);
  std::string text = "axioms: " + r.label + "\nwindow: " + std::to_string(r.window) + "\n";
  if (r.contradiction) {
    text += surgery::explain(r.store, *r.contradiction);
  } else {
    text += "no contradiction after " + std::to_string(r.store.rounds()) + " round(s), " +
            std::to_string(r.store.entries().size()) + " fact(s)\n";
  }
  text += "replay: " + std::string(r.replay.ok ? "ok" : "FAILED " + r.replay.failure) + " (" +
          std::to_string(r.replay.checked) + " derived facts checked)\n";
  out << text;
  Artifacts art(g, out);
  art.write("transcript.txt", text);
  art.write_json("derivation.json", to_json(r));
  return r.replay.ok ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pillowcase images of knot groups, shearing maps, splice witnesses and a surgery calculus.", "pillow"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed for multistart solves")->envname("PILLOW_SEED")->capture_default_str();
  app.add_option("--tol", g.tol, "acceptance tolerance (0: module default)")->envname("PILLOW_TOL")->capture_default_str();
  app.add_option("--step", g.step, "alpha grid step for tracing")->envname("PILLOW_STEP")->capture_default_str();
  app.add_option("--out", g.out, "output directory")->envname("PILLOW_OUT")->capture_default_str();
  app.add_option("--format", g.format, "artifacts to write")
      ->envname("PILLOW_FORMAT")
      ->check(CLI::IsMember({"json", "svg", "both"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0: hardware)")->envname("PILLOW_THREADS")->capture_default_str();

  std::string knot;
  auto* charvar = app.add_subcommand("charvar", "trace the pillowcase image of a knot group");
  charvar->add_option("--knot", knot, "trefoil | unknot | torus:p,q | presentation.json")->required();
  charvar->fallthrough();

  auto* shear = app.add_subcommand("shear", "shearing maps of the pillowcase");
  shear->require_subcommand(1);
  shear->fallthrough();
  std::string target;
  std::string program;
  std::string curve;
  int budget = 40;
  int degree = 32;
  bool expect_nonempty = false;
  auto* fit = shear->add_subcommand("fit", "fit a shear program taking c0 to a target path");
  fit->add_option("--target", target, "target curve JSON")->required();
  fit->add_option("--budget", budget, "maximum number of steps")->capture_default_str()->check(CLI::NonNegativeNumber);
  fit->add_option("--degree", degree, "cosine degree per step")->capture_default_str()->check(CLI::Range(1, 256));
  fit->fallthrough();
  auto* apply = shear->add_subcommand("apply", "apply a shear program to a curve");
  apply->add_option("--program", program, "program JSON")->required();
  apply->add_option("--curve", curve, "curve JSON")->required();
  apply->fallthrough();
  auto* critical = shear->add_subcommand("critical", "critical set R(K | c') for c' the image of c0");
  critical->add_option("--knot", knot, "trefoil | unknot | torus:p,q | presentation.json")->required();
  critical->add_option("--program", program, "program JSON (default: empty program)");
  critical->add_flag("--expect-nonempty", expect_nonempty, "exit 2 when the set is empty");
  critical->fallthrough();

  std::string left;
  std::string right;
  auto* spl = app.add_subcommand("splice", "irreducible representations of a splice");
  spl->add_option("--left", left, "left knot")->required();
  spl->add_option("--right", right, "right knot")->required();
  spl->add_flag("--expect-nonempty", expect_nonempty, "exit 2 when there are no witnesses");
  spl->fallthrough();

  std::string axioms;
  int window = 0;
  auto* triangle = app.add_subcommand("triangle", "surgery exact triangle calculus");
  triangle->require_subcommand(1);
  triangle->fallthrough();
  auto* trun = triangle->add_subcommand("run", "saturate an axiom file and explain any contradiction");
  trun->add_option("--axioms", axioms, "axiom JSON")->required();
  trun->add_option("--window", window, "slope window N (0: file value or 8)")->check(CLI::NonNegativeNumber);
  trun->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (charvar->parsed()) return cmd_charvar(g, knot, out);
    if (fit->parsed()) return cmd_shear_fit(g, target, budget, degree, out);
    if (apply->parsed()) return cmd_shear_apply(g, program, curve, out);
    if (critical->parsed()) return cmd_shear_critical(g, knot, program, expect_nonempty, out);
    if (spl->parsed()) return cmd_splice(g, left, right, expect_nonempty, out, err);
    if (trun->parsed()) return cmd_triangle_run(g, axioms, window, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace pillow
