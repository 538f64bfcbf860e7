#pragma once

/**
 * @file surgery.hpp
 * @brief Forward-chaining calculus of Floer vanishing facts for surgeries.
 *
 * Manifold terms are atoms (integer homology spheres), S^3, S^2xS^1 and
 * surgeries B_s(K) with slope s = 1/n or 0 on a knot K in B.  Knots are
 * symbols with an optional stack of (2,1)-cables.  The Floer group of a term
 * is I for homology spheres and I^w for 0-surgeries and S^2xS^1; facts only
 * record vanishing, non-vanishing, isomorphism and diffeomorphism.
 *
 * Rules:
 *   R1 exact triangle: for the triangle {B_{1/n}(K), B_{1/(n+1)}(K), B_0(K)},
 *      a vanishing 0-surgery makes the other two isomorphic, and two
 *      vanishing vertices make the third vanish.
 *   R2 cable identity: B_{1/4}(K) is diffeomorphic to B_1(K_{2,1}).
 *   R3 non-vanishing: a knot with irreducible, boundary-incompressible
 *      exterior has I^w(B_0(K_{2,1})) != 0; a homology-generating knot whose
 *      0-surgery is S^2xS^1 in a base other than S^3 has such an exterior.
 *   R4 transport of (non-)vanishing along isomorphisms and diffeomorphisms.
 */

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pillow/io.hpp"

namespace pillow::surgery {

struct Knot {
  std::string name;
  int cables = 0;  // number of (2,1)-cables applied

  bool operator==(const Knot&) const = default;
};

Knot cable21(Knot k);

struct Slope {
  long num = 0;  // 0 or 1
  long den = 1;  // n for 1/n

  bool operator==(const Slope&) const = default;
};

Slope slope_zero();
Slope slope_inv(long n);  // 1/n

struct Term {
  enum class Kind { Atom, S3, S2xS1, Surg };
  Kind kind = Kind::Atom;
  std::string name;                  // Atom
  std::shared_ptr<const Term> base;  // Surg
  Knot knot;                         // Surg
  Slope slope;                       // Surg
};

Term atom(std::string name);
Term s3();
Term s2xs1();
// B_{1/0}(K) normalizes to B.
Term surg(const Term& base, const Knot& k, Slope s);

bool uses_w(const Term& t);  // I^w rather than I
std::string render(const Knot& k);
std::string render(const Slope& s);
std::string render(const Term& t);
std::string render_group(const Term& t);  // "I(...)" or "I^w(...)"

bool same(const Term& a, const Term& b);

// "Y", "S3", "S2xS1", "Y_0(K)", "Y_{1/4}(K)", "Y_{-1}(K_{2,1})", chained
// surgeries "Y_1(K)_0(J)".  Throws Parse or Malformed.
Term parse_term(std::string_view s);
Knot parse_knot(std::string_view s);

enum class Claim { Vanishes, NonVanishes, IsoTo, DiffeoTo, Flag, Contradiction };

inline constexpr const char* kFlagIrreducible = "irreducible_exterior";
inline constexpr const char* kFlagIncompressible = "boundary_incompressible";
inline constexpr const char* kFlagGenerates = "generates_homology";

struct Fact {
  Claim claim = Claim::Vanishes;
  Term subject;
  std::optional<Term> other;  // IsoTo, DiffeoTo
  Knot knot;                  // Flag
  std::string flag;           // Flag
};

Fact vanishes(const Term& t);
Fact non_vanishes(const Term& t);
Fact iso_to(const Term& a, const Term& b);
Fact diffeo_to(const Term& a, const Term& b);
Fact knot_flag(const Knot& k, std::string flag);
Fact contradiction(const Term& t);

// Unique canonical text of a fact; also its key in the store.
std::string render(const Fact& f);

inline constexpr const char* kRuleAxiom = "axiom";
inline constexpr const char* kRulePreloaded = "preloaded";
inline constexpr const char* kRuleTriangleIso = "R1 exact triangle (iso)";
inline constexpr const char* kRuleTriangleCollapse = "R1 exact triangle (collapse)";
inline constexpr const char* kRuleCable = "R2 cable identity";
inline constexpr const char* kRuleNonVanishing = "R3 non-vanishing";
inline constexpr const char* kRulePedigree = "R3 exterior pedigree";
inline constexpr const char* kRuleTransport = "R4 transport";
inline constexpr const char* kRuleContradiction = "contradiction";

struct Derivation {
  std::string rule;
  std::vector<std::string> premises;  // keys
  std::string detail;
  int round = 0;  // 0 for axioms and preloads
};

struct Entry {
  Fact fact;
  Derivation derivation;
};

inline constexpr int kDefaultWindow = 8;

class Store {
 public:
  // Holds the preloaded I^w(S^2xS^1) = 0.
  Store();

  // Throws Malformed for ill-formed facts (non-primitive claims, derived-only
  // claims, slopes other than 1/n and 0).
  void assert_axiom(const Fact& f, std::string note = {});

  // Closes the store under the rules with n in [-window, window].  Returns
  // the number of new facts.  Throws WindowTooSmall when a term in the store
  // or a rule needs a slope outside the window.
  int saturate(int window = kDefaultWindow);

  const std::map<std::string, Entry>& entries() const { return entries_; }
  const Entry* find(const std::string& key) const;
  // Key of the first contradiction in canonical order, if any.
  std::optional<std::string> contradiction() const;
  int rounds() const { return rounds_; }

 private:
  bool add(const Fact& f, Derivation d);

  std::map<std::string, Entry> entries_;
  int rounds_ = 0;
};

// Numbered derivation of a fact, premises first.  Throws UnknownFact.
std::string explain(const Store& s, const std::string& key);

struct ReplayReport {
  bool ok = true;
  int checked = 0;
  std::string failure;
};

// Re-validates every derived fact against the rule definitions.
ReplayReport replay(const Store& s, int window = kDefaultWindow);

// {"label": ..., "window": N, "knots": [{"name", "flags": [...]}],
//  "facts": [{"claim": "vanishes"|"non_vanishes"|"iso"|"diffeo",
//             "subject": term, "other": term, "note": ...}]}
Store load_axioms(const Json& j);

struct RunResult {
  Store store;
  int window = kDefaultWindow;
  std::optional<std::string> contradiction;
  ReplayReport replay;
  std::string label;
};

// window <= 0 uses the file's window or the default.
RunResult run(const Json& axioms, int window = 0);

Json to_json(const Store& s);
Json derivation_tree(const Store& s, const std::string& key);
Json to_json(const RunResult& r);

}  // namespace pillow::surgery
