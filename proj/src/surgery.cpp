#include "pillow/surgery.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "pillow/error.hpp"

namespace pillow::surgery {

Knot cable21(Knot k) {
  ++k.cables;
  return k;
}

Slope slope_zero() { return {0, 1}; }
Slope slope_inv(long n) { return {1, n}; }

Term atom(std::string name) {
  Term t;
  t.kind = Term::Kind::Atom;
  t.name = std::move(name);
  return t;
}

Term s3() {
  Term t;
  t.kind = Term::Kind::S3;
  return t;
}

Term s2xs1() {
  Term t;
  t.kind = Term::Kind::S2xS1;
  return t;
}

Term surg(const Term& base, const Knot& k, Slope s) {
  if (s.num == 1 && s.den == 0) return base;
  Term t;
  t.kind = Term::Kind::Surg;
  t.base = std::make_shared<const Term>(base);
  t.knot = k;
  t.slope = s;
  return t;
}

bool uses_w(const Term& t) {
  return t.kind == Term::Kind::S2xS1 || (t.kind == Term::Kind::Surg && t.slope.num == 0);
}

std::string render(const Knot& k) {
  std::string s = k.name;
  for (int i = 0; i < k.cables; ++i) s += "_{2,1}";
  return s;
}

std::string render(const Slope& s) {
  if (s.num == 0) return "0";
  if (s.den == 1) return "1";
  if (s.den == -1) return "-1";
  if (s.den < 0) return "-1/" + std::to_string(-s.den);
  return "1/" + std::to_string(s.den);
}

std::string render(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Atom:
      return t.name;
    case Term::Kind::S3:
      return "S^3";
    case Term::Kind::S2xS1:
      return "S^2xS^1";
    case Term::Kind::Surg: {
      std::string sl = render(t.slope);
      if (sl.size() > 1) sl = "{" + sl + "}";
      return render(*t.base) + "_" + sl + "(" + render(t.knot) + ")";
    }
  }
  return {};
}

std::string render_group(const Term& t) { return (uses_w(t) ? "I^w(" : "I(") + render(t) + ")"; }

bool same(const Term& a, const Term& b) { return render(a) == render(b); }

// --- parsing ----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Term term() {
    Term t = base();
    while (peek() == '_') {
      ++i_;
      const Slope sl = slope();
      expect('(');
      const Knot k = knot();
      expect(')');
      t = surg(t, k, sl);
    }
    return t;
  }

  Knot knot() {
    Knot k;
    k.name = ident();
    while (s_.substr(i_, 6) == "_{2,1}") {
      i_ += 6;
      ++k.cables;
    }
    return k;
  }

  void finish() {
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(s_.substr(i_)) + "'");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "term '" + std::string(s_) + "': " + what);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  std::string ident() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '\'')) ++i_;
    if (i_ == start || !std::isalpha(static_cast<unsigned char>(s_[start]))) fail("expected a name");
    return std::string(s_.substr(start, i_ - start));
  }

  Term base() {
    skip();
    for (const auto& [text, make] : {std::pair{std::string_view("S^2xS^1"), &s2xs1}, std::pair{std::string_view("S^3"), &s3}}) {
      if (s_.substr(i_, text.size()) == text) {
        i_ += text.size();
        return make();
      }
    }
    const std::string id = ident();
    if (id == "S3") return s3();
    if (id == "S2xS1") return s2xs1();
    return atom(id);
  }

  long integer() {
    skip();
    const std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    const std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) fail("expected an integer");
    return std::stol(std::string(s_.substr(start, i_ - start)));
  }

  Slope slope() {
    const bool braced = peek() == '{';
    long num = 0;
    long den = 1;
    if (braced) {
      ++i_;
      num = integer();
      if (peek() == '/') {
        ++i_;
        den = integer();
      }
      expect('}');
    } else {
      skip();
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected a slope");
      num = s_[i_++] - '0';
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0 && den != 0) return slope_zero();
    if (num == 1 || num == -1) return slope_inv(num * den);
    throw Error(ErrorKind::Malformed,
                "slope " + std::to_string(num) + "/" + std::to_string(den) + " is not 1/n or 0");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Term parse_term(std::string_view s) {
  Parser p(s);
  Term t = p.term();
  p.finish();
  return t;
}

Knot parse_knot(std::string_view s) {
  Parser p(s);
  Knot k = p.knot();
  p.finish();
  return k;
}

// --- facts ------------------------------------------------------------------

Fact vanishes(const Term& t) { return {Claim::Vanishes, t, std::nullopt, {}, {}}; }
Fact non_vanishes(const Term& t) { return {Claim::NonVanishes, t, std::nullopt, {}, {}}; }
Fact iso_to(const Term& a, const Term& b) { return {Claim::IsoTo, a, b, {}, {}}; }
Fact diffeo_to(const Term& a, const Term& b) { return {Claim::DiffeoTo, a, b, {}, {}}; }
Fact knot_flag(const Knot& k, std::string flag) { return {Claim::Flag, atom(""), std::nullopt, k, std::move(flag)}; }
Fact contradiction(const Term& t) { return {Claim::Contradiction, t, std::nullopt, {}, {}}; }

std::string render(const Fact& f) {
  switch (f.claim) {
    case Claim::Vanishes:
      return render_group(f.subject) + " = 0";
    case Claim::NonVanishes:
      return render_group(f.subject) + " != 0";
    case Claim::IsoTo:
      return render_group(f.subject) + " ~= " + render_group(*f.other);
    case Claim::DiffeoTo:
      return render(f.subject) + " diffeo " + render(*f.other);
    case Claim::Flag:
      return "knot " + render(f.knot) + ": " + f.flag;
    case Claim::Contradiction:
      return "CONTRADICTION: " + render_group(f.subject) + " = 0 and != 0";
  }
  return {};
}

namespace {

std::string reverse_key(const Fact& f) {
  if (f.claim == Claim::IsoTo) return render(iso_to(*f.other, f.subject));
  if (f.claim == Claim::DiffeoTo) return render(diffeo_to(*f.other, f.subject));
  return {};
}

bool valid_flag(const std::string& f) {
  return f == kFlagIrreducible || f == kFlagIncompressible || f == kFlagGenerates;
}

// Largest |n| among slopes 1/n in a term.
long max_slope_den(const Term& t) {
  if (t.kind != Term::Kind::Surg) return 0;
  return std::max(std::abs(t.slope.den), max_slope_den(*t.base));
}

void collect_pairs(const Term& t, std::vector<std::pair<Term, Knot>>& out) {
  if (t.kind != Term::Kind::Surg) return;
  collect_pairs(*t.base, out);
  const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& p) {
    return same(p.first, *t.base) && p.second == t.knot;
  });
  if (!seen) out.emplace_back(*t.base, t.knot);
}

std::vector<Term> fact_terms(const Fact& f) {
  std::vector<Term> ts;
  if (f.claim != Claim::Flag) ts.push_back(f.subject);
  if (f.other) ts.push_back(*f.other);
  return ts;
}

std::array<Term, 3> triangle(const Term& b, const Knot& k, long n) {
  return {surg(b, k, slope_inv(n)), surg(b, k, slope_inv(n + 1)), surg(b, k, slope_zero())};
}

std::string n_detail(long n) { return "n = " + std::to_string(n); }

}  // namespace

Store::Store() { add(vanishes(s2xs1()), {kRulePreloaded, {}, "I^w(S^2xS^1) vanishes", 0}); }

bool Store::add(const Fact& f, Derivation d) {
  const std::string key = render(f);
  if (entries_.count(key) != 0) return false;
  const std::string rev = reverse_key(f);
  if (!rev.empty() && entries_.count(rev) != 0) return false;
  entries_.emplace(key, Entry{f, std::move(d)});
  return true;
}

void Store::assert_axiom(const Fact& f, std::string note) {
  switch (f.claim) {
    case Claim::Vanishes:
    case Claim::NonVanishes:
      break;
    case Claim::IsoTo:
    case Claim::DiffeoTo:
      if (!f.other) throw Error(ErrorKind::Malformed, "relation axiom without a second term");
      break;
    case Claim::Flag:
      if (!valid_flag(f.flag)) throw Error(ErrorKind::Malformed, "unknown knot flag '" + f.flag + "'");
      if (f.knot.name.empty()) throw Error(ErrorKind::Malformed, "flag on an unnamed knot");
      break;
    case Claim::Contradiction:
      throw Error(ErrorKind::Malformed, "contradictions cannot be asserted");
  }
  for (const Term& t : fact_terms(f)) {
    std::function<void(const Term&)> check = [&](const Term& x) {
      if (x.kind == Term::Kind::Atom && x.name.empty()) throw Error(ErrorKind::Malformed, "unnamed atom");
      if (x.kind != Term::Kind::Surg) return;
      if (!(x.slope.num == 0 || x.slope.num == 1)) throw Error(ErrorKind::Malformed, "slope is not 1/n or 0");
      check(*x.base);
    };
    check(t);
  }
  add(f, {kRuleAxiom, {}, std::move(note), 0});
}

const Entry* Store::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> Store::contradiction() const {
  for (const auto& [key, e] : entries_) {
    if (e.fact.claim == Claim::Contradiction) return key;
  }
  return std::nullopt;
}

int Store::saturate(int window) {
  if (window < 1) throw Error(ErrorKind::WindowTooSmall, "window must be at least 1");
  for (const auto& [key, e] : entries_) {
    for (const Term& t : fact_terms(e.fact)) {
      if (max_slope_den(t) > window) {
        throw Error(ErrorKind::WindowTooSmall, "'" + key + "' uses a slope outside n in [-" +
                                                   std::to_string(window) + ", " + std::to_string(window) + "]");
      }
    }
  }
  int added = 0;
  for (;;) {
    const int round = rounds_ + 1;
    std::vector<std::pair<Fact, Derivation>> cand;
    auto has = [&](const Fact& f) { return entries_.count(render(f)) != 0; };
    auto derive = [&](Fact f, const char* rule, std::vector<std::string> prem, std::string detail) {
      cand.emplace_back(std::move(f), Derivation{rule, std::move(prem), std::move(detail), round});
    };

    std::vector<std::pair<Term, Knot>> pairs;
    for (const auto& [key, e] : entries_) {
      for (const Term& t : fact_terms(e.fact)) collect_pairs(t, pairs);
    }

    // R1, vanishing 0-surgery
    for (const auto& [key, e] : entries_) {
      const Term& t = e.fact.subject;
      if (e.fact.claim != Claim::Vanishes || t.kind != Term::Kind::Surg || t.slope.num != 0) continue;
      for (long n = -window; n < window; ++n) {
        const auto tri = triangle(*t.base, t.knot, n);
        derive(iso_to(tri[1], tri[0]), kRuleTriangleIso, {key}, n_detail(n));
      }
    }
    // R1, two vanishing vertices
    for (const auto& [b, k] : pairs) {
      for (long n = -window; n < window; ++n) {
        const auto tri = triangle(b, k, n);
        for (int v = 0; v < 3; ++v) {
          const Fact f1 = vanishes(tri[(v + 1) % 3]);
          const Fact f2 = vanishes(tri[(v + 2) % 3]);
          if (has(f1) && has(f2)) derive(vanishes(tri[v]), kRuleTriangleCollapse, {render(f1), render(f2)}, n_detail(n));
        }
      }
    }
    // R2
    for (const auto& [b, k] : pairs) {
      if (k.cables != 0) continue;
      if (window < 4) {
        throw Error(ErrorKind::WindowTooSmall, std::string(kRuleCable) + " needs slope 1/4; window is " +
                                                   std::to_string(window));
      }
      derive(diffeo_to(surg(b, k, slope_inv(4)), surg(b, cable21(k), slope_inv(1))), kRuleCable, {},
             render(k) + " in " + render(b));
    }
    // R3, pedigree of a homology-generating knot with S^2xS^1 surgery
    for (const auto& [fkey, fe] : entries_) {
      if (fe.fact.claim != Claim::Flag || fe.fact.flag != kFlagGenerates) continue;
      for (const auto& [dkey, de] : entries_) {
        if (de.fact.claim != Claim::DiffeoTo) continue;
        for (int side = 0; side < 2; ++side) {
          const Term& s = side == 0 ? de.fact.subject : *de.fact.other;
          const Term& o = side == 0 ? *de.fact.other : de.fact.subject;
          if (o.kind != Term::Kind::S2xS1 || s.kind != Term::Kind::Surg || s.slope.num != 0) continue;
          if (!(s.knot == fe.fact.knot) || s.base->kind == Term::Kind::S3) continue;
          const std::string detail = render(*s.base) + " is not S^3";
          derive(knot_flag(s.knot, kFlagIrreducible), kRulePedigree, {fkey, dkey}, detail);
          derive(knot_flag(s.knot, kFlagIncompressible), kRulePedigree, {fkey, dkey}, detail);
        }
      }
    }
    // R3
    for (const auto& [b, k] : pairs) {
      if (k.cables != 0) continue;
      const Fact irr = knot_flag(k, kFlagIrreducible);
      const Fact inc = knot_flag(k, kFlagIncompressible);
      if (has(irr) && has(inc)) {
        derive(non_vanishes(surg(b, cable21(k), slope_zero())), kRuleNonVanishing, {render(irr), render(inc)},
               "irreducible with b_1 = 1");
      }
    }
    // R4
    for (const auto& [ckey, ce] : entries_) {
      if (ce.fact.claim != Claim::Vanishes && ce.fact.claim != Claim::NonVanishes) continue;
      for (const auto& [rkey, re] : entries_) {
        if (re.fact.claim != Claim::IsoTo && re.fact.claim != Claim::DiffeoTo) continue;
        const Term* to = nullptr;
        if (same(ce.fact.subject, re.fact.subject)) to = &*re.fact.other;
        else if (same(ce.fact.subject, *re.fact.other)) to = &re.fact.subject;
        if (to == nullptr) continue;
        derive(ce.fact.claim == Claim::Vanishes ? vanishes(*to) : non_vanishes(*to), kRuleTransport, {ckey, rkey},
               re.fact.claim == Claim::IsoTo ? "along isomorphism" : "along diffeomorphism");
      }
    }
    for (const auto& [key, e] : entries_) {
      if (e.fact.claim != Claim::Vanishes) continue;
      const Fact nv = non_vanishes(e.fact.subject);
      if (has(nv)) derive(surgery::contradiction(e.fact.subject), kRuleContradiction, {key, render(nv)}, {});
    }

    int new_facts = 0;
    for (auto& [f, d] : cand) new_facts += add(f, std::move(d)) ? 1 : 0;
    if (new_facts == 0) break;
    rounds_ = round;
    added += new_facts;
  }
  return added;
}

// --- explanation and replay ---------------------------------------------------

std::string explain(const Store& s, const std::string& key) {
  if (s.find(key) == nullptr) throw Error(ErrorKind::UnknownFact, "'" + key + "' is not in the store");
  std::map<std::string, int> number;
  std::string out;
  std::function<void(const std::string&)> visit = [&](const std::string& k) {
    if (number.count(k) != 0) return;
    const Entry& e = *s.find(k);
    for (const std::string& p : e.derivation.premises) visit(p);
    const int id = static_cast<int>(number.size()) + 1;
    number[k] = id;
    std::string why = e.derivation.rule;
    if (!e.derivation.detail.empty()) why += ", " + e.derivation.detail;
    if (!e.derivation.premises.empty()) {
      why += "; from";
      for (std::size_t i = 0; i < e.derivation.premises.size(); ++i) {
        why += (i == 0 ? " (" : ", (") + std::to_string(number.at(e.derivation.premises[i])) + ")";
      }
    }
    out += "(" + std::to_string(id) + ") " + k + "  [" + why + "]\n";
  };
  visit(key);
  return out;
}

namespace {

bool triangle_matches(const std::vector<Term>& vs, const Term& b, const Knot& k, long n) {
  const auto tri = triangle(b, k, n);
  std::vector<std::string> want;
  for (const Term& t : tri) want.push_back(render(t));
  std::vector<std::string> got;
  for (const Term& t : vs) got.push_back(render(t));
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  return want == got && std::adjacent_find(want.begin(), want.end()) == want.end();
}

std::string check_step(const Entry& e, const std::vector<const Fact*>& p, int window) {
  const Fact& c = e.fact;
  const std::string& rule = e.derivation.rule;
  auto count = [&](std::size_t n) { return p.size() == n; };
  if (rule == kRuleTriangleIso) {
    if (!count(1) || p[0]->claim != Claim::Vanishes || c.claim != Claim::IsoTo) return "shape";
    const Term& z = p[0]->subject;
    if (z.kind != Term::Kind::Surg || z.slope.num != 0) return "premise is not a 0-surgery";
    for (long n = -window; n < window; ++n) {
      const auto tri = triangle(*z.base, z.knot, n);
      if ((same(c.subject, tri[1]) && same(*c.other, tri[0])) || (same(c.subject, tri[0]) && same(*c.other, tri[1]))) {
        return {};
      }
    }
    return "not a triangle in the window";
  }
  if (rule == kRuleTriangleCollapse) {
    if (!count(2) || c.claim != Claim::Vanishes) return "shape";
    if (p[0]->claim != Claim::Vanishes || p[1]->claim != Claim::Vanishes) return "premises must vanish";
    const std::vector<Term> vs{p[0]->subject, p[1]->subject, c.subject};
    for (const Term& v : vs) {
      if (v.kind != Term::Kind::Surg) continue;
      for (long n = -window; n < window; ++n) {
        if (triangle_matches(vs, *v.base, v.knot, n)) return {};
      }
    }
    return "not the vertices of a triangle";
  }
  if (rule == kRuleCable) {
    if (!count(0) || c.claim != Claim::DiffeoTo || window < 4) return "shape";
    const Term& a = c.subject;
    if (a.kind != Term::Kind::Surg || a.knot.cables != 0 || !(a.slope == slope_inv(4))) return "left side";
    return same(*c.other, surg(*a.base, cable21(a.knot), slope_inv(1))) ? std::string{} : "right side";
  }
  if (rule == kRulePedigree) {
    if (!count(2) || c.claim != Claim::Flag) return "shape";
    if (c.flag != kFlagIrreducible && c.flag != kFlagIncompressible) return "conclusion flag";
    if (p[0]->claim != Claim::Flag || p[0]->flag != kFlagGenerates || !(p[0]->knot == c.knot)) return "flag premise";
    if (p[1]->claim != Claim::DiffeoTo) return "diffeo premise";
    for (int side = 0; side < 2; ++side) {
      const Term& s = side == 0 ? p[1]->subject : *p[1]->other;
      const Term& o = side == 0 ? *p[1]->other : p[1]->subject;
      if (o.kind == Term::Kind::S2xS1 && s.kind == Term::Kind::Surg && s.slope.num == 0 && s.knot == c.knot &&
          s.base->kind != Term::Kind::S3) {
        return {};
      }
    }
    return "diffeo premise is not an S^2xS^1 surgery on the knot";
  }
  if (rule == kRuleNonVanishing) {
    if (!count(2) || c.claim != Claim::NonVanishes) return "shape";
    const Term& t = c.subject;
    if (t.kind != Term::Kind::Surg || t.slope.num != 0 || t.knot.cables != 1) return "not a 0-surgery on a cable";
    Knot k = t.knot;
    k.cables = 0;
    std::set<std::string> flags;
    for (const Fact* f : p) {
      if (f->claim == Claim::Flag && f->knot == k) flags.insert(f->flag);
    }
    return flags == std::set<std::string>{kFlagIrreducible, kFlagIncompressible} ? std::string{} : "flags";
  }
  if (rule == kRuleTransport) {
    if (!count(2)) return "shape";
    const Fact& cl = *p[0];
    const Fact& rel = *p[1];
    if (cl.claim != Claim::Vanishes && cl.claim != Claim::NonVanishes) return "claim premise";
    if (rel.claim != Claim::IsoTo && rel.claim != Claim::DiffeoTo) return "relation premise";
    if (c.claim != cl.claim) return "claim changed";
    if (same(cl.subject, rel.subject) && same(c.subject, *rel.other)) return {};
    if (same(cl.subject, *rel.other) && same(c.subject, rel.subject)) return {};
    return "terms do not match";
  }
  if (rule == kRuleContradiction) {
    if (!count(2) || c.claim != Claim::Contradiction) return "shape";
    if (p[0]->claim == Claim::Vanishes && p[1]->claim == Claim::NonVanishes && same(p[0]->subject, c.subject) &&
        same(p[1]->subject, c.subject)) {
      return {};
    }
    return "premises do not clash";
  }
  return "unknown rule '" + rule + "'";
}

}  // namespace

ReplayReport replay(const Store& s, int window) {
  ReplayReport r;
  for (const auto& [key, e] : s.entries()) {
    if (e.derivation.rule == kRuleAxiom || e.derivation.rule == kRulePreloaded) continue;
    ++r.checked;
    std::string why;
    std::vector<const Fact*> prem;
    for (const std::string& pk : e.derivation.premises) {
      const Entry* pe = s.find(pk);
      if (pe == nullptr) {
        why = "missing premise '" + pk + "'";
        break;
      }
      if (pe->derivation.round >= e.derivation.round) {
        why = "premise '" + pk + "' is not earlier";
        break;
      }
      prem.push_back(&pe->fact);
    }
    if (why.empty() && render(e.fact) != key) why = "key does not match the fact";
    if (why.empty()) why = check_step(e, prem, window);
    if (!why.empty()) {
      r.ok = false;
      r.failure = "'" + key + "' (" + e.derivation.rule + "): " + why;
      return r;
    }
  }
  return r;
}

// --- JSON -------------------------------------------------------------------------

namespace {

Term term_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorKind::Malformed, "terms are strings");
  return parse_term(j.get<std::string>());
}

}  // namespace

Store load_axioms(const Json& j) {
  try {
    Store s;
    for (const Json& k : j.value("knots", Json::array())) {
      const Knot knot = parse_knot(k.at("name").get<std::string>());
      for (const Json& f : k.value("flags", Json::array())) s.assert_axiom(knot_flag(knot, f.get<std::string>()));
    }
    for (const Json& f : j.at("facts")) {
      const std::string claim = f.at("claim").get<std::string>();
      const Term subject = term_from_json(f.at("subject"));
      const std::string note = f.value("note", std::string{});
      if (claim == "vanishes") {
        s.assert_axiom(vanishes(subject), note);
      } else if (claim == "non_vanishes") {
        s.assert_axiom(non_vanishes(subject), note);
      } else if (claim == "iso") {
        s.assert_axiom(iso_to(subject, term_from_json(f.at("other"))), note);
      } else if (claim == "diffeo") {
        s.assert_axiom(diffeo_to(subject, term_from_json(f.at("other"))), note);
      } else {
        throw Error(ErrorKind::Malformed, "unknown claim '" + claim + "'");
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("axiom JSON: ") + e.what());
  }
}

RunResult run(const Json& axioms, int window) {
  RunResult r;
  r.label = axioms.value("label", std::string{});
  r.window = window > 0 ? window : axioms.value("window", kDefaultWindow);
  r.store = load_axioms(axioms);
  r.store.saturate(r.window);
  r.contradiction = r.store.contradiction();
  r.replay = replay(r.store, r.window);
  return r;
}

Json to_json(const Store& s) {
  Json facts = Json::array();
  for (const auto& [key, e] : s.entries()) {
    Json j;
    j["fact"] = key;
    j["rule"] = e.derivation.rule;
    if (!e.derivation.detail.empty()) j["detail"] = e.derivation.detail;
    j["premises"] = e.derivation.premises;
    j["round"] = e.derivation.round;
    facts.push_back(std::move(j));
  }
  return facts;
}

Json derivation_tree(const Store& s, const std::string& key) {
  const Entry* e = s.find(key);
  if (e == nullptr) throw Error(ErrorKind::UnknownFact, "'" + key + "' is not in the store");
  Json j;
  j["fact"] = key;
  j["rule"] = e->derivation.rule;
  if (!e->derivation.detail.empty()) j["detail"] = e->derivation.detail;
  Json prem = Json::array();
  for (const std::string& p : e->derivation.premises) prem.push_back(derivation_tree(s, p));
  j["premises"] = std::move(prem);
  return j;
}

Json to_json(const RunResult& r) {
  Json j;
  j["label"] = r.label;
  j["window"] = r.window;
  j["rounds"] = r.store.rounds();
  j["facts"] = r.store.entries().size();
  j["contradiction"] = r.contradiction ? Json(*r.contradiction) : Json(nullptr);
  j["replay"] = {{"ok", r.replay.ok}, {"checked", r.replay.checked}, {"failure", r.replay.failure}};
  if (r.contradiction) j["derivation"] = derivation_tree(r.store, *r.contradiction);
  j["store"] = to_json(r.store);
  return j;
}

}  // namespace pillow::surgery
