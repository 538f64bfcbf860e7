#include "pillow/knot_groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

#include "pillow/error.hpp"
#include "pillow/io.hpp"

namespace pillow {

Word word_inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& g : r) g = -g;
  return r;
}

Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word word_power(const Word& w, int n) {
  const Word base = n >= 0 ? w : word_inverse(w);
  Word r;
  for (int i = 0; i < std::abs(n); ++i) r.insert(r.end(), base.begin(), base.end());
  return r;
}

Su2Elem eval_word(const Word& w, std::span<const Su2Elem> gens) {
  Quaternion acc{1.0, 0.0, 0.0, 0.0};
  for (int g : w) {
    const std::size_t idx = static_cast<std::size_t>(std::abs(g));
    if (g == 0 || idx > gens.size()) {
      throw Error(ErrorKind::Malformed, "generator index " + std::to_string(g) + " out of range");
    }
    const Su2Elem& e = gens[idx - 1];
    acc = acc * (g > 0 ? e.quat() : e.inverse().quat());
  }
  return Su2Elem(acc);
}

std::vector<long> abelianize(const Word& w, std::size_t n_generators) {
  std::vector<long> v(n_generators, 0);
  for (int g : w) {
    const std::size_t idx = static_cast<std::size_t>(std::abs(g));
    if (g == 0 || idx > n_generators) {
      throw Error(ErrorKind::Malformed, "generator index " + std::to_string(g) + " out of range");
    }
    v[idx - 1] += g > 0 ? 1 : -1;
  }
  return v;
}

namespace {

Word gen_power(int gen, int e) {
  Word r(static_cast<std::size_t>(std::abs(e)), e >= 0 ? gen : -gen);
  return r;
}

long mod_positive(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

KnotPresentation torus_knot(int p, int q) {
  if (std::abs(p) < 2 || std::abs(q) < 2 || std::gcd(p, q) != 1) {
    throw Error(ErrorKind::NotCoprime,
                "torus knot needs coprime p, q with |p|, |q| >= 2 (got " + std::to_string(p) + ", " +
                    std::to_string(q) + ")");
  }
  // Smallest u >= 0 with u q = 1 mod |p|.
  const long ap = std::abs(p);
  long u = 0;
  while (mod_positive(u * q, ap) != 1) ++u;
  const long v = (1 - u * q) / p;

  KnotPresentation k;
  k.label = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
  k.generators = {"x", "y"};
  k.relators = {word_concat(gen_power(1, p), gen_power(2, -q))};
  k.meridian = word_concat(gen_power(1, static_cast<int>(u)), gen_power(2, static_cast<int>(v)));
  k.longitude = word_concat(gen_power(1, p), word_power(k.meridian, -p * q));
  return k;
}

KnotPresentation unknot() {
  KnotPresentation k;
  k.label = "unknot";
  k.generators = {"x"};
  k.meridian = {1};
  return k;
}

namespace {

struct SmithResult {
  std::vector<long> diagonal;  // nonzero pivots, |d|
  std::size_t rank = 0;
  std::vector<std::vector<long>> row_ops;  // L with L A M = D
};

// Smith normal form of the n x m integer matrix a, tracking row operations.
SmithResult smith(std::vector<std::vector<long>> a, std::size_t n, std::size_t m) {
  std::vector<std::vector<long>> L(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) L[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(L[i], L[j]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, long f) {
    for (std::size_t c = 0; c < m; ++c) a[dst][c] += f * a[src][c];
    for (std::size_t c = 0; c < n; ++c) L[dst][c] += f * L[src][c];
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, long f) {
    for (std::size_t r = 0; r < n; ++r) a[r][dst] += f * a[r][src];
  };

  SmithResult res;
  std::size_t t = 0;
  while (t < n && t < m) {
    // Smallest nonzero entry of the remaining block as pivot.
    long best = 0;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = t; i < n; ++i) {
      for (std::size_t j = t; j < m; ++j) {
        if (a[i][j] != 0 && (best == 0 || std::abs(a[i][j]) < best)) {
          best = std::abs(a[i][j]);
          bi = i;
          bj = j;
        }
      }
    }
    if (best == 0) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        add_row(i, t, -(a[i][t] / a[t][t]));
        if (a[i][t] != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a[t][j] == 0) continue;
        add_col(j, t, -(a[t][j] / a[t][t]));
        if (a[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide the rest of the block.
      for (std::size_t i = t + 1; i < n && clean; ++i) {
        for (std::size_t j = t + 1; j < m; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            add_row(t, i, 1);
            clean = false;
            break;
          }
        }
      }
    }
    res.diagonal.push_back(std::abs(a[t][t]));
    ++t;
  }
  res.rank = t;
  res.row_ops = std::move(L);
  return res;
}

}  // namespace

PeripheralReport validate_peripheral(const KnotPresentation& k) {
  const std::size_t n = k.generator_count();
  if (n == 0) throw Error(ErrorKind::BadHomology, "presentation has no generators");
  const std::size_t m = k.relators.size();
  // Columns are relators, so relations span the columns of A.
  std::vector<std::vector<long>> a(n, std::vector<long>(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    const std::vector<long> v = abelianize(k.relators[j], n);
    for (std::size_t i = 0; i < n; ++i) a[i][j] = v[i];
  }
  const SmithResult s = smith(a, n, m);

  PeripheralReport rep;
  rep.generators = n;
  rep.relators = m;
  for (long d : s.diagonal) {
    if (d != 1) rep.torsion.push_back(d);
  }
  rep.free_rank = n - s.rank;

  auto image = [&](const Word& w, std::vector<long>& torsion_part) {
    const std::vector<long> v = abelianize(w, n);
    std::vector<long> c(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) c[i] += s.row_ops[i][j] * v[j];
    }
    torsion_part.clear();
    for (std::size_t i = 0; i < s.rank; ++i) {
      const long d = s.diagonal[i];
      torsion_part.push_back(d == 0 ? c[i] : mod_positive(c[i], d));
    }
    return rep.free_rank == 1 ? c[s.rank] : 0L;
  };

  std::vector<long> mt;
  std::vector<long> lt;
  rep.meridian_image = image(k.meridian, mt);
  rep.longitude_image = image(k.longitude, lt);

  std::ostringstream os;
  os << "H1 = Z^" << rep.free_rank;
  for (long d : rep.torsion) os << " + Z/" << d;
  os << "; meridian -> " << rep.meridian_image << "; longitude -> " << rep.longitude_image;
  rep.summary = os.str();

  if (rep.free_rank != 1 || !rep.torsion.empty()) {
    throw Error(ErrorKind::BadHomology, k.label + ": " + rep.summary + " (expected H1 = Z)");
  }
  if (std::abs(rep.meridian_image) != 1) {
    throw Error(ErrorKind::BadHomology, k.label + ": meridian does not generate H1");
  }
  const bool long_zero = rep.longitude_image == 0 &&
                         std::all_of(lt.begin(), lt.end(), [](long x) { return x == 0; });
  if (!long_zero) {
    throw Error(ErrorKind::BadHomology, k.label + ": longitude is not null-homologous");
  }
  const long sign = rep.meridian_image;
  rep.abelian_functional.resize(n);
  for (std::size_t j = 0; j < n; ++j) rep.abelian_functional[j] = sign * s.row_ops[s.rank][j];
  return rep;
}

SpliceProblem splice(KnotPresentation left, KnotPresentation right) {
  validate_peripheral(left);
  validate_peripheral(right);
  return {std::move(left), std::move(right)};
}

KnotPresentation resolve_knot(std::string_view spec) {
  if (spec == "trefoil") {
    KnotPresentation k = torus_knot(2, 3);
    k.label = "trefoil";
    return k;
  }
  if (spec == "unknot") return unknot();
  if (spec.starts_with("torus:")) {
    const std::string body(spec.substr(6));
    const auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorKind::Parse, "expected torus:p,q, got '" + std::string(spec) + "'");
    }
    try {
      std::size_t used = 0;
      const int p = std::stoi(body.substr(0, comma), &used);
      const std::string qs = body.substr(comma + 1);
      std::size_t used_q = 0;
      const int q = std::stoi(qs, &used_q);
      if (used != comma || used_q != qs.size()) throw std::invalid_argument("trailing");
      return torus_knot(p, q);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, "expected torus:p,q, got '" + std::string(spec) + "'");
    }
  }
  KnotPresentation k = read_knot_json(std::string(spec));
  validate_peripheral(k);
  return k;
}

}  // namespace pillow
