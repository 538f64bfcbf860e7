#pragma once

/**
 * @file knot_groups.hpp
 * @brief Finitely presented knot-exterior groups with peripheral words.
 *
 * A word is a sequence of signed 1-based generator indices: +i is generator
 * i, -i its inverse.  All semantics come from evaluation in SU(2).
 */

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pillow/su2.hpp"

namespace pillow {

using Word = std::vector<int>;

struct KnotPresentation {
  std::string label;
  std::vector<std::string> generators;
  std::vector<Word> relators;
  Word meridian;
  Word longitude;

  std::size_t generator_count() const { return generators.size(); }

  // Same group data; labels are ignored.
  bool same_presentation(const KnotPresentation& o) const {
    return generators.size() == o.generators.size() && relators == o.relators &&
           meridian == o.meridian && longitude == o.longitude;
  }
};

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
Word word_power(const Word& w, int n);

// Product of the generator images left to right.  Throws Malformed if an
// index is out of range or zero.
Su2Elem eval_word(const Word& w, std::span<const Su2Elem> gens);

// Exponent-sum vector of a word.
std::vector<long> abelianize(const Word& w, std::size_t n_generators);

// <x, y | x^p y^-q> with meridian x^u y^v (minimal u >= 0, uq + vp = 1) and
// longitude x^p mu^(-pq).  Throws NotCoprime.
KnotPresentation torus_knot(int p, int q);

// <x | > with meridian x and empty longitude.
KnotPresentation unknot();

struct PeripheralReport {
  std::size_t generators = 0;
  std::size_t relators = 0;
  std::vector<long> torsion;  // nontrivial invariant factors
  std::size_t free_rank = 0;
  long meridian_image = 0;    // in the free coordinate of H_1
  long longitude_image = 0;
  // phi: Z^n -> Z, the abelianization normalized so that phi(meridian) = 1.
  std::vector<long> abelian_functional;
  std::string summary;
};

// Smith normal form of the relation matrix; checks H_1 = Z generated by the
// meridian and the longitude null-homologous.  Throws BadHomology.
PeripheralReport validate_peripheral(const KnotPresentation& k);

// Gluing convention: mu_left = lambda_right, lambda_left = mu_right.
struct SpliceProblem {
  KnotPresentation left;
  KnotPresentation right;
};

SpliceProblem splice(KnotPresentation left, KnotPresentation right);

// "trefoil", "unknot", "torus:p,q"; anything else is read as a JSON file.
KnotPresentation resolve_knot(std::string_view spec);

}  // namespace pillow
