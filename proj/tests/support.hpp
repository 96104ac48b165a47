#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "charvar/rep_variety.hpp"
#include "charvar/twisted_cohomology.hpp"

// Hand-rolled generators for the property tests. Each test owns its Sampler,
// so runs are reproducible and independent of test order.
struct Sampler {
  std::mt19937_64 rng;
  std::normal_distribution<double> normal{0.0, 1.0};

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double real() { return normal(rng); }
  charvar::Complex complex() { return {normal(rng), normal(rng)}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  charvar::Vector vector(int size) {
    charvar::Vector v(size);
    for (int i = 0; i < size; ++i) v(i) = complex();
    return v;
  }

  charvar::AlgebraElement algebra_element(const charvar::LieAlgebra& alg) { return alg.element(vector(alg.dim())); }

  // exp of a random algebra element; small scales keep the conditioning tame.
  charvar::GroupElement group_element(const charvar::LieAlgebra& alg, double scale = 0.4) {
    return alg.exp(alg.element(scale * vector(alg.dim())));
  }

  charvar::Word word(int generator_count, int max_length) {
    std::vector<charvar::Letter> letters;
    const int len = integer(0, max_length);
    for (int i = 0; i < len; ++i)
      letters.push_back({integer(0, generator_count - 1), integer(0, 1) == 0 ? -1 : 1});
    return charvar::Word(letters);
  }

  // Unrefined representation: arbitrary generators, usually not flat.
  charvar::Representation loose_representation(const charvar::LieGroupSpec& spec, int genus, double scale = 0.5) {
    charvar::LieAlgebra alg(spec);
    std::vector<charvar::GroupElement> gens;
    for (int j = 0; j < 2 * genus; ++j) gens.push_back(group_element(alg, scale));
    return charvar::make_representation(spec, genus, gens);
  }

  // Random element of Z^1: a combination of the cocycle basis columns.
  charvar::Cochain1 cocycle(const charvar::CohomologySpaces& spaces) {
    return {spaces.cocycle_basis * vector(static_cast<int>(spaces.cocycle_basis.cols())), spaces.dim_g};
  }

  // Random cochain, no constraint (fine at points where delta^1 vanishes).
  charvar::Cochain1 cochain(int generator_count, int dim_g) { return {vector(generator_count * dim_g), dim_g}; }
};

inline double rel_diff(charvar::Complex a, charvar::Complex b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}
