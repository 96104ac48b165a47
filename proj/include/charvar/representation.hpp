#pragma once

#include <vector>

#include "charvar/lie_backend.hpp"

namespace charvar {

// A homomorphism from the genus-g surface group into G, given on the generators
// a_1, b_1, ..., a_g, b_g. Built through make_representation(), which caches the
// inverses and the relation residual.
struct Representation {
  LieGroupSpec spec;
  int genus = 0;
  std::vector<GroupElement> generators;
  std::vector<GroupElement> inverses;
  double residual = 0.0;

  int generator_count() const { return 2 * genus; }
  bool is_flat(double flat_tol = 1e-10) const { return residual <= flat_tol; }
};

Representation make_representation(const LieGroupSpec& spec, int genus, std::vector<GroupElement> generators);

}  // namespace charvar
