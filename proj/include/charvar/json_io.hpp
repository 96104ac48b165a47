#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "charvar/abelian_rh.hpp"
#include "charvar/goldman_form.hpp"
#include "charvar/representation.hpp"
#include "charvar/simplicial_oracle.hpp"
#include "charvar/twisted_cohomology.hpp"

namespace charvar {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Matrices: row-major arrays of [re, im] pairs, one inner array per row.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);

Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

// { "group": "SL", "n": 2, "genus": 2, "matrices": [...], "residual": r }
Json representation_to_json(const Representation& rep);
Representation representation_from_json(const Json& j);

// FNV-1a over the generator entries; stable across runs and platforms.
std::uint64_t representation_hash(const Representation& rep);
std::string hex64(std::uint64_t value);

Json cohomology_to_json(const CohomologySpaces& spaces);

struct GoldmanProvenance {
  std::uint64_t rep_hash = 0;
  std::uint64_t seed = 0;
  double rank_tol = 1e-8;
};
Json goldman_matrix_to_json(const GoldmanMatrix& omega, const GoldmanProvenance& provenance);

Json complex_to_json(const TriangulatedSurfaceComplex& complex);

// { "branch_points": [...] }; complex entries as [re, im] need "experimental": true.
HyperellipticCurve curve_from_json(const Json& j);
Json curve_to_json(const HyperellipticCurve& curve);
Json period_data_to_json(const PeriodData& periods);

}  // namespace charvar
