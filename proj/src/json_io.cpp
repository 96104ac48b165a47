#include "charvar/json_io.hpp"

#include <cstdio>
#include <cstring>

#include "charvar/errors.hpp"

namespace charvar {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix JSON must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw InvalidInput("ragged matrix JSON");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& entry = j[r][c];
      if (entry.is_number())
        m(r, c) = entry.get<double>();
      else if (entry.is_array() && entry.size() == 2)
        m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      else
        throw InvalidInput("matrix entries must be numbers or [re, im] pairs");
    }
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Json word_to_json(const Word& w) { return w.to_signed(); }

Word word_from_json(const Json& j) { return Word::from_signed(j.get<std::vector<int>>()); }

Json representation_to_json(const Representation& rep) {
  Json mats = Json::array();
  for (const auto& g : rep.generators) mats.push_back(matrix_to_json(g));
  return {{"group", rep.spec.name()},
          {"n", rep.spec.n},
          {"genus", rep.genus},
          {"matrices", mats},
          {"residual", rep.residual}};
}

Representation representation_from_json(const Json& j) {
  try {
    const LieGroupSpec spec = parse_group_spec(j.at("group").get<std::string>(), j.value("n", 1));
    std::vector<GroupElement> gens;
    for (const auto& m : j.at("matrices")) gens.push_back(matrix_from_json(m));
    return make_representation(spec, j.at("genus").get<int>(), std::move(gens));
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed representation JSON: ") + e.what());
  }
}

std::uint64_t representation_hash(const Representation& rep) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const int header[3] = {static_cast<int>(rep.spec.kind), rep.spec.n, rep.genus};
  mix(header, sizeof header);
  for (const auto& g : rep.generators)
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index k = 0; k < g.cols(); ++k) {
        const double parts[2] = {g(i, k).real(), g(i, k).imag()};
        mix(parts, sizeof parts);
      }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

Json cohomology_to_json(const CohomologySpaces& s) {
  Json reps = Json::array();
  for (Eigen::Index i = 0; i < s.h1_basis.cols(); ++i) reps.push_back(vector_to_json(s.h1_basis.col(i)));
  return {{"h0", s.h0},
          {"h1", s.h1},
          {"h2", s.h2},
          {"dim_g", s.dim_g},
          {"genus", s.genus},
          {"euler_characteristic", s.euler_characteristic()},
          {"representatives", reps}};
}

Json goldman_matrix_to_json(const GoldmanMatrix& omega, const GoldmanProvenance& p) {
  return {{"omega", matrix_to_json(omega.omega)},
          {"size", omega.omega.rows()},
          {"antisymmetry", omega.antisymmetry},
          {"conditioning", omega.conditioning},
          {"provenance", {{"rep_hash", hex64(p.rep_hash)}, {"seed", p.seed}, {"rank_tol", p.rank_tol}}}};
}

Json complex_to_json(const TriangulatedSurfaceComplex& c) {
  Json edges = Json::array();
  for (const auto& e : c.edges)
    edges.push_back({{"tail", e.tail}, {"head", e.head}, {"holonomy", word_to_json(e.holonomy)}});
  Json tris = Json::array();
  for (const auto& t : c.triangles)
    tris.push_back({{"vertices", t.vertices}, {"edges", t.edges}, {"orientation", t.orientation}});
  Json pairing = Json::array();
  for (const auto& [a, b] : c.side_pairing) pairing.push_back({a, b});
  return {{"genus", c.genus},
          {"refinement", c.refinement},
          {"vertex_count", c.vertex_count},
          {"edges", edges},
          {"triangles", tris},
          {"side_pairing", pairing},
          {"euler_characteristic", c.euler_characteristic()}};
}

HyperellipticCurve curve_from_json(const Json& j) {
  if (!j.contains("branch_points") || !j["branch_points"].is_array())
    throw InvalidInput("curve JSON needs a \"branch_points\" array");
  const bool experimental = j.value("experimental", false);
  std::vector<Complex> pts;
  for (const auto& p : j["branch_points"]) {
    if (p.is_number())
      pts.emplace_back(p.get<double>(), 0.0);
    else if (p.is_array() && p.size() == 2)
      pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    else
      throw InvalidInput("branch points must be numbers or [re, im] pairs");
  }
  return HyperellipticCurve(std::move(pts), experimental);
}

Json curve_to_json(const HyperellipticCurve& curve) {
  Json pts = Json::array();
  for (auto z : curve.branch_points()) {
    if (curve.is_real())
      pts.push_back(z.real());
    else
      pts.push_back({z.real(), z.imag()});
  }
  return {{"branch_points", pts}, {"genus", curve.genus()}};
}

Json period_data_to_json(const PeriodData& p) {
  Json cycles = Json::array();
  for (const auto& c : p.cycles)
    cycles.push_back({{"kind", std::string(1, c.kind)}, {"index", c.index}, {"from", c.from}, {"to", c.to}});
  Json eig = Json::array();
  for (Eigen::Index i = 0; i < p.relation_two_eigenvalues.size(); ++i) eig.push_back(p.relation_two_eigenvalues(i));
  Json intersection = Json::array();
  for (Eigen::Index i = 0; i < p.intersection.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < p.intersection.cols(); ++k) row.push_back(p.intersection(i, k));
    intersection.push_back(row);
  }
  return {{"genus", p.genus},
          {"quadrature_order", p.quadrature_order},
          {"cycles", cycles},
          {"a_periods", matrix_to_json(p.a_periods)},
          {"b_periods", matrix_to_json(p.b_periods)},
          {"intersection", intersection},
          {"orientation_sign", p.orientation_sign},
          {"relation_one_residual", p.relation_one_residual},
          {"relation_two_eigenvalues", eig},
          {"relation_two_definite", p.relation_two_definite},
          {"quadrature_drift", p.quadrature_drift}};
}

}  // namespace charvar
