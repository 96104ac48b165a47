#include "charvar/simplicial_oracle.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "charvar/errors.hpp"

namespace charvar {

namespace {

TriangulatedSurfaceComplex cone_complex(int genus) {
  const Word rel = relator(genus);
  const int sides = static_cast<int>(rel.size());
  const int gens = 2 * genus;
  TriangulatedSurfaceComplex c;
  c.genus = genus;
  c.vertex_count = 2;
  for (int x = 0; x < gens; ++x) c.edges.push_back({1, 1, Word::generator(x)});
  for (int k = 0; k < sides; ++k) c.edges.push_back({0, 1, rel.prefix(k)});  // spoke to corner k
  const auto spoke = [&](int k) { return gens + (k % sides); };
  std::map<int, int> positive_side;
  for (int k = 0; k < sides; ++k) {
    const Letter l = rel[k];
    SimplicialTriangle t;
    t.vertices = {0, 1, 1};
    if (l.exponent > 0) {
      t.edges = {spoke(k), l.generator, spoke(k + 1)};
      t.orientation = 1;
      positive_side[l.generator] = k;
    } else {
      t.edges = {spoke(k + 1), l.generator, spoke(k)};
      t.orientation = -1;
    }
    c.triangles.push_back(t);
  }
  for (int k = 0; k < sides; ++k)
    if (rel[k].exponent < 0) c.side_pairing.push_back({positive_side.at(rel[k].generator), k});
  std::sort(c.side_pairing.begin(), c.side_pairing.end());
  return c;
}

int permutation_sign(const std::array<int, 3>& p) {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

TriangulatedSurfaceComplex subdivide(const TriangulatedSurfaceComplex& c) {
  TriangulatedSurfaceComplex out;
  out.genus = c.genus;
  out.refinement = c.refinement + 1;
  out.side_pairing = c.side_pairing;
  const int v = c.vertex_count;
  const int e = static_cast<int>(c.edges.size());
  const int f = static_cast<int>(c.triangles.size());
  out.vertex_count = v + e + f;
  const auto edge_center = [&](int edge) { return v + edge; };
  const auto face_center = [&](int tri) { return v + e + tri; };

  // Halves of every old edge: [tail -> center] then [head -> center].
  // The center of an edge uses the frame of its tail.
  for (int k = 0; k < e; ++k) {
    const auto& old = c.edges[k];
    out.edges.push_back({old.tail, edge_center(k), Word()});
    out.edges.push_back({old.head, edge_center(k), free_reduce(old.holonomy.inverse())});
  }
  const auto half = [&](int edge, bool from_tail) { return 2 * edge + (from_tail ? 0 : 1); };

  // Per old triangle: three vertex spokes and three face spokes into its center,
  // which uses the frame of v0.
  for (int t = 0; t < f; ++t) {
    const auto& tri = c.triangles[t];
    const Word to_v1 = c.edges[tri.edges[0]].holonomy;  // v0 -> v1
    const Word to_v2 = c.edges[tri.edges[2]].holonomy;  // v0 -> v2
    const std::array<Word, 3> back{Word(), free_reduce(to_v1.inverse()), free_reduce(to_v2.inverse())};
    const int base = static_cast<int>(out.edges.size());
    for (int i = 0; i < 3; ++i) out.edges.push_back({tri.vertices[i], face_center(t), back[i]});
    // Face order matches tri.edges: [v0v1] (tail v0), [v1v2] (tail v1), [v0v2] (tail v0).
    out.edges.push_back({edge_center(tri.edges[0]), face_center(t), back[0]});
    out.edges.push_back({edge_center(tri.edges[1]), face_center(t), back[1]});
    out.edges.push_back({edge_center(tri.edges[2]), face_center(t), back[0]});
    const auto vertex_spoke = [&](int i) { return base + i; };
    const auto face_spoke = [&](int face) { return base + 3 + face; };

    std::array<int, 3> perm{0, 1, 2};
    do {
      const int a = perm[0];
      const int b = perm[1];
      const int lo = std::min(a, b);
      const int hi = std::max(a, b);
      const int face = (lo == 0 && hi == 1) ? 0 : (lo == 1 && hi == 2) ? 1 : 2;
      const int old_edge = tri.edges[face];
      SimplicialTriangle small;
      small.vertices = {tri.vertices[a], edge_center(old_edge), face_center(t)};
      small.edges = {half(old_edge, a < b), face_spoke(face), vertex_spoke(a)};
      small.orientation = tri.orientation * permutation_sign(perm);
      out.triangles.push_back(small);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace

TriangulatedSurfaceComplex build_complex(int genus, int refinement) {
  if (refinement < 0) throw InvalidInput("refinement level must be non-negative");
  TriangulatedSurfaceComplex c = cone_complex(genus);
  for (int r = 0; r < refinement; ++r) c = subdivide(c);
  return c;
}

int fundamental_chain_boundary(const TriangulatedSurfaceComplex& complex) {
  std::vector<int> boundary(complex.edges.size(), 0);
  for (const auto& t : complex.triangles) {
    boundary[t.edges[1]] += t.orientation;  // +[v1 v2]
    boundary[t.edges[2]] -= t.orientation;  // -[v0 v2]
    boundary[t.edges[0]] += t.orientation;  // +[v0 v1]
  }
  int worst = 0;
  for (int b : boundary) worst = std::max(worst, std::abs(b));
  return worst;
}

std::vector<Matrix> edge_holonomies(const TriangulatedSurfaceComplex& complex, const Representation& rep,
                                    const LieAlgebra& algebra) {
  std::vector<Matrix> out;
  out.reserve(complex.edges.size());
  for (const auto& e : complex.edges) out.push_back(algebra.ad_matrix(evaluate_word(rep, e.holonomy)));
  return out;
}

SimplicialCochain simplicial_delta0(const TriangulatedSurfaceComplex& complex, const std::vector<Matrix>& holonomy,
                                    const SimplicialCochain& s) {
  SimplicialCochain out{Matrix(s.values.rows(), complex.edges.size())};
  for (std::size_t k = 0; k < complex.edges.size(); ++k) {
    const auto& e = complex.edges[k];
    out.values.col(k) = holonomy[k] * s.values.col(e.head) - s.values.col(e.tail);
  }
  return out;
}

SimplicialCochain simplicial_delta1(const TriangulatedSurfaceComplex& complex, const std::vector<Matrix>& holonomy,
                                    const SimplicialCochain& f) {
  SimplicialCochain out{Matrix(f.values.rows(), complex.triangles.size())};
  for (std::size_t k = 0; k < complex.triangles.size(); ++k) {
    const auto& t = complex.triangles[k];
    out.values.col(k) =
        f.values.col(t.edges[0]) + holonomy[t.edges[0]] * f.values.col(t.edges[1]) - f.values.col(t.edges[2]);
  }
  return out;
}

double simplicial_cocycle_residual(const TriangulatedSurfaceComplex& complex, const std::vector<Matrix>& holonomy,
                                   const SimplicialCochain& f) {
  const SimplicialCochain d = simplicial_delta1(complex, holonomy, f);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.values.cols(); ++k) worst = std::max(worst, d.values.col(k).norm());
  return worst / std::max(1.0, f.values.norm());
}

SimplicialCochain transport_cocycle(const Representation& rep, const Cochain1& u,
                                    const TriangulatedSurfaceComplex& complex, double cocycle_tol) {
  if (complex.genus != rep.genus) throw InvalidInput("complex genus does not match the representation");
  const LieAlgebra algebra(rep.spec);
  const double r = cocycle_residual(rep, algebra, u);
  if (r > cocycle_tol)
    throw NotACocycle("transport needs a group cocycle (delta1 residual " + std::to_string(r) + ")", r);
  SimplicialCochain f{Matrix(algebra.dim(), complex.edges.size())};
  for (std::size_t k = 0; k < complex.edges.size(); ++k)
    f.values.col(k) = cocycle_value(rep, algebra, u, complex.edges[k].holonomy);
  return f;
}

Complex alexander_whitney_pairing(const TriangulatedSurfaceComplex& complex, const Representation& rep,
                                  const SimplicialCochain& f, const SimplicialCochain& h, const InvariantForm& form) {
  const LieAlgebra algebra(rep.spec);
  const auto holonomy = edge_holonomies(complex, rep, algebra);
  Complex total = 0.0;
  for (const auto& t : complex.triangles) {
    const Vector front = f.values.col(t.edges[0]);
    const Vector back = holonomy[t.edges[0]] * h.values.col(t.edges[1]);
    total += static_cast<double>(t.orientation) * algebra.pair(front, back, form);
  }
  return total;
}

Complex simplicial_pairing(const TriangulatedSurfaceComplex& complex, const Representation& rep,
                           const SimplicialCochain& f, const SimplicialCochain& h, const InvariantForm& form,
                           double cocycle_tol) {
  const LieAlgebra algebra(rep.spec);
  const auto holonomy = edge_holonomies(complex, rep, algebra);
  for (const auto* c : {&f, &h}) {
    const double r = simplicial_cocycle_residual(complex, holonomy, *c);
    if (r > cocycle_tol)
      throw NotACocycle("simplicial pairing needs twisted cocycles (residual " + std::to_string(r) + ")", r);
  }
  Complex total = 0.0;
  for (const auto& t : complex.triangles) {
    const Matrix& hol = holonomy[t.edges[0]];
    const Complex fh = algebra.pair(f.values.col(t.edges[0]), hol * h.values.col(t.edges[1]), form);
    const Complex hf = algebra.pair(h.values.col(t.edges[0]), hol * f.values.col(t.edges[1]), form);
    total += static_cast<double>(t.orientation) * 0.5 * (fh - hf);
  }
  return total;
}

}  // namespace charvar
