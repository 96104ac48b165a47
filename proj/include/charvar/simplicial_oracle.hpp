#pragma once

#include <array>
#include <utility>
#include <vector>

#include "charvar/twisted_cohomology.hpp"

namespace charvar {

// Delta-complex model of the closed surface: the 4g-gon coned off from one
// interior vertex, sides glued by the relator, optionally barycentrically
// subdivided. Vertex 0 is the cone point and vertex 1 the basepoint x_0.
//
// Each oriented edge carries a holonomy word: the group element picked up when
// moving from the frame of its tail to the frame of its head. Twisted
// coboundaries read (delta0 s)(e) = Ad(hol e) s(head) - s(tail).
struct SimplicialEdge {
  int tail = 0;
  int head = 0;
  Word holonomy;
};

struct SimplicialTriangle {
  std::array<int, 3> vertices{};  // ordered v0 < v1 < v2 in the Delta-complex sense
  std::array<int, 3> edges{};     // faces [v0 v1], [v1 v2], [v0 v2]
  int orientation = 1;            // coefficient in the fundamental cycle
};

struct TriangulatedSurfaceComplex {
  int genus = 0;
  int refinement = 0;
  int vertex_count = 0;
  std::vector<SimplicialEdge> edges;
  std::vector<SimplicialTriangle> triangles;
  // Polygon sides (by position in the relator) glued to each other.
  std::vector<std::pair<int, int>> side_pairing;

  int euler_characteristic() const {
    return vertex_count - static_cast<int>(edges.size()) + static_cast<int>(triangles.size());
  }
};

TriangulatedSurfaceComplex build_complex(int genus, int refinement = 0);

/// Largest integer coefficient of the boundary of sum orientation * triangle (0 for a cycle).
int fundamental_chain_boundary(const TriangulatedSurfaceComplex& complex);

// Twisted simplicial cochains: one algebra coordinate column per cell.
struct SimplicialCochain {
  Matrix values;  // dim_g x cell count
};

// Ad(rho(hol e)) for every edge.
std::vector<Matrix> edge_holonomies(const TriangulatedSurfaceComplex& complex, const Representation& rep,
                                    const LieAlgebra& algebra);

SimplicialCochain simplicial_delta0(const TriangulatedSurfaceComplex& complex, const std::vector<Matrix>& holonomy,
                                    const SimplicialCochain& vertex_values);
SimplicialCochain simplicial_delta1(const TriangulatedSurfaceComplex& complex, const std::vector<Matrix>& holonomy,
                                    const SimplicialCochain& edge_values);

/// Edge e gets u(hol e). Throws NotACocycle when u misses delta^1 u = 0 by more than cocycle_tol.
SimplicialCochain transport_cocycle(const Representation& rep, const Cochain1& u,
                                    const TriangulatedSurfaceComplex& complex, double cocycle_tol = 1e-8);

/// max over triangles of ||delta1 f|| / max(1, ||f||).
double simplicial_cocycle_residual(const TriangulatedSurfaceComplex& complex, const std::vector<Matrix>& holonomy,
                                   const SimplicialCochain& f);

// Sum over triangles of orientation * B(f(v0v1), Ad(hol v0v1) h(v1v2)).
Complex alexander_whitney_pairing(const TriangulatedSurfaceComplex& complex, const Representation& rep,
                                  const SimplicialCochain& f, const SimplicialCochain& h,
                                  const InvariantForm& form = InvariantForm{});

/// (f cup h - h cup f) / 2 evaluated on the fundamental cycle. Both inputs must be
/// twisted cocycles to cocycle_tol; NotACocycle otherwise.
Complex simplicial_pairing(const TriangulatedSurfaceComplex& complex, const Representation& rep,
                           const SimplicialCochain& f, const SimplicialCochain& h,
                           const InvariantForm& form = InvariantForm{}, double cocycle_tol = 1e-8);

}  // namespace charvar
