#pragma once

#include "tdeg/cone.hpp"

#include <utility>
#include <vector>

namespace tdeg {

// Bounded rational polytope in Q^n, stored in vertex and halfspace form.
// Computed via homogenization to a cone in Z^{n+1}.
struct Polytope {
    size_t n = 0;
    std::vector<RatVec> vertices;                     // lex-sorted; empty means the empty polytope
    std::vector<std::pair<IntVec, Rat>> facets;       // <a,x> >= b with a primitive inner normal
    std::vector<std::pair<IntVec, Rat>> equations;    // <a,x> == b on the whole polytope
};

Polytope polytope_from_points(size_t n, const std::vector<RatVec>& pts);

// Bounded solution set of the inequalities; throws std::invalid_argument if
// the set is unbounded.  Redundant inequalities are eliminated.
Polytope polytope_from_inequalities(size_t n,
                                    const std::vector<std::pair<IntVec, Rat>>& ineqs);

bool polytope_is_empty(const Polytope& p);
size_t polytope_dim(const Polytope& p);               // throws on the empty polytope
bool polytope_contains(const Polytope& p, const RatVec& x);

// All integer points of p (exact; bounding box capped defensively).
std::vector<IntVec> lattice_points(const Polytope& p);

// Nonempty faces, each as a sorted list of vertex indices with its affine
// dimension; includes the vertices, ..., facets, and p itself.
struct PolyFace {
    std::vector<size_t> vertex_ids;
    size_t dim = 0;
};
std::vector<PolyFace> polytope_faces(const Polytope& p);

bool is_lattice_polytope(const Polytope& p);

// Lattice simplex whose only lattice points are its vertices.
bool is_elementary_simplex(const Polytope& p);

// cone(p - v): the tangent cone of p at its vertex `vid`.
Cone vertex_tangent_cone(const Polytope& p, size_t vid);

} // namespace tdeg
