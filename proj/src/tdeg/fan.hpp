#pragma once

#include "tdeg/polytope.hpp"

#include <optional>
#include <vector>

namespace tdeg {

// Fan of pointed rational cones: closed under faces, pairwise intersections
// are common faces.  Construction validates and face-closes the input.
struct Fan {
    size_t n = 0;
    std::vector<Cone> cones;   // deduplicated, faces included, deterministic order
};

// Builds a fan from the given cones (typically the maximal ones): checks the
// pairwise-intersection axiom (throws std::invalid_argument naming the
// offending pair), rejects non-pointed cones, then closes under faces.
Fan fan_from_cones(size_t n, const std::vector<Cone>& cones);

// Indices of the inclusion-maximal cones.
std::vector<size_t> fan_maximal_cones(const Fan& f);

// Structural completeness: every maximal cone is full-dimensional and every
// one of its facets is shared with exactly one other maximal cone.
bool fan_is_complete(const Fan& f);

// Is x in the support of the fan?
bool fan_contains(const Fan& f, const RatVec& x);

// Index of the unique cone with x in its relative interior, if any.
std::optional<size_t> fan_cone_with_relint(const Fan& f, const RatVec& x);

// Primitive generators of the 1-dimensional cones.
std::vector<IntVec> fan_rays(const Fan& f);

// Inner normal fan of a full-dimensional polytope: the maximal cone at a
// vertex v is spanned by the inner normals of the facets through v, so a
// functional lies in that cone iff it is minimized over p at v.
Fan normal_fan(const Polytope& p);

// Image of a fan under the lattice quotient along a primitive direction
// (Z^n -> Z^n / Z*direction, identified with Z^{n-1} by an adapted basis).
// Throws if the images overlap, naming the offending pair.
Fan quotient_fan(const Fan& f, const IntVec& direction);

} // namespace tdeg
