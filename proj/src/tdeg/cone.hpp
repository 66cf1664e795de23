#pragma once

#include "tdeg/mat.hpp"

#include <vector>

namespace tdeg {

// Rational polyhedral cone in Z^n, kept simultaneously in generator and
// halfspace form.  All data exact; sizes are desk scale (n <= ~8, a few
// dozen generators), so face enumeration is allowed to be brute force.
struct Cone {
    size_t n = 0;

    // Generator form: cone = R>=0 rays + R lineality.  Rays are primitive
    // and lex-sorted; they are the extreme rays whenever the cone is
    // pointed.  `lineality` is a basis of the largest linear subspace
    // contained in the cone (empty iff pointed).
    std::vector<IntVec> rays;
    std::vector<IntVec> lineality;

    // Halfspace form: cone = {x : <u,x> >= 0 for u in normals,
    //                             <e,x> == 0 for e in equations}.
    // Normals are primitive inner facet normals; equations are a saturated
    // basis of the annihilator of the linear span.
    std::vector<IntVec> normals;
    std::vector<IntVec> equations;
};

// Cone generated by `gens` (zero vectors ignored; empty set gives {0}).
Cone cone_from_rays(size_t n, const std::vector<IntVec>& gens);

// Cone cut out by inequalities and equations.
Cone cone_from_halfspaces(size_t n, const std::vector<IntVec>& normals,
                          const std::vector<IntVec>& equations);

// Dual cone {u : <u,x> >= 0 for all x in c}.
Cone dual_cone(const Cone& c);

bool cone_contains(const Cone& c, const IntVec& x);
bool cone_contains(const Cone& c, const RatVec& x);
// x in c with <u,x> > 0 for every facet normal (interior relative to span).
bool cone_contains_relint(const Cone& c, const RatVec& x);

size_t cone_dim(const Cone& c);
bool cone_is_pointed(const Cone& c);

// Set equality as subsets of Q^n (independent of representation).
bool cone_equals(const Cone& a, const Cone& b);

// Intersection of two cones in the same ambient lattice.
Cone cone_intersect(const Cone& a, const Cone& b);

// The smallest face of c containing all of f (f must be a subset of c).
Cone minimal_face_containing(const Cone& c, const Cone& f);

// Is f a face of c?  (f must at least be a subcone.)
bool is_face_of(const Cone& c, const Cone& f);

// All faces of c, from {lineality space} up to c itself, deduplicated.
std::vector<Cone> cone_faces(const Cone& c);

// Sum of the primitive generators of the rays (the canonical strictly
// positive functional-free representative used by truncation heights).
IntVec sum_of_primitive_rays(const Cone& c);

} // namespace tdeg
