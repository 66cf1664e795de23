#pragma once

#include "tdeg/cone.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tdeg {

// ---- lattice-point monoids of cones ------------------------------------

// Monoid of lattice points of a cone (the "chart side": for a fan cone
// sigma the chart monoid is dual(sigma) cap Z^n).
struct ToricMonoid {
    Cone cone;   // monoid = cone cap Z^n
};

ToricMonoid toric_monoid_from_fan_cone(const Cone& sigma);

// Minimal generating set of cone cap Z^n.  For a cone with lineality the
// invertible elements form a lattice; the basis is then computed for the
// sharp quotient and lifted back along an adapted-basis section, and
// `unit_basis` spans the unit lattice.
struct HilbertBasisResult {
    std::vector<IntVec> basis;        // lex-sorted, minimal
    std::vector<IntVec> unit_basis;   // empty iff the cone is pointed
};
HilbertBasisResult hilbert_basis(const Cone& c);

// ---- finitely presented commutative monoids ------------------------------

// N^gens modulo the congruence generated by lhs ~ rhs (exponent tuples).
struct PresentedMonoid {
    size_t gens = 0;
    std::vector<std::pair<IntVec, IntVec>> rels;
};

// Grothendieck group as cokernel of the relation-difference lattice:
// Z^rank (+) sum Z/torsion[i].  Generator images list free coordinates
// first, then one residue per torsion factor.
struct Groupification {
    size_t rank = 0;
    std::vector<Int> torsion;          // invariant factors > 1
    std::vector<IntVec> gen_images;    // length rank + torsion.size() each
};
Groupification groupify(const PresentedMonoid& m);

// ---- classification -------------------------------------------------------

enum class Tri { yes, no, undetermined };
std::string tri_str(Tri t);

// Standard taxonomy flags.  Decisions about a presented monoid use
// an exhaustive congruence closure on the exponent simplex of total degree
// <= degree_bound; a question whose search escapes the bound comes back
// `undetermined` rather than guessed.  Definite "no" answers carry a
// witness description.
struct MonoidClassification {
    Tri integral = Tri::undetermined;
    Tri fine = Tri::undetermined;
    Tri saturated = Tri::undetermined;
    Tri toric = Tri::undetermined;
    std::string integral_note, saturated_note, toric_note;
};

MonoidClassification classify_presented(const PresentedMonoid& m, unsigned degree_bound = 12);
MonoidClassification classify_toric(const ToricMonoid& m);

// ---- stalks ----------------------------------------------------------------

// Sharp monoid (no nontrivial invertibles) presented by toric data.
struct GhostStalk {
    size_t rank = 0;                      // gp rank of the sharp monoid
    std::vector<IntVec> generators;       // Hilbert basis in quotient coordinates
    std::vector<IntVec> relation_basis;   // basis of the linear relation lattice
};

// Chart monoid with the face of elements invertible at the point.
struct LogStalk {
    ToricMonoid chart;
    std::vector<IntVec> unit_face_gens;   // generators of the unit face F
};

// P / F for a face F: quotient by the unit face, sharpened.  Throws when
// the given generators do not span a face of the chart cone.
GhostStalk associated_log_stalk(const LogStalk& s);

// Ghost stalk of a toric variety along the stratum of `fan_cone`:
// dual(fan_cone) cap M sharpened by its unit lattice.  gp rank equals
// dim(fan_cone).
GhostStalk ghost_stalk_toric(const Cone& fan_cone);

// Does x belong to the submonoid of Z^n generated by gens?  Exact when the
// cone hull of the generators is pointed (bounded coefficient search).
bool in_monoid_span(const std::vector<IntVec>& gens, const IntVec& x);

} // namespace tdeg
