#pragma once

#include "tdeg/monoid.hpp"
#include "tdeg/polytope.hpp"

#include <complex>
#include <vector>

namespace tdeg {

using Cx = std::complex<double>;

// ---- projective momentum map ------------------------------------------------
//
// A point of the projective model of Xi is a chart vector with one complex
// coordinate per lattice point m of Xi; on the dense torus the coordinates
// specialize to the monomials z^m.  The momentum value is the squared-modulus
// weighted average mu = sum |w_m|^2 m / sum |w_m|^2, which is invariant under
// phase rescalings and maps the positive real locus onto the interior of the
// convex hull of the lattice points.

struct MomentumEval {
    Polytope xi;
    std::vector<IntVec> weights;   // lattice points of xi, lex-sorted (chart order)
};

MomentumEval momentum_eval_for(const Polytope& xi);

// chart must align with e.weights; throws when every coordinate vanishes.
std::vector<double> momentum_eval_numeric(const MomentumEval& e, const std::vector<Cx>& chart);

// Chart vector of the torus point z: w_m = z^m.  A zero z_i is allowed only
// against nonnegative exponents.
std::vector<Cx> monomial_chart(const MomentumEval& e, const std::vector<Cx>& z);

// Positive real point z (one value per ambient coordinate) whose momentum is
// `target`; Newton iteration on the strictly convex log-partition function.
// The target must be interior to the convex hull of the lattice points.
std::vector<double> momentum_section_positive(const MomentumEval& e, const std::vector<double>& target);

// max over facet/equation constraints of how far x sits outside p (<= 0 means inside).
double max_constraint_violation(const Polytope& p, const std::vector<double>& x);
// same for a cone's halfspace description.
double cone_constraint_violation(const Cone& c, const std::vector<double>& x);

// ---- affine momentum map -----------------------------------------------------
//
// For a chart cone C (monoid C cap Z^n) the map factors through the
// truncation Xi = C cap {<height, x> <= a}: evaluate the projective momentum
// there and stretch radially by f(q) = q / (a - q), which carries [0, a) onto
// [0, infinity) and hence the positive locus onto C.  A chart cone with
// invertible directions splits off its unit torus, whose momentum is the
// coordinatewise log-modulus.

struct AffineMomentum {
    Cone chart_cone;                  // original cone in Z^n
    size_t unit_count = 0;            // dimension of the split-off torus
    IntMat adapted, adapted_inv;      // identity when unit_count == 0
    Cone sharp_cone;                  // pointed part, in Z^(n - unit_count)
    std::vector<IntVec> gens;         // Hilbert basis of the sharp part
    IntVec height;                    // functional positive on the sharp part
    Int height_bound = 0;             // truncation level a
    MomentumEval compact;             // momentum data of the truncation
    std::vector<std::vector<unsigned>> decomp;   // generator exponents per lattice point
};

AffineMomentum affine_momentum_for(const Cone& chart_cone);

// `values`: one complex number per Hilbert generator of the sharp part, then
// one nonzero complex number per unit direction.
std::vector<double> affine_momentum_numeric(const AffineMomentum& a, const std::vector<Cx>& values);

// Positive real chart values mapping to `target` (which must lie in the
// interior of the chart cone's span-relative interior; the apex maps from 0).
std::vector<double> affine_section_positive(const AffineMomentum& a, const RatVec& target);

} // namespace tdeg
