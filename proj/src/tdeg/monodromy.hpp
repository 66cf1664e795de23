#pragma once

#include "tdeg/transport.hpp"

namespace tdeg {

// ---- invariants built from wall monodromy --------------------------------------

// Canonical monodromy charge per wall, zero elsewhere (indexed by cell).
std::vector<Int> kinks_from_monodromy(const PolyCellComplex& c, const ComplexIndex& ix);

struct PositivityReport {
    bool positive = true;
    bool all_decomposed = true;
    std::vector<WallMonodromy> walls;
    std::vector<std::string> witnesses;
};

// All wall monodromies decompose with kappa >= 0.
PositivityReport is_positive(const PolyCellComplex& c, const ComplexIndex& ix);

// Local monodromy polytopes of an intermediate cell tau (1 <= dim tau <= dim-1).
struct MonodromyPolytopeSet {
    size_t tau = 0;
    Int kappa;
    Polytope delta_rho;             // hull of the loop displacement vectors
    Polytope delta_check_omega;     // hull of the conormal displacements
    Polytope delta_rho_tau;         // per-family block (single family here)
    Polytope delta_check_omega_tau;
    Polytope delta_tau;             // joined polytope over the families
    Polytope delta_check_tau;
};
MonodromyPolytopeSet monodromy_polytopes(const PolyCellComplex& c, const ComplexIndex& ix, size_t tau);

struct SimplicityReport {
    bool simple = true;            // charges aggregated per wall
    bool per_point_simple = true;  // each marked point taken separately
    std::vector<std::string> details;
};

// Local polytopes are elementary simplices at every intermediate cell.  The
// aggregated and per-marked-point readings are reported side by side.
SimplicityReport is_simple(const PolyCellComplex& c, const ComplexIndex& ix);

struct MPLReport {
    bool ok = true;
    std::vector<size_t> failing_cells;   // codim-2 cells where the balance fails
    std::vector<std::string> details;
};

// Multi-valued piecewise-linear balance: at every codimension-two cell the
// kink-weighted primitive wall rays in the transverse rank-two quotient sum
// to zero.  `kinks` is indexed by cell and must be nonnegative, supported on
// codimension-one cells.
MPLReport mpl_check(const PolyCellComplex& c, const ComplexIndex& ix, const std::vector<Int>& kinks);

} // namespace tdeg
