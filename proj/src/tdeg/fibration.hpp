#pragma once

#include "tdeg/complex.hpp"
#include "tdeg/gluing.hpp"
#include "tdeg/intpoly.hpp"
#include "tdeg/monodromy.hpp"
#include "tdeg/variety.hpp"

#include <array>
#include <string>
#include <vector>

namespace tdeg {

// ---- central-fiber model over a cell complex ----------------------------------
//
// The complex plays the momentum picture of a degenerate family: each maximal
// cell is the momentum polytope of an irreducible component, lower cells are
// the strata along which the components meet, and the marked points on the
// one-dimensional walls are the discriminant — the points where the family's
// log structure fails to be fine, carrying the wall's affine monodromy.

struct DiscriminantPoint {
    size_t wall = 0;          // one-dimensional cell carrying the point
    size_t mark_index = 0;    // position in the wall's mark list
    Rat position;             // exact chart coordinate (combinatorial placement)
    double momentum = 0.0;    // numeric momentum-image coordinate (reporting only)
    Int charge;
    std::string root_label;   // exact algebraic origin when known
};

struct DiscriminantSpec {
    std::vector<DiscriminantPoint> points;   // wall-major, then mark order
};

struct ToricLogCY {
    PolyCellComplex base;
    ComplexIndex index;
    std::vector<size_t> component_cells;         // the maximal cells, ascending
    std::vector<ToricVarietyModel> components;   // projective model per maximal cell
    DiscriminantSpec discriminant;
    OpenGluingData gluing;                       // trivial unless stated otherwise
};

// Assembles the model: one projective toric component per maximal cell (the
// cell is its momentum polytope), the discriminant read off the marked
// points, and trivial gluing data.
ToricLogCY make_toric_log_cy(PolyCellComplex base);

// ---- fiber classes -------------------------------------------------------------

enum class FiberClassTag { smooth_torus, nodal_elliptic, unknown_singular };

struct FiberClass {
    FiberClassTag tag = FiberClassTag::smooth_torus;
    size_t torus_rank = 0;    // for smooth_torus
    bool euler_known = true;  // false only for unknown_singular
    Int euler;                // 0 for a torus, 1 for a nodal elliptic curve
    std::string str() const;
};

// A base point, classified: either an interior point of a cell away from the
// discriminant, or one of the marked discriminant points.
struct BasePoint {
    size_t cell = 0;
    bool at_mark = false;
    size_t mark_index = 0;   // into the cell's mark list when at_mark
};

// Topological type of the fiber of the phase-fixed fibration over b.  Off the
// discriminant the fiber is a torus of dimension dim B (one circle factor of
// the full torus is pinned by fixing the phase over the base disk).  A marked
// point of charge one on a surface base carries a nodal elliptic fiber; any
// other singular combination is reported unknown, never guessed.
FiberClass fiber_class(const ToricLogCY& cy, const BasePoint& b);

// ---- splitting rank bookkeeping -------------------------------------------------
//
// Along the open stratum of a cell tau, the restriction of the family's log
// structure to the stratum closure splits off the divisorial log structure of
// the stratum itself; the quotient is a free piece with one rank per
// transverse direction of tau plus one for the deformation parameter.  At the
// level of ghost groups the ranks must satisfy, at every point class:
//
//     stalk_rank  =  divisorial_rank  +  (dim B - dim tau)  +  1.
//
// The check computes the two sides independently: the left from the explicit
// local-model monoid of the degeneration at the class (see fibration.cpp),
// the right from the tangent-cone geometry of the cell's own polytope.  A
// point class is a face of tau; the class of tau itself is the generic point.

struct SplittingRankEntry {
    size_t face_class = 0;    // cell whose relative interior hosts the points
    size_t stalk_rank = 0;    // ghost group rank of the family's log structure
    size_t split_rank = 0;    // divisorial rank + transverse rank + 1
    bool match = true;
};

struct SplittingRankReport {
    size_t tau = 0;
    bool ok = true;
    std::vector<SplittingRankEntry> entries;   // classes of codimension <= 2
    std::vector<size_t> skipped;               // deeper classes, out of scope
};

// `kinks`: the piecewise-linear kink of the polarization on each wall (the
// power of the deformation parameter in the wall's local model).  Empty means
// the canonical choice: the gcd of the wall's marked charges when marks are
// present, else the wall's aggregated monodromy kink.  The ranks are
// insensitive to any strictly positive choice; a zero kink models a wall or
// vertex where the affine structure is flat, which is not a stratum of a
// degenerate family and is reported as a mismatch.
SplittingRankReport splitting_rank_check(const ToricLogCY& cy, size_t tau,
                                         const std::vector<Int>& kinks = {});

// ---- fibration report ------------------------------------------------------------

struct StratumRankRow {
    size_t cell = 0;
    size_t dim = 0;
    bool modeled = true;     // false for boundary classes without a two-sided
                             // local model and for classes beyond codim 2
    size_t ghost_rank = 0;   // ghost group rank of the log structure at the class
    size_t orbit_rank = 0;   // torus dimension of the stratum orbit (= dim)
    size_t fiber_rank = 0;   // ghost + orbit: the full torus over the class
};

struct FibrationReport {
    std::vector<std::pair<size_t, FiberClass>> generic_classes;   // per cell
    std::vector<std::pair<DiscriminantPoint, FiberClass>> discriminant_classes;
    std::vector<StratumRankRow> rank_table;
    bool euler_known = true;
    Int euler_total;         // sum over discriminant points; tori contribute 0
};

FibrationReport fibration_report(const ToricLogCY& cy);

// ---- the quartic pipeline ---------------------------------------------------------
//
// End-to-end model of the family  X0*X1*X2*X3 + t*f4 = 0  in P^3 x A^1 with
// the built-in symmetric quartic f4: the base is the boundary complex of the
// unit 3-simplex (components are projective planes with the hyperplane
// polarization), each of the six edges restricts f4 to a coordinate line,
// and the real zeros of the restriction are the discriminant points.

struct QuarticEdgeReport {
    size_t wall = 0;                    // edge cell in the complex
    std::array<int, 2> kept;            // surviving homogeneous coordinates i < j
    EdgeRestriction restriction;        // x = X_i / X_j
    Factorization factorization;
    int real_roots = 0;                 // Sturm count over the whole line
    std::vector<QuadraticRoot> roots;   // ascending by value
    std::vector<double> momentum;       // numeric momentum image per root, edge chart
    bool inversion_paired = true;       // each factor's roots multiply to 1
};

struct QuarticK3Report {
    HomQuartic f4;
    ToricLogCY model;                     // 24 charge-one marks, 4 per edge
    std::vector<QuarticEdgeReport> edges; // ascending by wall cell id
    size_t discriminant_count = 0;
    ValidationReport validity;
    PositivityReport positivity;
    MPLReport mpl;                        // kink 1 on every edge
    FibrationReport fibration;
};

QuarticK3Report k3_run();

} // namespace tdeg
