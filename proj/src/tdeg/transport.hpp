#pragma once

#include "tdeg/complex.hpp"

namespace tdeg {

// ---- wall crossings and parallel transport ------------------------------------
//
// Crossing a wall between two maximal cells is read off from the vertex fan
// at a chosen wall vertex: both cells flatten into that fan chart, and the
// crossing is the composite flattening.  On a one-dimensional wall the marked
// points refine this: the crossing over the segment between the i-th and
// (i+1)-th marked point differs from the crossing at the low end by the
// accumulated unit shears of the passed points.

// Geometry of a 1-dimensional wall seen from one of its maximal hosts.
struct WallFrame {
    size_t wall = 0, host = 0, other = 0;
    size_t low_vertex = 0, high_vertex = 0;  // wall endpoints by ascending chart coordinate
    IntVec direction;      // image of the ascending wall direction, primitive
    IntVec conormal;       // primitive, zero on the wall, positive toward `other`
    IntVec base_point;     // image of the low endpoint
};

WallFrame wall_frame(const PolyCellComplex& c, const ComplexIndex& ix, size_t wall, size_t host);

// Crossing derived from the vertex fan at v (any wall dimension; v a vertex
// of the wall, from/to its two maximal hosts).
AffineMapZ crossing_at_vertex(const PolyCellComplex& c, const ComplexIndex& ix,
                              size_t wall, size_t from, size_t to, size_t v);

// Crossing over mark segment s of a 1-dimensional wall; segments are numbered
// 0..m between the m marked points and the endpoints.
AffineMapZ crossing_at_segment(const PolyCellComplex& c, const ComplexIndex& ix,
                               size_t wall, size_t from, size_t to, size_t segment);

struct PathStep {
    size_t wall = 0;
    size_t to_cell = 0;
    bool at_vertex = false;
    size_t vertex = 0;     // used when at_vertex
    size_t segment = 0;    // used otherwise
};

// Composite chart transition along a path of maximal cells.  Vertex-anchored
// steps work on any wall; segment-anchored steps require the wall's marks to
// absorb its kink (else the crossing is ambiguous and the call throws).
AffineMapZ parallel_transport(const PolyCellComplex& c, const ComplexIndex& ix,
                              size_t start_cell, const std::vector<PathStep>& steps);

// ---- monodromy -----------------------------------------------------------------

struct MonodromyTransform {
    IntMat matrix;          // linear holonomy in the chart of the base maximal cell
    bool decomposed = false;
    Int kappa;              // matrix == I + kappa * direction * conormal^T when decomposed
    IntVec direction;       // primitive, from v_minus to v_plus
    IntVec conormal;        // primitive, zero on the wall, positive toward sigma_plus
    std::string note;       // reason when decomposition failed
};

// Loop around the wall based at sigma_minus: cross into sigma_plus next to
// v_minus and return next to v_plus, so the loop encircles everything the
// wall carries.  v_minus/v_plus must be vertices of the wall and
// sigma_minus/sigma_plus its two maximal hosts.
MonodromyTransform monodromy_loop(const PolyCellComplex& c, const ComplexIndex& ix,
                                  size_t wall, size_t v_minus, size_t v_plus,
                                  size_t sigma_minus, size_t sigma_plus);

// Loop around one marked point of a 1-dimensional wall.
MonodromyTransform mark_loop(const PolyCellComplex& c, const ComplexIndex& ix,
                             size_t wall, size_t mark_index,
                             size_t sigma_minus, size_t sigma_plus);

// Residual holonomy after all marked points: crossing at the last segment
// against the flattening at the high endpoint.  Identity iff the marks
// absorb the wall's kink.
MonodromyTransform wall_defect(const PolyCellComplex& c, const ComplexIndex& ix, size_t wall);

// kappa of the canonical loop (hosts in ascending index order, endpoints in
// ascending parameter order), checking that all eight orderings of
// (v_minus, v_plus) x (sigma_minus, sigma_plus) x loop base agree.
struct WallMonodromy {
    size_t wall = 0;
    bool decomposed = false;
    Int kappa;
    IntVec direction, conormal;
    bool choice_invariant = true;
};
WallMonodromy wall_monodromy(const PolyCellComplex& c, const ComplexIndex& ix, size_t wall);

} // namespace tdeg
