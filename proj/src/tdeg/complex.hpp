#pragma once

#include "tdeg/fan.hpp"
#include "tdeg/polytope.hpp"

#include <map>
#include <string>
#include <vector>

namespace tdeg {

// ---- integral affine cell complexes -----------------------------------------
//
// Cells are abstract full-dimensional lattice polytopes, each in its own
// chart Z^dim(cell); the complex is glued by explicit face inclusions.  The
// affine structure across a codim-1 wall is carried by the vertex fans: at
// every vertex each adjacent maximal cell is flattened into a common
// complete (or reported-incomplete) fan chart, and wall crossings are read
// off from those flattenings.  Marked points on one-dimensional walls carry
// integer charges that distribute the wall's monodromy along it.

struct CellInclusion {
    size_t face = 0, host = 0;
    AffineMapZ embed;    // chart(face) -> chart(host), lattice-preserving, image a face
};

struct MarkedPoint {
    Rat position;        // chart coordinate inside a 1-dimensional wall
    Int charge;
};

struct VertexCellChart {
    size_t max_cell = 0;
    AffineMapZ chart;    // chart(max_cell) -> fan chart, vertex |-> 0, unimodular
};

struct VertexFanData {
    size_t vertex = 0;   // index of a 0-dimensional cell
    Fan fan;
    std::vector<VertexCellChart> charts;
};

struct PolyCellComplex {
    size_t dim = 0;
    std::vector<Polytope> cells;
    std::vector<CellInclusion> inclusions;            // all strict face pairs
    std::vector<std::vector<MarkedPoint>> marks;       // per cell, ascending positions
    std::vector<VertexFanData> vertex_fans;            // one per vertex cell
};

// ---- derived lookups ---------------------------------------------------------

struct ComplexIndex {
    std::vector<size_t> cell_dims;
    std::vector<size_t> maximal;                       // cells of dim == complex dim
    std::vector<size_t> walls;                         // cells of dim == complex dim - 1
    std::vector<std::vector<size_t>> hosts;            // per cell: cells it is included into
    std::vector<std::vector<size_t>> faces;            // per cell: cells included into it
    std::map<std::pair<size_t, size_t>, AffineMapZ> embed;   // (face, host)
    std::map<size_t, std::vector<size_t>> wall_hosts;  // wall -> its maximal hosts, ascending
    std::vector<std::vector<size_t>> vertices_of;      // per cell: vertex cells (itself if dim 0)
    std::map<size_t, size_t> fan_of_vertex;            // vertex cell -> index into vertex_fans
};

ComplexIndex build_index(const PolyCellComplex& c);

// Exact position of vertex cell v inside cell sigma's chart.
IntVec vertex_position_in(const PolyCellComplex& c, const ComplexIndex& ix, size_t v, size_t sigma);

// ---- validation --------------------------------------------------------------

struct ComplexViolation {
    std::string check;    // which invariant
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ComplexViolation> violations;
};

// Checks: cells are full-dimensional lattice polytopes; inclusions are
// lattice isomorphisms onto faces, listed once per proper face, composing
// consistently; codim-1 cells have exactly two maximal hosts; vertex fans
// are complete with coherent unimodular charts; marks sit in wall interiors.
// Violations are data, not exceptions.
ValidationReport validate_complex(const PolyCellComplex& c);

// ---- builders ----------------------------------------------------------------

// Boundary complex of a full-dimensional lattice polytope: the barycenter is
// translated to the origin and denominators cleared (the origin must end up
// interior); cells are the proper faces; the vertex fan at v is the image of
// the faces containing v under the projection along the ray through v.
PolyCellComplex build_boundary_complex(const Polytope& xi);

// Two 2-dimensional cells glued along the wall [0, L] x {0} with the given
// marked points, plus a built-in geometric kink: the vertex flattenings at
// the two wall endpoints differ by that many unit shears.  The wall is
// consistent iff geometric_kink equals the total marked charge.
PolyCellComplex build_wall_neighborhood_model(const Int& wall_length,
                                              const std::vector<MarkedPoint>& wall_marks,
                                              const Int& geometric_kink);

} // namespace tdeg
