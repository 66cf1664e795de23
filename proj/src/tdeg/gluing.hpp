#pragma once

#include "tdeg/complex.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tdeg {

// ---- exact multiplicative coefficients -----------------------------------------
//
// The coefficient group is the nonzero Gaussian rationals Q(i)^x: exact,
// closed under products and inverses, and dense enough for every check here.
// Unit-circle phases beyond the fourth roots of unity are out of scope.

struct CStarValue {
    Rat re, im;   // not both zero

    bool operator==(const CStarValue& o) const { return re == o.re && im == o.im; }
    bool operator!=(const CStarValue& o) const { return !(*this == o); }
};

CStarValue cstar(long long re, long long im = 0);
CStarValue cstar(const Rat& re, const Rat& im);
bool cstar_is_zero(const CStarValue& a);
bool cstar_is_one(const CStarValue& a);
CStarValue cstar_mul(const CStarValue& a, const CStarValue& b);
CStarValue cstar_inv(const CStarValue& a);                    // throws on zero
CStarValue cstar_pow(const CStarValue& a, const Int& k);
std::string cstar_str(const CStarValue& a);

// Element of Lambda_sigma (x) C^* in the chart basis of a reference maximal
// cell: one multiplicative coordinate per basis vector.
using TorusElement = std::vector<CStarValue>;

TorusElement torus_identity(size_t n);
bool torus_is_identity(const TorusElement& s);
TorusElement torus_mul(const TorusElement& a, const TorusElement& b);
TorusElement torus_inv(const TorusElement& a);
// (A (x) 1)(s)_k = prod_j s_j^{A_{kj}}: the action of a lattice map on
// Lambda (x) C^*; A need not be square.
TorusElement torus_transport(const IntMat& a, const TorusElement& s);

// ---- canonical chart identifications -------------------------------------------
//
// A fixed spanning tree of the dual graph (maximal cells, adjacent across
// two-sided walls, crossings taken at the smallest wall vertex) identifies
// every maximal-cell chart with the chart of one root cell.  All multi-chart
// comparisons below are made through these identifications; honest sheaf
// sections are transport-independent, so the tree choice is immaterial for
// them, and for arbitrary test data it fixes one definite convention.

struct ChartSystem {
    size_t root = 0;
    std::map<size_t, AffineMapZ> to_root;   // per maximal cell: chart -> root chart
};

ChartSystem build_chart_system(const PolyCellComplex& c, const ComplexIndex& ix);

// Smallest maximal cell containing tau (tau itself when maximal): the
// reference chart in which values attached to tau are stored.
size_t reference_cell(const ComplexIndex& ix, size_t tau, size_t complex_dim);

// ---- PM tuples and open gluing data ---------------------------------------------

// A tuple (s_v), one torus element per vertex of tau, written in the chart
// of a maximal reference cell sigma >= tau.
struct PMTuple {
    size_t tau = 0;
    size_t sigma = 0;
    std::map<size_t, TorusElement> values;   // keyed by vertex cell
};

struct PMMembershipReport {
    bool member = true;
    size_t omega = 0, v = 0, w = 0;   // first failing face and vertex pair
    std::string detail;
};

// For every face omega <= tau and vertices v, w of omega the ratio
// s_v * s_w^{-1} must lie in Lambda_omega (x) C^*: expressed in a basis of
// the reference chart adapted to the saturated face sublattice, all
// components beyond rank(Lambda_omega) must be 1.
PMMembershipReport pm_membership(const PolyCellComplex& c, const ComplexIndex& ix, const PMTuple& t);

// One PM tuple per strict face inclusion (face, host); identity inclusions
// carry the constant tuple 1 implicitly.
struct OpenGluingData {
    std::map<std::pair<size_t, size_t>, PMTuple> tuples;
};

struct GluingViolation {
    std::string check;
    std::string detail;
};

struct GluingReport {
    bool ok = true;
    std::vector<GluingViolation> violations;
};

// Shape, per-tuple membership, and the composition law
// s_{f.e} = s_f * s_e across every composable chain of inclusions, compared
// in the root chart (equivalent to comparing in every maximal chart, since
// the identifications are isomorphisms).
GluingReport check_open_gluing(const PolyCellComplex& c, const ComplexIndex& ix,
                               const ChartSystem& cs, const OpenGluingData& g);

// Open gluing data induced by a cell cochain t (root-chart values, one per
// cell): s_{e: omega -> tau} is the constant tuple t_tau * t_omega^{-1}.
OpenGluingData open_gluing_from_cell_cochain(const PolyCellComplex& c, const ComplexIndex& ix,
                                             const ChartSystem& cs,
                                             const std::vector<TorusElement>& t);

// ---- lifted gluing data ----------------------------------------------------------
//
// Cech 1-cochain on the cover by open stars of barycenters: one section per
// nerve edge (omega, tau) for every strict face pair, stored in the chart of
// reference_cell(tau).

struct LiftedGluingData {
    std::map<std::pair<size_t, size_t>, TorusElement> sections;
};

// Shape; monodromy invariance: a section over W_(v, rho) sees every marked
// point on the v-side half of the wall rho, and must satisfy z^charge = 1
// for z the conormal pairing of the section; cocycle identity
// s_{omega tau'} = s_{tau tau'} * s_{omega tau} over every chain
// omega < tau < tau', compared in the root chart.
GluingReport check_lifted_cocycle(const PolyCellComplex& c, const ComplexIndex& ix,
                                  const ChartSystem& cs, const LiftedGluingData& l);

// Coboundary of a 0-cochain (one torus element per cell, in the chart of its
// reference cell): (delta t)_{omega, tau} = t_tau * t_omega^{-1}.
LiftedGluingData coboundary_of(const PolyCellComplex& c, const ComplexIndex& ix,
                               const ChartSystem& cs, const std::vector<TorusElement>& t);

struct CoboundaryReport {
    bool coboundary = false;
    std::vector<TorusElement> cochain;            // per cell, reference-chart values
    std::pair<size_t, size_t> obstructed_edge{0, 0};
    std::string detail;
};

// Spanning-tree trivialization over the nerve graph: solve for the 0-cochain
// along a tree, then verify every off-tree edge; reports the first
// obstructed edge on failure.
CoboundaryReport is_coboundary(const PolyCellComplex& c, const ComplexIndex& ix,
                               const ChartSystem& cs, const LiftedGluingData& l);

} // namespace tdeg
