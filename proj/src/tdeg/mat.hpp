#pragma once

#include "tdeg/vec.hpp"

#include <optional>
#include <vector>

namespace tdeg {

// Dense integer matrix, row major.  Sized for desk-scale lattice work
// (dimensions <= ~8); all arithmetic exact.
struct IntMat {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

    static IntMat identity(size_t n);
    static IntMat from_rows(const std::vector<IntVec>& rs);
    static IntMat from_cols(const std::vector<IntVec>& cs);

    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }

    IntVec row(size_t i) const;
    IntVec col(size_t j) const;
    std::vector<IntVec> row_list() const;
    std::vector<IntVec> col_list() const;

    IntMat transpose() const;
    IntMat mul(const IntMat& o) const;
    IntVec apply(const IntVec& v) const;          // this * v
    RatVec apply(const RatVec& v) const;
    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    bool is_identity() const;
    std::string str() const;
};

// Fraction-free determinant (Bareiss).
Int det(const IntMat& m);

Int rank_of(const IntMat& m);

// Smith normal form: u * m * v == d with u, v unimodular and d diagonal,
// d(0,0) | d(1,1) | ... , all diagonal entries >= 0.
struct SmithResult {
    IntMat u, d, v;
    size_t rank = 0;
    std::vector<Int> divisors;   // the nonzero diagonal entries, in order
};
SmithResult smith_normal_form(const IntMat& m);

// Inverse of a unimodular matrix (throws if |det| != 1).
IntMat inverse_unimodular(const IntMat& m);

// Solution structure of m * x = b over the integers.
struct LinearSolution {
    bool solvable = false;
    IntVec particular;              // one solution when solvable
    std::vector<IntVec> kernel;     // basis of the integer kernel of m
};
LinearSolution solve_integer_linear(const IntMat& m, const IntVec& b);

// Basis of {x in Z^cols : m x = 0}; saturated by construction.
std::vector<IntVec> kernel_basis(const IntMat& m);

// Saturation of the subgroup generated by `gens` in Z^n: the unique largest
// sublattice of the same rank, returned as a basis.  Deterministic.
std::vector<IntVec> saturate_sublattice(const std::vector<IntVec>& gens, size_t n);

// Does v lie in the subgroup of Z^n generated by gens?
bool in_lattice_span(const std::vector<IntVec>& gens, const IntVec& v);

// Extends a basis of a saturated sublattice to a basis of Z^n.  The first
// `basis.size()` columns of the result are the given vectors.
IntMat complete_to_unimodular(const std::vector<IntVec>& basis, size_t n);

// z |-> linear * z + translation with exact integer entries.
struct AffineMapZ {
    IntMat linear;
    IntVec translation;

    static AffineMapZ identity(size_t n);
    IntVec apply(const IntVec& v) const;
    RatVec apply(const RatVec& v) const;
    IntVec apply_vector(const IntVec& v) const;   // linear part only
    AffineMapZ compose(const AffineMapZ& inner) const;  // this after inner
    AffineMapZ inverse() const;                   // requires unimodular linear part
    bool operator==(const AffineMapZ& o) const {
        return linear == o.linear && translation == o.translation;
    }
    bool is_identity() const;
};

} // namespace tdeg
