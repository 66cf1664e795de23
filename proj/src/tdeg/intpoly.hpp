#pragma once

#include "tdeg/exact.hpp"
#include "tdeg/vec.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace tdeg {

// Univariate polynomial over Z (dense, index = exponent).
struct IntPoly {
    std::vector<Int> c;   // c[i] * x^i; normalized: no trailing zeros

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> cc) : c(std::move(cc)) { normalize(); }
    static IntPoly from_ints(std::initializer_list<long long> v);

    void normalize();
    bool is_zero() const { return c.empty(); }
    int degree() const { return c.empty() ? -1 : int(c.size()) - 1; }
    Int leading() const { return c.empty() ? Int(0) : c.back(); }
    const Int& coeff(size_t i) const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    bool operator==(const IntPoly& o) const { return c == o.c; }

    IntPoly derivative() const;
    Rat eval(const Rat& x) const;
    Int eval_int(const Int& x) const;

    Int content() const;
    IntPoly primitive_part() const;   // content removed, leading coeff > 0

    std::string str() const;          // human-readable, variable "x"
};

// Exact division: returns quotient iff o divides p exactly over Q with
// integer result.
std::optional<IntPoly> divide_exact(const IntPoly& p, const IntPoly& o);

// gcd over Q, returned as a primitive integer polynomial.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Number of distinct real roots of p in (a, b], computed by a Sturm chain on
// the squarefree part.  Endpoints may be unbounded.
struct SturmInterval {
    bool a_is_neg_inf = false, b_is_pos_inf = false;
    Rat a, b;
    static SturmInterval whole_line();
    static SturmInterval closed(const Rat& a, const Rat& b);
};
int sturm_count(const IntPoly& p, const SturmInterval& iv);

// content * product of primitive irreducible factors over Z, each with
// positive leading coefficient and listed with multiplicity, canonically
// ordered by (degree, coefficient list).  Input degree must be <= 8; the
// factor search is Kronecker interpolation, adequate at that scale.
struct Factorization {
    Rat unit;                           // overall rational content with sign
    Int content;                        // integer content with sign
    std::vector<IntPoly> factors;       // irreducible, primitive, multiplicity-expanded
};
Factorization factor_int_poly(const IntPoly& p);

// Exact quadratic root (a + b*sqrt(d)) / c with d squarefree, c > 0.
struct QuadraticRoot {
    Int a, b, d, c;
    double approx() const;
    std::string str() const;
};

// Real roots of a quadratic integer polynomial, exact.  Empty when the
// discriminant is negative.
std::vector<QuadraticRoot> quadratic_roots(const IntPoly& q);

// Homogeneous degree-4 polynomial in X0..X3 with integer coefficients,
// keyed by exponent vectors summing to 4.
struct HomQuartic {
    std::map<std::array<int, 4>, Int> coeff;

    void add_term(std::array<int, 4> e, const Int& v);
    static HomQuartic fermat_minus_seven_sigma();   // X0^4+..+X3^4 - 7*sum X_i^2 X_j^2
};

// Restriction of a homogeneous quartic to the coordinate line where the two
// coordinates *not* in `kept` vanish; dehomogenized in x = X_kept0 / X_kept1
// (kept0 < kept1).
struct EdgeRestriction {
    std::array<int, 2> kept;
    IntPoly p;            // univariate restriction
    bool degree_dropped;  // true iff deg < 4 (root escaped to the boundary)
};
EdgeRestriction restrict_to_edge(const HomQuartic& f, int kept0, int kept1);

} // namespace tdeg
