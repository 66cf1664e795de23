#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace tdeg {

// Exact arithmetic base types. Everything combinatorial in this library is
// computed over Int/Rat; floating point appears only in the momentum-map
// evaluators and is clearly marked there.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }
inline int sign(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }
inline int sign(const Rat& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& r) {
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}
inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return den(r) == 1; }

// Wire format for rationals is "p/q" (or plain "p"); see docs/schemas.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

double to_double(const Rat& r);

// Element of Q(i), used for exact C*-valued gluing data.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussRat inverse() const;
    // z^k for k of either sign (z must be nonzero when k < 0).
    GaussRat pow(const Int& k) const;

    static GaussRat one() { return GaussRat(Rat(1)); }
};

} // namespace tdeg
