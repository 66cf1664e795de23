#pragma once

#include "tdeg/exact.hpp"

#include <vector>

namespace tdeg {

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec neg(const IntVec& a);
IntVec scale(const Int& c, const IntVec& a);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const IntVec& a, const RatVec& b);

bool is_zero(const IntVec& a);

// gcd of the entries (0 for the zero vector).
Int content(const IntVec& a);

// a / content(a); the zero vector is returned unchanged.
// The sign is normalized so the first nonzero entry keeps its sign.
IntVec primitive(const IntVec& a);

RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& c, const RatVec& a);
bool is_zero(const RatVec& a);
RatVec to_rat(const IntVec& a);

// Clears denominators and divides by content: the primitive integer vector
// spanning the same ray.  Zero stays zero.
IntVec primitive_of_rat(const RatVec& a);

// Lexicographic comparison, used for canonical orderings throughout.
bool lex_less(const IntVec& a, const IntVec& b);
bool lex_less(const RatVec& a, const RatVec& b);

std::string vec_str(const IntVec& a);
std::string vec_str(const RatVec& a);

} // namespace tdeg
