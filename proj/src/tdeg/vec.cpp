#include "tdeg/vec.hpp"

#include <stdexcept>

namespace tdeg {

static void check_dims(size_t a, size_t b, const char* op) {
    if (a != b) throw std::invalid_argument(std::string("dimension mismatch in ") + op);
}

IntVec add(const IntVec& a, const IntVec& b) {
    check_dims(a.size(), b.size(), "add");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    check_dims(a.size(), b.size(), "sub");
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec neg(const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

IntVec scale(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

Int dot(const IntVec& a, const IntVec& b) {
    check_dims(a.size(), b.size(), "dot");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
    check_dims(a.size(), b.size(), "dot");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
    check_dims(a.size(), b.size(), "dot");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

bool is_zero(const IntVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

Int content(const IntVec& a) {
    Int g = 0;
    for (const auto& x : a) g = gcd(g, x);
    return g;
}

IntVec primitive(const IntVec& a) {
    Int g = content(a);
    if (g == 0 || g == 1) return a;
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
    return r;
}

RatVec add(const RatVec& a, const RatVec& b) {
    check_dims(a.size(), b.size(), "add");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
    check_dims(a.size(), b.size(), "sub");
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec scale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

bool is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

RatVec to_rat(const IntVec& a) {
    RatVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
    return r;
}

IntVec primitive_of_rat(const RatVec& a) {
    Int l = 1;
    for (const auto& x : a) l = lcm(l, den(x));
    IntVec v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[i] = num(a[i]) * (l / den(a[i]));
    return primitive(v);
}

bool lex_less(const IntVec& a, const IntVec& b) {
    check_dims(a.size(), b.size(), "lex_less");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

bool lex_less(const RatVec& a, const RatVec& b) {
    check_dims(a.size(), b.size(), "lex_less");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

std::string vec_str(const IntVec& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].str();
    }
    return s + ")";
}

std::string vec_str(const RatVec& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(a[i]);
    }
    return s + ")";
}

} // namespace tdeg
