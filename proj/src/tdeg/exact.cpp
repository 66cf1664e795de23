#include "tdeg/exact.hpp"

#include <stdexcept>

namespace tdeg {

std::string rat_to_string(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

Rat rat_from_string(const std::string& raw) {
    auto first = raw.find_first_not_of(" \t");
    auto last = raw.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
    std::string s = raw.substr(first, last - first + 1);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + raw);
    }
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

GaussRat GaussRat::inverse() const {
    Rat n = re * re + im * im;
    if (n == 0) throw std::invalid_argument("inverse of zero in Q(i)");
    return GaussRat(re / n, -im / n);
}

GaussRat GaussRat::pow(const Int& k) const {
    GaussRat base = *this;
    Int e = k;
    if (e < 0) {
        base = base.inverse();
        e = -e;
    }
    GaussRat acc = GaussRat::one();
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

} // namespace tdeg
