#include "tdeg/intpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tdeg {

IntPoly IntPoly::from_ints(std::initializer_list<long long> v) {
    std::vector<Int> c;
    for (long long x : v) c.push_back(Int(x));
    return IntPoly(std::move(c));
}

void IntPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

const Int& IntPoly::coeff(size_t i) const {
    static const Int zero(0);
    return i < c.size() ? c[i] : zero;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c.size() + o.c.size() - 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (c.size() <= 1) return IntPoly();
    std::vector<Int> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = Int(i) * c[i];
    return IntPoly(std::move(r));
}

Rat IntPoly::eval(const Rat& x) const {
    Rat v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + Rat(c[i]);
    return v;
}

Int IntPoly::eval_int(const Int& x) const {
    Int v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& x : c) g = gcd(g, x);
    if (g != 0 && leading() < 0) g = -g;
    return g;
}

IntPoly IntPoly::primitive_part() const {
    Int g = content();
    if (g == 0) return IntPoly();
    std::vector<Int> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i] / g;
    return IntPoly(std::move(r));
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        Int a = c[i];
        if (!s.empty()) {
            s += (a > 0) ? " + " : " - ";
            a = abs_int(a);
        } else if (a < 0) {
            s += "-";
            a = -a;
        }
        if (i == 0 || a != 1) s += a.str();
        if (i > 0) {
            if (a != 1) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::optional<IntPoly> divide_exact(const IntPoly& p, const IntPoly& o) {
    if (o.is_zero()) return std::nullopt;
    if (p.is_zero()) return IntPoly();
    if (p.degree() < o.degree()) return std::nullopt;
    // rational long division, then integrality check
    std::vector<Rat> rem(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) rem[i] = Rat(p.c[i]);
    int dq = p.degree() - o.degree();
    std::vector<Rat> q(dq + 1, Rat(0));
    for (int k = dq; k >= 0; --k) {
        Rat f = rem[k + o.degree()] / Rat(o.leading());
        q[k] = f;
        for (int j = 0; j <= o.degree(); ++j) rem[k + j] -= f * Rat(o.c[j]);
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    std::vector<Int> qi(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (!is_integer(q[i])) return std::nullopt;
        qi[i] = num(q[i]);
    }
    return IntPoly(std::move(qi));
}

// pseudo-remainder based gcd (primitive PRS is overkill at this scale)
IntPoly poly_gcd(const IntPoly& a0, const IntPoly& b0) {
    IntPoly a = a0.primitive_part(), b = b0.primitive_part();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    while (!b.is_zero()) {
        // pseudo-division: lc(b)^(da-db+1) * a = q*b + r
        IntPoly r = a;
        int db = b.degree();
        while (!r.is_zero() && r.degree() >= db) {
            int shift = r.degree() - db;
            Int f = r.leading();
            std::vector<Int> scaled(r.c.size());
            for (size_t i = 0; i < r.c.size(); ++i) scaled[i] = r.c[i] * b.leading();
            IntPoly rs(std::move(scaled));
            std::vector<Int> sub(size_t(db + shift) + 1, Int(0));
            for (int i = 0; i <= db; ++i) sub[size_t(i + shift)] = b.c[i] * f;
            r = rs - IntPoly(std::move(sub));
        }
        a = b;
        b = r.primitive_part();
    }
    IntPoly g = a.primitive_part();
    if (!g.is_zero() && g.leading() < 0) {
        for (auto& x : g.c) x = -x;
    }
    return g;
}

SturmInterval SturmInterval::whole_line() {
    SturmInterval iv;
    iv.a_is_neg_inf = iv.b_is_pos_inf = true;
    return iv;
}

SturmInterval SturmInterval::closed(const Rat& a, const Rat& b) {
    SturmInterval iv;
    iv.a = a;
    iv.b = b;
    return iv;
}

static int sign_at(const IntPoly& p, const SturmInterval& iv, bool at_b) {
    if ((at_b && iv.b_is_pos_inf) || (!at_b && iv.a_is_neg_inf)) {
        int ls = sign(p.leading());
        if (!at_b && p.degree() % 2 == 1) ls = -ls;
        return ls;
    }
    return sign(p.eval(at_b ? iv.b : iv.a));
}

int sturm_count(const IntPoly& p, const SturmInterval& iv) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count of the zero polynomial");
    IntPoly g = poly_gcd(p, p.derivative());
    IntPoly f = p;
    if (g.degree() > 0) {
        auto q = divide_exact(p, g);
        if (!q) {
            // gcd is primitive; p may carry content -- divide primitive parts
            q = divide_exact(p.primitive_part(), g);
            if (!q) throw std::runtime_error("squarefree reduction failed");
        }
        f = *q;
    }
    // Sturm chain with exact pseudo-remainders, sign-corrected
    std::vector<IntPoly> chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        const IntPoly& s1 = chain[chain.size() - 2];
        const IntPoly& s2 = chain.back();
        if (s2.is_zero()) break;
        // remainder of s1 by s2 over Q, then negation; scale to integer
        std::vector<Rat> rem(s1.c.size());
        for (size_t i = 0; i < s1.c.size(); ++i) rem[i] = Rat(s1.c[i]);
        int db = s2.degree();
        if (db < 0) break;
        for (int k = s1.degree() - db; k >= 0; --k) {
            Rat f2 = rem[size_t(k + db)] / Rat(s2.leading());
            for (int j = 0; j <= db; ++j) rem[size_t(k + j)] -= f2 * Rat(s2.c[j]);
        }
        // negate, clear denominators with a positive factor
        Int l = 1;
        for (const auto& r : rem) l = lcm(l, den(r));
        std::vector<Int> ri(rem.size());
        for (size_t i = 0; i < rem.size(); ++i) ri[i] = -num(rem[i]) * (l / den(rem[i]));
        IntPoly r(std::move(ri));
        if (r.is_zero()) break;
        // remove positive content to keep numbers small (sign preserved)
        Int ct = r.content();
        if (ct < 0) ct = -ct;
        if (ct > 1)
            for (auto& x : r.c) x /= ct;
        chain.push_back(r);
        if (chain.back().degree() == 0) break;
    }

    auto variations = [&](bool at_b) {
        int v = 0, prev = 0;
        for (const auto& q : chain) {
            if (q.is_zero()) continue;
            int s = sign_at(q, iv, at_b);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations(false) - variations(true);
}

// ---- factorization ----------------------------------------------------

// all integer divisors of n (positive and negative).
static std::vector<Int> divisors_signed(const Int& n) {
    Int m = abs_int(n);
    std::vector<Int> d;
    for (Int i = 1; i * i <= m; ++i) {
        if (m % i == 0) {
            d.push_back(i);
            if (i * i != m) d.push_back(m / i);
        }
    }
    size_t k = d.size();
    for (size_t i = 0; i < k; ++i) d.push_back(-d[i]);
    std::sort(d.begin(), d.end());
    return d;
}

// Lagrange interpolation through (xs[i], ys[i]); integer result or nullopt.
static std::optional<IntPoly> interpolate_int(const std::vector<Int>& xs,
                                              const std::vector<Int>& ys) {
    size_t n = xs.size();
    std::vector<Rat> acc(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        // basis polynomial numerator prod_{j != i} (x - xs[j])
        std::vector<Rat> basis{Rat(1)};
        Rat denom = 1;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Rat> nb(basis.size() + 1, Rat(0));
            for (size_t k = 0; k < basis.size(); ++k) {
                nb[k + 1] += basis[k];
                nb[k] -= basis[k] * Rat(xs[j]);
            }
            basis = std::move(nb);
            denom *= Rat(xs[i] - xs[j]);
        }
        Rat w = Rat(ys[i]) / denom;
        for (size_t k = 0; k < basis.size(); ++k) acc[k] += w * basis[k];
    }
    std::vector<Int> ci(n);
    for (size_t k = 0; k < n; ++k) {
        if (!is_integer(acc[k])) return std::nullopt;
        ci[k] = num(acc[k]);
    }
    return IntPoly(std::move(ci));
}

// one irreducible factor of a primitive squarefree g (deg >= 1), or nullopt
// if g is irreducible.  Kronecker search over divisor tuples.
static std::optional<IntPoly> kronecker_split(const IntPoly& g) {
    int d = g.degree();
    if (d <= 1) return std::nullopt;
    // evaluation points 0, 1, -1, 2, -2, ...
    std::vector<Int> pts;
    for (int k = 0; int(pts.size()) <= d; ++k) {
        Int x = (k % 2 == 1) ? Int((k + 1) / 2) : Int(-(k / 2));
        if (g.eval_int(x) == 0) continue;   // roots handled separately
        pts.push_back(x);
    }
    for (int fd = 1; fd <= d / 2; ++fd) {
        std::vector<Int> xs(pts.begin(), pts.begin() + fd + 1);
        std::vector<std::vector<Int>> choices;
        for (const auto& x : xs) choices.push_back(divisors_signed(g.eval_int(x)));
        std::vector<size_t> idx(xs.size(), 0);
        while (true) {
            std::vector<Int> ys(xs.size());
            for (size_t i = 0; i < xs.size(); ++i) ys[i] = choices[i][idx[i]];
            // skip trivial constants
            auto h = interpolate_int(xs, ys);
            if (h && h->degree() == fd) {
                auto q = divide_exact(g, *h);
                if (q) {
                    IntPoly hh = h->primitive_part();
                    if (hh.degree() >= 1) return hh;
                }
            }
            size_t p = 0;
            while (p < idx.size() && ++idx[p] == choices[p].size()) {
                idx[p] = 0;
                ++p;
            }
            if (p == idx.size()) break;
        }
    }
    return std::nullopt;
}

static void factor_squarefree(const IntPoly& g0, std::vector<IntPoly>& out) {
    IntPoly g = g0.primitive_part();
    if (g.degree() < 1) return;
    // strip rational roots first (cheap)
    bool changed = true;
    while (changed && g.degree() >= 1) {
        changed = false;
        for (const auto& p : divisors_signed(g.coeff(0) == 0 ? Int(1) : g.coeff(0))) {
            if (g.degree() < 1) break;
            for (const auto& q : divisors_signed(g.leading())) {
                if (q == 0) continue;
                if (gcd(abs_int(p), abs_int(q)) != 1) continue;
                IntPoly lin({Int(-p), q});   // q x - p, root p/q
                lin = lin.primitive_part();
                auto quo = divide_exact(g, lin);
                if (quo) {
                    out.push_back(lin);
                    g = quo->primitive_part();
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
        if (g.degree() >= 1 && g.coeff(0) == 0) {
            out.push_back(IntPoly::from_ints({0, 1}));
            std::vector<Int> shifted(g.c.begin() + 1, g.c.end());
            g = IntPoly(std::move(shifted));
            changed = true;
        }
    }
    if (g.degree() < 1) return;
    auto h = kronecker_split(g);
    if (!h) {
        out.push_back(g);
        return;
    }
    auto q = divide_exact(g, *h);
    factor_squarefree(*h, out);
    factor_squarefree(q->primitive_part(), out);
}

Factorization factor_int_poly(const IntPoly& p) {
    if (p.degree() > 8) throw std::invalid_argument("factor_int_poly: degree above supported bound 8");
    Factorization f;
    f.content = p.content();
    f.unit = Rat(f.content);
    if (p.is_zero()) {
        f.content = 0;
        f.unit = 0;
        return f;
    }
    IntPoly g = p.primitive_part();
    if (g.degree() >= 1) {
        // squarefree part via gcd with the derivative
        IntPoly d = poly_gcd(g, g.derivative());
        IntPoly sqf = g;
        if (d.degree() >= 1) {
            auto q = divide_exact(g, d);
            if (!q) throw std::runtime_error("squarefree split failed");
            sqf = q->primitive_part();
        }
        // sqf contains each irreducible factor of g exactly once;
        // recover multiplicities by repeated exact division
        std::vector<IntPoly> irr;
        factor_squarefree(sqf, irr);
        for (auto& h : irr) {
            IntPoly t = g;
            int m = 0;
            while (true) {
                auto q = divide_exact(t, h);
                if (!q) break;
                t = *q;
                ++m;
            }
            for (int i = 0; i < m; ++i) f.factors.push_back(h);
        }
    }
    std::sort(f.factors.begin(), f.factors.end(), [](const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (size_t i = a.c.size(); i-- > 0;)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    });
    return f;
}

double QuadraticRoot::approx() const {
    double sq = std::sqrt(d.convert_to<double>());
    return (a.convert_to<double>() + b.convert_to<double>() * sq) / c.convert_to<double>();
}

std::string QuadraticRoot::str() const {
    if (b == 0) return rat_to_string(Rat(a, c));
    std::string s = "(" + a.str();
    s += (b > 0) ? " + " : " - ";
    Int ab = abs_int(b);
    if (ab != 1) s += ab.str() + "*";
    s += "sqrt(" + d.str() + "))/" + c.str();
    return s;
}

std::vector<QuadraticRoot> quadratic_roots(const IntPoly& q) {
    if (q.degree() != 2) throw std::invalid_argument("quadratic_roots: degree must be 2");
    Int A = q.coeff(2), B = q.coeff(1), C = q.coeff(0);
    Int disc = B * B - 4 * A * C;
    if (disc < 0) return {};
    // split square part out of disc
    Int sq = 1, rest = disc;
    for (Int f = 2; f * f <= rest; ++f) {
        while (rest % (f * f) == 0) {
            rest /= f * f;
            sq *= f;
        }
    }
    Int denom = 2 * A;
    std::vector<QuadraticRoot> roots;
    auto normalize = [](QuadraticRoot r) {
        if (r.c < 0) {
            r.a = -r.a;
            r.b = -r.b;
            r.c = -r.c;
        }
        Int g = gcd(gcd(abs_int(r.a), abs_int(r.b)), abs_int(r.c));
        if (g > 1) {
            r.a /= g;
            r.b /= g;
            r.c /= g;
        }
        return r;
    };
    if (disc == 0) {
        roots.push_back(normalize(QuadraticRoot{-B, 0, 1, denom}));
    } else if (rest == 1) {
        // perfect-square discriminant: two rational roots, larger first
        roots.push_back(normalize(QuadraticRoot{-B + sq, 0, 1, denom}));
        roots.push_back(normalize(QuadraticRoot{-B - sq, 0, 1, denom}));
    } else {
        roots.push_back(normalize(QuadraticRoot{-B, sq, rest, denom}));
        roots.push_back(normalize(QuadraticRoot{-B, -sq, rest, denom}));
    }
    return roots;
}

void HomQuartic::add_term(std::array<int, 4> e, const Int& v) {
    int s = e[0] + e[1] + e[2] + e[3];
    if (s != 4) throw std::invalid_argument("exponent vector of a quartic must sum to 4");
    coeff[e] += v;
    if (coeff[e] == 0) coeff.erase(e);
}

HomQuartic HomQuartic::fermat_minus_seven_sigma() {
    HomQuartic f;
    for (int i = 0; i < 4; ++i) {
        std::array<int, 4> e{0, 0, 0, 0};
        e[i] = 4;
        f.add_term(e, Int(1));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::array<int, 4> e{0, 0, 0, 0};
            e[i] = 2;
            e[j] = 2;
            f.add_term(e, Int(-7));
        }
    return f;
}

EdgeRestriction restrict_to_edge(const HomQuartic& f, int kept0, int kept1) {
    if (kept0 < 0 || kept1 > 3 || kept0 >= kept1)
        throw std::invalid_argument("edge must be given by coordinate indices 0 <= i < j <= 3");
    EdgeRestriction r;
    r.kept = {kept0, kept1};
    std::vector<Int> c(5, Int(0));
    for (const auto& [e, v] : f.coeff) {
        bool vanish = false;
        for (int k = 0; k < 4; ++k)
            if (k != kept0 && k != kept1 && e[size_t(k)] > 0) vanish = true;
        if (vanish) continue;
        c[size_t(e[size_t(kept0)])] += v;   // x = X_{kept0}/X_{kept1}
    }
    r.p = IntPoly(std::move(c));
    r.degree_dropped = r.p.degree() < 4;
    return r;
}

} // namespace tdeg
