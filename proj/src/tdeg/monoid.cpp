#include "tdeg/monoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace tdeg {

namespace {

// Lattice points of the box [lo, hi], componentwise.  n == 0 yields the
// single empty point.
std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi) {
    size_t n = lo.size();
    Int count = 1;
    for (size_t j = 0; j < n; ++j) {
        Int w = hi[j] - lo[j] + 1;
        if (w <= 0) return {};
        count *= w;
        if (count > 2000000) throw std::runtime_error("candidate box for the minimal generating set is too large");
    }
    std::vector<IntVec> out;
    IntVec cur = lo;
    while (true) {
        out.push_back(cur);
        size_t j = 0;
        while (j < n) {
            cur[j] += 1;
            if (cur[j] <= hi[j]) break;
            cur[j] = lo[j];
            ++j;
        }
        if (j == n) break;
    }
    return out;
}

// Minimal generating set of c cap Z^n for a pointed cone c.
//
// Every element decomposes into irreducibles, and every irreducible lies in
// the zonotope sum of the primitive extreme rays with coefficients in [0,1]
// (otherwise one whole ray could be split off).  So it suffices to collect
// the lattice points of the zonotope's bounding box that lie in the cone and
// keep exactly those with no proper decomposition p = q + (p - q) against
// the same candidate list.
std::vector<IntVec> pointed_hilbert_basis(const Cone& c) {
    if (c.rays.empty()) return {};
    size_t n = c.n;
    IntVec lo(n, Int(0)), hi(n, Int(0));
    for (const auto& r : c.rays)
        for (size_t j = 0; j < n; ++j) {
            if (r[j] < 0) lo[j] += r[j];
            else hi[j] += r[j];
        }
    std::vector<IntVec> cands;
    for (auto& p : box_points(lo, hi)) {
        if (is_zero(p)) continue;
        if (cone_contains(c, p)) cands.push_back(std::move(p));
    }
    std::vector<IntVec> basis;
    for (const auto& p : cands) {
        bool reducible = false;
        for (const auto& q : cands) {
            if (q == p) continue;
            if (cone_contains(c, sub(p, q))) { reducible = true; break; }
        }
        if (!reducible) basis.push_back(p);
    }
    std::sort(basis.begin(), basis.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    return basis;
}

Int total_degree(const IntVec& x) {
    Int s = 0;
    for (const auto& v : x) s += v;
    return s;
}

bool componentwise_ge(const IntVec& a, const IntVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

} // namespace

ToricMonoid toric_monoid_from_fan_cone(const Cone& sigma) {
    return ToricMonoid{dual_cone(sigma)};
}

HilbertBasisResult hilbert_basis(const Cone& c) {
    HilbertBasisResult res;
    if (c.lineality.empty()) {
        res.basis = pointed_hilbert_basis(c);
        return res;
    }
    // Invertible elements form the lattice spanned by the lineality space.
    // Compute the basis for the sharp quotient and lift it back along the
    // integral section x' |-> U * (0, x').
    res.unit_basis = c.lineality;
    size_t n = c.n, l = c.lineality.size();
    IntMat u = complete_to_unimodular(c.lineality, n);
    IntMat uinv = inverse_unimodular(u);
    std::vector<IntVec> qgens;
    for (const auto& r : c.rays) {
        IntVec y = uinv.apply(r);
        qgens.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(l), y.end());
    }
    Cone qc = cone_from_rays(n - l, qgens);
    if (!cone_is_pointed(qc)) throw std::runtime_error("internal: quotient by the unit lattice is not pointed");
    for (const auto& b : pointed_hilbert_basis(qc)) {
        IntVec coords(n, Int(0));
        for (size_t j = 0; j < b.size(); ++j) coords[l + j] = b[j];
        res.basis.push_back(u.apply(coords));
    }
    std::sort(res.basis.begin(), res.basis.end(), [](const IntVec& a, const IntVec& b) { return lex_less(a, b); });
    return res;
}

// ---- groupification --------------------------------------------------------

namespace {

void validate_presentation(const PresentedMonoid& m) {
    for (const auto& [lhs, rhs] : m.rels) {
        if (lhs.size() != m.gens || rhs.size() != m.gens)
            throw std::invalid_argument("relation arity does not match the generator count");
        for (const auto& e : lhs)
            if (e < 0) throw std::invalid_argument("negative exponent in a relation");
        for (const auto& e : rhs)
            if (e < 0) throw std::invalid_argument("negative exponent in a relation");
    }
}

std::vector<IntVec> relation_differences(const PresentedMonoid& m) {
    std::vector<IntVec> diffs;
    for (const auto& [lhs, rhs] : m.rels) {
        IntVec d = sub(lhs, rhs);
        if (!is_zero(d)) diffs.push_back(d);
    }
    return diffs;
}

} // namespace

Groupification groupify(const PresentedMonoid& m) {
    validate_presentation(m);
    size_t k = m.gens;
    std::vector<IntVec> diffs = relation_differences(m);
    Groupification g;
    if (diffs.empty()) {
        g.rank = k;
        for (size_t i = 0; i < k; ++i) {
            IntVec e(k, Int(0));
            e[i] = 1;
            g.gen_images.push_back(e);
        }
        return g;
    }
    SmithResult s = smith_normal_form(IntMat::from_cols(diffs));
    size_t r = s.rank;
    g.rank = k - r;
    std::vector<size_t> torsion_rows;
    for (size_t i = 0; i < r; ++i)
        if (s.divisors[i] > 1) {
            g.torsion.push_back(s.divisors[i]);
            torsion_rows.push_back(i);
        }
    for (size_t i = 0; i < k; ++i) {
        IntVec y = s.u.col(i);   // image of e_i in the adapted coordinates
        IntVec img;
        for (size_t j = r; j < k; ++j) img.push_back(y[j]);
        for (size_t t = 0; t < torsion_rows.size(); ++t) {
            Int d = s.divisors[torsion_rows[t]];
            Int v = y[torsion_rows[t]] % d;
            if (v < 0) v += d;
            img.push_back(v);
        }
        g.gen_images.push_back(img);
    }
    return g;
}

// ---- membership ------------------------------------------------------------

bool in_monoid_span(const std::vector<IntVec>& gens_in, const IntVec& x) {
    size_t n = x.size();
    std::vector<IntVec> gens;
    for (const auto& g : gens_in) {
        if (g.size() != n) throw std::invalid_argument("generator dimension mismatch");
        if (!is_zero(g)) gens.push_back(g);
    }
    if (is_zero(x)) return true;
    if (gens.empty()) return false;
    Cone hull = cone_from_rays(n, gens);
    if (!cone_is_pointed(hull))
        throw std::invalid_argument("membership search needs a pointed generator cone");
    if (!cone_contains(hull, x)) return false;
    // A functional strictly positive on the hull minus the origin bounds
    // every coefficient in a decomposition.
    Cone dual = dual_cone(hull);
    IntVec w(n, Int(0));
    for (const auto& r : dual.rays) w = add(w, r);
    std::vector<Int> wg;
    for (const auto& g : gens) {
        Int v = dot(w, g);
        if (v <= 0) throw std::runtime_error("internal: positivity functional is not strict");
        wg.push_back(v);
    }
    std::map<std::pair<size_t, IntVec>, bool> memo;
    std::function<bool(size_t, const IntVec&)> rec = [&](size_t i, const IntVec& rem) -> bool {
        if (is_zero(rem)) return true;
        if (i == gens.size()) return false;
        auto key = std::make_pair(i, rem);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool ok = false;
        Int wr = dot(w, rem);
        if (wr > 0) {
            for (Int a = wr / wg[i]; a >= 0 && !ok; --a) {
                IntVec next = rem;
                for (size_t j = 0; j < n; ++j) next[j] -= a * gens[i][j];
                ok = rec(i + 1, next);
            }
        }
        memo[key] = ok;
        return ok;
    };
    return rec(0, x);
}

// ---- classification ---------------------------------------------------------

std::string tri_str(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "undetermined";
    }
}

namespace {

// Congruence closure of the relation rewriting system on the simplex of
// exponent vectors with total degree <= bound.  A class is "exact" when no
// member has a rewrite that leaves the simplex: such classes are complete,
// so failing to merge two exact classes is a certificate.
struct CongruenceClosure {
    std::vector<IntVec> pts;
    std::map<IntVec, size_t> index;
    std::vector<size_t> uf;
    std::vector<char> class_escapes;   // indexed by root

    size_t find(size_t i) {
        while (uf[i] != i) {
            uf[i] = uf[uf[i]];
            i = uf[i];
        }
        return i;
    }
};

void enum_simplex(size_t k, unsigned remaining, size_t pos, IntVec& cur, std::vector<IntVec>& out) {
    if (pos == k) {
        out.push_back(cur);
        return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
        cur[pos] = Int(v);
        enum_simplex(k, remaining - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

CongruenceClosure close_congruence(const PresentedMonoid& m, unsigned bound) {
    CongruenceClosure c;
    IntVec cur(m.gens, Int(0));
    enum_simplex(m.gens, bound, 0, cur, c.pts);
    if (c.pts.size() > 500000)
        throw std::invalid_argument("degree bound too large for this many generators");
    for (size_t i = 0; i < c.pts.size(); ++i) c.index.emplace(c.pts[i], i);
    c.uf.resize(c.pts.size());
    for (size_t i = 0; i < c.uf.size(); ++i) c.uf[i] = i;
    std::vector<char> pt_escapes(c.pts.size(), 0);
    std::vector<std::pair<IntVec, IntVec>> moves;
    for (const auto& [lhs, rhs] : m.rels) {
        moves.emplace_back(lhs, rhs);
        moves.emplace_back(rhs, lhs);
    }
    for (size_t i = 0; i < c.pts.size(); ++i)
        for (const auto& [lhs, rhs] : moves) {
            if (!componentwise_ge(c.pts[i], lhs)) continue;
            IntVec y = add(sub(c.pts[i], lhs), rhs);
            if (total_degree(y) > bound) {
                pt_escapes[i] = 1;
                continue;
            }
            size_t a = c.find(i), b = c.find(c.index.at(y));
            if (a != b) c.uf[a] = b;
        }
    c.class_escapes.assign(c.pts.size(), 0);
    for (size_t i = 0; i < c.pts.size(); ++i)
        if (pt_escapes[i]) c.class_escapes[c.find(i)] = 1;
    return c;
}

// Canonical key of x + L where L is the lattice of relation differences:
// adapted coordinates U x, reduced modulo the diagonal divisors.
struct CosetKeyer {
    bool trivial = true;
    IntMat u;
    size_t rank = 0;
    std::vector<Int> divisors;

    static CosetKeyer make(const std::vector<IntVec>& diffs) {
        CosetKeyer k;
        if (diffs.empty()) return k;
        SmithResult s = smith_normal_form(IntMat::from_cols(diffs));
        k.trivial = false;
        k.u = s.u;
        k.rank = s.rank;
        k.divisors = s.divisors;
        return k;
    }

    IntVec key(const IntVec& x) const {
        if (trivial) return x;
        IntVec y = u.apply(x);
        IntVec out;
        for (size_t i = 0; i < rank; ++i) {
            Int v = y[i] % divisors[i];
            if (v < 0) v += divisors[i];
            out.push_back(v);
        }
        for (size_t i = rank; i < y.size(); ++i) out.push_back(y[i]);
        return out;
    }
};

Tri integral_verdict(const PresentedMonoid& m, CongruenceClosure& cl, unsigned bound, std::string& note) {
    CosetKeyer keyer = CosetKeyer::make(relation_differences(m));
    std::map<IntVec, std::vector<size_t>> buckets;
    for (size_t i = 0; i < cl.pts.size(); ++i) buckets[keyer.key(cl.pts[i])].push_back(i);
    bool truncated = false;
    for (const auto& [key, members] : buckets) {
        (void)key;
        if (members.size() < 2) continue;
        std::map<size_t, size_t> group_rep;   // class root -> lex-least member
        for (size_t i : members) {
            size_t root = cl.find(i);
            auto it = group_rep.find(root);
            if (it == group_rep.end() || lex_less(cl.pts[i], cl.pts[it->second])) group_rep[root] = i;
        }
        if (group_rep.size() < 2) continue;
        std::vector<size_t> exact;
        for (const auto& [root, rep] : group_rep) {
            if (!cl.class_escapes[root]) exact.push_back(rep);
            if (exact.size() == 2) break;
        }
        if (exact.size() >= 2) {
            note = "exponents " + vec_str(cl.pts[exact[0]]) + " and " + vec_str(cl.pts[exact[1]]) +
                   " have the same groupification image but are not congruent, so cancellation fails";
            return Tri::no;
        }
        truncated = true;
    }
    if (truncated) {
        note = "congruence closure truncated at total degree " + std::to_string(bound);
        return Tri::undetermined;
    }
    return Tri::yes;
}

Tri saturated_verdict(const Groupification& g, Tri integral, std::string& note) {
    if (integral == Tri::no) {
        note = "not integral";
        return Tri::no;
    }
    if (integral == Tri::undetermined) {
        note = "integrality undetermined";
        return Tri::undetermined;
    }
    if (g.torsion.empty()) {
        if (g.rank == 0) return Tri::yes;   // trivial monoid
        std::vector<IntVec> imgs;
        for (const auto& gi : g.gen_images)
            if (!is_zero(gi)) imgs.push_back(gi);
        if (imgs.empty()) return Tri::yes;
        Cone hull = cone_from_rays(g.rank, imgs);
        if (!cone_is_pointed(hull)) {
            note = "cone hull of the generators has invertible directions; not decided";
            return Tri::undetermined;
        }
        for (const auto& h : hilbert_basis(hull).basis) {
            if (in_monoid_span(imgs, h)) continue;
            Int mult = 0;
            for (Int t = 2; t <= 4096; ++t)
                if (in_monoid_span(imgs, scale(t, h))) {
                    mult = t;
                    break;
                }
            note = "lattice point " + vec_str(h) + " of the cone hull lies outside the monoid";
            if (mult > 0) note += " although " + mult.str() + " times it lies inside";
            return Tri::no;
        }
        return Tri::yes;
    }
    if (g.rank == 0) {
        // Finite groupification: every element has a multiple equal to the
        // identity, so saturation means the monoid fills the whole group.
        Int order = 1;
        for (const auto& d : g.torsion) order *= d;
        if (order > 200000) {
            note = "torsion group too large to enumerate";
            return Tri::undetermined;
        }
        auto reduce = [&](IntVec v) {
            for (size_t i = 0; i < g.torsion.size(); ++i) {
                v[i] %= g.torsion[i];
                if (v[i] < 0) v[i] += g.torsion[i];
            }
            return v;
        };
        std::set<IntVec> image;
        std::vector<IntVec> frontier{IntVec(g.torsion.size(), Int(0))};
        image.insert(frontier[0]);
        while (!frontier.empty()) {
            IntVec x = frontier.back();
            frontier.pop_back();
            for (const auto& gi : g.gen_images) {
                IntVec y = reduce(add(x, gi));
                if (image.insert(y).second) frontier.push_back(y);
            }
        }
        if (Int(image.size()) == order) return Tri::yes;
        // find a class outside the image
        IntVec witness;
        IntVec cur(g.torsion.size(), Int(0));
        std::function<bool(size_t)> scan = [&](size_t pos) -> bool {
            if (pos == g.torsion.size()) {
                if (!image.count(cur)) {
                    witness = cur;
                    return true;
                }
                return false;
            }
            for (Int v = 0; v < g.torsion[pos]; ++v) {
                cur[pos] = v;
                if (scan(pos + 1)) return true;
            }
            cur[pos] = 0;
            return false;
        };
        scan(0);
        note = "torsion class " + vec_str(witness) + " is outside the monoid although a multiple of it is the identity";
        return Tri::no;
    }
    note = "mixed free and torsion groupification; not decided";
    return Tri::undetermined;
}

} // namespace

MonoidClassification classify_presented(const PresentedMonoid& m, unsigned degree_bound) {
    validate_presentation(m);
    MonoidClassification out;
    Groupification g = groupify(m);
    CongruenceClosure cl = close_congruence(m, degree_bound);
    out.integral = integral_verdict(m, cl, degree_bound, out.integral_note);
    out.fine = out.integral;   // finitely generated by construction
    out.saturated = saturated_verdict(g, out.integral, out.saturated_note);
    if (!g.torsion.empty()) {
        out.toric_note = "groupification has torsion";
        out.toric = Tri::no;
    } else if (out.fine == Tri::no || out.saturated == Tri::no) {
        out.toric_note = out.fine == Tri::no ? "not fine" : "not saturated";
        out.toric = Tri::no;
    } else if (out.fine == Tri::undetermined || out.saturated == Tri::undetermined) {
        out.toric = Tri::undetermined;
    } else {
        out.toric = Tri::yes;
    }
    return out;
}

MonoidClassification classify_toric(const ToricMonoid&) {
    // Lattice points of a rational cone: cancellative inside the ambient
    // lattice, finitely generated by Gordan's argument, saturated because
    // cones absorb positive multiples, and the group is free.
    MonoidClassification out;
    out.integral = out.fine = out.saturated = out.toric = Tri::yes;
    return out;
}

// ---- stalks ----------------------------------------------------------------

namespace {

// Sharp quotient: kill the subspace spanned by `killed_basis` (a saturated
// lattice basis) and present what remains of the monoid cone.
GhostStalk ghost_from_quotient(const Cone& monoid_cone, const std::vector<IntVec>& killed_basis) {
    size_t n = monoid_cone.n, l = killed_basis.size();
    Cone ghost_cone;
    if (l == 0) {
        ghost_cone = monoid_cone;
    } else {
        IntMat u = complete_to_unimodular(killed_basis, n);
        IntMat uinv = inverse_unimodular(u);
        auto project = [&](const IntVec& x) {
            IntVec y = uinv.apply(x);
            return IntVec(y.begin() + static_cast<std::ptrdiff_t>(l), y.end());
        };
        std::vector<IntVec> qgens;
        for (const auto& r : monoid_cone.rays) qgens.push_back(project(r));
        for (const auto& v : monoid_cone.lineality) {
            IntVec p = project(v);
            qgens.push_back(p);
            qgens.push_back(neg(p));
        }
        ghost_cone = cone_from_rays(n - l, qgens);
    }
    if (!cone_is_pointed(ghost_cone))
        throw std::runtime_error("internal: sharpened stalk still has invertible elements");
    GhostStalk out;
    out.rank = cone_dim(ghost_cone);
    out.generators = hilbert_basis(ghost_cone).basis;
    if (!out.generators.empty())
        out.relation_basis = kernel_basis(IntMat::from_cols(out.generators));
    return out;
}

} // namespace

GhostStalk associated_log_stalk(const LogStalk& s) {
    const Cone& c = s.chart.cone;
    size_t n = c.n;
    if (!c.lineality.empty())
        throw std::invalid_argument("chart monoid with invertible elements is not supported");
    std::vector<IntVec> fgens;
    for (const auto& f : s.unit_face_gens) {
        if (f.size() != n || !cone_contains(c, f))
            throw std::invalid_argument("unit generator outside the chart monoid");
        if (!is_zero(f)) fgens.push_back(f);
    }
    Cone face = minimal_face_containing(c, cone_from_rays(n, fgens));
    // Face condition: the submonoid generated by the unit generators must
    // exhaust the lattice points of the face they span; otherwise some sum
    // lands in the face with a summand outside it.
    for (const auto& h : hilbert_basis(face).basis)
        if (!in_monoid_span(fgens, h))
            throw std::invalid_argument("unit generators do not span a face of the chart monoid");
    std::vector<IntVec> killed = saturate_sublattice(face.rays, n);
    return ghost_from_quotient(c, killed);
}

GhostStalk ghost_stalk_toric(const Cone& fan_cone) {
    Cone chart = dual_cone(fan_cone);
    return ghost_from_quotient(chart, chart.lineality);
}

} // namespace tdeg
