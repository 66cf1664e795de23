#include "tdeg/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tdeg {

Polytope polytope_from_points(size_t n, const std::vector<RatVec>& pts) {
    Polytope p;
    p.n = n;
    if (pts.empty()) return p;

    // homogenize: the cone over pts x {1} in Z^{n+1}
    std::vector<IntVec> gens;
    for (const auto& x : pts) {
        if (x.size() != n) throw std::invalid_argument("point dimension mismatch");
        RatVec h(x);
        h.push_back(Rat(1));
        gens.push_back(primitive_of_rat(h));
    }
    Cone c = cone_from_rays(n + 1, gens);

    std::set<RatVec> vset;
    for (const auto& r : c.rays) {
        const Int& t = r[n];
        if (t <= 0) throw std::runtime_error("internal: homogenization produced a horizon ray");
        RatVec v(n);
        for (size_t i = 0; i < n; ++i) v[i] = Rat(r[i], t);
        vset.insert(std::move(v));
    }
    p.vertices.assign(vset.begin(), vset.end());

    for (const auto& u : c.normals) {
        IntVec a(u.begin(), u.begin() + long(n));
        if (is_zero(a)) continue;   // vacuous bound coming from the homogenizing coordinate
        p.facets.emplace_back(a, Rat(-u[n]));
    }
    for (const auto& e : c.equations) {
        IntVec a(e.begin(), e.begin() + long(n));
        p.equations.emplace_back(a, Rat(-e[n]));
    }
    std::sort(p.facets.begin(), p.facets.end());
    std::sort(p.equations.begin(), p.equations.end());
    return p;
}

Polytope polytope_from_inequalities(size_t n,
                                    const std::vector<std::pair<IntVec, Rat>>& ineqs) {
    std::vector<IntVec> normals;
    for (const auto& [a, b] : ineqs) {
        if (a.size() != n) throw std::invalid_argument("inequality dimension mismatch");
        IntVec h(a);
        Int d = den(b);
        for (auto& x : h) x *= d;
        h.push_back(-num(b));
        normals.push_back(std::move(h));
    }
    {
        IntVec t(n + 1, Int(0));   // homogenizing halfspace t >= 0
        t[n] = 1;
        normals.push_back(std::move(t));
    }
    Cone c = cone_from_halfspaces(n + 1, normals, {});
    if (!c.lineality.empty())
        throw std::invalid_argument("inequality system is unbounded");
    std::vector<RatVec> verts;
    for (const auto& r : c.rays) {
        const Int& t = r[n];
        if (t == 0) throw std::invalid_argument("inequality system is unbounded");
        RatVec v(n);
        for (size_t i = 0; i < n; ++i) v[i] = Rat(r[i], t);
        verts.push_back(std::move(v));
    }
    return polytope_from_points(n, verts);
}

bool polytope_is_empty(const Polytope& p) { return p.vertices.empty(); }

size_t polytope_dim(const Polytope& p) {
    if (polytope_is_empty(p)) throw std::invalid_argument("dimension of the empty polytope");
    return p.n - p.equations.size();
}

bool polytope_contains(const Polytope& p, const RatVec& x) {
    if (x.size() != p.n) throw std::invalid_argument("point dimension mismatch");
    if (polytope_is_empty(p)) return false;
    for (const auto& [a, b] : p.equations)
        if (dot(a, x) != b) return false;
    for (const auto& [a, b] : p.facets)
        if (dot(a, x) < b) return false;
    return true;
}

std::vector<IntVec> lattice_points(const Polytope& p) {
    std::vector<IntVec> out;
    if (polytope_is_empty(p)) return out;
    std::vector<Int> lo(p.n), hi(p.n);
    for (size_t i = 0; i < p.n; ++i) {
        Rat mn = p.vertices[0][i], mx = mn;
        for (const auto& v : p.vertices) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        lo[i] = ceil_rat(mn);
        hi[i] = floor_rat(mx);
        if (lo[i] > hi[i]) return out;
    }
    Int count = 1;
    for (size_t i = 0; i < p.n; ++i) count *= hi[i] - lo[i] + 1;
    if (count > 10000000)
        throw std::invalid_argument("lattice point enumeration box too large");

    IntVec cur = lo;
    while (true) {
        RatVec xr(p.n);
        for (size_t i = 0; i < p.n; ++i) xr[i] = Rat(cur[i]);
        if (polytope_contains(p, xr)) out.push_back(cur);
        size_t i = 0;
        while (i < p.n && cur[i] == hi[i]) {
            cur[i] = lo[i];
            ++i;
        }
        if (i == p.n) break;
        ++cur[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

static size_t affine_rank(const Polytope& p, const std::vector<size_t>& ids) {
    if (ids.empty()) return 0;
    std::vector<IntVec> diffs;
    for (size_t k = 1; k < ids.size(); ++k) {
        RatVec d = sub(p.vertices[ids[k]], p.vertices[ids[0]]);
        if (!is_zero(d)) diffs.push_back(primitive_of_rat(d));
    }
    if (diffs.empty()) return 0;
    return size_t(rank_of(IntMat::from_rows(diffs)));
}

std::vector<PolyFace> polytope_faces(const Polytope& p) {
    std::vector<PolyFace> out;
    if (polytope_is_empty(p)) return out;

    std::set<std::vector<size_t>> seen;
    std::vector<std::vector<size_t>> work;

    std::vector<size_t> all(p.vertices.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    seen.insert(all);
    work.push_back(all);

    // facet vertex sets
    std::vector<std::vector<size_t>> facet_sets;
    for (const auto& [a, b] : p.facets) {
        std::vector<size_t> ids;
        for (size_t i = 0; i < p.vertices.size(); ++i)
            if (dot(a, p.vertices[i]) == b) ids.push_back(i);
        facet_sets.push_back(std::move(ids));
    }

    // closure under intersection with facets
    for (size_t w = 0; w < work.size(); ++w) {
        for (const auto& fs : facet_sets) {
            std::vector<size_t> inter;
            std::set_intersection(work[w].begin(), work[w].end(), fs.begin(), fs.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) continue;
            if (seen.insert(inter).second) work.push_back(inter);
        }
    }
    for (const auto& ids : seen) out.push_back(PolyFace{ids, affine_rank(p, ids)});
    std::sort(out.begin(), out.end(), [](const PolyFace& x, const PolyFace& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        return x.vertex_ids < y.vertex_ids;
    });
    return out;
}

bool is_lattice_polytope(const Polytope& p) {
    for (const auto& v : p.vertices)
        for (const auto& x : v)
            if (!is_integer(x)) return false;
    return true;
}

bool is_elementary_simplex(const Polytope& p) {
    if (polytope_is_empty(p) || !is_lattice_polytope(p)) return false;
    if (p.vertices.size() != polytope_dim(p) + 1) return false;
    return lattice_points(p).size() == p.vertices.size();
}

Cone vertex_tangent_cone(const Polytope& p, size_t vid) {
    if (vid >= p.vertices.size()) throw std::invalid_argument("vertex index out of range");
    std::vector<IntVec> gens;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        if (i == vid) continue;
        gens.push_back(primitive_of_rat(sub(p.vertices[i], p.vertices[vid])));
    }
    return cone_from_rays(p.n, gens);
}

} // namespace tdeg
