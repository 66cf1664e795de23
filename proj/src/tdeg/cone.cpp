#include "tdeg/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tdeg {

// Extreme rays of the pointed cone {u in Z^r : <v,u> >= 0 for all v in vecs}.
// Requires vecs to span Q^r (which is what makes the cone pointed).  Each
// extreme ray is the kernel of a rank-(r-1) subset of active constraints,
// so enumerating all (r-1)-subsets is exhaustive at this scale.
static std::vector<IntVec> pointed_dual_extreme_rays(size_t r, const std::vector<IntVec>& vecs0) {
    std::set<IntVec> vset;
    for (const auto& v : vecs0)
        if (!is_zero(v)) vset.insert(primitive(v));
    std::vector<IntVec> vecs(vset.begin(), vset.end());

    if (r == 0) return {};
    if (r == 1) {
        bool pos = false, neg = false;
        for (const auto& v : vecs) (v[0] > 0 ? pos : neg) = true;
        if (pos && neg) return {};
        return {IntVec{Int(pos ? 1 : -1)}};
    }

    std::set<IntVec> found;
    size_t k = r - 1;
    if (vecs.size() < k) throw std::runtime_error("internal: constraint set cannot span");
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<IntVec> subset;
        for (size_t i : idx) subset.push_back(vecs[i]);
        auto kern = kernel_basis(IntMat::from_rows(subset));
        if (kern.size() == 1) {
            IntVec u = primitive(kern[0]);
            bool all_ge = true, all_le = true;
            for (const auto& v : vecs) {
                int s = sign(dot(v, u));
                if (s > 0) all_le = false;
                if (s < 0) all_ge = false;
            }
            if (all_ge)
                found.insert(u);
            else if (all_le)
                found.insert(neg(u));
        }
        // advance to the next k-combination of indices
        bool advanced = false;
        for (size_t i = k; i-- > 0;) {
            if (idx[i] != i + vecs.size() - k) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return {found.begin(), found.end()};
}

static std::vector<IntVec> identity_rows(size_t n) {
    std::vector<IntVec> rows;
    for (size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return rows;
}

Cone cone_from_rays(size_t n, const std::vector<IntVec>& gens0) {
    std::set<IntVec> gset;
    for (const auto& g : gens0) {
        if (g.size() != n) throw std::invalid_argument("ray dimension mismatch");
        if (!is_zero(g)) gset.insert(primitive(g));
    }
    std::vector<IntVec> gens(gset.begin(), gset.end());

    Cone c;
    c.n = n;
    if (gens.empty()) {
        c.equations = identity_rows(n);
        return c;
    }

    // adapted coordinates on the linear span
    auto sat = saturate_sublattice(gens, n);
    size_t r = sat.size();
    bool reduced = r < n;
    IntMat u_full, u_inv;
    std::vector<IntVec> w;
    if (reduced) {
        u_full = complete_to_unimodular(sat, n);
        u_inv = inverse_unimodular(u_full);
        for (const auto& g : gens) {
            IntVec full = u_inv.apply(g);
            for (size_t i = r; i < n; ++i)
                if (full[i] != 0) throw std::runtime_error("internal: span reduction failed");
            w.push_back(IntVec(full.begin(), full.begin() + long(r)));
        }
        for (size_t i = r; i < n; ++i) c.equations.push_back(u_inv.row(i));
        std::sort(c.equations.begin(), c.equations.end());
    } else {
        w = gens;
    }

    std::vector<IntVec> normals_w = pointed_dual_extreme_rays(r, w);

    std::vector<IntVec> lin_w;
    if (normals_w.empty())
        lin_w = identity_rows(r);
    else
        lin_w = kernel_basis(IntMat::from_rows(normals_w));

    std::vector<IntVec> rays_w;
    if (lin_w.empty()) {
        rays_w = pointed_dual_extreme_rays(r, normals_w);
    } else if (lin_w.size() < r) {
        // quotient by the lineality space; the image cone is pointed
        size_t l = lin_w.size();
        IntMat ul = complete_to_unimodular(lin_w, r);
        IntMat ul_inv = inverse_unimodular(ul);
        std::vector<IntVec> q;
        for (const auto& x : w) {
            IntVec full = ul_inv.apply(x);
            q.push_back(IntVec(full.begin() + long(l), full.end()));
        }
        Cone qc = cone_from_rays(r - l, q);
        for (const auto& qr : qc.rays) {
            IntVec lifted(l, Int(0));
            lifted.insert(lifted.end(), qr.begin(), qr.end());
            rays_w.push_back(primitive(ul.apply(lifted)));
        }
        std::sort(rays_w.begin(), rays_w.end());
    }

    if (!reduced) {
        c.rays = std::move(rays_w);
        c.lineality = std::move(lin_w);
        c.normals = std::move(normals_w);
    } else {
        auto lift_point = [&](const IntVec& x) {
            IntVec full(x);
            full.resize(n, Int(0));
            return u_full.apply(full);
        };
        for (const auto& x : rays_w) c.rays.push_back(primitive(lift_point(x)));
        for (const auto& x : lin_w) c.lineality.push_back(lift_point(x));
        // a functional u' on span coordinates pulls back through the first
        // r rows of u_inv (those rows restrict to the dual basis on the span)
        for (const auto& up : normals_w) {
            IntVec u(n, Int(0));
            for (size_t i = 0; i < r; ++i)
                for (size_t k = 0; k < n; ++k) u[k] += u_inv.at(i, k) * up[i];
            c.normals.push_back(primitive(u));
        }
        std::sort(c.rays.begin(), c.rays.end());
        std::sort(c.lineality.begin(), c.lineality.end());
        std::sort(c.normals.begin(), c.normals.end());
    }

    // sanity: every generator satisfies the computed halfspace form
    for (const auto& g : gens)
        if (!cone_contains(c, g)) throw std::runtime_error("internal: cone reconstruction failed");
    return c;
}

Cone cone_from_halfspaces(size_t n, const std::vector<IntVec>& normals,
                          const std::vector<IntVec>& equations) {
    std::vector<IntVec> gens = normals;
    for (const auto& e : equations) {
        if (e.size() != n) throw std::invalid_argument("equation dimension mismatch");
        gens.push_back(e);
        gens.push_back(neg(e));
    }
    Cone d = cone_from_rays(n, gens);
    // the target cone is the dual of d
    std::vector<IntVec> dual_gens = d.normals;
    for (const auto& e : d.equations) {
        dual_gens.push_back(e);
        dual_gens.push_back(neg(e));
    }
    return cone_from_rays(n, dual_gens);
}

Cone dual_cone(const Cone& c) {
    std::vector<IntVec> gens = c.normals;
    for (const auto& e : c.equations) {
        gens.push_back(e);
        gens.push_back(neg(e));
    }
    return cone_from_rays(c.n, gens);
}

bool cone_contains(const Cone& c, const IntVec& x) {
    if (x.size() != c.n) throw std::invalid_argument("point dimension mismatch");
    for (const auto& e : c.equations)
        if (dot(e, x) != 0) return false;
    for (const auto& u : c.normals)
        if (dot(u, x) < 0) return false;
    return true;
}

bool cone_contains(const Cone& c, const RatVec& x) {
    if (x.size() != c.n) throw std::invalid_argument("point dimension mismatch");
    for (const auto& e : c.equations)
        if (dot(e, x) != Rat(0)) return false;
    for (const auto& u : c.normals)
        if (dot(u, x) < Rat(0)) return false;
    return true;
}

bool cone_contains_relint(const Cone& c, const RatVec& x) {
    if (x.size() != c.n) throw std::invalid_argument("point dimension mismatch");
    for (const auto& e : c.equations)
        if (dot(e, x) != Rat(0)) return false;
    for (const auto& u : c.normals)
        if (dot(u, x) <= Rat(0)) return false;
    return true;
}

size_t cone_dim(const Cone& c) { return c.n - c.equations.size(); }

bool cone_is_pointed(const Cone& c) { return c.lineality.empty(); }

bool cone_equals(const Cone& a, const Cone& b) {
    if (a.n != b.n) return false;
    auto inside = [](const Cone& big, const Cone& small) {
        for (const auto& g : small.rays)
            if (!cone_contains(big, g)) return false;
        for (const auto& g : small.lineality)
            if (!cone_contains(big, g) || !cone_contains(big, neg(g))) return false;
        return true;
    };
    return inside(a, b) && inside(b, a);
}

Cone cone_intersect(const Cone& a, const Cone& b) {
    if (a.n != b.n) throw std::invalid_argument("ambient dimension mismatch");
    std::vector<IntVec> normals = a.normals;
    normals.insert(normals.end(), b.normals.begin(), b.normals.end());
    std::vector<IntVec> eqs = a.equations;
    eqs.insert(eqs.end(), b.equations.begin(), b.equations.end());
    return cone_from_halfspaces(a.n, normals, eqs);
}

Cone minimal_face_containing(const Cone& c, const Cone& f) {
    std::vector<IntVec> gens = f.rays;
    gens.insert(gens.end(), f.lineality.begin(), f.lineality.end());
    std::vector<IntVec> eqs = c.equations;
    for (const auto& u : c.normals) {
        bool vanishes = true;
        for (const auto& g : gens)
            if (dot(u, g) != 0) vanishes = false;
        if (vanishes) eqs.push_back(u);
    }
    return cone_from_halfspaces(c.n, c.normals, eqs);
}

bool is_face_of(const Cone& c, const Cone& f) {
    if (c.n != f.n) return false;
    for (const auto& g : f.rays)
        if (!cone_contains(c, g)) return false;
    for (const auto& g : f.lineality)
        if (!cone_contains(c, g) || !cone_contains(c, neg(g))) return false;
    return cone_equals(f, minimal_face_containing(c, f));
}

std::vector<Cone> cone_faces(const Cone& c) {
    std::vector<Cone> faces{c};
    // closure of {c} under intersection with facet hyperplanes
    for (size_t i = 0; i < faces.size(); ++i) {
        for (const auto& u : c.normals) {
            std::vector<IntVec> eqs = faces[i].equations;
            eqs.push_back(u);
            Cone g = cone_from_halfspaces(c.n, c.normals, eqs);
            bool seen = false;
            for (const auto& h : faces)
                if (cone_equals(h, g)) seen = true;
            if (!seen) faces.push_back(std::move(g));
        }
    }
    return faces;
}

IntVec sum_of_primitive_rays(const Cone& c) {
    IntVec s(c.n, Int(0));
    for (const auto& r : c.rays) s = add(s, r);
    return s;
}

} // namespace tdeg
