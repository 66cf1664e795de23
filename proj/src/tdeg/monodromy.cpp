#include "tdeg/monodromy.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tdeg {

namespace {

std::vector<size_t> one_faces(const ComplexIndex& ix, size_t cell) {
    std::vector<size_t> out;
    for (size_t f : ix.faces[cell])
        if (ix.cell_dims[f] == 1) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

// one-sided walls (complex boundary) carry no crossing and hence no monodromy
bool two_sided(const ComplexIndex& ix, size_t wall) {
    auto it = ix.wall_hosts.find(wall);
    return it != ix.wall_hosts.end() && it->second.size() == 2;
}

// every (edge, wall) monodromy charge around `wall`; requires decomposition
std::vector<MonodromyTransform> pair_monodromies(const PolyCellComplex& c, const ComplexIndex& ix,
                                                 size_t wall) {
    auto hit = ix.wall_hosts.find(wall);
    if (hit == ix.wall_hosts.end() || hit->second.size() != 2)
        throw std::invalid_argument("monodromy needs a wall with two maximal hosts");
    const std::vector<size_t>& hs = hit->second;
    std::vector<MonodromyTransform> out;
    if (ix.cell_dims[wall] == 1) {
        const std::vector<size_t>& vs = ix.vertices_of[wall];
        out.push_back(monodromy_loop(c, ix, wall, vs[0], vs[1], hs[0], hs[1]));
        return out;
    }
    for (size_t omega : one_faces(ix, wall)) {
        const std::vector<size_t>& vs = ix.vertices_of[omega];
        out.push_back(monodromy_loop(c, ix, wall, vs[0], vs[1], hs[0], hs[1]));
    }
    return out;
}

Polytope segment_hull(size_t n, const IntVec& tip) {
    std::vector<RatVec> pts{RatVec(n, Rat(0)), to_rat(tip)};
    return polytope_from_points(n, pts);
}

// conv({0} u delta x {1}): the single-family local polytope
Polytope family_join(const Polytope& delta) {
    size_t n = delta.n;
    std::vector<RatVec> pts;
    RatVec zero(n + 1, Rat(0));
    pts.push_back(zero);
    for (const RatVec& v : delta.vertices) {
        RatVec w = v;
        w.push_back(Rat(1));
        pts.push_back(w);
    }
    return polytope_from_points(n + 1, pts);
}

Polytope point_polytope(size_t n) {
    return polytope_from_points(n, {RatVec(n, Rat(0))});
}

} // namespace

std::vector<Int> kinks_from_monodromy(const PolyCellComplex& c, const ComplexIndex& ix) {
    std::vector<Int> kinks(c.cells.size(), Int(0));
    for (size_t w : ix.walls) {
        if (!two_sided(ix, w)) continue;
        std::vector<MonodromyTransform> ms = pair_monodromies(c, ix, w);
        if (ms.empty()) continue;
        for (const MonodromyTransform& m : ms) {
            if (!m.decomposed)
                throw std::runtime_error("wall holonomy does not decompose; no kink value");
            if (m.kappa != ms[0].kappa)
                throw std::runtime_error("wall holonomy varies along the wall; no single kink value");
        }
        kinks[w] = ms[0].kappa;
    }
    return kinks;
}

PositivityReport is_positive(const PolyCellComplex& c, const ComplexIndex& ix) {
    PositivityReport rep;
    for (size_t w : ix.walls) {
        if (!two_sided(ix, w)) continue;
        if (ix.cell_dims[w] == 1 && c.dim == 2) {
            WallMonodromy wm = wall_monodromy(c, ix, w);
            rep.walls.push_back(wm);
            if (!wm.decomposed) {
                rep.all_decomposed = false;
                rep.positive = false;
                std::ostringstream os;
                os << "cell " << w << ": holonomy does not decompose";
                rep.witnesses.push_back(os.str());
            } else if (wm.kappa < 0) {
                rep.positive = false;
                std::ostringstream os;
                os << "cell " << w << ": monodromy charge " << wm.kappa << " is negative";
                rep.witnesses.push_back(os.str());
            }
        } else {
            for (const MonodromyTransform& m : pair_monodromies(c, ix, w)) {
                WallMonodromy wm;
                wm.wall = w;
                wm.decomposed = m.decomposed;
                wm.kappa = m.kappa;
                wm.direction = m.direction;
                wm.conormal = m.conormal;
                rep.walls.push_back(wm);
                if (!m.decomposed) {
                    rep.all_decomposed = false;
                    rep.positive = false;
                    std::ostringstream os;
                    os << "cell " << w << ": holonomy does not decompose (" << m.note << ")";
                    rep.witnesses.push_back(os.str());
                } else if (m.kappa < 0) {
                    rep.positive = false;
                    std::ostringstream os;
                    os << "cell " << w << ": monodromy charge " << m.kappa << " is negative";
                    rep.witnesses.push_back(os.str());
                }
            }
        }
    }
    return rep;
}

MonodromyPolytopeSet monodromy_polytopes(const PolyCellComplex& c, const ComplexIndex& ix, size_t tau) {
    size_t d = ix.cell_dims.at(tau);
    if (d < 1 || d + 1 > c.dim)
        throw std::invalid_argument("local polytopes are defined for cells of intermediate dimension");

    MonodromyPolytopeSet set;
    set.tau = tau;
    if (c.dim != 2) {
        for (size_t w : ix.walls) {
            bool contains = w == tau;
            for (size_t f : ix.faces[w]) contains = contains || f == tau;
            if (!contains || !two_sided(ix, w)) continue;
            for (const MonodromyTransform& m : pair_monodromies(c, ix, w))
                if (!m.decomposed || m.kappa != 0)
                    throw std::runtime_error(
                        "local polytopes beyond surface bases are supported only without monodromy");
        }
        set.kappa = 0;
        set.delta_rho = point_polytope(c.dim);
        set.delta_check_omega = point_polytope(c.dim);
        set.delta_rho_tau = set.delta_rho;
        set.delta_check_omega_tau = set.delta_check_omega;
        set.delta_tau = point_polytope(c.dim);
        set.delta_check_tau = point_polytope(c.dim);
        return set;
    }

    WallMonodromy wm = wall_monodromy(c, ix, tau);
    if (!wm.decomposed)
        throw std::runtime_error("wall holonomy does not decompose; local polytopes undefined");
    set.kappa = wm.kappa;
    set.delta_rho = segment_hull(2, scale(wm.kappa, wm.direction));
    set.delta_check_omega = segment_hull(2, scale(wm.kappa, wm.conormal));
    set.delta_rho_tau = set.delta_rho;
    set.delta_check_omega_tau = set.delta_check_omega;
    if (wm.kappa == 0) {
        set.delta_tau = point_polytope(2);
        set.delta_check_tau = point_polytope(2);
    } else {
        set.delta_tau = family_join(set.delta_rho);
        set.delta_check_tau = family_join(set.delta_check_omega);
    }
    return set;
}

SimplicityReport is_simple(const PolyCellComplex& c, const ComplexIndex& ix) {
    SimplicityReport rep;
    if (c.dim != 2) {
        for (size_t w : ix.walls) {
            if (!two_sided(ix, w)) continue;
            for (const MonodromyTransform& m : pair_monodromies(c, ix, w)) {
                if (!m.decomposed || m.kappa != 0)
                    throw std::runtime_error(
                        "simplicity search beyond surface bases is supported only without monodromy");
            }
        }
        return rep;   // no monodromy anywhere: simple with empty families
    }

    for (size_t w : ix.walls) {
        if (!two_sided(ix, w)) continue;
        WallMonodromy wm = wall_monodromy(c, ix, w);
        std::ostringstream who;
        who << "cell " << w;
        if (!wm.decomposed) {
            rep.simple = false;
            rep.per_point_simple = false;
            rep.details.push_back(who.str() + ": holonomy does not decompose");
            continue;
        }
        if (wm.kappa != 0) {
            MonodromyPolytopeSet ps = monodromy_polytopes(c, ix, w);
            bool elem = is_elementary_simplex(ps.delta_tau) && is_elementary_simplex(ps.delta_check_tau);
            if (!elem) {
                rep.simple = false;
                std::ostringstream os;
                os << who.str() << ": aggregated charge " << wm.kappa
                   << " gives a non-elementary local polytope";
                rep.details.push_back(os.str());
            }
        }

        // per-marked-point reading
        MonodromyTransform defect = wall_defect(c, ix, w);
        if (!defect.decomposed || defect.kappa != 0) {
            rep.per_point_simple = false;
            rep.details.push_back(who.str() + ": kink is not fully carried by its marked points");
            continue;
        }
        const std::vector<size_t>& hs = ix.wall_hosts.at(w);
        for (size_t j = 0; j < c.marks[w].size(); ++j) {
            MonodromyTransform m = mark_loop(c, ix, w, j, hs[0], hs[1]);
            if (!m.decomposed) {
                rep.per_point_simple = false;
                rep.details.push_back(who.str() + ": marked-point holonomy does not decompose");
                continue;
            }
            if (m.kappa == 0) continue;
            Polytope dj = family_join(segment_hull(2, scale(m.kappa, m.direction)));
            Polytope cj = family_join(segment_hull(2, scale(m.kappa, m.conormal)));
            if (!is_elementary_simplex(dj) || !is_elementary_simplex(cj)) {
                rep.per_point_simple = false;
                std::ostringstream os;
                os << who.str() << ": marked point " << j << " with charge " << m.kappa
                   << " gives a non-elementary local polytope";
                rep.details.push_back(os.str());
            }
        }
    }
    return rep;
}

MPLReport mpl_check(const PolyCellComplex& c, const ComplexIndex& ix, const std::vector<Int>& kinks) {
    if (kinks.size() != c.cells.size())
        throw std::invalid_argument("kink table size differs from the number of cells");
    for (size_t i = 0; i < kinks.size(); ++i) {
        if (kinks[i] < 0) throw std::invalid_argument("kinks must be nonnegative");
        if (kinks[i] != 0 && ix.cell_dims[i] + 1 != c.dim)
            throw std::invalid_argument("kinks are supported on codimension-one cells");
    }
    MPLReport rep;
    if (c.dim < 2) return rep;

    for (size_t tau = 0; tau < c.cells.size(); ++tau) {
        if (ix.cell_dims[tau] + 2 != c.dim) continue;
        size_t v0 = ix.vertices_of[tau].at(0);
        auto fit = ix.fan_of_vertex.find(v0);
        if (fit == ix.fan_of_vertex.end())
            throw std::invalid_argument("vertex without fan data");
        const VertexFanData& vf = c.vertex_fans[fit->second];

        auto chart_of = [&](size_t maxcell) -> const AffineMapZ* {
            for (const VertexCellChart& vc : vf.charts)
                if (vc.max_cell == maxcell) return &vc.chart;
            return nullptr;
        };
        // full chart map of a cell `cellidx` through one of its maximal hosts
        auto cell_to_fan = [&](size_t cellidx) -> AffineMapZ {
            if (ix.cell_dims[cellidx] == c.dim) {
                const AffineMapZ* m = chart_of(cellidx);
                if (!m) throw std::invalid_argument("vertex without flattening for an adjacent cell");
                return *m;
            }
            for (size_t h : ix.hosts[cellidx]) {
                if (ix.cell_dims[h] != c.dim) continue;
                const AffineMapZ* m = chart_of(h);
                if (!m) continue;
                return m->compose(ix.embed.at({cellidx, h}));
            }
            throw std::invalid_argument("vertex without flattening for an adjacent cell");
        };

        // transverse projection along tau
        IntMat proj = IntMat::identity(c.dim);
        if (ix.cell_dims[tau] > 0) {
            AffineMapZ tchart = cell_to_fan(tau);
            IntVec pos = vertex_position_in(c, ix, v0, tau);
            Cone tc = vertex_tangent_cone(c.cells[tau], [&] {
                RatVec rpos = to_rat(pos);
                for (size_t i = 0; i < c.cells[tau].vertices.size(); ++i)
                    if (c.cells[tau].vertices[i] == rpos) return i;
                throw std::invalid_argument("vertex position not found in the cell");
            }());
            std::vector<IntVec> span;
            for (const IntVec& r : tc.rays) span.push_back(tchart.apply_vector(r));
            std::vector<IntVec> basis = saturate_sublattice(span, c.dim);
            if (basis.size() != ix.cell_dims[tau])
                throw std::runtime_error("transverse quotient rank mismatch");
            IntMat u = complete_to_unimodular(basis, c.dim);
            IntMat uinv = inverse_unimodular(u);
            proj = IntMat(2, c.dim);
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < c.dim; ++j)
                    proj.at(i, j) = uinv.at(c.dim - 2 + i, j);
        }

        IntVec total(2, Int(0));
        bool degenerate = false;
        for (size_t w : ix.walls) {
            bool contains = false;
            for (size_t f : ix.faces[w]) contains = contains || f == tau;
            if (!contains || kinks[w] == 0) continue;
            AffineMapZ wchart = cell_to_fan(w);
            IntVec pos = vertex_position_in(c, ix, v0, w);
            RatVec rpos = to_rat(pos);
            size_t vid = c.cells[w].vertices.size();
            for (size_t i = 0; i < c.cells[w].vertices.size(); ++i)
                if (c.cells[w].vertices[i] == rpos) vid = i;
            if (vid == c.cells[w].vertices.size())
                throw std::runtime_error("vertex position not found in the wall");
            Cone tc = vertex_tangent_cone(c.cells[w], vid);
            std::vector<IntVec> rays;
            for (const IntVec& r : tc.rays) {
                IntVec img = proj.apply(wchart.apply_vector(r));
                if (!is_zero(img)) rays.push_back(img);
            }
            if (rays.empty()) {
                degenerate = true;
                break;
            }
            Cone qc = cone_from_rays(2, rays);
            if (qc.rays.size() != 1 || !qc.lineality.empty()) {
                degenerate = true;
                break;
            }
            total = add(total, scale(kinks[w], qc.rays[0]));
        }
        if (degenerate) {
            rep.ok = false;
            rep.failing_cells.push_back(tau);
            std::ostringstream os;
            os << "cell " << tau << ": a wall does not project to a transverse ray";
            rep.details.push_back(os.str());
            continue;
        }
        if (!is_zero(total)) {
            rep.ok = false;
            rep.failing_cells.push_back(tau);
            std::ostringstream os;
            os << "cell " << tau << ": kink-weighted rays sum to " << vec_str(total);
            rep.details.push_back(os.str());
        }
    }
    return rep;
}

} // namespace tdeg
