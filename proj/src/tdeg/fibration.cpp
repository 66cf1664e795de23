#include "tdeg/fibration.hpp"

#include "tdeg/momentum.hpp"
#include "tdeg/transport.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace tdeg {

namespace {

IntVec rat_vec_to_int(const RatVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!is_integer(v[i])) throw std::invalid_argument("expected a lattice point");
        r[i] = num(v[i]);
    }
    return r;
}

bool two_sided(const ComplexIndex& ix, size_t wall) {
    auto it = ix.wall_hosts.find(wall);
    return it != ix.wall_hosts.end() && it->second.size() == 2;
}

// Polarization kinks used by the local models when the caller does not
// supply any: the gcd of the marked charges where marks are present (the
// deformation parameter enters once per unit of charge), the aggregated
// monodromy kink on unmarked walls.
std::vector<Int> canonical_kinks(const PolyCellComplex& c, const ComplexIndex& ix) {
    std::vector<Int> agg = kinks_from_monodromy(c, ix);
    std::vector<Int> k(c.cells.size(), Int(0));
    for (size_t w : ix.walls) {
        if (!two_sided(ix, w)) continue;
        if (ix.cell_dims[w] == 1 && !c.marks[w].empty()) {
            Int g = 0;
            for (const MarkedPoint& mp : c.marks[w]) g = gcd(g, abs_int(mp.charge));
            k[w] = g;
        } else {
            k[w] = abs_int(agg[w]);
        }
    }
    return k;
}

// Ghost group rank of the family along the double locus: the local model is
// u v = f t^kappa with f invertible at the point, whose sharp chart monoid is
// generated by u, v, t with the single relation u + v = kappa t.  The rank is
// 2 for every kappa >= 1 (the relation vector is primitive); a zero kink
// degenerates the model to a product family, where only the deformation
// parameter survives.
size_t double_locus_rank(const Int& kappa) {
    if (kappa <= 0) return 1;
    PresentedMonoid p;
    p.gens = 3;
    p.rels.push_back({IntVec{1, 1, 0}, IntVec{0, 0, kappa}});
    return groupify(p).rank;
}

// Transverse picture around a codimension-two cell tau: flatten the star of
// tau into the fan chart of its first vertex and project along tau's tangent
// directions.  Sectors are the images of the maximal cells, rays the images
// of the walls; together they must close up around the origin.  Returns
// nothing when the star is not closed (boundary cells of open models).
struct TransverseModel {
    std::vector<Cone> sectors;                    // per maximal host, 2d pointed
    std::vector<std::pair<size_t, IntVec>> rays;  // (wall, primitive transverse ray)
};

std::optional<TransverseModel> transverse_model(const PolyCellComplex& c,
                                                const ComplexIndex& ix, size_t tau) {
    const size_t n = c.dim;
    const size_t dt = ix.cell_dims[tau];
    if (n < 2 || dt != n - 2) throw std::invalid_argument("transverse model needs a codimension-two cell");

    const size_t v0 = ix.vertices_of[tau].front();
    auto fan_it = ix.fan_of_vertex.find(v0);
    if (fan_it == ix.fan_of_vertex.end()) return std::nullopt;
    const VertexFanData& vf = c.vertex_fans[fan_it->second];
    auto chart_of = [&](size_t m) -> const AffineMapZ* {
        for (const VertexCellChart& vc : vf.charts)
            if (vc.max_cell == m) return &vc.chart;
        return nullptr;
    };

    std::vector<size_t> max_hosts, wall_hosts;
    for (size_t h : ix.hosts[tau]) {
        if (ix.cell_dims[h] == n) max_hosts.push_back(h);
        if (ix.cell_dims[h] == n - 1) wall_hosts.push_back(h);
    }
    if (max_hosts.empty() || wall_hosts.empty()) return std::nullopt;

    // tau's tangent directions inside the fan chart
    IntMat u = IntMat::identity(n);
    if (dt > 0) {
        const size_t s0 = max_hosts.front();
        const AffineMapZ* ch0 = chart_of(s0);
        if (ch0 == nullptr) return std::nullopt;
        const AffineMapZ& em = ix.embed.at({tau, s0});
        std::vector<IntVec> dirs;
        for (size_t j = 0; j < dt; ++j) dirs.push_back(ch0->apply_vector(em.linear.col(j)));
        std::vector<IntVec> basis = saturate_sublattice(dirs, n);
        if (basis.size() != dt) return std::nullopt;
        u = complete_to_unimodular(basis, n);
    }
    IntMat uinv = inverse_unimodular(u);
    IntMat proj(2, n);
    for (size_t j = 0; j < n; ++j) {
        proj.at(0, j) = uinv.at(n - 2, j);
        proj.at(1, j) = uinv.at(n - 1, j);
    }

    auto image_cone = [&](size_t cell, size_t host) -> std::optional<Cone> {
        const AffineMapZ* ch = chart_of(host);
        if (ch == nullptr) return std::nullopt;
        IntVec pos = vertex_position_in(c, ix, v0, host);
        std::vector<IntVec> gens;
        if (cell == host) {
            for (const RatVec& w : c.cells[host].vertices)
                gens.push_back(proj.apply(ch->apply_vector(sub(rat_vec_to_int(w), pos))));
        } else {
            const AffineMapZ& em = ix.embed.at({cell, host});
            for (const RatVec& w : c.cells[cell].vertices)
                gens.push_back(proj.apply(ch->apply_vector(sub(em.apply(rat_vec_to_int(w)), pos))));
        }
        return cone_from_rays(2, gens);
    };

    TransverseModel tm;
    for (size_t s : max_hosts) {
        auto sc = image_cone(s, s);
        if (!sc || cone_dim(*sc) != 2 || !cone_is_pointed(*sc)) return std::nullopt;
        tm.sectors.push_back(*sc);
    }
    for (size_t w : wall_hosts) {
        size_t host = SIZE_MAX;
        for (size_t s : max_hosts)
            if (ix.embed.count({w, s}) != 0) { host = s; break; }
        if (host == SIZE_MAX) return std::nullopt;
        auto rc = image_cone(w, host);
        if (!rc || rc->rays.size() != 1 || !rc->lineality.empty()) return std::nullopt;
        tm.rays.push_back({w, rc->rays.front()});
    }

    // closure bookkeeping: every sector ray is a wall ray shared by exactly
    // two sectors, and every wall ray bounds exactly two sectors
    std::map<IntVec, size_t> wall_of;
    for (const auto& [w, r] : tm.rays) {
        if (wall_of.count(r) != 0) return std::nullopt;
        wall_of[r] = w;
    }
    std::map<IntVec, size_t> sector_count;
    for (const Cone& s : tm.sectors) {
        if (s.rays.size() != 2) return std::nullopt;
        for (const IntVec& r : s.rays) {
            if (wall_of.count(r) == 0) return std::nullopt;
            ++sector_count[r];
        }
    }
    if (sector_count.size() != tm.rays.size()) return std::nullopt;
    for (const auto& [r, cnt] : sector_count)
        if (cnt != 2) return std::nullopt;
    return tm;
}

// Lattice points above the local kink function: propagate the linear parts of
// the kink function around the transverse circle, then intersect the upper
// halfspaces {h >= l_sector(m)} in Z^3.  The ghost group rank is 3 minus the
// rank of the unit lattice (the lineality of the region); for strictly
// positive kinks the region is pointed and the rank is 3.
size_t codim_two_rank(const TransverseModel& tm, const std::map<size_t, Int>& wall_kink) {
    const size_t k = tm.sectors.size();
    std::map<IntVec, size_t> wall_of;
    for (const auto& [w, r] : tm.rays) wall_of[r] = w;
    auto other_ray = [&](const Cone& s, const IntVec& r) -> const IntVec& {
        return s.rays[0] == r ? s.rays[1] : s.rays[0];
    };
    auto other_sector = [&](size_t cur, const IntVec& r) -> size_t {
        for (size_t i = 0; i < k; ++i) {
            if (i == cur) continue;
            if (tm.sectors[i].rays[0] == r || tm.sectors[i].rays[1] == r) return i;
        }
        throw std::invalid_argument("transverse sectors do not close up around the cell");
    };

    std::vector<IntVec> normals;
    std::vector<bool> visited(k, false);
    size_t cur = 0;
    IntVec entry = tm.sectors[0].rays[0];
    IntVec ell{Int(0), Int(0)};
    for (size_t step = 0; step < k; ++step) {
        if (visited[cur]) throw std::invalid_argument("transverse sectors do not close up around the cell");
        visited[cur] = true;
        normals.push_back(IntVec{-ell[0], -ell[1], Int(1)});
        IntVec exit = other_ray(tm.sectors[cur], entry);
        size_t next = other_sector(cur, exit);
        // functional vanishing on the crossed ray, positive on the next sector
        IntVec dch{-exit[1], exit[0]};
        const IntVec& opposite = other_ray(tm.sectors[next], exit);
        Int side = dot(dch, opposite);
        if (side == 0) throw std::invalid_argument("transverse sectors are degenerate");
        if (side < 0) dch = neg(dch);
        ell = add(ell, scale(wall_kink.at(wall_of.at(exit)), dch));
        cur = next;
        entry = exit;
    }
    if (cur != 0 || !is_zero(ell))
        throw std::invalid_argument("the kink function does not close up around the cell; no local model");
    Cone region = cone_from_halfspaces(3, normals, {});
    return 3 - region.lineality.size();
}

struct ClassRank {
    bool modeled = false;
    size_t rank = 0;
};

ClassRank stalk_rank_at_class(const PolyCellComplex& c, const ComplexIndex& ix,
                              size_t cls, const std::vector<Int>& kinks) {
    const size_t codim = c.dim - ix.cell_dims[cls];
    if (codim == 0) return {true, 1};
    if (codim == 1) {
        if (!two_sided(ix, cls)) return {false, 0};
        return {true, double_locus_rank(kinks[cls])};
    }
    if (codim == 2) {
        auto tm = transverse_model(c, ix, cls);
        if (!tm) return {false, 0};
        std::map<size_t, Int> wk;
        for (const auto& [w, r] : tm->rays) wk[w] = kinks[w];
        return {true, codim_two_rank(*tm, wk)};
    }
    return {false, 0};   // deeper classes: out of scope
}

// Divisorial ghost rank of the component of tau along the stratum class of
// one of its faces: the tangent cone of the cell's polytope at a relative
// interior point of the face, sharpened by its lineality.
size_t divisorial_class_rank(const PolyCellComplex& c, const ComplexIndex& ix,
                             size_t tau, size_t face) {
    if (face == tau) return 0;
    const size_t nt = ix.cell_dims[tau];
    const AffineMapZ& em = ix.embed.at({face, tau});
    IntVec b0 = em.apply(rat_vec_to_int(c.cells[face].vertices.front()));
    std::vector<IntVec> gens;
    for (const RatVec& w : c.cells[tau].vertices)
        gens.push_back(sub(rat_vec_to_int(w), b0));
    for (const RatVec& w : c.cells[face].vertices)
        gens.push_back(sub(b0, em.apply(rat_vec_to_int(w))));
    Cone t = cone_from_rays(nt, gens);
    return cone_dim(t) - t.lineality.size();
}

} // namespace

ToricLogCY make_toric_log_cy(PolyCellComplex base) {
    ToricLogCY r;
    r.base = std::move(base);
    r.index = build_index(r.base);
    r.component_cells = r.index.maximal;
    for (size_t m : r.component_cells)
        r.components.push_back(toric_model_projective(r.base.cells[m]));
    for (size_t i = 0; i < r.base.cells.size(); ++i) {
        if (r.index.cell_dims[i] != 1) continue;
        for (size_t k = 0; k < r.base.marks[i].size(); ++k) {
            const MarkedPoint& mp = r.base.marks[i][k];
            DiscriminantPoint p;
            p.wall = i;
            p.mark_index = k;
            p.position = mp.position;
            p.momentum = to_double(mp.position);
            p.charge = mp.charge;
            r.discriminant.points.push_back(p);
        }
    }
    ChartSystem cs = build_chart_system(r.base, r.index);
    std::vector<TorusElement> trivial;
    for (size_t i = 0; i < r.base.cells.size(); ++i)
        trivial.push_back(torus_identity(r.base.dim));
    r.gluing = open_gluing_from_cell_cochain(r.base, r.index, cs, trivial);
    return r;
}

std::string FiberClass::str() const {
    switch (tag) {
        case FiberClassTag::smooth_torus:
            return "smooth-torus(" + std::to_string(torus_rank) + ")";
        case FiberClassTag::nodal_elliptic:
            return "nodal-elliptic";
        case FiberClassTag::unknown_singular:
            return "unknown-singular";
    }
    return "unknown-singular";
}

FiberClass fiber_class(const ToricLogCY& cy, const BasePoint& b) {
    const PolyCellComplex& c = cy.base;
    if (b.cell >= c.cells.size()) throw std::invalid_argument("fiber class: no such cell");
    FiberClass f;
    if (!b.at_mark) {
        f.tag = FiberClassTag::smooth_torus;
        f.torus_rank = c.dim;
        f.euler = 0;
        return f;
    }
    if (cy.index.cell_dims[b.cell] != 1)
        throw std::invalid_argument("fiber class: marked points live on one-dimensional cells");
    if (b.mark_index >= c.marks[b.cell].size())
        throw std::invalid_argument("fiber class: no such marked point");
    const Int& q = c.marks[b.cell][b.mark_index].charge;
    if (q == 1 && c.dim == 2) {
        f.tag = FiberClassTag::nodal_elliptic;
        f.euler = 1;
        return f;
    }
    f.tag = FiberClassTag::unknown_singular;
    f.euler_known = false;
    f.euler = 0;
    return f;
}

SplittingRankReport splitting_rank_check(const ToricLogCY& cy, size_t tau,
                                         const std::vector<Int>& kinks_in) {
    const PolyCellComplex& c = cy.base;
    const ComplexIndex& ix = cy.index;
    if (tau >= c.cells.size()) throw std::invalid_argument("splitting rank check: no such cell");
    std::vector<Int> kinks = kinks_in.empty() ? canonical_kinks(c, ix) : kinks_in;
    if (kinks.size() != c.cells.size())
        throw std::invalid_argument("splitting rank check: one kink per cell expected");

    SplittingRankReport rep;
    rep.tau = tau;
    std::vector<size_t> classes = ix.faces[tau];
    classes.push_back(tau);
    std::sort(classes.begin(), classes.end());
    const size_t transverse = c.dim - ix.cell_dims[tau];
    for (size_t cls : classes) {
        ClassRank cr = stalk_rank_at_class(c, ix, cls, kinks);
        if (!cr.modeled) {
            rep.skipped.push_back(cls);
            continue;
        }
        SplittingRankEntry e;
        e.face_class = cls;
        e.stalk_rank = cr.rank;
        e.split_rank = divisorial_class_rank(c, ix, tau, cls) + transverse + 1;
        e.match = e.stalk_rank == e.split_rank;
        if (!e.match) rep.ok = false;
        rep.entries.push_back(e);
    }
    return rep;
}

FibrationReport fibration_report(const ToricLogCY& cy) {
    const PolyCellComplex& c = cy.base;
    const ComplexIndex& ix = cy.index;
    FibrationReport rep;
    rep.euler_total = 0;
    for (size_t i = 0; i < c.cells.size(); ++i)
        rep.generic_classes.push_back({i, fiber_class(cy, BasePoint{i, false, 0})});
    for (const DiscriminantPoint& p : cy.discriminant.points) {
        FiberClass f = fiber_class(cy, BasePoint{p.wall, true, p.mark_index});
        if (f.euler_known)
            rep.euler_total += f.euler;
        else
            rep.euler_known = false;
        rep.discriminant_classes.push_back({p, f});
    }
    std::vector<Int> kinks = canonical_kinks(c, ix);
    for (size_t i = 0; i < c.cells.size(); ++i) {
        StratumRankRow row;
        row.cell = i;
        row.dim = ix.cell_dims[i];
        ClassRank cr = stalk_rank_at_class(c, ix, i, kinks);
        row.modeled = cr.modeled;
        if (cr.modeled) {
            row.ghost_rank = cr.rank;
            row.orbit_rank = row.dim;
            row.fiber_rank = cr.rank + row.dim;
        }
        rep.rank_table.push_back(row);
    }
    return rep;
}

QuarticK3Report k3_run() {
    QuarticK3Report rep;
    rep.f4 = HomQuartic::fermat_minus_seven_sigma();

    // Intersection picture of the family X0*X1*X2*X3 + t*f4 = 0: the unit
    // 3-simplex (hyperplane polarization on each projective-plane component);
    // its boundary complex has lattice-length-4 edges.
    std::vector<RatVec> simplex = {
        RatVec{Rat(0), Rat(0), Rat(0)},
        RatVec{Rat(1), Rat(0), Rat(0)},
        RatVec{Rat(0), Rat(1), Rat(0)},
        RatVec{Rat(0), Rat(0), Rat(1)},
    };
    PolyCellComplex c = build_boundary_complex(polytope_from_points(3, simplex));
    ComplexIndex ix = build_index(c);

    // The four vertex cells, ascending, are labeled with the four coordinate
    // points of the ambient projective space; the edge through the vertices
    // labeled i < j is the coordinate line where the other two vanish, with
    // affine coordinate x = X_i / X_j.
    std::vector<size_t> vlabel(c.cells.size(), SIZE_MAX);
    {
        size_t next = 0;
        for (size_t i = 0; i < c.cells.size(); ++i)
            if (ix.cell_dims[i] == 0) vlabel[i] = next++;
        if (next != 4) throw std::runtime_error("quartic pipeline: expected four vertices");
    }

    std::map<size_t, std::array<size_t, 4>> slot_to_root;
    for (size_t w = 0; w < c.cells.size(); ++w) {
        if (ix.cell_dims[w] != 1) continue;
        const std::vector<size_t>& vs = ix.vertices_of[w];
        if (vs.size() != 2) throw std::runtime_error("quartic pipeline: malformed edge");

        QuarticEdgeReport er;
        er.wall = w;
        er.kept = {int(vlabel[vs[0]]), int(vlabel[vs[1]])};
        er.restriction = restrict_to_edge(rep.f4, er.kept[0], er.kept[1]);
        er.factorization = factor_int_poly(er.restriction.p);
        er.real_roots = sturm_count(er.restriction.p, SturmInterval::whole_line());
        for (const IntPoly& f : er.factorization.factors) {
            if (f.degree() != 2) continue;
            for (const QuadraticRoot& r : quadratic_roots(f)) er.roots.push_back(r);
        }
        std::sort(er.roots.begin(), er.roots.end(),
                  [](const QuadraticRoot& a, const QuadraticRoot& b) { return a.approx() < b.approx(); });
        er.inversion_paired = !er.factorization.factors.empty();
        for (const IntPoly& f : er.factorization.factors)
            if (f.degree() != 2 || f.coeff(0) != f.coeff(2)) er.inversion_paired = false;

        // numeric momentum image of each root in the edge's own chart; the
        // chart monomial is oriented so that x = X_i / X_j grows toward the
        // vertex labeled i
        Rat pos0 = Rat(vertex_position_in(c, ix, vs[0], w)[0]);
        Rat pos1 = Rat(vertex_position_in(c, ix, vs[1], w)[0]);
        bool i_at_high = pos0 > pos1;
        Rat lo = i_at_high ? pos1 : pos0;
        Rat hi = i_at_high ? pos0 : pos1;
        MomentumEval me = momentum_eval_for(c.cells[w]);
        for (const QuadraticRoot& r : er.roots) {
            double x = r.approx();
            double y = i_at_high ? x : 1.0 / x;
            std::vector<Cx> chart = monomial_chart(me, {Cx(y, 0.0)});
            er.momentum.push_back(momentum_eval_numeric(me, chart)[0]);
        }

        // Four charge-one marked points.  The amoeba image cannot separate a
        // root from its negative (both lie on one torus orbit), so the exact
        // placement spreads the points over the quarter slots of the edge,
        // ordered to follow the momentum images; every topological output is
        // independent of this choice.
        std::array<size_t, 4> order = {0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (er.momentum[a] != er.momentum[b]) return er.momentum[a] < er.momentum[b];
            return er.roots[a].approx() < er.roots[b].approx();
        });
        std::vector<MarkedPoint> marks;
        for (size_t s = 0; s < 4; ++s)
            marks.push_back(MarkedPoint{lo + (hi - lo) * Rat(2 * s + 1, 8), Int(1)});
        c.marks[w] = marks;
        slot_to_root[w] = order;
        rep.edges.push_back(er);
    }

    rep.model = make_toric_log_cy(std::move(c));
    for (DiscriminantPoint& p : rep.model.discriminant.points) {
        const std::array<size_t, 4>& order = slot_to_root.at(p.wall);
        const QuarticEdgeReport* er = nullptr;
        for (const QuarticEdgeReport& e : rep.edges)
            if (e.wall == p.wall) { er = &e; break; }
        size_t root_index = order[p.mark_index];
        p.momentum = er->momentum[root_index];
        p.root_label = er->roots[root_index].str();
    }
    rep.discriminant_count = rep.model.discriminant.points.size();

    rep.validity = validate_complex(rep.model.base);
    rep.positivity = is_positive(rep.model.base, rep.model.index);
    std::vector<Int> ones(rep.model.base.cells.size(), Int(0));
    for (size_t i = 0; i < rep.model.base.cells.size(); ++i)
        if (rep.model.index.cell_dims[i] == 1) ones[i] = 1;
    rep.mpl = mpl_check(rep.model.base, rep.model.index, ones);
    rep.fibration = fibration_report(rep.model);
    return rep;
}

} // namespace tdeg
