#include "tdeg/complex.hpp"

#include "tdeg/exact.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tdeg {

namespace {

IntVec rat_to_int_vec(const RatVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (den(v[i]) != 1) throw std::invalid_argument("expected a lattice point");
        r[i] = num(v[i]);
    }
    return r;
}

bool rvec_less(const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

std::string cell_str(size_t i) {
    std::ostringstream os;
    os << "cell " << i;
    return os.str();
}

// Coordinates of x in the Z-basis `basis` (throws if x is outside the span
// lattice); basis vectors live in Z^n.
IntVec coords_in_basis(const std::vector<IntVec>& basis, const IntVec& x) {
    if (basis.empty()) {
        if (!is_zero(x)) throw std::invalid_argument("point outside the face lattice");
        return IntVec{};
    }
    LinearSolution s = solve_integer_linear(IntMat::from_cols(basis), x);
    if (!s.solvable) throw std::invalid_argument("point outside the face lattice");
    return s.particular;
}

} // namespace

ComplexIndex build_index(const PolyCellComplex& c) {
    ComplexIndex ix;
    size_t k = c.cells.size();
    ix.cell_dims.resize(k);
    ix.hosts.resize(k);
    ix.faces.resize(k);
    ix.vertices_of.resize(k);
    for (size_t i = 0; i < k; ++i) {
        ix.cell_dims[i] = polytope_is_empty(c.cells[i]) ? 0 : polytope_dim(c.cells[i]);
        if (ix.cell_dims[i] == c.dim) ix.maximal.push_back(i);
        if (c.dim >= 1 && ix.cell_dims[i] + 1 == c.dim) ix.walls.push_back(i);
    }
    for (const CellInclusion& inc : c.inclusions) {
        if (inc.face >= k || inc.host >= k) throw std::invalid_argument("inclusion cell index out of range");
        ix.hosts[inc.face].push_back(inc.host);
        ix.faces[inc.host].push_back(inc.face);
        ix.embed.insert({{inc.face, inc.host}, inc.embed});
    }
    for (size_t w : ix.walls) {
        std::vector<size_t> hs;
        for (size_t h : ix.hosts[w])
            if (ix.cell_dims[h] == c.dim) hs.push_back(h);
        std::sort(hs.begin(), hs.end());
        ix.wall_hosts[w] = hs;
    }
    for (size_t i = 0; i < k; ++i) {
        if (ix.cell_dims[i] == 0) {
            ix.vertices_of[i].push_back(i);
            continue;
        }
        for (size_t f : ix.faces[i])
            if (ix.cell_dims[f] == 0) ix.vertices_of[i].push_back(f);
        std::sort(ix.vertices_of[i].begin(), ix.vertices_of[i].end());
    }
    for (size_t j = 0; j < c.vertex_fans.size(); ++j) ix.fan_of_vertex[c.vertex_fans[j].vertex] = j;
    return ix;
}

IntVec vertex_position_in(const PolyCellComplex& c, const ComplexIndex& ix, size_t v, size_t sigma) {
    if (v == sigma) return rat_to_int_vec(c.cells[v].vertices.at(0));
    auto it = ix.embed.find({v, sigma});
    if (it == ix.embed.end()) throw std::invalid_argument("vertex is not listed as a face of the cell");
    return it->second.apply(rat_to_int_vec(c.cells[v].vertices.at(0)));
}

namespace {

struct Checker {
    ValidationReport rep;
    void fail(const std::string& check, const std::string& detail) {
        rep.ok = false;
        rep.violations.push_back({check, detail});
    }
};

// image of the tangent cone of cell `cellpoly` at chart position `pos`,
// pushed through the linear part of `chart`.
Cone tangent_cone_image(const Polytope& cellpoly, const IntVec& pos, const AffineMapZ& chart, size_t n) {
    RatVec rpos = to_rat(pos);
    size_t vid = cellpoly.vertices.size();
    for (size_t i = 0; i < cellpoly.vertices.size(); ++i)
        if (cellpoly.vertices[i] == rpos) vid = i;
    if (vid == cellpoly.vertices.size()) throw std::invalid_argument("position is not a vertex of the cell");
    Cone tc = vertex_tangent_cone(cellpoly, vid);
    std::vector<IntVec> rays;
    for (const IntVec& r : tc.rays) rays.push_back(chart.apply_vector(r));
    return cone_from_rays(n, rays);
}

} // namespace

ValidationReport validate_complex(const PolyCellComplex& c) {
    Checker ck;
    size_t k = c.cells.size();
    if (c.marks.size() != k) {
        ck.fail("marks", "marks table size differs from the number of cells");
        ValidationReport r = ck.rep;
        return r;
    }
    ComplexIndex ix = build_index(c);

    // cells
    for (size_t i = 0; i < k; ++i) {
        const Polytope& p = c.cells[i];
        if (polytope_is_empty(p)) {
            ck.fail("cell", cell_str(i) + " is empty");
            continue;
        }
        if (!is_lattice_polytope(p)) ck.fail("cell", cell_str(i) + " is not a lattice polytope");
        if (polytope_dim(p) != p.n)
            ck.fail("cell", cell_str(i) + " is not full-dimensional in its chart");
        if (p.n > c.dim) ck.fail("cell", cell_str(i) + " exceeds the complex dimension");
    }

    // purity: every non-maximal cell sits inside some maximal cell
    for (size_t i = 0; i < k; ++i) {
        if (ix.cell_dims[i] == c.dim) continue;
        bool covered = false;
        for (size_t h : ix.hosts[i])
            if (ix.cell_dims[h] == c.dim) covered = true;
        if (!covered) ck.fail("purity", cell_str(i) + " lies in no maximal cell");
    }

    // inclusions
    std::set<std::pair<size_t, size_t>> seen;
    for (const CellInclusion& inc : c.inclusions) {
        std::ostringstream who;
        who << "inclusion " << inc.face << " -> " << inc.host;
        if (inc.face >= k || inc.host >= k) {
            ck.fail("inclusion-shape", who.str() + ": cell index out of range");
            continue;
        }
        if (!seen.insert({inc.face, inc.host}).second)
            ck.fail("inclusion-duplicate", who.str() + " is listed twice");
        size_t df = ix.cell_dims[inc.face], dh = ix.cell_dims[inc.host];
        if (df >= dh) {
            ck.fail("inclusion-shape", who.str() + ": face dimension does not drop");
            continue;
        }
        if (inc.embed.linear.rows != c.cells[inc.host].n || inc.embed.linear.cols != c.cells[inc.face].n ||
            inc.embed.translation.size() != c.cells[inc.host].n) {
            ck.fail("inclusion-shape", who.str() + ": affine map has wrong shape");
            continue;
        }
        // lattice isomorphism onto the image
        std::vector<IntVec> cols = inc.embed.linear.col_list();
        if (rank_of(inc.embed.linear) != df) {
            ck.fail("inclusion-lattice", who.str() + ": embedding is not injective");
            continue;
        }
        std::vector<IntVec> sat = saturate_sublattice(cols, c.cells[inc.host].n);
        bool iso = sat.size() == df;
        for (const IntVec& b : sat)
            if (!in_lattice_span(cols, b)) iso = false;
        if (!iso) ck.fail("inclusion-lattice", who.str() + ": embedding is not a lattice isomorphism onto its image");
        // image must be a face of the host polytope
        std::vector<RatVec> img;
        for (const RatVec& v : c.cells[inc.face].vertices) img.push_back(inc.embed.apply(v));
        std::sort(img.begin(), img.end(), rvec_less);
        bool matched = false;
        for (const PolyFace& f : polytope_faces(c.cells[inc.host])) {
            if (f.dim != df || f.vertex_ids.size() != img.size()) continue;
            std::vector<RatVec> fv;
            for (size_t id : f.vertex_ids) fv.push_back(c.cells[inc.host].vertices[id]);
            std::sort(fv.begin(), fv.end(), rvec_less);
            if (fv == img) matched = true;
        }
        if (!matched) ck.fail("inclusion-image", who.str() + ": image is not a face of the host");
    }

    // face coverage: each proper face of each cell matched by exactly one inclusion
    for (size_t h = 0; h < k; ++h) {
        if (polytope_is_empty(c.cells[h])) continue;
        for (const PolyFace& f : polytope_faces(c.cells[h])) {
            if (f.dim == polytope_dim(c.cells[h])) continue;
            std::vector<RatVec> fv;
            for (size_t id : f.vertex_ids) fv.push_back(c.cells[h].vertices[id]);
            std::sort(fv.begin(), fv.end(), rvec_less);
            size_t hits = 0;
            for (size_t face : ix.faces[h]) {
                auto it = ix.embed.find({face, h});
                if (it == ix.embed.end()) continue;
                std::vector<RatVec> img;
                for (const RatVec& v : c.cells[face].vertices) img.push_back(it->second.apply(v));
                std::sort(img.begin(), img.end(), rvec_less);
                if (img == fv) ++hits;
            }
            if (hits != 1) {
                std::ostringstream os;
                os << cell_str(h) << ": a " << f.dim << "-face is matched by " << hits << " inclusions";
                ck.fail("face-coverage", os.str());
            }
        }
    }

    // coherence of compositions
    for (const CellInclusion& a : c.inclusions) {
        for (const CellInclusion& b : c.inclusions) {
            if (a.host != b.face) continue;
            auto it = ix.embed.find({a.face, b.host});
            if (it == ix.embed.end()) {
                std::ostringstream os;
                os << "chain " << a.face << " -> " << a.host << " -> " << b.host
                   << " has no direct inclusion";
                ck.fail("inclusion-coherence", os.str());
                continue;
            }
            if (!(b.embed.compose(a.embed) == it->second)) {
                std::ostringstream os;
                os << "inclusions " << a.face << " -> " << a.host << " -> " << b.host
                   << " do not compose to the direct one";
                ck.fail("inclusion-coherence", os.str());
            }
        }
    }

    // two-sidedness of walls
    for (size_t w : ix.walls) {
        size_t sides = ix.wall_hosts[w].size();
        if (sides != 2) {
            std::ostringstream os;
            os << cell_str(w) << " lies in " << sides << " maximal cells";
            ck.fail("two-sided", os.str());
        }
    }

    // vertex fans
    for (size_t i = 0; i < k; ++i) {
        if (ix.cell_dims[i] != 0) continue;
        if (ix.fan_of_vertex.find(i) == ix.fan_of_vertex.end()) {
            ck.fail("vertex-fan", cell_str(i) + " has no fan data");
            continue;
        }
        const VertexFanData& vf = c.vertex_fans[ix.fan_of_vertex[i]];
        if (vf.fan.n != c.dim) {
            ck.fail("vertex-fan", cell_str(i) + ": fan lives in the wrong rank");
            continue;
        }
        if (!fan_is_complete(vf.fan))
            ck.fail("vertex-fan-complete", cell_str(i) + ": fan is not complete");
        std::vector<size_t> maxcones = fan_maximal_cones(vf.fan);
        std::set<size_t> assigned;
        std::set<size_t> charted;
        for (const VertexCellChart& vc : vf.charts) {
            std::ostringstream who;
            who << cell_str(i) << ", chart of cell " << vc.max_cell;
            if (vc.max_cell >= k || ix.cell_dims[vc.max_cell] != c.dim) {
                ck.fail("vertex-chart", who.str() + ": not a maximal cell");
                continue;
            }
            if (!charted.insert(vc.max_cell).second)
                ck.fail("vertex-chart", who.str() + ": duplicated");
            if (vc.chart.linear.rows != c.dim || vc.chart.linear.cols != c.dim ||
                abs_int(det(vc.chart.linear)) != 1) {
                ck.fail("vertex-chart", who.str() + ": linear part is not unimodular");
                continue;
            }
            IntVec pos;
            try {
                pos = vertex_position_in(c, ix, i, vc.max_cell);
            } catch (const std::exception&) {
                ck.fail("vertex-chart", who.str() + ": vertex is not a face of the cell");
                continue;
            }
            if (!is_zero(vc.chart.apply(pos))) {
                ck.fail("vertex-chart", who.str() + ": vertex does not map to the origin");
                continue;
            }
            Cone img;
            try {
                img = tangent_cone_image(c.cells[vc.max_cell], pos, vc.chart, c.dim);
            } catch (const std::exception& e) {
                ck.fail("vertex-chart", who.str() + ": " + e.what());
                continue;
            }
            bool found = false;
            for (size_t mc : maxcones) {
                if (cone_equals(vf.fan.cones[mc], img)) {
                    if (!assigned.insert(mc).second)
                        ck.fail("vertex-chart", who.str() + ": two cells map onto one fan cone");
                    found = true;
                    break;
                }
            }
            if (!found) ck.fail("vertex-chart", who.str() + ": image is not a maximal cone of the fan");
        }
        for (size_t m : ix.maximal) {
            bool contains = false;
            for (size_t f : ix.faces[m])
                if (f == i) contains = true;
            if (contains && charted.find(m) == charted.end())
                ck.fail("vertex-chart", cell_str(i) + ": no chart for adjacent cell " + cell_str(m));
        }
        if (assigned.size() < maxcones.size() && assigned.size() == vf.charts.size())
            ck.fail("vertex-fan", cell_str(i) + ": fan has maximal cones assigned to no cell");
    }

    // vertex charts agree along shared walls
    for (size_t w : ix.walls) {
        const std::vector<size_t>& hs = ix.wall_hosts[w];
        if (hs.size() != 2) continue;
        for (size_t v : ix.vertices_of[w]) {
            auto fit = ix.fan_of_vertex.find(v);
            if (fit == ix.fan_of_vertex.end()) continue;
            const VertexFanData& vf = c.vertex_fans[fit->second];
            const AffineMapZ* m0 = nullptr;
            const AffineMapZ* m1 = nullptr;
            for (const VertexCellChart& vc : vf.charts) {
                if (vc.max_cell == hs[0]) m0 = &vc.chart;
                if (vc.max_cell == hs[1]) m1 = &vc.chart;
            }
            auto e0 = ix.embed.find({w, hs[0]});
            auto e1 = ix.embed.find({w, hs[1]});
            if (!m0 || !m1 || e0 == ix.embed.end() || e1 == ix.embed.end()) continue;
            if (!(m0->compose(e0->second) == m1->compose(e1->second))) {
                std::ostringstream os;
                os << cell_str(w) << " at vertex " << v << ": flattenings disagree along the wall";
                ck.fail("chart-wall-coherence", os.str());
            }
        }
    }

    // marks
    for (size_t i = 0; i < k; ++i) {
        if (c.marks[i].empty()) continue;
        if (ix.cell_dims[i] != 1) {
            ck.fail("marks", cell_str(i) + ": marked points are supported on one-dimensional cells only");
            continue;
        }
        bool wall = ix.cell_dims[i] + 1 == c.dim;
        Rat lo = c.cells[i].vertices.front()[0], hi = c.cells[i].vertices.back()[0];
        if (lo > hi) std::swap(lo, hi);
        Rat prev = lo;
        for (const MarkedPoint& mp : c.marks[i]) {
            if (mp.position <= lo || mp.position >= hi)
                ck.fail("marks", cell_str(i) + ": marked point is not interior");
            if (mp.position <= prev && !(prev == lo))
                ck.fail("marks", cell_str(i) + ": marked points are not strictly ascending");
            prev = mp.position;
            if (mp.charge != 0 && !wall)
                ck.fail("marks", cell_str(i) + ": charged point on a cell that is not codimension one");
        }
    }

    return ck.rep;
}

// ---- boundary complex --------------------------------------------------------

PolyCellComplex build_boundary_complex(const Polytope& xi) {
    size_t N = xi.n;
    if (polytope_is_empty(xi) || polytope_dim(xi) != N)
        throw std::invalid_argument("boundary complex needs a full-dimensional polytope");

    // normalize: barycenter of the vertices -> origin, then clear denominators
    RatVec bary(N, Rat(0));
    for (const RatVec& v : xi.vertices) bary = add(bary, v);
    for (Rat& x : bary) x /= Rat(Int(xi.vertices.size()));
    Int scale = 1;
    for (const RatVec& v : xi.vertices)
        for (size_t j = 0; j < N; ++j) {
            Rat w = v[j] - bary[j];
            scale = lcm(scale, den(w));
        }
    std::vector<RatVec> shifted;
    std::vector<IntVec> ambient;   // integral vertices of the normalized polytope
    for (const RatVec& v : xi.vertices) {
        RatVec w(N);
        for (size_t j = 0; j < N; ++j) w[j] = (v[j] - bary[j]) * Rat(scale);
        shifted.push_back(w);
        ambient.push_back(rat_to_int_vec(w));
    }
    Polytope big = polytope_from_points(N, shifted);
    for (const auto& fc : big.facets)
        if (fc.second >= 0) throw std::invalid_argument("origin is not interior after normalization");

    // vertex order in `big` may differ from xi; recompute the integral list
    ambient.clear();
    for (const RatVec& v : big.vertices) ambient.push_back(rat_to_int_vec(v));

    std::vector<PolyFace> all = polytope_faces(big);
    std::vector<PolyFace> proper;
    for (const PolyFace& f : all)
        if (f.dim < N) proper.push_back(f);
    std::sort(proper.begin(), proper.end(), [](const PolyFace& a, const PolyFace& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertex_ids < b.vertex_ids;
    });

    PolyCellComplex c;
    c.dim = N - 1;
    struct FaceChart {
        IntVec origin;                 // ambient position of the first vertex
        std::vector<IntVec> basis;     // saturated tangent lattice basis
    };
    std::vector<FaceChart> charts;
    for (const PolyFace& f : proper) {
        FaceChart fc;
        fc.origin = ambient[f.vertex_ids[0]];
        std::vector<IntVec> diffs;
        for (size_t j = 1; j < f.vertex_ids.size(); ++j)
            diffs.push_back(sub(ambient[f.vertex_ids[j]], fc.origin));
        fc.basis = saturate_sublattice(diffs, N);
        if (fc.basis.size() != f.dim) throw std::runtime_error("face chart rank mismatch");
        std::vector<RatVec> pts;
        for (size_t id : f.vertex_ids)
            pts.push_back(to_rat(coords_in_basis(fc.basis, sub(ambient[id], fc.origin))));
        c.cells.push_back(polytope_from_points(f.dim, pts));
        charts.push_back(fc);
    }
    c.marks.assign(c.cells.size(), {});

    // inclusions: every strict containment of vertex sets
    for (size_t i = 0; i < proper.size(); ++i) {
        for (size_t j = 0; j < proper.size(); ++j) {
            if (i == j || proper[i].dim >= proper[j].dim) continue;
            if (!std::includes(proper[j].vertex_ids.begin(), proper[j].vertex_ids.end(),
                               proper[i].vertex_ids.begin(), proper[i].vertex_ids.end()))
                continue;
            std::vector<IntVec> cols;
            for (const IntVec& b : charts[i].basis) cols.push_back(coords_in_basis(charts[j].basis, b));
            AffineMapZ em;
            em.linear = cols.empty() ? IntMat(proper[j].dim, 0) : IntMat::from_cols(cols);
            em.translation = coords_in_basis(charts[j].basis, sub(charts[i].origin, charts[j].origin));
            c.inclusions.push_back({i, j, em});
        }
    }

    // vertex fans: project along the ray through the vertex
    for (size_t i = 0; i < proper.size(); ++i) {
        if (proper[i].dim != 0) continue;
        IntVec vpos = ambient[proper[i].vertex_ids[0]];
        IntMat u = complete_to_unimodular({primitive(vpos)}, N);
        IntMat uinv = inverse_unimodular(u);
        auto project = [&](const IntVec& x) {
            IntVec y = uinv.apply(x);
            return IntVec(y.begin() + 1, y.end());
        };
        VertexFanData vf;
        vf.vertex = i;
        std::vector<Cone> cones;
        for (size_t j = 0; j < proper.size(); ++j) {
            if (proper[j].dim != N - 1) continue;
            if (!std::includes(proper[j].vertex_ids.begin(), proper[j].vertex_ids.end(),
                               proper[i].vertex_ids.begin(), proper[i].vertex_ids.end()))
                continue;
            std::vector<IntVec> cols;
            for (const IntVec& b : charts[j].basis) cols.push_back(project(b));
            AffineMapZ chart;
            chart.linear = IntMat::from_cols(cols);
            chart.translation = project(sub(charts[j].origin, vpos));
            if (abs_int(det(chart.linear)) != 1)
                throw std::invalid_argument("boundary complex vertex flattening is not unimodular");
            vf.charts.push_back({j, chart});
            IntVec pos = coords_in_basis(charts[j].basis, sub(vpos, charts[j].origin));
            cones.push_back(tangent_cone_image(c.cells[j], pos, chart, N - 1));
        }
        vf.fan = fan_from_cones(N - 1, cones);
        c.vertex_fans.push_back(vf);
    }

    return c;
}

// ---- synthetic wall neighborhood ----------------------------------------------

PolyCellComplex build_wall_neighborhood_model(const Int& wall_length,
                                              const std::vector<MarkedPoint>& wall_marks,
                                              const Int& geometric_kink) {
    if (wall_length <= 0) throw std::invalid_argument("wall length must be positive");
    Int L = wall_length;
    PolyCellComplex c;
    c.dim = 2;

    auto seg = [&](const Int& len) {
        return polytope_from_points(1, {{Rat(0)}, {Rat(len)}});
    };
    auto tri = [&](const IntVec& a, const IntVec& b, const IntVec& d) {
        return polytope_from_points(2, {to_rat(a), to_rat(b), to_rat(d)});
    };
    auto pointcell = [&]() { return polytope_from_points(0, {RatVec{}}); };

    // 0: (0,0)  1: (L,0)  2: lower apex (0,-1)  3: upper apex (0,1)
    // 4: wall [0,L]  5: (0,0)-(0,-1)  6: (L,0)-(0,-1)  7: (0,0)-(0,1)  8: (L,0)-(0,1)
    // 9: lower cell  10: upper cell
    for (int i = 0; i < 4; ++i) c.cells.push_back(pointcell());
    c.cells.push_back(seg(L));
    c.cells.push_back(seg(1));
    c.cells.push_back(seg(1));
    c.cells.push_back(seg(1));
    c.cells.push_back(seg(1));
    c.cells.push_back(tri({0, 0}, {L, 0}, {0, -1}));
    c.cells.push_back(tri({0, 0}, {L, 0}, {0, 1}));
    c.marks.assign(c.cells.size(), {});
    c.marks[4] = wall_marks;

    auto pt_embed = [&](size_t host_dim, const IntVec& image) {
        AffineMapZ m;
        m.linear = IntMat(host_dim, 0);
        m.translation = image;
        return m;
    };
    auto line_embed = [&](const IntVec& dir, const IntVec& base) {
        AffineMapZ m;
        m.linear = IntMat::from_cols({dir});
        m.translation = base;
        return m;
    };
    // vertices into edges
    c.inclusions.push_back({0, 4, pt_embed(1, {0})});
    c.inclusions.push_back({1, 4, pt_embed(1, {L})});
    c.inclusions.push_back({0, 5, pt_embed(1, {0})});
    c.inclusions.push_back({2, 5, pt_embed(1, {1})});
    c.inclusions.push_back({1, 6, pt_embed(1, {0})});
    c.inclusions.push_back({2, 6, pt_embed(1, {1})});
    c.inclusions.push_back({0, 7, pt_embed(1, {0})});
    c.inclusions.push_back({3, 7, pt_embed(1, {1})});
    c.inclusions.push_back({1, 8, pt_embed(1, {0})});
    c.inclusions.push_back({3, 8, pt_embed(1, {1})});
    // vertices into cells
    c.inclusions.push_back({0, 9, pt_embed(2, {0, 0})});
    c.inclusions.push_back({1, 9, pt_embed(2, {L, 0})});
    c.inclusions.push_back({2, 9, pt_embed(2, {0, -1})});
    c.inclusions.push_back({0, 10, pt_embed(2, {0, 0})});
    c.inclusions.push_back({1, 10, pt_embed(2, {L, 0})});
    c.inclusions.push_back({3, 10, pt_embed(2, {0, 1})});
    // edges into cells
    c.inclusions.push_back({4, 9, line_embed({1, 0}, {0, 0})});
    c.inclusions.push_back({5, 9, line_embed({0, -1}, {0, 0})});
    c.inclusions.push_back({6, 9, line_embed({-L, -1}, {L, 0})});
    c.inclusions.push_back({4, 10, line_embed({1, 0}, {0, 0})});
    c.inclusions.push_back({7, 10, line_embed({0, 1}, {0, 0})});
    c.inclusions.push_back({8, 10, line_embed({-L, 1}, {L, 0})});

    auto affine = [&](const IntMat& lin, const IntVec& tr) {
        AffineMapZ m;
        m.linear = lin;
        m.translation = tr;
        return m;
    };
    IntMat I2 = IntMat::identity(2);
    IntMat shear(2, 2);   // [[1, kink], [0, 1]]
    shear.at(0, 0) = 1;
    shear.at(0, 1) = geometric_kink;
    shear.at(1, 1) = 1;

    {   // fan at (0,0): both charts are the identity
        VertexFanData vf;
        vf.vertex = 0;
        vf.charts.push_back({9, affine(I2, {0, 0})});
        vf.charts.push_back({10, affine(I2, {0, 0})});
        vf.fan = fan_from_cones(2, {cone_from_rays(2, {{1, 0}, {0, -1}}),
                                    cone_from_rays(2, {{1, 0}, {0, 1}})});
        c.vertex_fans.push_back(vf);
    }
    {   // fan at (L,0): the upper chart folds through `geometric_kink` shears
        VertexFanData vf;
        vf.vertex = 1;
        vf.charts.push_back({9, affine(I2, {-L, 0})});
        vf.charts.push_back({10, affine(shear, {-L, 0})});
        Cone lower = cone_from_rays(2, {{-1, 0}, {-L, -1}});
        Cone upper = cone_from_rays(2, {{-1, 0}, {geometric_kink - L, 1}});
        vf.fan = fan_from_cones(2, {lower, upper});
        c.vertex_fans.push_back(vf);
    }
    {   // lower apex
        VertexFanData vf;
        vf.vertex = 2;
        vf.charts.push_back({9, affine(I2, {0, 1})});
        vf.fan = fan_from_cones(2, {cone_from_rays(2, {{0, 1}, {L, 1}})});
        c.vertex_fans.push_back(vf);
    }
    {   // upper apex
        VertexFanData vf;
        vf.vertex = 3;
        vf.charts.push_back({10, affine(I2, {0, -1})});
        vf.fan = fan_from_cones(2, {cone_from_rays(2, {{0, -1}, {L, -1}})});
        c.vertex_fans.push_back(vf);
    }
    return c;
}

} // namespace tdeg
