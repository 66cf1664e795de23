#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tdeg/complex.hpp"
#include "tdeg/monodromy.hpp"
#include "tdeg/transport.hpp"

#include <algorithm>
#include <map>

using namespace tdeg;

static RatVec rv(std::initializer_list<long long> v) {
    RatVec x;
    for (auto a : v) x.push_back(Rat(a));
    return x;
}
static IntVec iv(std::initializer_list<long long> v) {
    IntVec x;
    for (auto a : v) x.push_back(Int(a));
    return x;
}

static Polytope tetrahedron() {
    return polytope_from_points(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
}

static std::vector<size_t> cells_of_dim(const ComplexIndex& ix, size_t d) {
    std::vector<size_t> out;
    for (size_t i = 0; i < ix.cell_dims.size(); ++i)
        if (ix.cell_dims[i] == d) out.push_back(i);
    return out;
}

static size_t count_check(const ValidationReport& r, const std::string& slug) {
    size_t n = 0;
    for (const ComplexViolation& v : r.violations)
        if (v.check == slug) ++n;
    return n;
}

// attach `count` unit charges at distinct rational slots inside every wall
static void mark_every_wall(PolyCellComplex& c, const ComplexIndex& ix, long long count) {
    for (size_t w : ix.walls) {
        Rat lo = c.cells[w].vertices.front()[0], hi = c.cells[w].vertices.back()[0];
        if (lo > hi) std::swap(lo, hi);
        for (long long k = 0; k < count; ++k) {
            MarkedPoint mp;
            mp.position = lo + (hi - lo) * Rat(2 * k + 1, 2 * count);
            mp.charge = 1;
            c.marks[w].push_back(mp);
        }
    }
}

TEST_CASE("boundary complex of the tetrahedron") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);

    CHECK(c.dim == 2);
    CHECK(cells_of_dim(ix, 0).size() == 4);
    CHECK(cells_of_dim(ix, 1).size() == 6);
    CHECK(cells_of_dim(ix, 2).size() == 4);
    CHECK(c.cells.size() == 14);
    CHECK(ix.walls.size() == 6);
    CHECK(ix.maximal.size() == 4);

    // normalization: barycenter at the origin, denominators cleared
    // => edges have lattice length 4
    for (size_t w : ix.walls) {
        REQUIRE(c.cells[w].vertices.size() == 2);
        Rat len = c.cells[w].vertices.back()[0] - c.cells[w].vertices.front()[0];
        if (len < 0) len = -len;
        CHECK(len == Rat(4));
    }

    ValidationReport rep = validate_complex(c);
    for (const ComplexViolation& v : rep.violations)
        MESSAGE(v.check, ": ", v.detail);
    CHECK(rep.ok);

    // each vertex: three triangles around it, complete flat fan
    REQUIRE(c.vertex_fans.size() == 4);
    for (const VertexFanData& vf : c.vertex_fans) {
        CHECK(vf.charts.size() == 3);
        CHECK(fan_is_complete(vf.fan));
        CHECK(fan_maximal_cones(vf.fan).size() == 3);
    }

    // every wall has exactly two maximal hosts
    for (size_t w : ix.walls) {
        REQUIRE(ix.wall_hosts.count(w) == 1);
        CHECK(ix.wall_hosts.at(w).size() == 2);
    }
}

TEST_CASE("boundary complexes of the square and the 4-simplex") {
    Polytope sq = polytope_from_points(2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
    PolyCellComplex cs = build_boundary_complex(sq);
    ComplexIndex ixs = build_index(cs);
    CHECK(cs.dim == 1);
    CHECK(cells_of_dim(ixs, 0).size() == 4);
    CHECK(cells_of_dim(ixs, 1).size() == 4);
    CHECK(validate_complex(cs).ok);

    Polytope s4 = polytope_from_points(
        4, {rv({0, 0, 0, 0}), rv({1, 0, 0, 0}), rv({0, 1, 0, 0}), rv({0, 0, 1, 0}), rv({0, 0, 0, 1})});
    PolyCellComplex c4 = build_boundary_complex(s4);
    ComplexIndex ix4 = build_index(c4);
    CHECK(c4.dim == 3);
    CHECK(cells_of_dim(ix4, 0).size() == 5);
    CHECK(cells_of_dim(ix4, 1).size() == 10);
    CHECK(cells_of_dim(ix4, 2).size() == 10);
    CHECK(cells_of_dim(ix4, 3).size() == 5);
    CHECK(validate_complex(c4).ok);
}

TEST_CASE("validation catches corrupted complexes") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());

    SUBCASE("shifted face embedding") {
        for (CellInclusion& inc : c.inclusions) {
            ComplexIndex ix = build_index(c);
            if (ix.cell_dims[inc.face] == 1 && ix.cell_dims[inc.host] == 2) {
                inc.embed.translation[0] += 1;
                break;
            }
        }
        ValidationReport rep = validate_complex(c);
        CHECK(!rep.ok);
        CHECK(count_check(rep, "inclusion-image") > 0);
    }

    SUBCASE("duplicated inclusion") {
        c.inclusions.push_back(c.inclusions.front());
        ValidationReport rep = validate_complex(c);
        CHECK(!rep.ok);
        CHECK(count_check(rep, "inclusion-duplicate") > 0);
    }

    SUBCASE("missing inclusion") {
        c.inclusions.pop_back();
        ValidationReport rep = validate_complex(c);
        CHECK(!rep.ok);
        CHECK(count_check(rep, "face-coverage") > 0);
    }

    SUBCASE("charged point on a non-wall cell") {
        // a charged mark on an edge is fine (dim 2), but the same complex read
        // as 3-dimensional data has no 1-dimensional walls
        ComplexIndex ix = build_index(c);
        MarkedPoint mp;
        mp.position = Rat(1, 2);
        mp.charge = 1;
        c.marks[ix.maximal.front()].push_back(mp);
        ValidationReport rep = validate_complex(c);
        CHECK(!rep.ok);
        CHECK(count_check(rep, "marks") > 0);
    }
}

TEST_CASE("latent kinks of the bare tetrahedron boundary") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);

    for (size_t w : ix.walls) {
        WallMonodromy wm = wall_monodromy(c, ix, w);
        CHECK(wm.decomposed);
        CHECK(wm.choice_invariant);
        CHECK(wm.kappa == 4);
        CHECK(dot(wm.direction, wm.conormal) == 0);

        // with no marked points the whole kink sits in the wall defect,
        // so segment crossings are refused
        MonodromyTransform d = wall_defect(c, ix, w);
        CHECK(d.decomposed);
        CHECK(d.kappa == 4);
        const std::vector<size_t>& hs = ix.wall_hosts.at(w);
        CHECK_THROWS_AS((void)crossing_at_segment(c, ix, w, hs[0], hs[1], 0), std::invalid_argument);
    }

    std::vector<Int> kinks = kinks_from_monodromy(c, ix);
    Int total = 0;
    for (size_t i = 0; i < kinks.size(); ++i) {
        if (ix.cell_dims[i] == 1) {
            CHECK(kinks[i] == 4);
        } else {
            CHECK(kinks[i] == 0);
        }
        total += kinks[i];
    }
    CHECK(total == 24);

    PositivityReport pos = is_positive(c, ix);
    CHECK(pos.positive);
    CHECK(pos.all_decomposed);
    CHECK(pos.witnesses.empty());
    CHECK(pos.walls.size() == 6);

    SimplicityReport sim = is_simple(c, ix);
    CHECK(!sim.simple);           // aggregated charge 4 is not elementary
    CHECK(!sim.per_point_simple); // and no marked points carry it
}

TEST_CASE("monodromy polytopes of a charge-4 wall") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);
    size_t w = ix.walls.front();

    MonodromyPolytopeSet ps = monodromy_polytopes(c, ix, w);
    CHECK(ps.kappa == 4);
    CHECK(ps.delta_rho.vertices.size() == 2);
    CHECK(lattice_points(ps.delta_rho).size() == 5);        // a length-4 segment
    CHECK(lattice_points(ps.delta_check_omega).size() == 5);
    CHECK(polytope_dim(ps.delta_tau) == 2);
    CHECK(!is_elementary_simplex(ps.delta_tau));
    CHECK(!is_elementary_simplex(ps.delta_check_tau));

    // guards: local polytopes need intermediate dimension
    CHECK_THROWS_AS((void)monodromy_polytopes(c, ix, cells_of_dim(ix, 0).front()),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)monodromy_polytopes(c, ix, ix.maximal.front()), std::invalid_argument);
}

TEST_CASE("balance condition at codimension-two cells") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);
    std::vector<size_t> vertices = cells_of_dim(ix, 0);

    SUBCASE("constant kink one balances at every vertex") {
        std::vector<Int> kinks(c.cells.size(), Int(0));
        for (size_t w : ix.walls) kinks[w] = 1;
        MPLReport rep = mpl_check(c, ix, kinks);
        CHECK(rep.ok);
        CHECK(rep.failing_cells.empty());
    }

    SUBCASE("the latent kinks themselves balance") {
        MPLReport rep = mpl_check(c, ix, kinks_from_monodromy(c, ix));
        CHECK(rep.ok);
    }

    SUBCASE("a single kinked wall fails exactly at its two endpoints") {
        std::vector<Int> kinks(c.cells.size(), Int(0));
        size_t w = ix.walls.front();
        kinks[w] = 1;
        MPLReport rep = mpl_check(c, ix, kinks);
        CHECK(!rep.ok);
        CHECK(rep.failing_cells == ix.vertices_of[w]);
        CHECK(rep.failing_cells.size() == 2);
    }

    SUBCASE("kink table guards") {
        std::vector<Int> kinks(c.cells.size(), Int(0));
        kinks[ix.walls.front()] = -1;
        CHECK_THROWS_AS((void)mpl_check(c, ix, kinks), std::invalid_argument);
        kinks[ix.walls.front()] = 0;
        kinks[ix.maximal.front()] = 1;
        CHECK_THROWS_AS((void)mpl_check(c, ix, kinks), std::invalid_argument);
        CHECK_THROWS_AS((void)mpl_check(c, ix, std::vector<Int>(3, Int(0))), std::invalid_argument);
    }
}

TEST_CASE("focus-focus wall neighborhood") {
    std::vector<MarkedPoint> marks(1);
    marks[0].position = Rat(1, 2);
    marks[0].charge = 1;
    PolyCellComplex m = build_wall_neighborhood_model(1, marks, 1);
    ComplexIndex ix = build_index(m);

    // an open disk: the outer edges are one-sided and the vertex fans
    // cannot close up, and validation says exactly that
    ValidationReport rep = validate_complex(m);
    CHECK(!rep.ok);
    CHECK(count_check(rep, "two-sided") == 4);
    CHECK(count_check(rep, "vertex-fan-complete") == 4);
    CHECK(rep.violations.size() == 8);

    const size_t wall = 4, lower = 9, upper = 10, v0 = 0, v1 = 1;
    REQUIRE(ix.wall_hosts.at(wall) == std::vector<size_t>{lower, upper});

    MonodromyTransform mt = monodromy_loop(m, ix, wall, v0, v1, lower, upper);
    CHECK(mt.decomposed);
    CHECK(mt.kappa == 1);
    REQUIRE(mt.matrix.rows == 2);
    CHECK(mt.matrix.at(0, 0) == 1);
    CHECK(mt.matrix.at(0, 1) == 1);
    CHECK(mt.matrix.at(1, 0) == 0);
    CHECK(mt.matrix.at(1, 1) == 1);
    CHECK(mt.direction == iv({1, 0}));
    CHECK(mt.conormal == iv({0, 1}));

    WallMonodromy wm = wall_monodromy(m, ix, wall);
    CHECK(wm.decomposed);
    CHECK(wm.kappa == 1);
    CHECK(wm.choice_invariant);

    // the single unit charge absorbs the kink exactly
    MonodromyTransform d = wall_defect(m, ix, wall);
    CHECK(d.decomposed);
    CHECK(d.kappa == 0);
    AffineMapZ below = crossing_at_segment(m, ix, wall, lower, upper, 0);
    AffineMapZ above = crossing_at_segment(m, ix, wall, lower, upper, 1);
    CHECK(below == crossing_at_vertex(m, ix, wall, lower, upper, v0));
    CHECK(above == crossing_at_vertex(m, ix, wall, lower, upper, v1));
    CHECK(!(below == above));

    MonodromyTransform ml = mark_loop(m, ix, wall, 0, lower, upper);
    CHECK(ml.decomposed);
    CHECK(ml.kappa == 1);

    SimplicityReport sim = is_simple(m, ix);
    CHECK(sim.simple);
    CHECK(sim.per_point_simple);
    CHECK(is_positive(m, ix).positive);

    MonodromyPolytopeSet ps = monodromy_polytopes(m, ix, wall);
    CHECK(ps.kappa == 1);
    CHECK(is_elementary_simplex(ps.delta_tau));
    CHECK(is_elementary_simplex(ps.delta_check_tau));
}

TEST_CASE("wall neighborhood variants") {
    SUBCASE("charges that do not match the kink leave a defect") {
        std::vector<MarkedPoint> marks(1);
        marks[0].position = Rat(1, 2);
        marks[0].charge = 2;
        PolyCellComplex m = build_wall_neighborhood_model(1, marks, 1);
        ComplexIndex ix = build_index(m);
        MonodromyTransform d = wall_defect(m, ix, 4);
        CHECK(d.decomposed);
        CHECK(d.kappa == -1);
        CHECK_THROWS_AS((void)crossing_at_segment(m, ix, 4, 9, 10, 1), std::invalid_argument);
        SimplicityReport sim = is_simple(m, ix);
        CHECK(!sim.per_point_simple);
        // the wall itself still has charge 1, which is elementary
        CHECK(sim.simple);
    }

    SUBCASE("negative kink fails positivity but not simplicity") {
        std::vector<MarkedPoint> marks(1);
        marks[0].position = Rat(1, 2);
        marks[0].charge = -1;
        PolyCellComplex m = build_wall_neighborhood_model(1, marks, -1);
        ComplexIndex ix = build_index(m);
        WallMonodromy wm = wall_monodromy(m, ix, 4);
        CHECK(wm.decomposed);
        CHECK(wm.kappa == -1);
        PositivityReport pos = is_positive(m, ix);
        CHECK(!pos.positive);
        CHECK(pos.all_decomposed);
        REQUIRE(pos.witnesses.size() == 1);
        CHECK(pos.witnesses[0].find("negative") != std::string::npos);
        SimplicityReport sim = is_simple(m, ix);
        CHECK(sim.simple);
        CHECK(sim.per_point_simple);
    }

    SUBCASE("a longer wall distributes charges over segments") {
        std::vector<MarkedPoint> marks(3);
        for (int j = 0; j < 3; ++j) {
            marks[j].position = Rat(2 * j + 1, 2);
            marks[j].charge = 1;
        }
        PolyCellComplex m = build_wall_neighborhood_model(3, marks, 3);
        ComplexIndex ix = build_index(m);
        CHECK(validate_complex(m).violations.size() == 8);   // same open-disk noise only
        WallMonodromy wm = wall_monodromy(m, ix, 4);
        CHECK(wm.kappa == 3);
        CHECK(wall_defect(m, ix, 4).kappa == 0);
        for (size_t j = 0; j < 3; ++j) {
            MonodromyTransform ml = mark_loop(m, ix, 4, j, 9, 10);
            CHECK(ml.decomposed);
            CHECK(ml.kappa == 1);
        }
        SimplicityReport sim = is_simple(m, ix);
        CHECK(!sim.simple);          // aggregated charge 3
        CHECK(sim.per_point_simple); // three unit charges
    }
}

TEST_CASE("marked tetrahedron boundary carries its kinks on points") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);
    mark_every_wall(c, ix, 4);

    ValidationReport rep = validate_complex(c);
    CHECK(rep.ok);

    size_t total_marks = 0;
    for (size_t w : ix.walls) total_marks += c.marks[w].size();
    CHECK(total_marks == 24);

    for (size_t w : ix.walls) {
        const std::vector<size_t>& hs = ix.wall_hosts.at(w);
        MonodromyTransform d = wall_defect(c, ix, w);
        CHECK(d.decomposed);
        CHECK(d.kappa == 0);

        WallMonodromy wm = wall_monodromy(c, ix, w);
        CHECK(wm.kappa == 4);
        CHECK(wm.choice_invariant);

        // all five segment crossings are legal and pairwise distinct
        std::vector<AffineMapZ> segs;
        for (size_t s = 0; s <= 4; ++s)
            segs.push_back(crossing_at_segment(c, ix, w, hs[0], hs[1], s));
        WallFrame fr = wall_frame(c, ix, w, hs[0]);
        CHECK(segs.front() == crossing_at_vertex(c, ix, w, hs[0], hs[1], fr.low_vertex));
        CHECK(segs.back() == crossing_at_vertex(c, ix, w, hs[0], hs[1], fr.high_vertex));
        for (size_t sx = 0; sx < segs.size(); ++sx)
            for (size_t sy = sx + 1; sy < segs.size(); ++sy) CHECK(!(segs[sx] == segs[sy]));

        for (size_t j = 0; j < 4; ++j) {
            MonodromyTransform ml = mark_loop(c, ix, w, j, hs[0], hs[1]);
            CHECK(ml.decomposed);
            CHECK(ml.kappa == 1);
        }
    }

    PositivityReport pos = is_positive(c, ix);
    CHECK(pos.positive);
    CHECK(pos.all_decomposed);

    SimplicityReport sim = is_simple(c, ix);
    CHECK(!sim.simple);          // per-wall aggregation has charge 4
    CHECK(sim.per_point_simple); // each of the 24 points has unit charge
    bool mentions_aggregate = false;
    for (const std::string& s : sim.details)
        mentions_aggregate = mentions_aggregate || s.find("aggregated") != std::string::npos;
    CHECK(mentions_aggregate);
}

TEST_CASE("parallel transport composes crossings") {
    PolyCellComplex c = build_boundary_complex(tetrahedron());
    ComplexIndex ix = build_index(c);

    CHECK(parallel_transport(c, ix, ix.maximal.front(), {}) == AffineMapZ::identity(2));
    CHECK_THROWS_AS((void)parallel_transport(c, ix, ix.walls.front(), {}), std::invalid_argument);

    // pick a wall and its sides
    size_t w = ix.walls.front();
    const std::vector<size_t>& hs = ix.wall_hosts.at(w);
    size_t vlo = ix.vertices_of[w][0], vhi = ix.vertices_of[w][1];

    SUBCASE("there and back across the same vertex is trivial") {
        std::vector<PathStep> path(2);
        path[0] = {w, hs[1], true, vlo, 0};
        path[1] = {w, hs[0], true, vlo, 0};
        CHECK(parallel_transport(c, ix, hs[0], path) == AffineMapZ::identity(2));
    }

    SUBCASE("out one end and back the other is the wall monodromy") {
        std::vector<PathStep> path(2);
        path[0] = {w, hs[1], true, vlo, 0};
        path[1] = {w, hs[0], true, vhi, 0};
        AffineMapZ loop = parallel_transport(c, ix, hs[0], path);
        CHECK(!(loop == AffineMapZ::identity(2)));
        CHECK(loop.linear == monodromy_loop(c, ix, w, vlo, vhi, hs[0], hs[1]).matrix);
    }

    SUBCASE("a loop around a vertex through its three cells is trivial") {
        size_t v = cells_of_dim(ix, 0).front();
        std::vector<size_t> around;
        for (size_t h : ix.hosts[v])
            if (ix.cell_dims[h] == 2) around.push_back(h);
        REQUIRE(around.size() == 3);
        auto shared_wall = [&](size_t a, size_t b) -> size_t {
            for (size_t e : ix.walls) {
                const std::vector<size_t>& eh = ix.wall_hosts.at(e);
                if (eh[0] != std::min(a, b) || eh[1] != std::max(a, b)) continue;
                for (size_t vv : ix.vertices_of[e])
                    if (vv == v) return e;
            }
            FAIL("no shared wall through the vertex");
            return 0;
        };
        std::vector<PathStep> path(3);
        path[0] = {shared_wall(around[0], around[1]), around[1], true, v, 0};
        path[1] = {shared_wall(around[1], around[2]), around[2], true, v, 0};
        path[2] = {shared_wall(around[2], around[0]), around[0], true, v, 0};
        CHECK(parallel_transport(c, ix, around[0], path) == AffineMapZ::identity(2));
    }

    SUBCASE("illegal steps are rejected") {
        std::vector<PathStep> path(1);
        path[0] = {w, hs[0], true, vlo, 0};   // not the far side
        CHECK_THROWS_AS((void)parallel_transport(c, ix, hs[0], path), std::invalid_argument);
        path[0] = {w, hs[1], true, cells_of_dim(ix, 0).back(), 0};
        bool vertex_on_wall = false;
        for (size_t vv : ix.vertices_of[w]) vertex_on_wall |= vv == cells_of_dim(ix, 0).back();
        if (!vertex_on_wall)
            CHECK_THROWS_AS((void)parallel_transport(c, ix, hs[0], path), std::invalid_argument);
    }
}

TEST_CASE("total latent kink of reflexive boundaries is 24") {
    struct Case {
        Polytope p;
        size_t edges;
        long long kink;
    };
    std::vector<Case> cases;
    cases.push_back({tetrahedron(), 6, 4});
    cases.push_back({polytope_from_points(3, {rv({1, 0, 0}), rv({-1, 0, 0}), rv({0, 1, 0}),
                                              rv({0, -1, 0}), rv({0, 0, 1}), rv({0, 0, -1})}),
                     12, 2});
    cases.push_back({polytope_from_points(3, {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}),
                                              rv({1, 1, 0}), rv({0, 0, 1}), rv({1, 0, 1}),
                                              rv({0, 1, 1}), rv({1, 1, 1})}),
                     12, 2});

    for (const Case& cs : cases) {
        PolyCellComplex c = build_boundary_complex(cs.p);
        ComplexIndex ix = build_index(c);
        CHECK(validate_complex(c).ok);
        REQUIRE(ix.walls.size() == cs.edges);
        Int total = 0;
        for (size_t w : ix.walls) {
            WallMonodromy wm = wall_monodromy(c, ix, w);
            CHECK(wm.decomposed);
            CHECK(wm.choice_invariant);
            CHECK(wm.kappa == cs.kink);
            total += wm.kappa;
        }
        CHECK(total == 24);
        CHECK(is_positive(c, ix).positive);
        CHECK(mpl_check(c, ix, kinks_from_monodromy(c, ix)).ok);
    }
}

TEST_CASE("higher-dimensional complexes without monodromy") {
    Polytope s4 = polytope_from_points(
        4, {rv({0, 0, 0, 0}), rv({1, 0, 0, 0}), rv({0, 1, 0, 0}), rv({0, 0, 1, 0}), rv({0, 0, 0, 1})});
    PolyCellComplex c = build_boundary_complex(s4);
    ComplexIndex ix = build_index(c);

    // the boundary 3-sphere of a simplex has honest monodromy, so the
    // restricted higher-dimensional searches must refuse rather than guess
    CHECK_THROWS_AS((void)is_simple(c, ix), std::runtime_error);

    PositivityReport pos = is_positive(c, ix);
    CHECK(pos.all_decomposed);
    CHECK(pos.positive);
    for (const WallMonodromy& wm : pos.walls) CHECK(wm.kappa >= 0);
}
