#include "tdeg/json_io.hpp"

#include "tdeg/digest.hpp"
#include "tdeg/monodromy.hpp"
#include "tdeg/transport.hpp"

#include <chrono>
#include <sstream>

namespace tdeg {

const char* tool_version() { return "0.1.0"; }

// ---- serialization ----------------------------------------------------------------

Json json_of_int(const Int& v) { return v.str(); }

Json json_of_rat(const Rat& v) { return rat_to_string(v); }

Json json_of_int_vec(const IntVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(json_of_int(x));
    return a;
}

Json json_of_rat_vec(const RatVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(json_of_rat(x));
    return a;
}

Json json_of_mat(const IntMat& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows; ++i) rows.push_back(json_of_int_vec(m.row(i)));
    return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

Json json_of_affine(const AffineMapZ& m) {
    return Json{{"linear", json_of_mat(m.linear)}, {"translation", json_of_int_vec(m.translation)}};
}

static Json json_of_int_vec_list(const std::vector<IntVec>& vs) {
    Json a = Json::array();
    for (const IntVec& v : vs) a.push_back(json_of_int_vec(v));
    return a;
}

Json json_of_cone(const Cone& c) {
    Json eq = Json::array();
    for (const IntVec& e : c.equations) eq.push_back(json_of_int_vec(e));
    return Json{{"n", c.n},
                {"rays", json_of_int_vec_list(c.rays)},
                {"lineality", json_of_int_vec_list(c.lineality)},
                {"normals", json_of_int_vec_list(c.normals)},
                {"equations", eq}};
}

Json json_of_polytope(const Polytope& p) {
    Json vs = Json::array();
    for (const RatVec& v : p.vertices) vs.push_back(json_of_rat_vec(v));
    Json fs = Json::array();
    for (const auto& [a, b] : p.facets)
        fs.push_back(Json{{"normal", json_of_int_vec(a)}, {"offset", json_of_rat(b)}});
    Json eqs = Json::array();
    for (const auto& [a, b] : p.equations)
        eqs.push_back(Json{{"normal", json_of_int_vec(a)}, {"offset", json_of_rat(b)}});
    return Json{{"n", p.n}, {"vertices", vs}, {"facets", fs}, {"equations", eqs}};
}

Json json_of_fan(const Fan& f) {
    Json cs = Json::array();
    for (const Cone& c : f.cones) cs.push_back(json_of_cone(c));
    return Json{{"n", f.n}, {"cones", cs}};
}

Json json_of_complex(const PolyCellComplex& c) {
    Json cells = Json::array();
    for (const Polytope& p : c.cells)
        cells.push_back(Json{{"n", p.n}, {"vertices", json_of_polytope(p)["vertices"]}});
    Json incl = Json::array();
    for (const CellInclusion& e : c.inclusions)
        incl.push_back(Json{{"face", e.face}, {"host", e.host}, {"map", json_of_affine(e.embed)}});
    Json marks = Json::array();
    for (const auto& cell_marks : c.marks) {
        Json ms = Json::array();
        for (const MarkedPoint& m : cell_marks)
            ms.push_back(Json{{"position", json_of_rat(m.position)}, {"charge", json_of_int(m.charge)}});
        marks.push_back(ms);
    }
    Json vfs = Json::array();
    for (const VertexFanData& vf : c.vertex_fans) {
        Json charts = Json::array();
        for (const VertexCellChart& ch : vf.charts)
            charts.push_back(Json{{"max_cell", ch.max_cell}, {"map", json_of_affine(ch.chart)}});
        vfs.push_back(Json{{"vertex", vf.vertex}, {"fan", json_of_fan(vf.fan)}, {"charts", charts}});
    }
    return Json{{"dim", c.dim},
                {"cells", cells},
                {"inclusions", incl},
                {"marks", marks},
                {"vertex_fans", vfs}};
}

Json json_of_presented_monoid(const PresentedMonoid& m) {
    Json rels = Json::array();
    for (const auto& [l, r] : m.rels)
        rels.push_back(Json{{"lhs", json_of_int_vec(l)}, {"rhs", json_of_int_vec(r)}});
    return Json{{"gens", m.gens}, {"relations", rels}};
}

Json json_of_cstar(const CStarValue& v) {
    return Json{{"re", json_of_rat(v.re)}, {"im", json_of_rat(v.im)}};
}

Json json_of_torus(const TorusElement& t) {
    Json a = Json::array();
    for (const CStarValue& v : t) a.push_back(json_of_cstar(v));
    return a;
}

Json json_of_open_gluing(const OpenGluingData& g) {
    Json ts = Json::array();
    for (const auto& [edge, tup] : g.tuples) {
        Json vals = Json::array();
        for (const auto& [v, s] : tup.values)
            vals.push_back(Json{{"vertex", v}, {"value", json_of_torus(s)}});
        ts.push_back(Json{{"face", edge.first},
                          {"host", edge.second},
                          {"cell", tup.tau},
                          {"chart", tup.sigma},
                          {"values", vals}});
    }
    return Json{{"tuples", ts}};
}

Json json_of_lifted_gluing(const LiftedGluingData& l) {
    Json ss = Json::array();
    for (const auto& [edge, s] : l.sections)
        ss.push_back(Json{{"face", edge.first}, {"host", edge.second}, {"value", json_of_torus(s)}});
    return Json{{"sections", ss}};
}

// ---- parsing ------------------------------------------------------------------------

static const Json& need(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw InputError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + "." + key, "missing field");
    return *it;
}

static size_t index_of_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                   j.get<long long>() < 0))
        throw InputError(where, "expected a nonnegative integer");
    return j.get<size_t>();
}

Int int_of_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw InputError(where, "not an integer: \"" + j.get<std::string>() + "\"");
        }
    }
    throw InputError(where, "expected an integer (number or decimal string)");
}

Rat rat_of_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    if (j.is_string()) {
        try {
            return rat_from_string(j.get<std::string>());
        } catch (const std::exception&) {
            throw InputError(where, "not a rational: \"" + j.get<std::string>() + "\"");
        }
    }
    throw InputError(where, "expected a rational (integer or \"p/q\" string)");
}

IntVec int_vec_of_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array");
    IntVec v;
    for (size_t i = 0; i < j.size(); ++i)
        v.push_back(int_of_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

RatVec rat_vec_of_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array");
    RatVec v;
    for (size_t i = 0; i < j.size(); ++i)
        v.push_back(rat_of_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

static std::vector<IntVec> int_vec_list_of_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array");
    std::vector<IntVec> vs;
    for (size_t i = 0; i < j.size(); ++i)
        vs.push_back(int_vec_of_json(j[i], where + "[" + std::to_string(i) + "]"));
    return vs;
}

IntMat mat_of_json(const Json& j, const std::string& where) {
    size_t rows = index_of_json(need(j, "rows", where), where + ".rows");
    size_t cols = index_of_json(need(j, "cols", where), where + ".cols");
    std::vector<IntVec> entries = int_vec_list_of_json(need(j, "entries", where), where + ".entries");
    if (entries.size() != rows) throw InputError(where + ".entries", "row count mismatch");
    for (const IntVec& r : entries)
        if (r.size() != cols) throw InputError(where + ".entries", "column count mismatch");
    IntMat m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < cols; ++k) m.at(i, k) = entries[i][k];
    return m;
}

AffineMapZ affine_of_json(const Json& j, const std::string& where) {
    AffineMapZ m;
    m.linear = mat_of_json(need(j, "linear", where), where + ".linear");
    m.translation = int_vec_of_json(need(j, "translation", where), where + ".translation");
    if (m.translation.size() != m.linear.rows)
        throw InputError(where + ".translation", "length differs from the linear part's row count");
    return m;
}

Cone cone_of_json(const Json& j, const std::string& where) {
    size_t n = index_of_json(need(j, "n", where), where + ".n");
    bool has_gens = j.contains("rays") || j.contains("lineality");
    bool has_halfspaces = j.contains("normals") || j.contains("equations");
    try {
        if (has_gens) {
            std::vector<IntVec> gens;
            if (j.contains("rays")) gens = int_vec_list_of_json(j["rays"], where + ".rays");
            if (j.contains("lineality"))
                for (const IntVec& l : int_vec_list_of_json(j["lineality"], where + ".lineality")) {
                    gens.push_back(l);
                    gens.push_back(neg(l));
                }
            return cone_from_rays(n, gens);
        }
        if (has_halfspaces) {
            std::vector<IntVec> normals, equations;
            if (j.contains("normals")) normals = int_vec_list_of_json(j["normals"], where + ".normals");
            if (j.contains("equations"))
                equations = int_vec_list_of_json(j["equations"], where + ".equations");
            return cone_from_halfspaces(n, normals, equations);
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
    throw InputError(where, "expected generators (rays/lineality) or halfspaces (normals/equations)");
}

Polytope polytope_of_json(const Json& j, const std::string& where) {
    size_t n = index_of_json(need(j, "n", where), where + ".n");
    const Json& vj = need(j, "vertices", where);
    if (!vj.is_array()) throw InputError(where + ".vertices", "expected an array");
    std::vector<RatVec> pts;
    for (size_t i = 0; i < vj.size(); ++i) {
        RatVec p = rat_vec_of_json(vj[i], where + ".vertices[" + std::to_string(i) + "]");
        if (p.size() != n)
            throw InputError(where + ".vertices[" + std::to_string(i) + "]", "dimension mismatch");
        pts.push_back(p);
    }
    try {
        return polytope_from_points(n, pts);
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
}

Fan fan_of_json(const Json& j, const std::string& where) {
    size_t n = index_of_json(need(j, "n", where), where + ".n");
    const Json& cj = need(j, "cones", where);
    if (!cj.is_array()) throw InputError(where + ".cones", "expected an array");
    std::vector<Cone> cones;
    for (size_t i = 0; i < cj.size(); ++i)
        cones.push_back(cone_of_json(cj[i], where + ".cones[" + std::to_string(i) + "]"));
    try {
        return fan_from_cones(n, cones);
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
}

PolyCellComplex complex_of_json(const Json& j, const std::string& where) {
    PolyCellComplex c;
    c.dim = index_of_json(need(j, "dim", where), where + ".dim");
    const Json& cj = need(j, "cells", where);
    if (!cj.is_array()) throw InputError(where + ".cells", "expected an array");
    for (size_t i = 0; i < cj.size(); ++i)
        c.cells.push_back(polytope_of_json(cj[i], where + ".cells[" + std::to_string(i) + "]"));

    const Json& ij = need(j, "inclusions", where);
    if (!ij.is_array()) throw InputError(where + ".inclusions", "expected an array");
    for (size_t i = 0; i < ij.size(); ++i) {
        std::string iw = where + ".inclusions[" + std::to_string(i) + "]";
        CellInclusion e;
        e.face = index_of_json(need(ij[i], "face", iw), iw + ".face");
        e.host = index_of_json(need(ij[i], "host", iw), iw + ".host");
        e.embed = affine_of_json(need(ij[i], "map", iw), iw + ".map");
        if (e.face >= c.cells.size() || e.host >= c.cells.size())
            throw InputError(iw, "cell index out of range");
        c.inclusions.push_back(e);
    }

    c.marks.assign(c.cells.size(), {});
    if (j.contains("marks")) {
        const Json& mj = j["marks"];
        if (!mj.is_array() || mj.size() != c.cells.size())
            throw InputError(where + ".marks", "expected one mark list per cell");
        for (size_t i = 0; i < mj.size(); ++i) {
            std::string mw = where + ".marks[" + std::to_string(i) + "]";
            if (!mj[i].is_array()) throw InputError(mw, "expected an array");
            for (size_t k = 0; k < mj[i].size(); ++k) {
                std::string pw = mw + "[" + std::to_string(k) + "]";
                MarkedPoint p;
                p.position = rat_of_json(need(mj[i][k], "position", pw), pw + ".position");
                p.charge = int_of_json(need(mj[i][k], "charge", pw), pw + ".charge");
                c.marks[i].push_back(p);
            }
        }
    }

    if (j.contains("vertex_fans")) {
        const Json& vj = j["vertex_fans"];
        if (!vj.is_array()) throw InputError(where + ".vertex_fans", "expected an array");
        for (size_t i = 0; i < vj.size(); ++i) {
            std::string vw = where + ".vertex_fans[" + std::to_string(i) + "]";
            VertexFanData vf;
            vf.vertex = index_of_json(need(vj[i], "vertex", vw), vw + ".vertex");
            vf.fan = fan_of_json(need(vj[i], "fan", vw), vw + ".fan");
            const Json& chj = need(vj[i], "charts", vw);
            if (!chj.is_array()) throw InputError(vw + ".charts", "expected an array");
            for (size_t k = 0; k < chj.size(); ++k) {
                std::string cw = vw + ".charts[" + std::to_string(k) + "]";
                VertexCellChart ch;
                ch.max_cell = index_of_json(need(chj[k], "max_cell", cw), cw + ".max_cell");
                ch.chart = affine_of_json(need(chj[k], "map", cw), cw + ".map");
                vf.charts.push_back(ch);
            }
            c.vertex_fans.push_back(vf);
        }
    }
    return c;
}

PresentedMonoid presented_monoid_of_json(const Json& j, const std::string& where) {
    PresentedMonoid m;
    m.gens = index_of_json(need(j, "gens", where), where + ".gens");
    if (j.contains("relations")) {
        const Json& rj = j["relations"];
        if (!rj.is_array()) throw InputError(where + ".relations", "expected an array");
        for (size_t i = 0; i < rj.size(); ++i) {
            std::string rw = where + ".relations[" + std::to_string(i) + "]";
            IntVec l = int_vec_of_json(need(rj[i], "lhs", rw), rw + ".lhs");
            IntVec r = int_vec_of_json(need(rj[i], "rhs", rw), rw + ".rhs");
            if (l.size() != m.gens || r.size() != m.gens)
                throw InputError(rw, "relation arity differs from the generator count");
            for (const Int& x : l)
                if (x < 0) throw InputError(rw + ".lhs", "exponents must be nonnegative");
            for (const Int& x : r)
                if (x < 0) throw InputError(rw + ".rhs", "exponents must be nonnegative");
            m.rels.push_back({l, r});
        }
    }
    return m;
}

CStarValue cstar_of_json(const Json& j, const std::string& where) {
    CStarValue v;
    v.re = rat_of_json(need(j, "re", where), where + ".re");
    v.im = rat_of_json(need(j, "im", where), where + ".im");
    if (v.re == 0 && v.im == 0) throw InputError(where, "multiplicative value must be nonzero");
    return v;
}

TorusElement torus_of_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array");
    TorusElement t;
    for (size_t i = 0; i < j.size(); ++i)
        t.push_back(cstar_of_json(j[i], where + "[" + std::to_string(i) + "]"));
    return t;
}

OpenGluingData open_gluing_of_json(const Json& j, const std::string& where) {
    OpenGluingData g;
    const Json& tj = need(j, "tuples", where);
    if (!tj.is_array()) throw InputError(where + ".tuples", "expected an array");
    for (size_t i = 0; i < tj.size(); ++i) {
        std::string tw = where + ".tuples[" + std::to_string(i) + "]";
        size_t face = index_of_json(need(tj[i], "face", tw), tw + ".face");
        size_t host = index_of_json(need(tj[i], "host", tw), tw + ".host");
        PMTuple tup;
        tup.tau = index_of_json(need(tj[i], "cell", tw), tw + ".cell");
        tup.sigma = index_of_json(need(tj[i], "chart", tw), tw + ".chart");
        const Json& vj = need(tj[i], "values", tw);
        if (!vj.is_array()) throw InputError(tw + ".values", "expected an array");
        for (size_t k = 0; k < vj.size(); ++k) {
            std::string vw = tw + ".values[" + std::to_string(k) + "]";
            size_t vertex = index_of_json(need(vj[k], "vertex", vw), vw + ".vertex");
            tup.values[vertex] = torus_of_json(need(vj[k], "value", vw), vw + ".value");
        }
        g.tuples[{face, host}] = tup;
    }
    return g;
}

LiftedGluingData lifted_gluing_of_json(const Json& j, const std::string& where) {
    LiftedGluingData l;
    const Json& sj = need(j, "sections", where);
    if (!sj.is_array()) throw InputError(where + ".sections", "expected an array");
    for (size_t i = 0; i < sj.size(); ++i) {
        std::string sw = where + ".sections[" + std::to_string(i) + "]";
        size_t face = index_of_json(need(sj[i], "face", sw), sw + ".face");
        size_t host = index_of_json(need(sj[i], "host", sw), sw + ".host");
        l.sections[{face, host}] = torus_of_json(need(sj[i], "value", sw), sw + ".value");
    }
    return l;
}

// ---- report serialization -----------------------------------------------------------

namespace {

Json json_of_validation(const ValidationReport& r) {
    Json vs = Json::array();
    for (const ComplexViolation& v : r.violations)
        vs.push_back(Json{{"check", v.check}, {"detail", v.detail}});
    return Json{{"ok", r.ok}, {"violations", vs}};
}

Json json_of_wall_monodromy(const WallMonodromy& w) {
    return Json{{"wall", w.wall},
                {"decomposed", w.decomposed},
                {"kappa", json_of_int(w.kappa)},
                {"direction", json_of_int_vec(w.direction)},
                {"conormal", json_of_int_vec(w.conormal)},
                {"choice_invariant", w.choice_invariant}};
}

Json json_of_positivity(const PositivityReport& r) {
    Json ws = Json::array();
    for (const WallMonodromy& w : r.walls) ws.push_back(json_of_wall_monodromy(w));
    Json wit = Json::array();
    for (const std::string& s : r.witnesses) wit.push_back(s);
    return Json{{"positive", r.positive},
                {"all_decomposed", r.all_decomposed},
                {"walls", ws},
                {"witnesses", wit}};
}

Json json_of_simplicity(const SimplicityReport& r) {
    Json ds = Json::array();
    for (const std::string& s : r.details) ds.push_back(s);
    return Json{{"simple", r.simple}, {"per_point_simple", r.per_point_simple}, {"details", ds}};
}

Json json_of_mpl(const MPLReport& r) {
    Json fc = Json::array();
    for (size_t c : r.failing_cells) fc.push_back(c);
    Json ds = Json::array();
    for (const std::string& s : r.details) ds.push_back(s);
    return Json{{"ok", r.ok}, {"failing_cells", fc}, {"details", ds}};
}

Json json_of_gluing_report(const GluingReport& r) {
    Json vs = Json::array();
    for (const GluingViolation& v : r.violations)
        vs.push_back(Json{{"check", v.check}, {"detail", v.detail}});
    return Json{{"ok", r.ok}, {"violations", vs}};
}

Json json_of_intpoly(const IntPoly& p) {
    Json cs = Json::array();
    for (const Int& c : p.c) cs.push_back(json_of_int(c));
    return Json{{"coefficients", cs}, {"text", p.str()}};
}

Json json_of_fiber_class(const FiberClass& f) {
    Json j{{"class", f.str()}, {"euler_known", f.euler_known}};
    if (f.euler_known) j["euler"] = json_of_int(f.euler);
    if (f.tag == FiberClassTag::smooth_torus) j["torus_rank"] = f.torus_rank;
    return j;
}

Json json_of_fibration(const FibrationReport& r) {
    Json gen = Json::array();
    for (const auto& [cell, fc] : r.generic_classes)
        gen.push_back(Json{{"cell", cell}, {"fiber", json_of_fiber_class(fc)}});
    Json dis = Json::array();
    for (const auto& [p, fc] : r.discriminant_classes)
        dis.push_back(Json{{"wall", p.wall},
                           {"mark_index", p.mark_index},
                           {"position", json_of_rat(p.position)},
                           {"momentum", p.momentum},
                           {"charge", json_of_int(p.charge)},
                           {"root", p.root_label},
                           {"fiber", json_of_fiber_class(fc)}});
    Json rows = Json::array();
    for (const StratumRankRow& row : r.rank_table) {
        Json rj{{"cell", row.cell}, {"dim", row.dim}, {"modeled", row.modeled}};
        if (row.modeled) {
            rj["ghost_rank"] = row.ghost_rank;
            rj["orbit_rank"] = row.orbit_rank;
            rj["fiber_rank"] = row.fiber_rank;
        }
        rows.push_back(rj);
    }
    Json j{{"euler_known", r.euler_known},
           {"generic_classes", gen},
           {"discriminant_classes", dis},
           {"rank_table", rows}};
    if (r.euler_known) j["euler_total"] = json_of_int(r.euler_total);
    return j;
}

Json json_of_quartic_report(const QuarticK3Report& rep) {
    Json terms = Json::array();
    for (const auto& [e, c] : rep.f4.coeff)
        terms.push_back(Json{{"exponents", Json{e[0], e[1], e[2], e[3]}}, {"coefficient", json_of_int(c)}});

    Json edges = Json::array();
    for (const QuarticEdgeReport& e : rep.edges) {
        Json factors = Json::array();
        for (const IntPoly& f : e.factorization.factors) factors.push_back(json_of_intpoly(f));
        Json roots = Json::array();
        for (const QuadraticRoot& r : e.roots)
            roots.push_back(Json{{"label", r.str()},
                                 {"rational_part", json_of_int(r.a)},
                                 {"radical_coefficient", json_of_int(r.b)},
                                 {"radicand", json_of_int(r.d)},
                                 {"denominator", json_of_int(r.c)},
                                 {"approx", r.approx()}});
        Json mom = Json::array();
        for (double m : e.momentum) mom.push_back(m);
        edges.push_back(Json{{"wall", e.wall},
                             {"kept", Json{e.kept[0], e.kept[1]}},
                             {"restriction", json_of_intpoly(e.restriction.p)},
                             {"degree_dropped", e.restriction.degree_dropped},
                             {"factorization",
                              Json{{"unit", json_of_rat(e.factorization.unit)},
                                   {"content", json_of_int(e.factorization.content)},
                                   {"factors", factors}}},
                             {"sturm_count", e.real_roots},
                             {"roots", roots},
                             {"momentum", mom},
                             {"inversion_paired", e.inversion_paired}});
    }

    Json points = Json::array();
    for (const DiscriminantPoint& p : rep.model.discriminant.points)
        points.push_back(Json{{"wall", p.wall},
                              {"mark_index", p.mark_index},
                              {"position", json_of_rat(p.position)},
                              {"momentum", p.momentum},
                              {"charge", json_of_int(p.charge)},
                              {"root", p.root_label}});

    return Json{{"discriminant_count", rep.discriminant_count},
                {"quartic", Json{{"terms", terms}}},
                {"edges", edges},
                {"discriminant", points},
                {"complex", json_of_complex(rep.model.base)},
                {"component_cells", rep.model.component_cells},
                {"validity", json_of_validation(rep.validity)},
                {"positivity", json_of_positivity(rep.positivity)},
                {"mpl", json_of_mpl(rep.mpl)},
                {"fibration", json_of_fibration(rep.fibration)}};
}

std::string tri_to_string(Tri t) { return tri_str(t); }

// ---- command handlers ----------------------------------------------------------------

struct HandlerResult {
    Json report;
    bool ok = true;
};

Json parse_input(const std::string& bytes, const std::string& command) {
    if (bytes.empty()) throw InputError(command, "missing input document");
    try {
        return Json::parse(bytes);
    } catch (const Json::parse_error& e) {
        throw InputError(command, std::string("malformed JSON: ") + e.what());
    }
}

// Core operations reject inputs outside their modeled domain with
// invalid_argument/runtime_error; surface those as input errors, not crashes.
template <typename F>
auto in_domain(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError(where, e.what());
    } catch (const std::runtime_error& e) {
        throw InputError(where, e.what());
    }
}

HandlerResult handle_monoid_classify(const Json& in) {
    if (in.contains("cone")) {
        Cone c = cone_of_json(in["cone"], "cone");
        ToricMonoid m = in_domain("cone", [&] { return toric_monoid_from_fan_cone(c); });
        MonoidClassification cls = classify_toric(m);
        HilbertBasisResult hb = in_domain("cone", [&] { return hilbert_basis(dual_cone(c)); });
        Json rep{{"kind", "toric"},
                 {"classification",
                  Json{{"integral", tri_to_string(cls.integral)},
                       {"fine", tri_to_string(cls.fine)},
                       {"saturated", tri_to_string(cls.saturated)},
                       {"toric", tri_to_string(cls.toric)}}},
                 {"dual_hilbert_basis", json_of_int_vec_list(hb.basis)}};
        return {rep, true};
    }
    PresentedMonoid m = presented_monoid_of_json(in, "monoid");
    unsigned bound = 12;
    if (in.contains("degree_bound"))
        bound = unsigned(index_of_json(in["degree_bound"], "monoid.degree_bound"));
    MonoidClassification cls = in_domain("monoid", [&] { return classify_presented(m, bound); });
    Groupification g = in_domain("monoid", [&] { return groupify(m); });
    Json notes = Json::object();
    if (!cls.integral_note.empty()) notes["integral"] = cls.integral_note;
    if (!cls.saturated_note.empty()) notes["saturated"] = cls.saturated_note;
    if (!cls.toric_note.empty()) notes["toric"] = cls.toric_note;
    Json rep{{"kind", "presented"},
             {"classification",
              Json{{"integral", tri_to_string(cls.integral)},
                   {"fine", tri_to_string(cls.fine)},
                   {"saturated", tri_to_string(cls.saturated)},
                   {"toric", tri_to_string(cls.toric)},
                   {"notes", notes}}},
             {"group",
              Json{{"rank", g.rank},
                   {"torsion", json_of_int_vec(g.torsion)},
                   {"generator_images", json_of_int_vec_list(g.gen_images)}}}};
    return {rep, true};
}

HandlerResult handle_monoid_hilbert(const Json& in) {
    Cone c = cone_of_json(in, "cone");
    HilbertBasisResult hb = in_domain("cone", [&] { return hilbert_basis(c); });
    Json rep{{"basis", json_of_int_vec_list(hb.basis)},
             {"unit_basis", json_of_int_vec_list(hb.unit_basis)},
             {"pointed", hb.unit_basis.empty()}};
    return {rep, true};
}

HandlerResult handle_cone_dual(const Json& in) {
    Cone c = cone_of_json(in, "cone");
    Cone d = in_domain("cone", [&] { return dual_cone(c); });
    return {Json{{"cone", json_of_cone(c)}, {"dual", json_of_cone(d)}}, true};
}

HandlerResult handle_kn_describe(const Json& in) {
    ToricVarietyModel m;
    if (in.contains("cone") && !in.contains("polytope")) {
        Cone c = cone_of_json(in["cone"], "cone");
        m = in_domain("cone", [&] { return toric_model_affine(c); });
    } else if (in.contains("polytope")) {
        Polytope p = polytope_of_json(in["polytope"], "polytope");
        m = in_domain("polytope", [&] { return toric_model_projective(p); });
    } else {
        throw InputError("kn", "expected a \"cone\" (affine) or \"polytope\" (projective) field");
    }
    KNDescriptor d = in_domain("model", [&] { return kn_descriptor(m); });
    Json strata = Json::array();
    for (size_t i = 0; i < d.fiber_ranks.size(); ++i)
        strata.push_back(Json{{"cone", i},
                              {"orbit_dim", m.n - cone_dim(m.fan.cones[i])},
                              {"fiber_rank", d.fiber_ranks[i]}});
    Json rep{{"torus_rank", d.torus_rank}, {"projective", d.projective}, {"strata", strata}};
    if (d.base_cone) rep["base_cone"] = json_of_cone(*d.base_cone);
    if (d.base_polytope) rep["base_polytope"] = json_of_polytope(*d.base_polytope);
    return {rep, true};
}

HandlerResult handle_complex_validate(const Json& in) {
    PolyCellComplex c = complex_of_json(in, "complex");
    ValidationReport r = in_domain("complex", [&] { return validate_complex(c); });
    return {json_of_validation(r), r.ok};
}

HandlerResult handle_complex_monodromy(const Json& in) {
    PolyCellComplex c = complex_of_json(in, "complex");
    ComplexIndex ix = in_domain("complex", [&] { return build_index(c); });
    std::vector<Int> kinks = in_domain("complex", [&] { return kinks_from_monodromy(c, ix); });
    Json walls = Json::array();
    bool all_decomposed = true;
    for (size_t w : ix.walls) {
        auto it = ix.wall_hosts.find(w);
        if (it == ix.wall_hosts.end() || it->second.size() != 2) continue;
        WallMonodromy wm = in_domain("complex", [&] { return wall_monodromy(c, ix, w); });
        if (!wm.decomposed) all_decomposed = false;
        walls.push_back(json_of_wall_monodromy(wm));
    }
    Json rep{{"kinks", json_of_int_vec(kinks)}, {"walls", walls}, {"all_decomposed", all_decomposed}};
    return {rep, all_decomposed};
}

HandlerResult handle_complex_positive(const Json& in) {
    PolyCellComplex c = complex_of_json(in, "complex");
    ComplexIndex ix = in_domain("complex", [&] { return build_index(c); });
    PositivityReport r = in_domain("complex", [&] { return is_positive(c, ix); });
    return {json_of_positivity(r), r.positive && r.all_decomposed};
}

HandlerResult handle_complex_simple(const Json& in) {
    PolyCellComplex c = complex_of_json(in, "complex");
    ComplexIndex ix = in_domain("complex", [&] { return build_index(c); });
    SimplicityReport r = in_domain("complex", [&] { return is_simple(c, ix); });
    return {json_of_simplicity(r), r.simple && r.per_point_simple};
}

HandlerResult handle_complex_mpl(const Json& in) {
    PolyCellComplex c = complex_of_json(in, "complex");
    ComplexIndex ix = in_domain("complex", [&] { return build_index(c); });
    std::vector<Int> kinks;
    if (in.contains("kinks")) {
        kinks = int_vec_of_json(in["kinks"], "complex.kinks");
        if (kinks.size() != c.cells.size())
            throw InputError("complex.kinks", "expected one kink per cell");
    } else {
        kinks = in_domain("complex", [&] { return kinks_from_monodromy(c, ix); });
    }
    MPLReport r = in_domain("complex", [&] { return mpl_check(c, ix, kinks); });
    Json rep = json_of_mpl(r);
    rep["kinks"] = json_of_int_vec(kinks);
    return {rep, r.ok};
}

HandlerResult handle_gluing_check(const Json& in) {
    PolyCellComplex c = complex_of_json(need(in, "complex", "input"), "complex");
    OpenGluingData g = open_gluing_of_json(need(in, "gluing", "input"), "gluing");
    ComplexIndex ix = in_domain("complex", [&] { return build_index(c); });
    ChartSystem cs = in_domain("complex", [&] { return build_chart_system(c, ix); });
    GluingReport r = in_domain("gluing", [&] { return check_open_gluing(c, ix, cs, g); });
    return {json_of_gluing_report(r), r.ok};
}

HandlerResult handle_gluing_trivialize(const Json& in) {
    PolyCellComplex c = complex_of_json(need(in, "complex", "input"), "complex");
    LiftedGluingData l = lifted_gluing_of_json(need(in, "gluing", "input"), "gluing");
    ComplexIndex ix = in_domain("complex", [&] { return build_index(c); });
    ChartSystem cs = in_domain("complex", [&] { return build_chart_system(c, ix); });
    CoboundaryReport r = in_domain("gluing", [&] { return is_coboundary(c, ix, cs, l); });
    Json cochain = Json::array();
    for (const TorusElement& t : r.cochain) cochain.push_back(json_of_torus(t));
    Json rep{{"coboundary", r.coboundary},
             {"cochain", cochain},
             {"obstructed_edge", Json{r.obstructed_edge.first, r.obstructed_edge.second}},
             {"detail", r.detail}};
    return {rep, r.coboundary};
}

HandlerResult handle_k3_run() {
    QuarticK3Report rep = k3_run();
    bool ok = rep.validity.ok && rep.positivity.positive && rep.positivity.all_decomposed &&
              rep.mpl.ok && rep.fibration.euler_known && rep.discriminant_count == 24;
    return {json_of_quartic_report(rep), ok};
}

} // namespace

CommandResult run_command_json(const std::string& command, const std::string& input_bytes,
                               bool canonical) {
    auto t0 = std::chrono::steady_clock::now();
    HandlerResult h;
    if (command == "k3.run") {
        h = handle_k3_run();
    } else {
        Json in = parse_input(input_bytes, command);
        if (command == "monoid.classify")
            h = handle_monoid_classify(in);
        else if (command == "monoid.hilbert")
            h = handle_monoid_hilbert(in);
        else if (command == "cone.dual")
            h = handle_cone_dual(in);
        else if (command == "kn.describe")
            h = handle_kn_describe(in);
        else if (command == "complex.validate")
            h = handle_complex_validate(in);
        else if (command == "complex.monodromy")
            h = handle_complex_monodromy(in);
        else if (command == "complex.positive")
            h = handle_complex_positive(in);
        else if (command == "complex.simple-check")
            h = handle_complex_simple(in);
        else if (command == "complex.mpl-check")
            h = handle_complex_mpl(in);
        else if (command == "gluing.check")
            h = handle_gluing_check(in);
        else if (command == "gluing.trivialize")
            h = handle_gluing_trivialize(in);
        else
            throw InputError("command", "unknown command \"" + command + "\"");
    }
    auto t1 = std::chrono::steady_clock::now();

    Json envelope{{"tool", "toricdeg"},
                  {"version", tool_version()},
                  {"command", command},
                  {"input_digest", "sha256:" + sha256_hex(input_bytes)},
                  {"verdict", h.ok ? "pass" : "fail"},
                  {"report", h.report}};
    if (!canonical)
        envelope["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    CommandResult r;
    r.verdict_ok = h.ok;
    r.report_json = envelope.dump(2) + "\n";
    return r;
}

static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += "\"\"";
        else q.push_back(ch);
    }
    q += "\"";
    return q;
}

std::string run_k3_csv() {
    QuarticK3Report rep = k3_run();
    std::ostringstream out;
    out << "edge,root,momentum,charge,fiber_class\r\n";
    for (size_t i = 0; i < rep.model.discriminant.points.size(); ++i) {
        const DiscriminantPoint& p = rep.model.discriminant.points[i];
        const FiberClass& fc = rep.fibration.discriminant_classes[i].second;
        out << p.wall << ',' << csv_field(p.root_label) << ',' << Json(p.momentum).dump() << ','
            << p.charge.str() << ',' << csv_field(fc.str()) << "\r\n";
    }
    return out.str();
}

} // namespace tdeg
