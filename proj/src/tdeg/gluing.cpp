#include "tdeg/gluing.hpp"

#include "tdeg/transport.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace tdeg {

// ---- coefficient arithmetic ------------------------------------------------------

CStarValue cstar(long long re, long long im) { return CStarValue{Rat(re), Rat(im)}; }
CStarValue cstar(const Rat& re, const Rat& im) { return CStarValue{re, im}; }

bool cstar_is_zero(const CStarValue& a) { return a.re == 0 && a.im == 0; }
bool cstar_is_one(const CStarValue& a) { return a.re == 1 && a.im == 0; }

CStarValue cstar_mul(const CStarValue& a, const CStarValue& b) {
    return CStarValue{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CStarValue cstar_inv(const CStarValue& a) {
    Rat norm = a.re * a.re + a.im * a.im;
    if (norm == 0) throw std::invalid_argument("zero has no multiplicative inverse");
    return CStarValue{a.re / norm, -a.im / norm};
}

CStarValue cstar_pow(const CStarValue& a, const Int& k) {
    CStarValue base = k < 0 ? cstar_inv(a) : a;
    Int e = abs_int(k);
    CStarValue acc = cstar(1);
    while (e > 0) {
        if ((e & 1) != 0) acc = cstar_mul(acc, base);
        base = cstar_mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::string cstar_str(const CStarValue& a) {
    std::ostringstream os;
    os << a.re;
    if (a.im != 0) os << (a.im > 0 ? "+" : "") << a.im << "i";
    return os.str();
}

TorusElement torus_identity(size_t n) { return TorusElement(n, cstar(1)); }

bool torus_is_identity(const TorusElement& s) {
    for (const CStarValue& x : s)
        if (!cstar_is_one(x)) return false;
    return true;
}

TorusElement torus_mul(const TorusElement& a, const TorusElement& b) {
    if (a.size() != b.size()) throw std::invalid_argument("torus element sizes differ");
    TorusElement out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = cstar_mul(a[i], b[i]);
    return out;
}

TorusElement torus_inv(const TorusElement& a) {
    TorusElement out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = cstar_inv(a[i]);
    return out;
}

TorusElement torus_transport(const IntMat& a, const TorusElement& s) {
    if (a.cols != s.size()) throw std::invalid_argument("matrix does not act on this torus element");
    TorusElement out(a.rows, cstar(1));
    for (size_t k = 0; k < a.rows; ++k)
        for (size_t j = 0; j < a.cols; ++j)
            out[k] = cstar_mul(out[k], cstar_pow(s[j], a.at(k, j)));
    return out;
}

// ---- chart identifications -------------------------------------------------------

ChartSystem build_chart_system(const PolyCellComplex& c, const ComplexIndex& ix) {
    ChartSystem cs;
    if (ix.maximal.empty()) throw std::invalid_argument("complex has no maximal cells");
    cs.root = ix.maximal.front();
    cs.to_root[cs.root] = AffineMapZ::identity(c.dim);

    std::deque<size_t> queue{cs.root};
    while (!queue.empty()) {
        size_t a = queue.front();
        queue.pop_front();
        for (size_t w : ix.faces[a]) {
            if (ix.cell_dims[w] + 1 != c.dim) continue;
            auto hit = ix.wall_hosts.find(w);
            if (hit == ix.wall_hosts.end() || hit->second.size() != 2) continue;
            size_t b = hit->second[0] == a ? hit->second[1] : hit->second[0];
            if (cs.to_root.count(b)) continue;
            size_t anchor = ix.vertices_of[w].front();
            AffineMapZ g = crossing_at_vertex(c, ix, w, b, a, anchor);
            cs.to_root[b] = cs.to_root[a].compose(g);
            queue.push_back(b);
        }
    }
    // disconnected components keep their own charts
    for (size_t m : ix.maximal)
        if (!cs.to_root.count(m)) cs.to_root[m] = AffineMapZ::identity(c.dim);
    return cs;
}

size_t reference_cell(const ComplexIndex& ix, size_t tau, size_t complex_dim) {
    if (ix.cell_dims.at(tau) == complex_dim) return tau;
    size_t best = ix.cell_dims.size();
    for (size_t h : ix.hosts[tau])
        if (ix.cell_dims[h] == complex_dim && h < best) best = h;
    if (best == ix.cell_dims.size())
        throw std::invalid_argument("cell lies in no maximal cell");
    return best;
}

namespace {

std::string pair_str(const std::pair<size_t, size_t>& e) {
    std::ostringstream os;
    os << "(" << e.first << " -> " << e.second << ")";
    return os.str();
}

// value of a section stored in the chart of `sigma`, rewritten in the root chart
TorusElement rootify(const ChartSystem& cs, size_t sigma, const TorusElement& s) {
    return torus_transport(cs.to_root.at(sigma).linear, s);
}

TorusElement unrootify(const ChartSystem& cs, size_t sigma, const TorusElement& s) {
    return torus_transport(inverse_unimodular(cs.to_root.at(sigma).linear), s);
}

bool torus_shape_ok(const TorusElement& s, size_t n) {
    if (s.size() != n) return false;
    for (const CStarValue& x : s)
        if (cstar_is_zero(x)) return false;
    return true;
}

// all strict face pairs, ascending
std::vector<std::pair<size_t, size_t>> nerve_edges(const ComplexIndex& ix) {
    std::vector<std::pair<size_t, size_t>> out;
    for (const auto& kv : ix.embed) out.push_back(kv.first);
    std::sort(out.begin(), out.end());
    return out;
}

// all chains omega < tau < tau'
std::vector<std::array<size_t, 3>> nerve_triples(const ComplexIndex& ix) {
    std::vector<std::array<size_t, 3>> out;
    for (const auto& kv : ix.embed) {
        size_t tau = kv.first.first, taup = kv.first.second;
        for (size_t omega : ix.faces[tau])
            if (ix.embed.count({omega, taup})) out.push_back({omega, tau, taup});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

// ---- PM tuples ---------------------------------------------------------------

PMMembershipReport pm_membership(const PolyCellComplex& c, const ComplexIndex& ix, const PMTuple& t) {
    size_t n = c.dim;
    if (ix.cell_dims.at(t.sigma) != n)
        throw std::invalid_argument("reference cell of a tuple must be maximal");
    if (t.sigma != t.tau && !ix.embed.count({t.tau, t.sigma}))
        throw std::invalid_argument("reference cell does not contain the tuple's cell");
    const std::vector<size_t>& vs = ix.vertices_of[t.tau];
    for (size_t v : vs) {
        auto it = t.values.find(v);
        if (it == t.values.end() || !torus_shape_ok(it->second, n))
            throw std::invalid_argument("tuple must carry one nonzero torus element per vertex");
    }

    PMMembershipReport rep;
    std::vector<size_t> faces = ix.faces[t.tau];
    faces.push_back(t.tau);
    for (size_t omega : faces) {
        const std::vector<size_t>& ws = ix.vertices_of[omega];
        if (ws.size() < 2) continue;
        if (omega == t.sigma) continue;   // the full lattice constrains nothing

        const AffineMapZ& em = ix.embed.at({omega, t.sigma});
        SmithResult snf = smith_normal_form(em.linear);
        for (const Int& d : snf.divisors)
            if (d != 1)
                throw std::invalid_argument("face sublattice is not saturated in the reference chart");
        std::vector<IntVec> basis = saturate_sublattice(em.linear.col_list(), n);
        IntMat uinv = inverse_unimodular(complete_to_unimodular(basis, n));

        for (size_t a = 0; a < ws.size(); ++a) {
            for (size_t b = a + 1; b < ws.size(); ++b) {
                TorusElement ratio =
                    torus_mul(t.values.at(ws[a]), torus_inv(t.values.at(ws[b])));
                TorusElement adapted = torus_transport(uinv, ratio);
                for (size_t j = basis.size(); j < n; ++j) {
                    if (!cstar_is_one(adapted[j])) {
                        rep.member = false;
                        rep.omega = omega;
                        rep.v = ws[a];
                        rep.w = ws[b];
                        std::ostringstream os;
                        os << "ratio of vertices " << ws[a] << ", " << ws[b] << " escapes cell "
                           << omega << ": adapted component " << j << " is "
                           << cstar_str(adapted[j]);
                        rep.detail = os.str();
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

// ---- open gluing data ----------------------------------------------------------

GluingReport check_open_gluing(const PolyCellComplex& c, const ComplexIndex& ix,
                               const ChartSystem& cs, const OpenGluingData& g) {
    GluingReport rep;
    auto fail = [&](const std::string& check, const std::string& detail) {
        rep.ok = false;
        rep.violations.push_back({check, detail});
    };

    std::vector<std::pair<size_t, size_t>> edges = nerve_edges(ix);
    for (const auto& e : edges)
        if (!g.tuples.count(e)) fail("shape", "no tuple for inclusion " + pair_str(e));
    for (const auto& kv : g.tuples)
        if (!ix.embed.count(kv.first))
            fail("shape", "tuple attached to a pair that is not an inclusion " + pair_str(kv.first));
    if (!rep.ok) return rep;

    for (const auto& kv : g.tuples) {
        const PMTuple& t = kv.second;
        if (t.tau != kv.first.first) {
            fail("shape", "tuple cell differs from the inclusion face at " + pair_str(kv.first));
            continue;
        }
        if (t.sigma != kv.first.second && !ix.embed.count({kv.first.second, t.sigma})) {
            fail("shape", "reference cell does not contain the inclusion host at " + pair_str(kv.first));
            continue;
        }
        try {
            PMMembershipReport m = pm_membership(c, ix, t);
            if (!m.member) fail("membership", pair_str(kv.first) + ": " + m.detail);
        } catch (const std::invalid_argument& ex) {
            fail("membership", pair_str(kv.first) + ": " + ex.what());
        }
    }
    if (!rep.ok) return rep;

    // root-chart value of tuple e at vertex v
    auto at_root = [&](const std::pair<size_t, size_t>& e, size_t v) {
        const PMTuple& t = g.tuples.at(e);
        return rootify(cs, t.sigma, t.values.at(v));
    };

    for (const std::array<size_t, 3>& tr : nerve_triples(ix)) {
        std::pair<size_t, size_t> e{tr[0], tr[1]}, f{tr[1], tr[2]}, fe{tr[0], tr[2]};
        for (size_t v : ix.vertices_of[tr[0]]) {
            TorusElement lhs = at_root(fe, v);
            TorusElement rhs = torus_mul(at_root(f, v), at_root(e, v));
            if (!(lhs == rhs)) {
                std::ostringstream os;
                os << "composition fails on " << pair_str(e) << " then " << pair_str(f)
                   << " at vertex " << v;
                fail("composition", os.str());
            }
        }
    }
    return rep;
}

OpenGluingData open_gluing_from_cell_cochain(const PolyCellComplex& c, const ComplexIndex& ix,
                                             const ChartSystem& cs,
                                             const std::vector<TorusElement>& t) {
    if (t.size() != c.cells.size())
        throw std::invalid_argument("cochain size differs from the number of cells");
    OpenGluingData g;
    for (const auto& e : nerve_edges(ix)) {
        PMTuple tup;
        tup.tau = e.first;
        tup.sigma = reference_cell(ix, e.second, c.dim);
        TorusElement root_val = torus_mul(t[e.second], torus_inv(t[e.first]));
        TorusElement val = unrootify(cs, tup.sigma, root_val);
        for (size_t v : ix.vertices_of[e.first]) tup.values[v] = val;
        g.tuples[e] = tup;
    }
    return g;
}

// ---- lifted gluing data ---------------------------------------------------------

GluingReport check_lifted_cocycle(const PolyCellComplex& c, const ComplexIndex& ix,
                                  const ChartSystem& cs, const LiftedGluingData& l) {
    GluingReport rep;
    auto fail = [&](const std::string& check, const std::string& detail) {
        rep.ok = false;
        rep.violations.push_back({check, detail});
    };

    std::vector<std::pair<size_t, size_t>> edges = nerve_edges(ix);
    for (const auto& e : edges)
        if (!l.sections.count(e)) fail("shape", "no section for nerve edge " + pair_str(e));
    for (const auto& kv : l.sections) {
        if (!ix.embed.count(kv.first))
            fail("shape", "section attached to a pair that is not a nerve edge " + pair_str(kv.first));
        else if (!torus_shape_ok(kv.second, c.dim))
            fail("shape", "section at " + pair_str(kv.first) + " is not a nonzero torus element");
    }
    if (!rep.ok) return rep;

    // monodromy invariance: a section over W_(v, wall) sees the marked points
    // on the v-side half of the wall
    if (c.dim == 2) {
        for (const auto& e : edges) {
            size_t v = e.first, w = e.second;
            if (ix.cell_dims[v] != 0 || ix.cell_dims[w] != 1) continue;
            if (c.marks[w].empty()) continue;
            auto hit = ix.wall_hosts.find(w);
            if (hit == ix.wall_hosts.end() || hit->second.size() != 2) continue;
            size_t sr = reference_cell(ix, w, c.dim);
            WallFrame fr = wall_frame(c, ix, w, sr);
            const TorusElement& s = l.sections.at(e);
            CStarValue z = cstar(1);
            for (size_t i = 0; i < c.dim; ++i) z = cstar_mul(z, cstar_pow(s[i], fr.conormal[i]));

            Rat lo = c.cells[w].vertices.front()[0], hi = c.cells[w].vertices.back()[0];
            if (lo > hi) std::swap(lo, hi);
            Rat mid = (lo + hi) / 2;
            Rat pv(ix.embed.at({v, w}).translation.at(0));
            for (const MarkedPoint& mp : c.marks[w]) {
                bool visible = pv == lo ? mp.position < mid : mp.position > mid;
                if (!visible || mp.charge == 0) continue;
                if (!cstar_is_one(cstar_pow(z, mp.charge))) {
                    std::ostringstream os;
                    os << "section at " << pair_str(e)
                       << " is not invariant around the marked point at position " << mp.position
                       << " (conormal pairing " << cstar_str(z) << ", charge " << mp.charge << ")";
                    fail("monodromy-invariance", os.str());
                }
            }
        }
    }

    auto at_root = [&](const std::pair<size_t, size_t>& e) {
        return rootify(cs, reference_cell(ix, e.second, c.dim), l.sections.at(e));
    };
    for (const std::array<size_t, 3>& tr : nerve_triples(ix)) {
        TorusElement lhs = at_root({tr[0], tr[2]});
        TorusElement rhs = torus_mul(at_root({tr[1], tr[2]}), at_root({tr[0], tr[1]}));
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "cocycle identity fails on the chain " << tr[0] << " < " << tr[1] << " < "
               << tr[2];
            fail("cocycle", os.str());
        }
    }
    return rep;
}

LiftedGluingData coboundary_of(const PolyCellComplex& c, const ComplexIndex& ix,
                               const ChartSystem& cs, const std::vector<TorusElement>& t) {
    if (t.size() != c.cells.size())
        throw std::invalid_argument("cochain size differs from the number of cells");
    std::vector<TorusElement> root_vals(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        if (!torus_shape_ok(t[i], c.dim))
            throw std::invalid_argument("cochain entries must be nonzero torus elements");
        root_vals[i] = rootify(cs, reference_cell(ix, i, c.dim), t[i]);
    }
    LiftedGluingData l;
    for (const auto& e : nerve_edges(ix)) {
        TorusElement root_val = torus_mul(root_vals[e.second], torus_inv(root_vals[e.first]));
        l.sections[e] = unrootify(cs, reference_cell(ix, e.second, c.dim), root_val);
    }
    return l;
}

CoboundaryReport is_coboundary(const PolyCellComplex& c, const ComplexIndex& ix,
                               const ChartSystem& cs, const LiftedGluingData& l) {
    CoboundaryReport rep;
    std::vector<std::pair<size_t, size_t>> edges = nerve_edges(ix);
    for (const auto& e : edges) {
        auto it = l.sections.find(e);
        if (it == l.sections.end() || !torus_shape_ok(it->second, c.dim)) {
            rep.detail = "missing or malformed section at " + pair_str(e);
            return rep;
        }
    }

    std::map<std::pair<size_t, size_t>, TorusElement> root_sections;
    for (const auto& e : edges)
        root_sections[e] = rootify(cs, reference_cell(ix, e.second, c.dim), l.sections.at(e));

    size_t k = c.cells.size();
    std::vector<std::vector<std::pair<size_t, bool>>> adj(k);   // (other end, i-am-face)
    for (const auto& e : edges) {
        adj[e.first].push_back({e.second, true});
        adj[e.second].push_back({e.first, false});
    }

    std::vector<TorusElement> tval(k);
    std::vector<bool> known(k, false);
    std::vector<std::pair<size_t, size_t>> tree;
    for (size_t start = 0; start < k; ++start) {
        if (known[start]) continue;
        tval[start] = torus_identity(c.dim);
        known[start] = true;
        std::deque<size_t> queue{start};
        while (!queue.empty()) {
            size_t x = queue.front();
            queue.pop_front();
            for (const auto& [y, x_is_face] : adj[x]) {
                if (known[y]) continue;
                const TorusElement& s =
                    root_sections.at(x_is_face ? std::make_pair(x, y) : std::make_pair(y, x));
                // s = t_host * t_face^{-1}
                tval[y] = x_is_face ? torus_mul(s, tval[x]) : torus_mul(torus_inv(s), tval[x]);
                known[y] = true;
                tree.push_back(x_is_face ? std::make_pair(x, y) : std::make_pair(y, x));
                queue.push_back(y);
            }
        }
    }

    std::sort(tree.begin(), tree.end());
    for (const auto& e : edges) {
        if (std::binary_search(tree.begin(), tree.end(), e)) continue;
        TorusElement expect = torus_mul(tval[e.second], torus_inv(tval[e.first]));
        if (!(expect == root_sections.at(e))) {
            rep.coboundary = false;
            rep.obstructed_edge = e;
            rep.detail = "off-tree nerve edge " + pair_str(e) + " is obstructed";
            return rep;
        }
    }

    rep.coboundary = true;
    rep.cochain.resize(k);
    for (size_t i = 0; i < k; ++i)
        rep.cochain[i] = unrootify(cs, reference_cell(ix, i, c.dim), tval[i]);
    return rep;
}

} // namespace tdeg
