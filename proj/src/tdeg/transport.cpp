#include "tdeg/transport.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tdeg {

namespace {

const std::vector<size_t>& hosts_of_wall(const ComplexIndex& ix, size_t wall) {
    auto it = ix.wall_hosts.find(wall);
    if (it == ix.wall_hosts.end() || it->second.size() != 2)
        throw std::invalid_argument("crossing needs a codimension-one cell with two maximal hosts");
    return it->second;
}

void check_host_pair(const ComplexIndex& ix, size_t wall, size_t from, size_t to) {
    const std::vector<size_t>& hs = hosts_of_wall(ix, wall);
    bool ok = (from == hs[0] && to == hs[1]) || (from == hs[1] && to == hs[0]);
    if (!ok) throw std::invalid_argument("cells are not the two sides of the wall");
}

const AffineMapZ& vertex_chart(const PolyCellComplex& c, const ComplexIndex& ix, size_t v, size_t cell) {
    auto it = ix.fan_of_vertex.find(v);
    if (it == ix.fan_of_vertex.end()) throw std::invalid_argument("vertex has no fan data");
    for (const VertexCellChart& vc : c.vertex_fans[it->second].charts)
        if (vc.max_cell == cell) return vc.chart;
    throw std::invalid_argument("vertex has no flattening for the requested cell");
}

IntVec wall_conormal_in(const PolyCellComplex& c, const ComplexIndex& ix,
                        size_t wall, size_t host, const IntVec& wall_point) {
    auto it = ix.embed.find({wall, host});
    if (it == ix.embed.end()) throw std::invalid_argument("wall is not listed as a face of the cell");
    std::vector<IntVec> dirs = it->second.linear.col_list();
    std::vector<IntVec> ker = kernel_basis(IntMat::from_rows(dirs.empty()
                                                                 ? std::vector<IntVec>{IntVec(c.cells[host].n, Int(0))}
                                                                 : dirs));
    if (ker.size() != 1) throw std::invalid_argument("wall is not of codimension one in the cell chart");
    IntVec f = primitive(ker[0]);
    // orient away from the host's interior
    for (const RatVec& w : c.cells[host].vertices) {
        Rat s = dot(f, w) - Rat(dot(f, wall_point));
        if (s > 0) return neg(f);
        if (s < 0) return f;
    }
    throw std::runtime_error("cell degenerates onto its wall");
}

Int accumulated_charge(const PolyCellComplex& c, size_t wall, size_t segment) {
    Int t = 0;
    for (size_t j = 0; j < segment && j < c.marks[wall].size(); ++j) t += c.marks[wall][j].charge;
    return t;
}

AffineMapZ shear_map(const WallFrame& fr, const Int& t, size_t n) {
    // x |-> x + t * <conormal, x - base> * direction
    AffineMapZ m;
    m.linear = IntMat::identity(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m.linear.at(i, j) += t * fr.direction[i] * fr.conormal[j];
    m.translation = scale(-t * dot(fr.conormal, fr.base_point), fr.direction);
    return m;
}

AffineMapZ raw_segment_crossing(const PolyCellComplex& c, const ComplexIndex& ix,
                                size_t wall, size_t from, size_t to, size_t segment) {
    WallFrame fr = wall_frame(c, ix, wall, from);
    if (fr.other != to) throw std::invalid_argument("cells are not the two sides of the wall");
    if (segment > c.marks[wall].size()) throw std::invalid_argument("mark segment index out of range");
    AffineMapZ low = crossing_at_vertex(c, ix, wall, from, to, fr.low_vertex);
    return low.compose(shear_map(fr, -accumulated_charge(c, wall, segment), c.dim));
}

} // namespace

WallFrame wall_frame(const PolyCellComplex& c, const ComplexIndex& ix, size_t wall, size_t host) {
    if (c.dim != 2)
        throw std::invalid_argument("mark segment machinery supports two-dimensional complexes");
    if (ix.cell_dims[wall] != 1)
        throw std::invalid_argument("wall frames are defined for one-dimensional walls");
    const std::vector<size_t>& hs = hosts_of_wall(ix, wall);
    if (host != hs[0] && host != hs[1]) throw std::invalid_argument("cell is not a side of the wall");

    WallFrame fr;
    fr.wall = wall;
    fr.host = host;
    fr.other = host == hs[0] ? hs[1] : hs[0];

    const std::vector<size_t>& vs = ix.vertices_of[wall];
    if (vs.size() != 2) throw std::invalid_argument("one-dimensional wall must have two endpoint cells");
    Int p0 = ix.embed.at({vs[0], wall}).translation.at(0);
    Int p1 = ix.embed.at({vs[1], wall}).translation.at(0);
    fr.low_vertex = p0 <= p1 ? vs[0] : vs[1];
    fr.high_vertex = p0 <= p1 ? vs[1] : vs[0];

    const AffineMapZ& em = ix.embed.at({wall, host});
    fr.direction = primitive(em.linear.col(0));
    fr.base_point = em.apply(IntVec{p0 <= p1 ? p0 : p1});
    fr.conormal = wall_conormal_in(c, ix, wall, host, fr.base_point);
    return fr;
}

AffineMapZ crossing_at_vertex(const PolyCellComplex& c, const ComplexIndex& ix,
                              size_t wall, size_t from, size_t to, size_t v) {
    check_host_pair(ix, wall, from, to);
    const std::vector<size_t>& vs = ix.vertices_of[wall];
    if (std::find(vs.begin(), vs.end(), v) == vs.end())
        throw std::invalid_argument("crossing vertex is not a vertex of the wall");
    return vertex_chart(c, ix, v, to).inverse().compose(vertex_chart(c, ix, v, from));
}

AffineMapZ crossing_at_segment(const PolyCellComplex& c, const ComplexIndex& ix,
                               size_t wall, size_t from, size_t to, size_t segment) {
    AffineMapZ raw = raw_segment_crossing(c, ix, wall, from, to, segment);
    // the interpolated crossing must close up with the flattening at the far end
    WallFrame fr = wall_frame(c, ix, wall, from);
    AffineMapZ closed = raw_segment_crossing(c, ix, wall, from, to, c.marks[wall].size());
    if (!(closed == crossing_at_vertex(c, ix, wall, from, to, fr.high_vertex)))
        throw std::invalid_argument("wall marks do not absorb its kink; segment crossing is ambiguous");
    return raw;
}

AffineMapZ parallel_transport(const PolyCellComplex& c, const ComplexIndex& ix,
                              size_t start_cell, const std::vector<PathStep>& steps) {
    if (ix.cell_dims.at(start_cell) != c.dim)
        throw std::invalid_argument("transport paths start in a maximal cell");
    AffineMapZ acc = AffineMapZ::identity(c.dim);
    size_t cur = start_cell;
    for (const PathStep& st : steps) {
        AffineMapZ cross = st.at_vertex
                               ? crossing_at_vertex(c, ix, st.wall, cur, st.to_cell, st.vertex)
                               : crossing_at_segment(c, ix, st.wall, cur, st.to_cell, st.segment);
        acc = cross.compose(acc);
        cur = st.to_cell;
    }
    return acc;
}

namespace {

MonodromyTransform extract_shear(const AffineMapZ& loop, const IntVec& vminus_pos,
                                 const IntVec& vplus_pos, const IntVec& toward_plus) {
    size_t n = loop.linear.rows;
    MonodromyTransform mt;
    mt.matrix = loop.linear;
    mt.direction = primitive(sub(vplus_pos, vminus_pos));
    mt.conormal = toward_plus;

    if (!(loop.apply(vminus_pos) == vminus_pos) || !(loop.apply(vplus_pos) == vplus_pos)) {
        mt.note = "loop does not fix the wall pointwise";
        return mt;
    }
    IntMat nmat = loop.linear;
    for (size_t i = 0; i < n; ++i) nmat.at(i, i) -= 1;

    bool zero = true;
    for (const Int& x : nmat.a) zero = zero && x == 0;
    if (zero) {
        mt.kappa = 0;
        mt.decomposed = true;
        return mt;
    }

    size_t pivot = n;
    for (size_t i = 0; i < n; ++i)
        if (mt.direction[i] != 0) { pivot = i; break; }
    IntVec r(n, Int(0));
    for (size_t j = 0; j < n; ++j) {
        Int top = nmat.at(pivot, j);
        if (top % mt.direction[pivot] != 0) {
            mt.note = "holonomy is not a shear along the loop direction";
            return mt;
        }
        r[j] = top / mt.direction[pivot];
        for (size_t i = 0; i < n; ++i) {
            if (nmat.at(i, j) != r[j] * mt.direction[i]) {
                mt.note = "holonomy is not a shear along the loop direction";
                return mt;
            }
        }
    }
    if (is_zero(r)) {
        mt.note = "holonomy decomposition degenerated";
        return mt;
    }
    IntVec p = primitive(r);
    Int flip = dot(p, toward_plus) >= 0 ? 1 : -1;   // align with the conormal side
    IntVec dcheck = scale(flip, p);
    if (!(dcheck == toward_plus) && !(scale(Int(-1), dcheck) == toward_plus)) {
        // r must be proportional to the wall conormal
        mt.note = "holonomy shear is not conormal to the wall";
        return mt;
    }
    mt.conormal = toward_plus;
    size_t j0 = n;
    for (size_t j = 0; j < n; ++j)
        if (mt.conormal[j] != 0) { j0 = j; break; }
    mt.kappa = r[j0] / mt.conormal[j0];
    if (dot(mt.conormal, mt.direction) != 0) {
        mt.note = "loop direction is not parallel to the wall";
        mt.decomposed = false;
        return mt;
    }
    mt.decomposed = true;
    return mt;
}

} // namespace

MonodromyTransform monodromy_loop(const PolyCellComplex& c, const ComplexIndex& ix,
                                  size_t wall, size_t v_minus, size_t v_plus,
                                  size_t sigma_minus, size_t sigma_plus) {
    check_host_pair(ix, wall, sigma_minus, sigma_plus);
    if (v_minus == v_plus) throw std::invalid_argument("loop endpoints must be distinct wall vertices");
    AffineMapZ out = crossing_at_vertex(c, ix, wall, sigma_minus, sigma_plus, v_minus);
    AffineMapZ back = crossing_at_vertex(c, ix, wall, sigma_plus, sigma_minus, v_plus);
    AffineMapZ loop = back.compose(out);

    IntVec pm = vertex_position_in(c, ix, v_minus, sigma_minus);
    IntVec pp = vertex_position_in(c, ix, v_plus, sigma_minus);
    IntVec toward = wall_conormal_in(c, ix, wall, sigma_minus, pm);
    return extract_shear(loop, pm, pp, toward);
}

MonodromyTransform mark_loop(const PolyCellComplex& c, const ComplexIndex& ix,
                             size_t wall, size_t mark_index,
                             size_t sigma_minus, size_t sigma_plus) {
    if (mark_index >= c.marks[wall].size()) throw std::invalid_argument("mark index out of range");
    AffineMapZ out = raw_segment_crossing(c, ix, wall, sigma_minus, sigma_plus, mark_index);
    AffineMapZ back = raw_segment_crossing(c, ix, wall, sigma_minus, sigma_plus, mark_index + 1).inverse();
    AffineMapZ loop = back.compose(out);

    WallFrame fr = wall_frame(c, ix, wall, sigma_minus);
    IntVec pm = vertex_position_in(c, ix, fr.low_vertex, sigma_minus);
    IntVec pp = vertex_position_in(c, ix, fr.high_vertex, sigma_minus);
    return extract_shear(loop, pm, pp, fr.conormal);
}

MonodromyTransform wall_defect(const PolyCellComplex& c, const ComplexIndex& ix, size_t wall) {
    const std::vector<size_t>& hs = hosts_of_wall(ix, wall);
    WallFrame fr = wall_frame(c, ix, wall, hs[0]);
    AffineMapZ interpolated = raw_segment_crossing(c, ix, wall, hs[0], hs[1], c.marks[wall].size());
    AffineMapZ high = crossing_at_vertex(c, ix, wall, hs[0], hs[1], fr.high_vertex);
    AffineMapZ defect = high.inverse().compose(interpolated);

    IntVec pm = vertex_position_in(c, ix, fr.low_vertex, hs[0]);
    IntVec pp = vertex_position_in(c, ix, fr.high_vertex, hs[0]);
    return extract_shear(defect, pm, pp, fr.conormal);
}

WallMonodromy wall_monodromy(const PolyCellComplex& c, const ComplexIndex& ix, size_t wall) {
    const std::vector<size_t>& hs = hosts_of_wall(ix, wall);
    if (ix.cell_dims[wall] != 1)
        throw std::invalid_argument("wall monodromy summaries are defined for one-dimensional walls");
    WallFrame fr = wall_frame(c, ix, wall, hs[0]);

    WallMonodromy wm;
    wm.wall = wall;
    MonodromyTransform base =
        monodromy_loop(c, ix, wall, fr.low_vertex, fr.high_vertex, hs[0], hs[1]);
    wm.decomposed = base.decomposed;
    wm.kappa = base.kappa;
    wm.direction = base.direction;
    wm.conormal = base.conormal;

    const size_t vchoice[2] = {fr.low_vertex, fr.high_vertex};
    for (int vswap = 0; vswap < 2; ++vswap) {
        for (int sswap = 0; sswap < 2; ++sswap) {
            MonodromyTransform mt = monodromy_loop(c, ix, wall, vchoice[vswap], vchoice[1 - vswap],
                                                   hs[sswap], hs[1 - sswap]);
            if (!mt.decomposed || mt.kappa != base.kappa) wm.choice_invariant = false;
        }
    }
    return wm;
}

} // namespace tdeg
