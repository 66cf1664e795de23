#include "tdeg/mat.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdeg {

IntMat IntMat::identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rs) {
    if (rs.empty()) return IntMat(0, 0);
    IntMat m(rs.size(), rs[0].size());
    for (size_t i = 0; i < rs.size(); ++i) {
        if (rs[i].size() != m.cols) throw std::invalid_argument("ragged row list");
        for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = rs[i][j];
    }
    return m;
}

IntMat IntMat::from_cols(const std::vector<IntVec>& cs) {
    if (cs.empty()) return IntMat(0, 0);
    IntMat m(cs[0].size(), cs.size());
    for (size_t j = 0; j < cs.size(); ++j) {
        if (cs[j].size() != m.rows) throw std::invalid_argument("ragged column list");
        for (size_t i = 0; i < m.rows; ++i) m.at(i, j) = cs[j][i];
    }
    return m;
}

IntVec IntMat::row(size_t i) const {
    IntVec r(cols);
    for (size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

IntVec IntMat::col(size_t j) const {
    IntVec c(rows);
    for (size_t i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

std::vector<IntVec> IntMat::row_list() const {
    std::vector<IntVec> r;
    r.reserve(rows);
    for (size_t i = 0; i < rows; ++i) r.push_back(row(i));
    return r;
}

std::vector<IntVec> IntMat::col_list() const {
    std::vector<IntVec> c;
    c.reserve(cols);
    for (size_t j = 0; j < cols; ++j) c.push_back(col(j));
    return c;
}

IntMat IntMat::transpose() const {
    IntMat t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::mul(const IntMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix product shape mismatch");
    IntMat r(rows, o.cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < cols; ++k) {
            if (at(i, k) == 0) continue;
            for (size_t j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

IntVec IntMat::apply(const IntVec& v) const {
    if (cols != v.size()) throw std::invalid_argument("matrix apply shape mismatch");
    IntVec r(rows, Int(0));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
    return r;
}

RatVec IntMat::apply(const RatVec& v) const {
    if (cols != v.size()) throw std::invalid_argument("matrix apply shape mismatch");
    RatVec r(rows, Rat(0));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) r[i] += Rat(at(i, j)) * v[j];
    return r;
}

bool IntMat::is_identity() const {
    if (rows != cols) return false;
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::string IntMat::str() const {
    std::string s = "[";
    for (size_t i = 0; i < rows; ++i) {
        if (i) s += "; ";
        for (size_t j = 0; j < cols; ++j) {
            if (j) s += ",";
            s += at(i, j).str();
        }
    }
    return s + "]";
}

Int det(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = m.rows;
    if (n == 0) return 1;
    IntMat w = m;
    Int denom = 1;
    int sgn = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && w.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sgn = -sgn;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = t / denom;   // exact by Bareiss
            }
            w.at(i, k) = 0;
        }
        denom = w.at(k, k);
    }
    return sgn > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

SmithResult smith_normal_form(const IntMat& m) {
    SmithResult res;
    size_t r = m.rows, c = m.cols;
    res.d = m;
    res.u = IntMat::identity(r);
    res.v = IntMat::identity(c);
    IntMat& d = res.d;
    IntMat& u = res.u;
    IntMat& v = res.v;

    auto row_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < c; ++k) std::swap(d.at(i, k), d.at(j, k));
        for (size_t k = 0; k < r; ++k) std::swap(u.at(i, k), u.at(j, k));
    };
    auto col_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < r; ++k) std::swap(d.at(k, i), d.at(k, j));
        for (size_t k = 0; k < c; ++k) std::swap(v.at(k, i), v.at(k, j));
    };
    auto row_axpy = [&](size_t dst, size_t src, const Int& f) {
        for (size_t k = 0; k < c; ++k) d.at(dst, k) += f * d.at(src, k);
        for (size_t k = 0; k < r; ++k) u.at(dst, k) += f * u.at(src, k);
    };
    auto col_axpy = [&](size_t dst, size_t src, const Int& f) {
        for (size_t k = 0; k < r; ++k) d.at(k, dst) += f * d.at(k, src);
        for (size_t k = 0; k < c; ++k) v.at(k, dst) += f * v.at(k, src);
    };
    auto row_negate = [&](size_t i) {
        for (size_t k = 0; k < c; ++k) d.at(i, k) = -d.at(i, k);
        for (size_t k = 0; k < r; ++k) u.at(i, k) = -u.at(i, k);
    };

    size_t t = 0;
    size_t nmin = std::min(r, c);
    while (t < nmin) {
        // locate minimal nonzero pivot in the trailing block
        size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < c; ++j) {
                if (d.at(i, j) == 0) continue;
                Int a = abs_int(d.at(i, j));
                if (!found || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = true;
        for (size_t i = t + 1; i < r; ++i) {
            if (d.at(i, t) == 0) continue;
            Int q = floor_div(d.at(i, t), d.at(t, t));
            row_axpy(i, t, -q);
            if (d.at(i, t) != 0) clean = false;
        }
        for (size_t j = t + 1; j < c; ++j) {
            if (d.at(t, j) == 0) continue;
            Int q = floor_div(d.at(t, j), d.at(t, t));
            col_axpy(j, t, -q);
            if (d.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;   // pivot shrank; repeat with a smaller pivot

        // enforce divisibility of the remaining block by the pivot
        bool divides_all = true;
        for (size_t i = t + 1; i < r && divides_all; ++i)
            for (size_t j = t + 1; j < c && divides_all; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    row_axpy(t, i, Int(1));
                    divides_all = false;
                }
        if (!divides_all) continue;

        if (d.at(t, t) < 0) row_negate(t);
        ++t;
    }

    for (size_t i = 0; i < nmin; ++i) {
        if (d.at(i, i) != 0) {
            res.divisors.push_back(d.at(i, i));
            ++res.rank;
        }
    }
    return res;
}

Int rank_of(const IntMat& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return Int(smith_normal_form(m).rank);
}

IntMat inverse_unimodular(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    SmithResult s = smith_normal_form(m);
    if (s.rank != m.rows) throw std::invalid_argument("matrix not invertible over Z");
    for (const auto& dv : s.divisors)
        if (dv != 1) throw std::invalid_argument("matrix not unimodular");
    // u m v = 1  =>  m^{-1} = v u
    return s.v.mul(s.u);
}

LinearSolution solve_integer_linear(const IntMat& m, const IntVec& b) {
    if (b.size() != m.rows) throw std::invalid_argument("rhs size mismatch");
    LinearSolution out;
    SmithResult s = smith_normal_form(m);
    IntVec c = s.u.apply(b);
    size_t nmin = std::min(m.rows, m.cols);
    IntVec y(m.cols, Int(0));
    bool ok = true;
    for (size_t i = 0; i < m.rows && ok; ++i) {
        Int di = (i < nmin) ? s.d.at(i, i) : Int(0);
        if (di == 0) {
            if (c[i] != 0) ok = false;
        } else {
            if (c[i] % di != 0) ok = false;
            else if (i < m.cols) y[i] = c[i] / di;
        }
    }
    for (size_t j = 0; j < m.cols; ++j) {
        Int dj = (j < nmin) ? s.d.at(j, j) : Int(0);
        if (dj == 0) out.kernel.push_back(s.v.col(j));
    }
    out.solvable = ok;
    if (ok) out.particular = s.v.apply(y);
    return out;
}

std::vector<IntVec> kernel_basis(const IntMat& m) {
    LinearSolution s = solve_integer_linear(m, IntVec(m.rows, Int(0)));
    return s.kernel;
}

std::vector<IntVec> saturate_sublattice(const std::vector<IntVec>& gens, size_t n) {
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("generator dimension mismatch");
    if (gens.empty()) return {};
    IntMat a = IntMat::from_cols(gens);
    SmithResult s = smith_normal_form(a);
    if (s.rank == 0) return {};
    // columns of u^{-1} e_i, i < rank, form a basis of the saturation
    IntMat uinv = inverse_unimodular(s.u);
    std::vector<IntVec> basis;
    for (size_t i = 0; i < s.rank; ++i) basis.push_back(uinv.col(i));
    return basis;
}

bool in_lattice_span(const std::vector<IntVec>& gens, const IntVec& v) {
    if (gens.empty()) return is_zero(v);
    IntMat a = IntMat::from_cols(gens);
    return solve_integer_linear(a, v).solvable;
}

IntMat complete_to_unimodular(const std::vector<IntVec>& basis, size_t n) {
    if (basis.empty()) return IntMat::identity(n);
    IntMat a = IntMat::from_cols(basis);
    if (a.rows != n) throw std::invalid_argument("basis dimension mismatch");
    SmithResult s = smith_normal_form(a);
    if (s.rank != basis.size())
        throw std::invalid_argument("given vectors are not independent");
    for (const auto& dv : s.divisors)
        if (dv != 1) throw std::invalid_argument("sublattice is not saturated");
    // u a v = [I; 0] gives the saturation as the first k columns of u^{-1};
    // the given vectors span that same lattice, so keeping them up front and
    // borrowing the remaining columns of u^{-1} differs from u^{-1} by a
    // unimodular block change of basis -- the result stays unimodular.
    IntMat uinv = inverse_unimodular(s.u);
    IntMat result(n, n);
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < n; ++i) result.at(i, j) = basis[j][i];
    for (size_t j = basis.size(); j < n; ++j)
        for (size_t i = 0; i < n; ++i) result.at(i, j) = uinv.at(i, j);
    Int dt = det(result);
    if (dt != 1 && dt != -1) throw std::runtime_error("internal: completion not unimodular");
    return result;
}

AffineMapZ AffineMapZ::identity(size_t n) {
    AffineMapZ m;
    m.linear = IntMat::identity(n);
    m.translation = IntVec(n, Int(0));
    return m;
}

IntVec AffineMapZ::apply(const IntVec& v) const { return add(linear.apply(v), translation); }

RatVec AffineMapZ::apply(const RatVec& v) const {
    RatVec r = linear.apply(v);
    for (size_t i = 0; i < r.size(); ++i) r[i] += Rat(translation[i]);
    return r;
}

IntVec AffineMapZ::apply_vector(const IntVec& v) const { return linear.apply(v); }

AffineMapZ AffineMapZ::compose(const AffineMapZ& inner) const {
    AffineMapZ r;
    r.linear = linear.mul(inner.linear);
    r.translation = add(linear.apply(inner.translation), translation);
    return r;
}

AffineMapZ AffineMapZ::inverse() const {
    AffineMapZ r;
    r.linear = inverse_unimodular(linear);
    r.translation = neg(r.linear.apply(translation));
    return r;
}

bool AffineMapZ::is_identity() const { return linear.is_identity() && is_zero(translation); }

} // namespace tdeg
