#include "tdeg/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

namespace tdeg {

namespace {

double dotd(const IntVec& a, const std::vector<double>& x) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += to_double(Rat(a[i])) * x[i];
    return s;
}

std::vector<double> mat_apply_double(const IntMat& m, const std::vector<double>& x) {
    std::vector<double> out(m.rows, 0.0);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) out[i] += to_double(Rat(m.at(i, j))) * x[j];
    return out;
}

// Solve A d = b for a small symmetric positive (semi)definite system; a tiny
// ridge keeps degenerate directions harmless.
std::vector<double> solve_spd(std::vector<std::vector<double>> a, std::vector<double> b) {
    size_t n = b.size();
    double tr = 0.0;
    for (size_t i = 0; i < n; ++i) tr += a[i][i];
    double ridge = (tr > 0 ? tr : 1.0) * 1e-13 + 1e-300;
    for (size_t i = 0; i < n; ++i) a[i][i] += ridge;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        if (a[c][c] == 0.0) continue;
        for (size_t r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            if (f == 0.0) continue;
            for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> d(n, 0.0);
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * d[j];
        d[i] = a[i][i] != 0.0 ? s / a[i][i] : 0.0;
    }
    return d;
}

} // namespace

MomentumEval momentum_eval_for(const Polytope& xi) {
    if (polytope_is_empty(xi)) throw std::invalid_argument("momentum data of an empty polytope");
    MomentumEval e;
    e.xi = xi;
    e.weights = lattice_points(xi);
    if (e.weights.empty()) throw std::invalid_argument("polytope has no lattice points to weight");
    return e;
}

std::vector<double> momentum_eval_numeric(const MomentumEval& e, const std::vector<Cx>& chart) {
    if (chart.size() != e.weights.size())
        throw std::invalid_argument("chart vector does not match the lattice-point count");
    size_t n = e.xi.n;
    double total = 0.0;
    std::vector<double> acc(n, 0.0);
    for (size_t i = 0; i < chart.size(); ++i) {
        double p = std::norm(chart[i]);
        if (p == 0.0) continue;
        total += p;
        for (size_t j = 0; j < n; ++j) acc[j] += p * to_double(Rat(e.weights[i][j]));
    }
    if (total == 0.0) throw std::invalid_argument("all chart coordinates vanish");
    for (auto& v : acc) v /= total;
    return acc;
}

std::vector<Cx> monomial_chart(const MomentumEval& e, const std::vector<Cx>& z) {
    size_t n = e.xi.n;
    if (z.size() != n) throw std::invalid_argument("torus point dimension mismatch");
    std::vector<Cx> chart;
    chart.reserve(e.weights.size());
    for (const auto& m : e.weights) {
        Cx w(1.0, 0.0);
        bool zero = false;
        for (size_t i = 0; i < n && !zero; ++i) {
            long ei = m[i].convert_to<long>();
            if (ei == 0) continue;
            if (z[i] == Cx(0.0, 0.0)) {
                if (ei < 0) throw std::invalid_argument("zero coordinate raised to a negative exponent");
                zero = true;
            } else {
                w *= std::pow(z[i], static_cast<double>(ei));
            }
        }
        chart.push_back(zero ? Cx(0.0, 0.0) : w);
    }
    return chart;
}

std::vector<double> momentum_section_positive(const MomentumEval& e, const std::vector<double>& target) {
    size_t n = e.xi.n;
    if (target.size() != n) throw std::invalid_argument("target dimension mismatch");
    std::vector<std::vector<double>> pts;
    pts.reserve(e.weights.size());
    for (const auto& m : e.weights) {
        std::vector<double> p(n);
        for (size_t j = 0; j < n; ++j) p[j] = to_double(Rat(m[j]));
        pts.push_back(std::move(p));
    }
    // Minimize h(u) = log sum exp(2<u,m>) / 2 - <u,target>; the gradient is
    // mu(u) - target and the Hessian twice the weight covariance.
    std::vector<double> u(n, 0.0);
    auto objective = [&](const std::vector<double>& uu, std::vector<double>& mu,
                         std::vector<std::vector<double>>& cov) {
        std::vector<double> ex(pts.size());
        double mx = -1e300;
        for (size_t i = 0; i < pts.size(); ++i) {
            double s = 0.0;
            for (size_t j = 0; j < n; ++j) s += uu[j] * pts[i][j];
            ex[i] = 2.0 * s;
            mx = std::max(mx, ex[i]);
        }
        double tot = 0.0;
        for (auto& v : ex) {
            v = std::exp(v - mx);
            tot += v;
        }
        mu.assign(n, 0.0);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = 0; j < n; ++j) mu[j] += ex[i] * pts[i][j];
        for (auto& v : mu) v /= tot;
        cov.assign(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < pts.size(); ++i) {
            double w = ex[i] / tot;
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k)
                    cov[j][k] += w * (pts[i][j] - mu[j]) * (pts[i][k] - mu[k]);
        }
        double h = 0.5 * (mx + std::log(tot));
        for (size_t j = 0; j < n; ++j) h -= uu[j] * target[j];
        return h;
    };
    std::vector<double> mu;
    std::vector<std::vector<double>> cov;
    double h = objective(u, mu, cov);
    for (int iter = 0; iter < 400; ++iter) {
        std::vector<double> grad(n);
        double gmax = 0.0;
        for (size_t j = 0; j < n; ++j) {
            grad[j] = mu[j] - target[j];
            gmax = std::max(gmax, std::fabs(grad[j]));
        }
        if (gmax < 1e-12) break;
        for (auto& row : cov)
            for (auto& v : row) v *= 2.0;
        std::vector<double> d = solve_spd(cov, grad);
        double slope = 0.0;
        for (size_t j = 0; j < n; ++j) slope += grad[j] * d[j];
        if (slope <= 0.0) {     // fall back to gradient descent direction
            d = grad;
            slope = 0.0;
            for (size_t j = 0; j < n; ++j) slope += grad[j] * grad[j];
        }
        double step = 1.0;
        std::vector<double> mu2;
        std::vector<std::vector<double>> cov2;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> u2(n);
            for (size_t j = 0; j < n; ++j) u2[j] = u[j] - step * d[j];
            double h2 = objective(u2, mu2, cov2);
            if (h2 <= h - 1e-4 * step * slope) {
                u = std::move(u2);
                h = h2;
                mu = mu2;
                cov = cov2;
                break;
            }
            step *= 0.5;
            if (bt == 59) throw std::runtime_error("momentum section: line search failed (target not interior?)");
        }
    }
    double err = 0.0;
    for (size_t j = 0; j < n; ++j) err = std::max(err, std::fabs(mu[j] - target[j]));
    if (err > 1e-8) throw std::runtime_error("momentum section did not converge; target may not be interior");
    std::vector<double> z(n);
    for (size_t j = 0; j < n; ++j) z[j] = std::exp(u[j]);
    return z;
}

double max_constraint_violation(const Polytope& p, const std::vector<double>& x) {
    double worst = -1e300;
    for (const auto& [a, b] : p.facets)
        worst = std::max(worst, to_double(b) - dotd(a, x));
    for (const auto& [a, b] : p.equations)
        worst = std::max(worst, std::fabs(dotd(a, x) - to_double(b)));
    return worst;
}

double cone_constraint_violation(const Cone& c, const std::vector<double>& x) {
    double worst = -1e300;
    for (const auto& u : c.normals) worst = std::max(worst, -dotd(u, x));
    for (const auto& e : c.equations) worst = std::max(worst, std::fabs(dotd(e, x)));
    return worst;
}

// ---- affine -----------------------------------------------------------------

namespace {

std::optional<std::vector<unsigned>> decompose_over(const std::vector<IntVec>& gens,
                                                    const IntVec& height,
                                                    const std::vector<Int>& hg,
                                                    const IntVec& m) {
    std::vector<unsigned> expo(gens.size(), 0);
    std::function<bool(size_t, IntVec&)> rec = [&](size_t i, IntVec& rem) -> bool {
        if (is_zero(rem)) {
            for (size_t j = i; j < gens.size(); ++j) expo[j] = 0;
            return true;
        }
        if (i == gens.size()) return false;
        Int hr = dot(height, rem);
        if (hr < 0) return false;
        for (Int a = hr / hg[i]; a >= 0; --a) {
            IntVec next = rem;
            for (size_t j = 0; j < next.size(); ++j) next[j] -= a * gens[i][j];
            expo[i] = a.convert_to<unsigned>();
            if (rec(i + 1, next)) return true;
        }
        return false;
    };
    IntVec rem = m;
    if (!rec(0, rem)) return std::nullopt;
    return expo;
}

} // namespace

AffineMomentum affine_momentum_for(const Cone& chart_cone) {
    AffineMomentum a;
    a.chart_cone = chart_cone;
    size_t n = chart_cone.n;
    a.unit_count = chart_cone.lineality.size();
    if (a.unit_count == 0) {
        a.adapted = IntMat::identity(n);
        a.adapted_inv = a.adapted;
        a.sharp_cone = chart_cone;
    } else {
        a.adapted = complete_to_unimodular(chart_cone.lineality, n);
        a.adapted_inv = inverse_unimodular(a.adapted);
        std::vector<IntVec> qgens;
        for (const auto& r : chart_cone.rays) {
            IntVec y = a.adapted_inv.apply(r);
            qgens.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(a.unit_count), y.end());
        }
        a.sharp_cone = cone_from_rays(n - a.unit_count, qgens);
        if (!cone_is_pointed(a.sharp_cone))
            throw std::runtime_error("internal: split-off part is not strictly convex");
    }
    a.gens = hilbert_basis(a.sharp_cone).basis;
    size_t np = a.sharp_cone.n;
    a.height = IntVec(np, Int(0));
    if (!a.gens.empty()) {
        a.height = sum_of_primitive_rays(dual_cone(a.sharp_cone));
        std::vector<Int> hg;
        for (const auto& g : a.gens) {
            Int v = dot(a.height, g);
            if (v <= 0) throw std::runtime_error("internal: height functional not positive");
            a.height_bound = std::max(a.height_bound, v);
            hg.push_back(v);
        }
        std::vector<std::pair<IntVec, Rat>> ineqs;
        for (const auto& u : a.sharp_cone.normals) ineqs.emplace_back(u, Rat(0));
        for (const auto& e : a.sharp_cone.equations) {
            ineqs.emplace_back(e, Rat(0));
            ineqs.emplace_back(neg(e), Rat(0));
        }
        ineqs.emplace_back(neg(a.height), Rat(-a.height_bound));
        a.compact = momentum_eval_for(polytope_from_inequalities(np, ineqs));
        for (const auto& m : a.compact.weights) {
            auto d = decompose_over(a.gens, a.height, hg, m);
            if (!d) throw std::runtime_error("internal: truncation point not generated by the chart monoid");
            a.decomp.push_back(*d);
        }
    }
    return a;
}

std::vector<double> affine_momentum_numeric(const AffineMomentum& a, const std::vector<Cx>& values) {
    size_t k = a.gens.size();
    if (values.size() != k + a.unit_count)
        throw std::invalid_argument("expected one value per sharp generator plus one per unit direction");
    size_t np = a.sharp_cone.n;
    std::vector<double> sharp_part(np, 0.0);
    if (k > 0) {
        std::vector<Cx> chart;
        chart.reserve(a.compact.weights.size());
        for (const auto& expo : a.decomp) {
            Cx w(1.0, 0.0);
            for (size_t i = 0; i < k; ++i)
                for (unsigned t = 0; t < expo[i]; ++t) w *= values[i];
            chart.push_back(w);
        }
        std::vector<double> mu = momentum_eval_numeric(a.compact, chart);
        double q = dotd(a.height, mu);
        double bound = to_double(Rat(a.height_bound));
        double f = q / (bound - q);
        for (size_t j = 0; j < np; ++j) sharp_part[j] = f * mu[j];
    }
    if (a.unit_count == 0) return sharp_part;
    std::vector<double> xprime(a.chart_cone.n, 0.0);
    for (size_t j = 0; j < a.unit_count; ++j) {
        double mod = std::abs(values[k + j]);
        if (mod == 0.0) throw std::invalid_argument("unit coordinate must be nonzero");
        xprime[j] = std::log(mod);
    }
    for (size_t j = 0; j < np; ++j) xprime[a.unit_count + j] = sharp_part[j];
    return mat_apply_double(a.adapted, xprime);
}

std::vector<double> affine_section_positive(const AffineMomentum& a, const RatVec& target) {
    size_t n = a.chart_cone.n;
    if (target.size() != n) throw std::invalid_argument("target dimension mismatch");
    RatVec frame = a.unit_count == 0 ? target : a.adapted_inv.apply(target);
    size_t k = a.gens.size();
    size_t np = a.sharp_cone.n;
    std::vector<double> out(k + a.unit_count, 0.0);
    RatVec sharp_target(frame.begin() + static_cast<std::ptrdiff_t>(a.unit_count), frame.end());
    bool zero_target = true;
    for (const auto& v : sharp_target)
        if (v != 0) zero_target = false;
    if (k == 0) {
        if (!zero_target) throw std::invalid_argument("target outside the span of the chart cone");
    } else if (zero_target) {
        // apex: all sharp coordinates vanish
    } else {
        double s = 0.0;
        for (size_t j = 0; j < np; ++j) s += to_double(Rat(a.height[j]) * sharp_target[j]);
        if (s <= 0.0) throw std::invalid_argument("target outside the chart cone");
        double bound = to_double(Rat(a.height_bound));
        double t = (-s + std::sqrt(s * s + 4.0 * s * bound)) / 2.0;
        std::vector<double> xt(np);
        for (size_t j = 0; j < np; ++j) xt[j] = to_double(sharp_target[j]) * (t / s);
        std::vector<double> z = momentum_section_positive(a.compact, xt);
        std::vector<double> u(np);
        for (size_t j = 0; j < np; ++j) u[j] = std::log(z[j]);
        for (size_t i = 0; i < k; ++i) {
            double s2 = 0.0;
            for (size_t j = 0; j < np; ++j) s2 += u[j] * to_double(Rat(a.gens[i][j]));
            out[i] = std::exp(s2);
        }
    }
    for (size_t j = 0; j < a.unit_count; ++j) out[k + j] = std::exp(to_double(frame[j]));
    return out;
}

} // namespace tdeg
