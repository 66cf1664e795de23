#include "tdeg/fan.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tdeg {

Fan fan_from_cones(size_t n, const std::vector<Cone>& cones) {
    for (size_t i = 0; i < cones.size(); ++i) {
        if (cones[i].n != n) throw std::invalid_argument("cone ambient dimension mismatch");
        if (!cone_is_pointed(cones[i]))
            throw std::invalid_argument("fan cone " + std::to_string(i) + " is not pointed");
    }
    // fan axiom on the input family; faces of a valid family never add violations
    for (size_t i = 0; i < cones.size(); ++i)
        for (size_t j = i + 1; j < cones.size(); ++j) {
            Cone meet = cone_intersect(cones[i], cones[j]);
            if (!is_face_of(cones[i], meet) || !is_face_of(cones[j], meet))
                throw std::invalid_argument("cones " + std::to_string(i) + " and " +
                                            std::to_string(j) +
                                            " intersect outside a common face");
        }

    Fan f;
    f.n = n;
    for (const auto& c : cones)
        for (auto& face : cone_faces(c)) {
            bool seen = false;
            for (const auto& existing : f.cones)
                if (cone_equals(existing, face)) seen = true;
            if (!seen) f.cones.push_back(std::move(face));
        }
    std::sort(f.cones.begin(), f.cones.end(), [](const Cone& a, const Cone& b) {
        if (a.rays.size() != b.rays.size()) return a.rays.size() < b.rays.size();
        return a.rays < b.rays;
    });
    return f;
}

std::vector<size_t> fan_maximal_cones(const Fan& f) {
    std::vector<size_t> out;
    for (size_t i = 0; i < f.cones.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < f.cones.size(); ++j) {
            if (i == j) continue;
            bool inside = true;
            for (const auto& r : f.cones[i].rays)
                if (!cone_contains(f.cones[j], r)) inside = false;
            if (inside && !cone_equals(f.cones[i], f.cones[j])) maximal = false;
        }
        if (maximal) out.push_back(i);
    }
    return out;
}

bool fan_is_complete(const Fan& f) {
    if (f.cones.empty()) return false;
    if (f.n == 0) return true;   // the trivial fan covers R^0
    auto maxi = fan_maximal_cones(f);
    for (size_t i : maxi)
        if (cone_dim(f.cones[i]) != f.n) return false;
    // each facet of a maximal cone must be shared with exactly one other
    for (size_t i : maxi) {
        for (const auto& face : cone_faces(f.cones[i])) {
            if (cone_dim(face) != f.n - 1) continue;
            size_t owners = 0;
            for (size_t j : maxi)
                if (is_face_of(f.cones[j], face)) ++owners;
            if (owners != 2) return false;
        }
    }
    return true;
}

bool fan_contains(const Fan& f, const RatVec& x) {
    for (const auto& c : f.cones)
        if (cone_contains(c, x)) return true;
    return false;
}

std::optional<size_t> fan_cone_with_relint(const Fan& f, const RatVec& x) {
    for (size_t i = 0; i < f.cones.size(); ++i)
        if (cone_contains_relint(f.cones[i], x)) return i;
    return std::nullopt;
}

std::vector<IntVec> fan_rays(const Fan& f) {
    std::vector<IntVec> out;
    for (const auto& c : f.cones)
        if (cone_dim(c) == 1 && cone_is_pointed(c)) out.push_back(c.rays[0]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Fan normal_fan(const Polytope& p) {
    if (polytope_is_empty(p) || polytope_dim(p) != p.n)
        throw std::invalid_argument("normal fan requires a full-dimensional polytope");
    std::vector<Cone> maximal;
    for (const auto& v : p.vertices) {
        std::vector<IntVec> gens;
        for (const auto& [a, b] : p.facets)
            if (dot(a, v) == b) gens.push_back(a);
        maximal.push_back(cone_from_rays(p.n, gens));
    }
    return fan_from_cones(p.n, maximal);
}

Fan quotient_fan(const Fan& f, const IntVec& direction) {
    if (direction.size() != f.n) throw std::invalid_argument("direction dimension mismatch");
    if (is_zero(direction) || content(direction) != 1)
        throw std::invalid_argument("quotient direction must be a primitive lattice vector");
    IntMat u = complete_to_unimodular({direction}, f.n);
    IntMat u_inv = inverse_unimodular(u);
    size_t m = f.n - 1;

    std::vector<Cone> images;
    for (const auto& c : f.cones) {
        std::vector<IntVec> gens;
        auto push_image = [&](const IntVec& g) {
            IntVec full = u_inv.apply(g);
            gens.push_back(IntVec(full.begin() + 1, full.end()));
        };
        for (const auto& r : c.rays) push_image(r);
        for (const auto& l : c.lineality) {
            push_image(l);
            push_image(neg(l));
        }
        images.push_back(cone_from_rays(m, gens));
    }
    // images may repeat (cones differing by the projected direction); the
    // fan constructor dedupes, and raises on genuine overlaps
    return fan_from_cones(m, images);
}

} // namespace tdeg
