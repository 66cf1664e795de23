#include "tdeg/variety.hpp"

#include <stdexcept>

namespace tdeg {

ToricVarietyModel toric_model_affine(const Cone& sigma) {
    if (!cone_is_pointed(sigma))
        throw std::invalid_argument("affine model needs a strictly convex defining cone");
    ToricVarietyModel m;
    m.n = sigma.n;
    m.projective = false;
    m.defining_cone = sigma;
    m.fan = fan_from_cones(sigma.n, cone_faces(sigma));
    return m;
}

ToricVarietyModel toric_model_projective(const Polytope& xi) {
    ToricVarietyModel m;
    m.n = xi.n;
    m.projective = true;
    m.momentum_polytope = xi;
    m.fan = normal_fan(xi);   // throws unless xi is full-dimensional
    return m;
}

size_t stratum_count(const ToricVarietyModel& m) { return m.fan.cones.size(); }

size_t stratum_dim(const ToricVarietyModel& m, size_t stratum) {
    if (stratum >= m.fan.cones.size()) throw std::invalid_argument("no such stratum");
    return m.n - cone_dim(m.fan.cones[stratum]);
}

size_t kn_fiber_rank(const ToricVarietyModel& m, size_t stratum) {
    if (stratum >= m.fan.cones.size()) throw std::invalid_argument("no such stratum");
    return ghost_stalk_toric(m.fan.cones[stratum]).rank;
}

KNDescriptor kn_descriptor(const ToricVarietyModel& m) {
    KNDescriptor d;
    d.torus_rank = m.n;
    d.projective = m.projective;
    if (m.projective) {
        d.base_polytope = m.momentum_polytope;
    } else {
        d.base_cone = dual_cone(*m.defining_cone);
    }
    for (size_t i = 0; i < m.fan.cones.size(); ++i) d.fiber_ranks.push_back(kn_fiber_rank(m, i));
    return d;
}

} // namespace tdeg
