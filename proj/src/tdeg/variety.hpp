#pragma once

#include "tdeg/fan.hpp"
#include "tdeg/monoid.hpp"
#include "tdeg/polytope.hpp"

#include <optional>
#include <vector>

namespace tdeg {

// Toric variety presented by a fan; strata are in bijection with the fan
// cones (stratum index = cone index), and the stratum of a cone has
// dimension n - dim(cone).  Affine models carry their defining cone (fan =
// its face fan); projective models carry the momentum polytope (fan = its
// inner-normal fan).
struct ToricVarietyModel {
    size_t n = 0;
    bool projective = false;
    Fan fan;
    std::optional<Cone> defining_cone;
    std::optional<Polytope> momentum_polytope;
};

ToricVarietyModel toric_model_affine(const Cone& sigma);        // sigma strictly convex
ToricVarietyModel toric_model_projective(const Polytope& xi);   // xi full-dimensional

size_t stratum_count(const ToricVarietyModel& m);
size_t stratum_dim(const ToricVarietyModel& m, size_t stratum);

// Rank r of the compact torus fiber over the stratum: the gp rank of the
// sharpened chart monoid there.  r = 0 exactly on the dense orbit.
size_t kn_fiber_rank(const ToricVarietyModel& m, size_t stratum);

// Base region (the momentum image: dual cone for affine models, the polytope
// for projective ones), total torus rank n, and the fiber rank per stratum.
struct KNDescriptor {
    size_t torus_rank = 0;
    bool projective = false;
    std::optional<Cone> base_cone;
    std::optional<Polytope> base_polytope;
    std::vector<size_t> fiber_ranks;   // indexed like the fan cones
};

KNDescriptor kn_descriptor(const ToricVarietyModel& m);

} // namespace tdeg
