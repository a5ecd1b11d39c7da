#pragma once

#include <algorithm>
#include <concepts>
#include <span>

#include "dcpso/errors.hpp"
#include "dcpso/types.hpp"

namespace dcpso {

/// Anything that can hand out uniform draws in [0, 1). The step functions
/// are templated on this so tests can pin the random factors exactly.
template <class R>
concept UniformSource = requires(R r) {
    { r.uniform01() } -> std::convertible_to<double>;
};

/// Clamp each velocity component to [-v_max, v_max].
inline void clamp_velocity(std::vector<double>& v, const SearchSpace& space) {
    for (std::size_t d = 0; d < space.dimension; ++d)
        v[d] = std::clamp(v[d], -space.v_max[d], space.v_max[d]);
}

/// Pull escaped coordinates back to the nearest bound and kill the velocity
/// in that dimension so the particle does not press against the wall.
inline void handle_bounds(std::vector<double>& x, std::vector<double>& v, const SearchSpace& space) {
    for (std::size_t d = 0; d < space.dimension; ++d) {
        if (x[d] < space.lower[d]) {
            x[d] = space.lower[d];
            v[d] = 0.0;
        } else if (x[d] > space.upper[d]) {
            x[d] = space.upper[d];
            v[d] = 0.0;
        }
    }
}

namespace detail {

inline void check_step_args(const ParticleState& p, std::size_t guide_size, const SearchSpace& space) {
    if (p.position.size() != space.dimension || p.velocity.size() != space.dimension || guide_size != space.dimension)
        throw ConfigError("channel step: dimension mismatch between particle, guide and search space");
}

} // namespace detail

/// One flight along a single exemplar: v <- w v + c r (exemplar - x), one
/// fresh r per dimension, then velocity clamp, move and bound handling.
/// The returned fitness is stale; the caller evaluates.
template <UniformSource R>
ParticleState step_non_g(const ParticleState& p, std::span<const double> exemplar, double w, double c,
                         const SearchSpace& space, R& rng) {
    detail::check_step_args(p, exemplar.size(), space);
    ParticleState next = p;
    for (std::size_t d = 0; d < space.dimension; ++d) {
        const double r = rng.uniform01();
        const double v = w * next.velocity[d] + c * r * (exemplar[d] - next.position[d]);
        next.velocity[d] = std::clamp(v, -space.v_max[d], space.v_max[d]);
        next.position[d] += next.velocity[d];
    }
    handle_bounds(next.position, next.velocity, space);
    return next;
}

/// One flight toward both an exemplar and the global best:
/// v <- w v + c1 r1 (exemplar - x) + c2 r2 (global - x), with independent
/// r1, r2 per dimension (drawn in that order).
template <UniformSource R>
ParticleState step_g(const ParticleState& p, std::span<const double> exemplar, std::span<const double> global,
                     double w, double c1, double c2, const SearchSpace& space, R& rng) {
    detail::check_step_args(p, exemplar.size(), space);
    if (global.size() != space.dimension)
        throw ConfigError("channel step: global best dimension mismatch");
    ParticleState next = p;
    for (std::size_t d = 0; d < space.dimension; ++d) {
        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01();
        const double v = w * next.velocity[d] + c1 * r1 * (exemplar[d] - next.position[d]) +
                         c2 * r2 * (global[d] - next.position[d]);
        next.velocity[d] = std::clamp(v, -space.v_max[d], space.v_max[d]);
        next.position[d] += next.velocity[d];
    }
    handle_bounds(next.position, next.velocity, space);
    return next;
}

/// Classic inertia-weight update: the exemplar is the particle's own
/// personal best. Draw pattern matches step_g (r1 then r2 per dimension).
template <UniformSource R>
ParticleState step_standard_pso(const ParticleState& p, std::span<const double> personal,
                                std::span<const double> global, double w, double c1, double c2,
                                const SearchSpace& space, R& rng) {
    return step_g(p, personal, global, w, c1, c2, space, rng);
}

} // namespace dcpso
