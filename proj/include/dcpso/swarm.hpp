#pragma once

#include <span>

#include "dcpso/objective.hpp"
#include "dcpso/rng.hpp"
#include "dcpso/types.hpp"

namespace dcpso {

/// Cell-division initialization: n seed particles are drawn uniformly in
/// the box (velocities uniform in the cap), each is evaluated once, and
/// each seed then splits into an identical pair sharing one personal best.
/// Consumes exactly n evaluations. Requires n >= 2.
SwarmState cell_division_init(const SearchSpace& space, std::size_t n_subswarms,
                              const ObjectiveFunction& objective, Rng& rng);

/// Replace the shared personal best when the candidate is at least as good
/// (ties replace, so plateau drift stays possible). Non-finite candidates
/// are rejected. Returns whether the personal best changed.
bool update_personal_best(SubSwarm& sub, std::span<const double> candidate_position,
                          double candidate_fitness);

/// Promote the sub-swarm's personal best to global best when strictly
/// better. Returns whether the global best changed.
bool update_global_best(SwarmState& state, const SubSwarm& sub);

struct Coefficients {
    double w = 0.0, c1 = 0.0, c2 = 0.0;
};

/// Linear interpolation of the coefficient schedules at the given
/// evaluation count, clamped to the schedule endpoints.
Coefficients schedule_at(const ScheduleParams& params, long long evaluations, long long max_evaluations);

} // namespace dcpso
