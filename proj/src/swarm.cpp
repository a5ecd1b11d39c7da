#include "dcpso/swarm.hpp"

#include <algorithm>
#include <cmath>

#include "dcpso/errors.hpp"

namespace dcpso {

void SearchSpace::validate() const {
    if (dimension == 0)
        throw ConfigError("search space: dimension must be at least 1");
    if (lower.size() != dimension || upper.size() != dimension || v_max.size() != dimension)
        throw ConfigError("search space: bound vectors must match the dimension");
    for (std::size_t d = 0; d < dimension; ++d) {
        if (!(lower[d] < upper[d]))
            throw ConfigError("search space: lower bound must be below upper bound in every dimension");
        if (!(v_max[d] > 0.0) || !std::isfinite(v_max[d]))
            throw ConfigError("search space: velocity cap must be positive and finite");
    }
}

SearchSpace make_search_space(std::vector<double> lower, std::vector<double> upper) {
    SearchSpace space;
    space.dimension = lower.size();
    space.lower = std::move(lower);
    space.upper = std::move(upper);
    space.v_max.resize(space.dimension);
    if (space.upper.size() != space.dimension)
        throw ConfigError("search space: bound vectors must match the dimension");
    for (std::size_t d = 0; d < space.dimension; ++d)
        space.v_max[d] = 0.2 * (space.upper[d] - space.lower[d]);
    space.validate();
    return space;
}

SearchSpace make_search_space(std::size_t dimension, double lo, double hi) {
    return make_search_space(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
}

SwarmState cell_division_init(const SearchSpace& space, std::size_t n_subswarms,
                              const ObjectiveFunction& objective, Rng& rng) {
    space.validate();
    if (n_subswarms < 2)
        throw ConfigError("cell division init: need at least two sub-swarms");
    if (objective.dimension != space.dimension)
        throw ConfigError("cell division init: objective dimension does not match the search space");

    SwarmState state;
    state.space = space;
    state.subs.reserve(n_subswarms);

    for (std::size_t i = 0; i < n_subswarms; ++i) {
        std::vector<double> position(space.dimension);
        std::vector<double> velocity(space.dimension);
        for (std::size_t d = 0; d < space.dimension; ++d)
            position[d] = rng.uniform(space.lower[d], space.upper[d]);
        for (std::size_t d = 0; d < space.dimension; ++d)
            velocity[d] = rng.uniform(-space.v_max[d], space.v_max[d]);

        const double f = objective.evaluate(position);
        state.evaluations += 1;
        if (!std::isfinite(f))
            state.nonfinite_rejections += 1;

        SubSwarm sub;
        sub.id = static_cast<int>(i);
        sub.particle_non_g = ParticleState{position, velocity, f, ChannelKind::NonG};
        sub.particle_g = ParticleState{std::move(position), std::move(velocity), f, ChannelKind::G};
        sub.best.position = sub.particle_non_g.position;
        sub.best.fitness = f;
        state.subs.push_back(std::move(sub));
    }

    for (const SubSwarm& sub : state.subs)
        update_global_best(state, sub);
    return state;
}

bool update_personal_best(SubSwarm& sub, std::span<const double> candidate_position,
                          double candidate_fitness) {
    if (!std::isfinite(candidate_fitness))
        return false;
    if (candidate_position.size() != sub.best.position.size())
        throw ConfigError("personal best update: candidate dimension mismatch");
    // ties replace on purpose: plateau drift beats freezing
    if (!(candidate_fitness > sub.best.fitness) || !std::isfinite(sub.best.fitness)) {
        sub.best.position.assign(candidate_position.begin(), candidate_position.end());
        sub.best.fitness = candidate_fitness;
        return true;
    }
    return false;
}

bool update_global_best(SwarmState& state, const SubSwarm& sub) {
    // the very first call anchors the global best even to a non-finite seed
    if (state.best.position.empty() || fitness_less(sub.best.fitness, state.best.fitness)) {
        state.best.position = sub.best.position;
        state.best.fitness = sub.best.fitness;
        return true;
    }
    return false;
}

Coefficients schedule_at(const ScheduleParams& params, long long evaluations, long long max_evaluations) {
    if (max_evaluations <= 0)
        throw ConfigError("schedule: max_evaluations must be positive");
    const double t = std::clamp(static_cast<double>(evaluations) / static_cast<double>(max_evaluations),
                                0.0, 1.0);
    Coefficients c;
    c.w = params.w_start + (params.w_end - params.w_start) * t;
    c.c1 = params.c1_start + (params.c1_end - params.c1_start) * t;
    c.c2 = params.c2_start + (params.c2_end - params.c2_start) * t;
    return c;
}

} // namespace dcpso
