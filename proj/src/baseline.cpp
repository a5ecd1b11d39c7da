#include "dcpso/baseline.hpp"

#include <cmath>

#include "dcpso/channels.hpp"
#include "dcpso/errors.hpp"

namespace dcpso {

TrialRecord run_standard_pso(const ObjectiveFunction& objective, const AbsConfig& config,
                             std::uint64_t seed) {
    if (config.population < 1)
        throw ConfigError("standard pso: population must be at least 1");
    const long long budget = config.budget(objective.dimension);
    if (budget < static_cast<long long>(config.population))
        throw ConfigError("standard pso: max_evaluations must cover one evaluation per particle");
    const SearchSpace& space = objective.bounds;
    space.validate();
    if (objective.dimension != space.dimension)
        throw ConfigError("standard pso: objective dimension does not match its bounds");

    struct Member {
        ParticleState state;
        PersonalBest best;
    };

    Rng rng(seed);
    std::vector<Member> swarm(config.population);
    GlobalBest global;
    long long evaluations = 0;
    long long nonfinite = 0;

    for (Member& m : swarm) {
        m.state.label = ChannelKind::StandardPso;
        m.state.position.resize(space.dimension);
        m.state.velocity.resize(space.dimension);
        for (std::size_t d = 0; d < space.dimension; ++d)
            m.state.position[d] = rng.uniform(space.lower[d], space.upper[d]);
        for (std::size_t d = 0; d < space.dimension; ++d)
            m.state.velocity[d] = rng.uniform(-space.v_max[d], space.v_max[d]);
        m.state.fitness = objective.evaluate(m.state.position);
        evaluations += 1;
        if (!std::isfinite(m.state.fitness))
            nonfinite += 1;
        m.best.position = m.state.position;
        m.best.fitness = m.state.fitness;
        if (global.position.empty() || fitness_less(m.best.fitness, global.fitness)) {
            global.position = m.best.position;
            global.fitness = m.best.fitness;
        }
    }

    TrialRecord rec;
    rec.algorithm = "pso";
    rec.function = objective.name;
    rec.seed = seed;

    const auto sample_now = [&]() {
        IterationSample s;
        s.fes = evaluations;
        s.error = global.fitness - objective.f_star;
        std::vector<std::span<const double>> views;
        views.reserve(swarm.size());
        for (const Member& m : swarm)
            views.emplace_back(m.state.position);
        s.diversity = diversity(std::span<const std::span<const double>>(views));
        rec.samples.push_back(s);
    };

    sample_now();

    while (evaluations < budget) {
        for (Member& m : swarm) {
            if (evaluations >= budget)
                break;
            const Coefficients k = schedule_at(config.schedule, evaluations, budget);
            m.state = step_standard_pso(m.state, m.best.position, global.position, k.w, k.c1,
                                        k.c2, space, rng);
            m.state.fitness = objective.evaluate(m.state.position);
            evaluations += 1;
            if (!std::isfinite(m.state.fitness)) {
                nonfinite += 1;
                continue;
            }
            if (!(m.state.fitness > m.best.fitness) || !std::isfinite(m.best.fitness)) {
                m.best.position = m.state.position;
                m.best.fitness = m.state.fitness;
                if (fitness_less(m.best.fitness, global.fitness)) {
                    global.position = m.best.position;
                    global.fitness = m.best.fitness;
                }
            }
        }
        sample_now();
    }

    rec.final_error = global.fitness - objective.f_star;
    rec.evaluations = evaluations;
    rec.nonfinite_rejections = nonfinite;
    return rec;
}

} // namespace dcpso
