#include "dcpso/abs.hpp"

#include <algorithm>
#include <cmath>

#include "dcpso/channels.hpp"
#include "dcpso/errors.hpp"

namespace dcpso {

const char* variant_id(Variant v) {
    switch (v) {
    case Variant::Full: return "dcpso-abs";
    case Variant::POnly: return "dcpso-abs-p";
    case Variant::NonGOnly: return "pso-abs-non-g";
    case Variant::GOnly: return "pso-abs-g";
    }
    throw InternalError("variant_id: unknown variant");
}

void AbsConfig::validate(std::size_t dimension) const {
    if (dimension == 0)
        throw ConfigError("config: dimension must be at least 1");
    if (refreshing_gap < 1)
        throw ConfigError("config: refreshing_gap must be at least 1");
    if (population < 2)
        throw ConfigError("config: population must be at least 2 sub-swarms");
    const long long b = budget(dimension);
    if (b < static_cast<long long>(population))
        throw ConfigError("config: max_evaluations must cover at least one evaluation per sub-swarm");
    if (!(pc_min >= 0.0 && pc_min <= pc_max && pc_max <= 1.0))
        throw ConfigError("config: learning probabilities need 0 <= pc_min <= pc_max <= 1");
    for (double v : {schedule.w_start, schedule.w_end, schedule.c1_start, schedule.c1_end,
                     schedule.c2_start, schedule.c2_end})
        if (!std::isfinite(v))
            throw ConfigError("config: schedule endpoints must be finite");
}

long long AbsConfig::budget(std::size_t dimension) const {
    return max_evaluations > 0 ? max_evaluations : 10000LL * static_cast<long long>(dimension);
}

ChannelCaps adaptive_split(int gap, long long evaluations, long long max_evaluations) {
    if (gap < 1)
        throw ConfigError("adaptive split: gap must be at least 1");
    if (max_evaluations <= 0)
        throw ConfigError("adaptive split: max_evaluations must be positive");
    const long long used = std::clamp(evaluations, 0LL, max_evaluations);
    const long long remaining = max_evaluations - used;
    // exact integer ceil of gap * remaining / max_evaluations
    const long long non_g = (static_cast<long long>(gap) * remaining + max_evaluations - 1) / max_evaluations;
    ChannelCaps caps;
    caps.non_g = static_cast<int>(non_g);
    caps.g = gap - caps.non_g;
    return caps;
}

ChannelDecision select_channel(int searches, bool non_g_improved, int cap_non_g, int gap) {
    if (searches > gap || (searches > cap_non_g && non_g_improved))
        return ChannelDecision::RunPdg;
    if (searches <= cap_non_g)
        return ChannelDecision::RunNonG;
    return ChannelDecision::RunG;
}

int reward_penalty_non_g(int searches, bool p_updated) {
    return p_updated ? 0 : searches + 1;
}

int reward_penalty_g(int searches, int cap_non_g, bool p_updated, bool g_updated) {
    if (g_updated && !p_updated)
        throw InternalError("reward & penalty: global best cannot improve without the personal best");
    if (g_updated)
        return cap_non_g + 1;
    if (p_updated)
        return searches;
    return searches + 1;
}

std::vector<double> generate_promising_direction(std::size_t sub_index,
                                                 std::span<const SubSwarm> subs, double pc,
                                                 Rng& rng) {
    const std::size_t n = subs.size();
    if (n < 2)
        throw ConfigError("promising direction: need at least two sub-swarms");
    if (sub_index >= n)
        throw ConfigError("promising direction: sub-swarm index out of range");

    const SubSwarm& own = subs[sub_index];
    const std::size_t dim = own.best.position.size();
    std::vector<double> direction = own.best.position;

    // winner of a two-way tournament among the other sub-swarms
    const auto pick_other = [&]() -> const SubSwarm& {
        std::size_t a = rng.index(n - 1);
        if (a >= sub_index) ++a;
        if (n == 2)
            return subs[a];
        std::size_t b = rng.index(n - 2);
        if (b >= std::min(a, sub_index)) ++b;
        if (b >= std::max(a, sub_index)) ++b;
        const SubSwarm& sa = subs[a];
        const SubSwarm& sb = subs[b];
        return fitness_less(sb.best.fitness, sa.best.fitness) ? sb : sa;
    };

    bool any_foreign = false;
    for (std::size_t d = 0; d < dim; ++d) {
        if (rng.uniform01() < pc) {
            direction[d] = pick_other().best.position[d];
            any_foreign = true;
        }
    }
    if (!any_foreign && dim > 0) {
        const std::size_t d = rng.index(dim);
        std::size_t other = rng.index(n - 1);
        if (other >= sub_index) ++other;
        direction[d] = subs[other].best.position[d];
    }
    return direction;
}

void reset_search_counters(SubSwarm& sub) {
    sub.searches = 0;
    sub.non_g_improved = false;
}

std::vector<double> learning_probabilities(std::size_t n, double pc_min, double pc_max) {
    if (n == 0)
        throw ConfigError("learning probabilities: need at least one sub-swarm");
    std::vector<double> pc(n);
    if (n == 1) {
        pc[0] = pc_min;
        return pc;
    }
    const double denom = std::exp(10.0) - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        pc[i] = pc_min + (pc_max - pc_min) * (std::exp(10.0 * t) - 1.0) / denom;
    }
    return pc;
}

namespace {

// Exemplar both channels fly toward: the refreshed promising direction when
// one exists, the own personal best otherwise (and always, for the P-only
// ablation).
std::span<const double> exemplar_of(const SubSwarm& sub, Variant variant) {
    if (variant != Variant::POnly && sub.exemplar_valid)
        return sub.exemplar;
    return sub.best.position;
}

void evaluate_and_score(SwarmState& state, SubSwarm& sub, ParticleState& particle,
                        const ObjectiveFunction& objective, StepOutcome& out) {
    const double f = objective.evaluate(particle.position);
    particle.fitness = f;
    state.evaluations += 1;
    if (!std::isfinite(f))
        state.nonfinite_rejections += 1;
    out.evaluated = true;
    out.p_updated = update_personal_best(sub, particle.position, f);
    if (out.p_updated)
        out.g_updated = update_global_best(state, sub);
}

} // namespace

StepOutcome abs_step(SwarmState& state, std::size_t sub_index, const AbsConfig& config,
                     const ObjectiveFunction& objective, double pc, Rng& rng) {
    if (sub_index >= state.subs.size())
        throw ConfigError("abs step: sub-swarm index out of range");
    SubSwarm& sub = state.subs[sub_index];
    const long long budget = config.budget(state.space.dimension);

    const ChannelCaps caps = adaptive_split(config.refreshing_gap, state.evaluations, budget);
    ChannelDecision decision =
        select_channel(sub.searches, sub.non_g_improved, caps.non_g, config.refreshing_gap);
    // single-channel ablations keep the refresh machinery but force the flight
    if (decision != ChannelDecision::RunPdg) {
        if (config.variant == Variant::NonGOnly)
            decision = ChannelDecision::RunNonG;
        else if (config.variant == Variant::GOnly)
            decision = ChannelDecision::RunG;
    }

    StepOutcome out;
    out.decision = decision;

    if (decision == ChannelDecision::RunPdg) {
        reset_search_counters(sub);
        if (config.variant != Variant::POnly) {
            sub.exemplar = generate_promising_direction(sub_index, state.subs, pc, rng);
            sub.exemplar_valid = true;
        }
        return out; // refreshes are free: no evaluation
    }

    if (state.evaluations >= budget)
        return out; // budget exhausted; the sweep is winding down

    const Coefficients k = schedule_at(config.schedule, state.evaluations, budget);
    const std::span<const double> exemplar = exemplar_of(sub, config.variant);

    if (decision == ChannelDecision::RunNonG) {
        sub.particle_non_g = step_non_g(sub.particle_non_g, exemplar, k.w, k.c1, state.space, rng);
        evaluate_and_score(state, sub, sub.particle_non_g, objective, out);
        sub.searches = reward_penalty_non_g(sub.searches, out.p_updated);
        if (out.p_updated)
            sub.non_g_improved = true;
    } else {
        sub.particle_g = step_g(sub.particle_g, exemplar, state.best.position, k.w, k.c1, k.c2,
                                state.space, rng);
        evaluate_and_score(state, sub, sub.particle_g, objective, out);
        sub.searches = reward_penalty_g(sub.searches, caps.non_g, out.p_updated, out.g_updated);
    }
    return out;
}

namespace {

double swarm_diversity(const SwarmState& state) {
    std::vector<std::span<const double>> views;
    views.reserve(2 * state.subs.size());
    for (const SubSwarm& sub : state.subs) {
        views.emplace_back(sub.particle_non_g.position);
        views.emplace_back(sub.particle_g.position);
    }
    return diversity(std::span<const std::span<const double>>(views));
}

} // namespace

TrialRecord run_dcpso_abs(const ObjectiveFunction& objective, const AbsConfig& config,
                          std::uint64_t seed) {
    config.validate(objective.dimension);
    const long long budget = config.budget(objective.dimension);

    Rng rng(seed);
    SwarmState state = cell_division_init(objective.bounds, config.population, objective, rng);
    const std::vector<double> pc =
        learning_probabilities(config.population, config.pc_min, config.pc_max);

    TrialRecord rec;
    rec.algorithm = variant_id(config.variant);
    rec.function = objective.name;
    rec.seed = seed;

    const auto sample_now = [&](int non_g, int g, int pdg, const ChannelCaps& caps) {
        IterationSample s;
        s.fes = state.evaluations;
        s.error = state.best.fitness - objective.f_star;
        s.diversity = swarm_diversity(state);
        s.non_g_steps = non_g;
        s.g_steps = g;
        s.pdg_events = pdg;
        s.cap_non_g = caps.non_g;
        s.cap_g = caps.g;
        rec.samples.push_back(s);
    };

    sample_now(0, 0, 0, adaptive_split(config.refreshing_gap, state.evaluations, budget));

    // Direction refreshes are free, so the sweep count is not fixed by the
    // budget; the cap only guards against a broken reward cycle.
    const long long max_sweeps = 4 * (budget / static_cast<long long>(config.population)) + 8;
    for (long long k = 1; state.evaluations < budget; ++k) {
        if (k > max_sweeps)
            throw InternalError("run: sweep cap exceeded without consuming the budget");
        const ChannelCaps caps_at_start =
            adaptive_split(config.refreshing_gap, state.evaluations, budget);
        int non_g = 0, g = 0, pdg = 0;
        for (std::size_t i = 0; i < state.subs.size(); ++i) {
            if (state.evaluations >= budget)
                break;
            const StepOutcome out = abs_step(state, i, config, objective, pc[i], rng);
            switch (out.decision) {
            case ChannelDecision::RunPdg: ++pdg; break;
            case ChannelDecision::RunNonG: non_g += out.evaluated ? 1 : 0; break;
            case ChannelDecision::RunG: g += out.evaluated ? 1 : 0; break;
            }
        }
        sample_now(non_g, g, pdg, caps_at_start);
    }

    rec.final_error = state.best.fitness - objective.f_star;
    rec.evaluations = state.evaluations;
    rec.nonfinite_rejections = state.nonfinite_rejections;
    return rec;
}

} // namespace dcpso
