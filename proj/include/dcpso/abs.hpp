#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "dcpso/analysis.hpp"
#include "dcpso/objective.hpp"
#include "dcpso/rng.hpp"
#include "dcpso/swarm.hpp"

namespace dcpso {

/// Ablation switches for the dual-channel optimizer.
enum class Variant {
    Full,     ///< both channels + promising-direction refreshes
    POnly,    ///< exemplar is always the own personal best (no refreshes)
    NonGOnly, ///< every search flies the non-G channel
    GOnly,    ///< every search flies the G channel
};

/// Canonical algorithm id for a variant ("dcpso-abs", "dcpso-abs-p",
/// "pso-abs-non-g", "pso-abs-g").
const char* variant_id(Variant v);

struct AbsConfig {
    /// Refreshing gap: total searches granted per promising direction.
    int refreshing_gap = 6;
    /// Number of sub-swarm pairs (2N particles in total).
    std::size_t population = 20;
    /// Evaluation budget; 0 resolves to 10000 * dimension.
    long long max_evaluations = 0;
    Variant variant = Variant::Full;
    ScheduleParams schedule;
    /// Endpoints of the per-sub-swarm learning-probability curve.
    double pc_min = 0.05, pc_max = 0.5;

    void validate(std::size_t dimension) const;
    long long budget(std::size_t dimension) const;
};

/// What a sub-swarm does with its turn.
enum class ChannelDecision { RunPdg, RunNonG, RunG };

/// Per-direction channel caps. non_g + g always equals the refreshing gap.
struct ChannelCaps {
    int non_g = 0;
    int g = 0;
};

/// Split the refreshing gap by remaining budget: the non-G share is
/// ceil(gap * (1 - evaluations / max_evaluations)), so exploration owns the
/// whole gap at the start and none of it at exhaustion.
ChannelCaps adaptive_split(int gap, long long evaluations, long long max_evaluations);

/// Decide a sub-swarm's next action from its counters:
///   refresh the direction when it is exhausted (searches > gap) or when
///   the non-G share is spent and already paid off (searches > cap_non_g
///   while non_g_improved); otherwise fly non-G inside its cap, else G.
ChannelDecision select_channel(int searches, bool non_g_improved, int cap_non_g, int gap);

/// Non-G reward & penalty: an improvement rewinds the direction's budget,
/// a miss burns one search.
int reward_penalty_non_g(int searches, bool p_updated);

/// G-channel reward & penalty: improving the global best re-opens the full
/// G share (searches back to cap_non_g + 1), improving only the personal
/// best freezes the count, a miss burns one search.
int reward_penalty_g(int searches, int cap_non_g, bool p_updated, bool g_updated);

/// Compose a fresh promising direction for sub-swarm `sub_index`: per
/// dimension, with probability pc, take the value from the winner of a
/// two-way tournament (by personal-best fitness) between two distinct other
/// sub-swarms, otherwise keep the own personal best. If no dimension drew
/// from others, one random dimension is forced from a random other
/// sub-swarm. Consumes no evaluations.
std::vector<double> generate_promising_direction(std::size_t sub_index,
                                                 std::span<const SubSwarm> subs, double pc,
                                                 Rng& rng);

/// Clear the direction counters so the next turn starts a fresh cycle.
void reset_search_counters(SubSwarm& sub);

/// Learning probabilities for n sub-swarms: an exponential ramp from
/// pc_min to pc_max across the population index.
std::vector<double> learning_probabilities(std::size_t n, double pc_min, double pc_max);

struct StepOutcome {
    ChannelDecision decision = ChannelDecision::RunNonG;
    bool evaluated = false;
    bool p_updated = false;
    bool g_updated = false;
};

/// Give one sub-swarm its turn: pick the action, fly and evaluate the
/// serving particle (direction refreshes are free), update bests and apply
/// reward & penalty. Calling with an exhausted budget is a no-op that
/// reports evaluated = false.
StepOutcome abs_step(SwarmState& state, std::size_t sub_index, const AbsConfig& config,
                     const ObjectiveFunction& objective, double pc, Rng& rng);

/// Run the full optimizer: cell-division init, then sweeps of abs_step
/// over all sub-swarms until the budget is exhausted. Records one
/// IterationSample per sweep (plus the post-init state).
TrialRecord run_dcpso_abs(const ObjectiveFunction& objective, const AbsConfig& config,
                          std::uint64_t seed);

} // namespace dcpso
