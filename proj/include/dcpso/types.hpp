#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace dcpso {

/// Box-bounded search space with a per-dimension velocity cap.
struct SearchSpace {
    std::size_t dimension = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> v_max;

    /// Throws ConfigError unless dimension >= 1, all vectors have matching
    /// size, lower < upper and v_max > 0 component-wise.
    void validate() const;
};

/// Build a SearchSpace with the default velocity cap of 20% of the box
/// extent per dimension.
SearchSpace make_search_space(std::vector<double> lower, std::vector<double> upper);

/// Uniform box [lo, hi]^dimension with the default velocity cap.
SearchSpace make_search_space(std::size_t dimension, double lo, double hi);

/// Which update rule a particle flies by.
enum class ChannelKind { NonG, G, StandardPso };

struct ParticleState {
    std::vector<double> position;
    std::vector<double> velocity;
    double fitness = std::numeric_limits<double>::infinity();
    ChannelKind label = ChannelKind::NonG;
};

struct PersonalBest {
    std::vector<double> position;
    double fitness = std::numeric_limits<double>::infinity();
};

/// A particle pair produced by cell division. Both members share one
/// personal best, one exemplar and the counters driving channel selection.
struct SubSwarm {
    int id = 0;
    ParticleState particle_non_g;
    ParticleState particle_g;
    PersonalBest best;

    /// Current promising direction (exemplar). Only meaningful while
    /// exemplar_valid; before the first refresh both channels fall back to
    /// the personal best.
    std::vector<double> exemplar;
    bool exemplar_valid = false;

    /// Searches already charged against the current promising direction.
    int searches = 0;
    /// Set when the personal best improved through the non-G channel since
    /// the last direction refresh; it licenses skipping the G channel.
    bool non_g_improved = false;
};

struct GlobalBest {
    std::vector<double> position;
    double fitness = std::numeric_limits<double>::infinity();
};

/// Linear coefficient schedules, interpolated in consumed evaluations.
struct ScheduleParams {
    double w_start = 0.9, w_end = 0.4;
    double c1_start = 2.5, c1_end = 0.5;
    double c2_start = 0.5, c2_end = 2.5;
};

struct SwarmState {
    SearchSpace space;
    std::vector<SubSwarm> subs;
    GlobalBest best;
    long long evaluations = 0;
    /// Evaluations that produced NaN/inf and were rejected by best updates.
    long long nonfinite_rejections = 0;
};

/// Ordering that treats non-finite fitness as worse than anything finite.
/// NaN loses to everything (including inf); otherwise the usual <.
inline bool fitness_less(double a, double b) {
    if (std::isnan(a)) return false;
    if (std::isnan(b)) return true;
    return a < b;
}

} // namespace dcpso
