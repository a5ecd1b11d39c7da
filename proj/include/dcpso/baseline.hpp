#pragma once

#include <cstdint>

#include "dcpso/abs.hpp"

namespace dcpso {

/// Plain global-best PSO with the same schedules, bounds handling and
/// budget accounting as the dual-channel optimizer. Uses `population`
/// single particles (no pairing); variant, refreshing gap and the learning
/// probabilities are ignored. Requires population >= 1.
TrialRecord run_standard_pso(const ObjectiveFunction& objective, const AbsConfig& config,
                             std::uint64_t seed);

} // namespace dcpso
