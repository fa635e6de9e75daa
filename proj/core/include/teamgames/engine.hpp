#pragma once

#include "teamgames/game.hpp"
#include "teamgames/trace.hpp"

namespace teamgames {

// Runs the configured population loop (or self-play / fictitious
// self-play) on the game and returns the full per-iteration trace.
// Deterministic in (game, config) apart from wall-clock fields.
RunTrace run(const TeamGame& game, const RunConfig& config);

}  // namespace teamgames
