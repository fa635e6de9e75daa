#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "teamgames/game.hpp"

namespace teamgames {

// Team Rock-Paper-Scissors: 2-vs-2, every player has actions {a, b}. The
// team decision map is: player 1 plays b => Scissors (whatever player 2
// does); both play a => Rock; (a, b) => Paper. Decision payoffs are the
// standard win +1 / loss -1 / tie 0.
TeamGame make_team_rps();

// The 2-vs-2 heterogeneous matrix game: team 1 joint actions
// {0,1} x {0,2}, team 2 joint actions {0,1} x {0,3}. Pure payoff to team 1
// is 4 when a1 = (0,2) and a2 = (0,0), otherwise
// (2*[a2 plays 1] + 3*[a2 plays 3]) - (2*[a1 plays 1] + 2*[a1 plays 2]) + 1.
TeamGame make_hetero_matrix_game();

// Random dense game with i.i.d. uniform payoffs drawn from a splitmix64
// stream. Same arguments give a bit-identical tensor.
TeamGame random_team_game(const std::vector<int>& team1_action_counts,
                          const std::vector<int>& team2_action_counts,
                          std::pair<double, double> payoff_range,
                          std::uint64_t seed);

// GameSpecFile text format, version "teamgame v1":
//
//   teamgame v1
//   name <free text>           (optional)
//   team1 <labels> | <labels> | ...
//   team2 <labels> | <labels> | ...
//   payoffs
//   <one whitespace-separated row per team-1 joint action>
//
// Per-player action labels are whitespace-separated tokens, players
// separated by '|'. Rows follow the mixed-radix joint-action order with
// player 1 most significant. parse(serialize(g)) reproduces the tensor
// bit for bit.
TeamGame parse_game(const std::string& text);
std::string serialize_game(const TeamGame& game);

// Resolves a builtin name ("team_rps", "hetero_matrix") or reads a game
// file from disk. Throws a config error for unknown names and a parse
// error for bad files.
TeamGame load_game(const std::string& name_or_path);

}  // namespace teamgames
