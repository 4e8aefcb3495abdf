// English rendering of quests, commands and observations.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pragworld/actions.hpp"
#include "pragworld/rng.hpp"
#include "pragworld/subgoal.hpp"

namespace pragworld {

enum class Observability { full, partial };
std::string_view observability_name(Observability o);
Observability parse_observability(std::string_view s);  // throws std::invalid_argument

inline constexpr std::string_view kCantDo = "You can't do that.";
inline constexpr std::string_view kCantUnderstand = "I can't understand.";

// Adjective for a flag value, e.g. cooked / uncooked.
std::string_view flag_adjective(Flag f, bool value);

// "the large red box on the table", "the sliced one"; empty when nothing is specified.
std::string describe_specifiers(const LiftedSubgoal& u);
// Quest sentence without the politeness prefix; `variant` picks the verb wording.
std::string render_instruction(const LiftedSubgoal& u, int variant);
// Full instruction with verb variant and politeness prefix drawn from rng.
std::string render_utterance(const LiftedSubgoal& u, Rng& rng);

std::string render_welcome(const WorldState& s);
// One line of the human trajectory; partial mode names objects by category only.
std::string render_human_action(const WorldState& before, const GroundedAction& a, Observability mode);
std::string render_trajectory(const WorldState& s0, const std::vector<GroundedAction>& omega, Observability mode);
std::string render_utterance_block(std::string_view instruction);
// Full mode lists every location; partial mode only the robot's location, hiding closed insides.
std::string render_examine(const WorldState& s, Observability mode);
std::string render_inventory(const WorldState& s, std::string_view recall);
// Effect message of an applicable robot action, rendered against the state before it.
std::string render_effect(const WorldState& before, const GroundedAction& a);
// Robot command text that parses back to `a`.
std::string render_command(const Universe& u, const GroundedAction& a);

// Whitespace token count.
std::size_t count_tokens(std::string_view text);
// Lowercased words with punctuation stripped; object ids are dropped.
std::vector<std::string> lexical_words(std::string_view text);
// Every word the renderer can emit outside object ids, sorted.
std::vector<std::string> vocabulary();

}  // namespace pragworld
