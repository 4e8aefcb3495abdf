#include "pragworld/agents.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pragworld {

std::string_view agent_kind_name(AgentKind k) { return k == AgentKind::random ? "random" : "heuristic"; }

AgentKind parse_agent_kind(std::string_view s) {
  if (s == "random") return AgentKind::random;
  if (s == "heuristic") return AgentKind::heuristic;
  throw std::invalid_argument("unknown agent: " + std::string(s));
}

std::string RandomAgent::act(const Session& session) {
  std::vector<GroundedAction> acts;
  for (const auto& a : valid_actions(session.state(), Agent::robot)) {
    if (!is_meta_schema(a.schema)) acts.push_back(a);
  }
  if (acts.empty()) return "examine";
  return render_command(session.state().universe(), rng_.pick(acts));
}

namespace {

// What a human action achieved, in the shape of a grounded subgoal (object field holds a category).
std::optional<std::tuple<QuestType, CategoryId, ObjectIndex, Verb>> effect_key(const Universe& u,
                                                                               const GroundedAction& a) {
  const auto cat = [&](std::size_t i) { return u.object(a.args[i]).category; };
  switch (a.schema) {
    case Schema::pick_up_at_loc:
    case Schema::pick_up_from_rec_at_loc:
    case Schema::bring_to_human: return std::tuple{QuestType::bring_me, cat(0), kNone, Verb::none};
    case Schema::put_inside_loc:
    case Schema::put_ontop_loc:
    case Schema::put_inside_rec_at_loc:
    case Schema::put_ontop_rec_at_loc: return std::tuple{QuestType::move_to, cat(0), a.args[1], Verb::none};
    case Schema::toggle_on_loc:
    case Schema::toggle_on_obj_at_loc: return std::tuple{QuestType::change_state, cat(0), kNone, Verb::toggle_on};
    case Schema::toggle_off_loc:
    case Schema::toggle_off_obj_at_loc: return std::tuple{QuestType::change_state, cat(0), kNone, Verb::toggle_off};
    case Schema::heat_obj: return std::tuple{QuestType::change_state, cat(0), kNone, Verb::heat};
    case Schema::cool_obj: return std::tuple{QuestType::change_state, cat(0), kNone, Verb::cool};
    case Schema::soak_obj: return std::tuple{QuestType::change_state, cat(0), kNone, Verb::soak};
    case Schema::slice_obj: return std::tuple{QuestType::change_state, cat(0), kNone, Verb::slice};
    case Schema::clean_obj_at_loc: return std::tuple{QuestType::change_state, cat(0), kNone, Verb::clean};
    case Schema::clean_loc: return std::tuple{QuestType::change_state, cat(1), kNone, Verb::clean};
    default: return std::nullopt;
  }
}

}  // namespace

std::vector<std::string> heuristic_solve(const EpisodeSpec& e, const HeuristicOptions& o) {
  const auto s_T = e.quest_state();
  const auto& u = s_T.universe();
  std::set<CategoryId> handled;
  std::set<std::tuple<QuestType, CategoryId, ObjectIndex, Verb>> repeated_effects;
  for (const auto& a : e.trajectory) {
    for (int i = 0; i < schema_arity(a.schema); ++i) {
      const auto x = a.args[static_cast<std::size_t>(i)];
      if (!u.is_location(x)) handled.insert(u.object(x).category);
    }
    if (auto k = effect_key(u, a)) repeated_effects.insert(*k);
  }
  // Tiers: repeats a human action, then touches a handled category, then the rest.
  std::vector<GroundedSubgoal> tiers[3];
  for (const auto& mg : grounding_set(e.utterance, s_T).members(u)) {
    if (holds(s_T, mg)) continue;
    const auto c = u.object(mg.object).category;
    if (repeated_effects.count({mg.type, c, mg.target, mg.verb})) tiers[0].push_back(mg);
    else if (handled.count(c)) tiers[1].push_back(mg);
    else tiers[2].push_back(mg);
  }
  for (const auto& tier : tiers) {
    if (tier.empty()) continue;
    try {
      const auto p = cheapest_grounding_plan(s_T, tier, o.candidates, o.planner);
      std::vector<std::string> out;
      for (const auto& a : p.actions) out.push_back(render_command(u, a));
      return out;
    } catch (const NoPlanError&) {
    }
  }
  return {};
}

EpisodeOutcome run_episode(const EpisodeSpec& e, AgentKind kind, Observability mode, std::uint64_t seed,
                           const HeuristicOptions& ho) {
  Session session(e, mode);
  session.reset();
  if (kind == AgentKind::random) {
    RandomAgent agent(seed);
    while (!session.done()) session.step(agent.act(session));
  } else {
    if (mode != Observability::full) throw std::invalid_argument("the heuristic agent needs full observability");
    for (const auto& cmd : heuristic_solve(e, ho)) {
      if (session.done()) break;
      session.step(cmd);
    }
  }
  return EpisodeOutcome{e.hardness, session.score(), session.success(), session.steps_taken()};
}

LevelStats summarize(const std::vector<EpisodeOutcome>& outcomes) {
  LevelStats st;
  st.episodes = static_cast<int>(outcomes.size());
  if (outcomes.empty()) return st;
  double score = 0.0, moves = 0.0;
  int wins = 0;
  for (const auto& o : outcomes) {
    score += o.score;
    if (o.success) {
      ++wins;
      moves += o.moves;
    }
  }
  st.avg_score = score / static_cast<double>(outcomes.size());
  st.success_rate = 100.0 * wins / static_cast<double>(outcomes.size());
  if (wins > 0) st.avg_moves = moves / wins;
  return st;
}

EvalReport make_report(AgentKind kind, Observability mode, const std::vector<EpisodeOutcome>& outcomes) {
  EvalReport r;
  r.agent = kind;
  r.mode = mode;
  std::map<int, std::vector<EpisodeOutcome>> by_level;
  for (const auto& o : outcomes) by_level[o.level].push_back(o);
  for (const auto& [lv, os] : by_level) r.levels[lv] = summarize(os);
  r.overall = summarize(outcomes);
  return r;
}

namespace {

Json stats_json(const LevelStats& s) {
  return Json{{"episodes", s.episodes},
              {"avg_score", s.avg_score},
              {"success_rate", s.success_rate},
              {"avg_moves", s.avg_moves ? Json(*s.avg_moves) : Json("N/A")}};
}

std::string stats_cell(const LevelStats& s) {
  char buf[96];
  if (s.avg_moves) {
    std::snprintf(buf, sizeof buf, "%.1f (%.1f%%, %.1f)", s.avg_score, s.success_rate, *s.avg_moves);
  } else {
    std::snprintf(buf, sizeof buf, "%.1f (%.1f%%, N/A)", s.avg_score, s.success_rate);
  }
  return buf;
}

}  // namespace

Json EvalReport::to_json() const {
  Json lv = Json::object();
  for (const auto& [k, s] : levels) lv[std::to_string(k)] = stats_json(s);
  return Json{{"agent", agent_kind_name(agent)}, {"mode", observability_name(mode)}, {"levels", lv},
              {"overall", stats_json(overall)}};
}

std::string EvalReport::table() const {
  std::string out = "Model (" + std::string(observability_name(mode)) + ")";
  for (const auto& [k, s] : levels) out += " | Level " + std::to_string(k);
  out += " | All\n";
  out += std::string(agent_kind_name(agent));
  for (const auto& [k, s] : levels) out += " | " + stats_cell(s);
  out += " | " + stats_cell(overall) + "\n";
  return out;
}

std::vector<EpisodeOutcome> run_all_serial(AgentKind kind, const std::vector<EpisodeSpec>& episodes, Observability mode,
                                           std::uint64_t seed, const HeuristicOptions& ho) {
  const Rng root(seed);
  std::vector<EpisodeOutcome> out;
  out.reserve(episodes.size());
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    out.push_back(run_episode(episodes[i], kind, mode, root.split("eval", i).seed(), ho));
  }
  return out;
}

std::vector<EpisodeOutcome> run_all_parallel(AgentKind kind, const std::vector<EpisodeSpec>& episodes,
                                             Observability mode, std::uint64_t seed, int threads,
                                             const HeuristicOptions& ho) {
  const Rng root(seed);
  std::vector<EpisodeOutcome> out(episodes.size());
  std::vector<std::string> errors(episodes.size());
  const auto n = static_cast<std::int64_t>(episodes.size());
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = run_episode(episodes[k], kind, mode, root.split("eval", k).seed(), ho);
    } catch (const std::exception& ex) {
      errors[k] = ex.what();
    }
  }
  (void)threads;
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  return out;
}

EvalReport evaluate(AgentKind kind, const std::vector<EpisodeSpec>& episodes, Observability mode, std::uint64_t seed,
                    int threads) {
  return make_report(kind, mode, run_all_parallel(kind, episodes, mode, seed, threads));
}

}  // namespace pragworld
