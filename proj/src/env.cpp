#include "pragworld/env.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pragworld {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::string t(text);
  while (!t.empty() && (std::isspace(static_cast<unsigned char>(t.back())) || t.back() == '.' || t.back() == '!')) t.pop_back();
  std::istringstream is(t);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

enum class Ref { ok, not_an_id, unknown };

Ref resolve(const Universe& u, const std::string& tok, ObjectIndex& out) {
  if (tok.find('#') == std::string::npos) return Ref::not_an_id;
  if (auto i = u.find(tok)) {
    out = *i;
    return Ref::ok;
  }
  const auto lt = lower(tok);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (lower(u.object(static_cast<ObjectIndex>(i)).id) == lt) {
      out = static_cast<ObjectIndex>(i);
      return Ref::ok;
    }
  }
  return Ref::unknown;
}

}  // namespace

ParsedCommand parse_command(const WorldState& s, std::string_view text) {
  using K = ParsedCommand::Kind;
  const auto& u = s.universe();
  const auto tokens = tokenize(text);
  std::vector<std::string> w;
  for (const auto& t : tokens) w.push_back(lower(t));
  const auto n = w.size();
  const auto here = s.agent_location(Agent::robot);
  ParsedCommand out;

  // Object slots are positions into tokens; the shape decides the schema.
  std::vector<std::size_t> slots;
  Schema schema = Schema::examine;
  auto shape = [&](std::initializer_list<std::string_view> pat) {
    if (pat.size() != n) return false;
    std::vector<std::size_t> sl;
    std::size_t i = 0;
    for (auto p : pat) {
      if (p == "_") {
        sl.push_back(i);
      } else if (w[i] != p) {
        return false;
      }
      ++i;
    }
    slots = std::move(sl);
    return true;
  };

  enum class Form {
    none, examine, inventory, move, pick, pick_from, put_in, put_on, open, close, on, off, heat, cool, soak, slice, clean,
    give, take
  };
  Form f = Form::none;
  if (shape({"examine"}) || shape({"look"})) f = Form::examine;
  else if (shape({"inventory"})) f = Form::inventory;
  else if (shape({"move", "to", "_"})) f = Form::move;
  else if (shape({"pick", "up", "_"})) f = Form::pick;
  else if (shape({"pick", "up", "_", "from", "_"})) f = Form::pick_from;
  else if (shape({"put", "_", "into", "_"}) || shape({"put", "_", "in", "_"})) f = Form::put_in;
  else if (shape({"put", "_", "onto", "_"}) || shape({"put", "_", "on", "_"})) f = Form::put_on;
  else if (shape({"open", "_"})) f = Form::open;
  else if (shape({"close", "_"})) f = Form::close;
  else if (shape({"toggle", "on", "_"})) f = Form::on;
  else if (shape({"toggle", "off", "_"})) f = Form::off;
  else if (shape({"heat", "_"})) f = Form::heat;
  else if (shape({"cool", "_"})) f = Form::cool;
  else if (shape({"soak", "_"})) f = Form::soak;
  else if (shape({"slice", "_", "with", "_"})) f = Form::slice;
  else if (shape({"clean", "_", "with", "_"})) f = Form::clean;
  else if (shape({"give", "_", "to", "human"})) f = Form::give;
  else if (shape({"take", "_", "from", "human"})) f = Form::take;
  if (f == Form::none) return out;

  std::vector<ObjectIndex> obj;
  for (auto sl : slots) {
    ObjectIndex x = kNone;
    switch (resolve(u, tokens[sl], x)) {
      case Ref::not_an_id: return out;
      case Ref::unknown: out.kind = K::cant_do; return out;
      case Ref::ok: obj.push_back(x); break;
    }
  }
  auto make = [&](Schema sc, std::initializer_list<ObjectIndex> args) {
    schema = sc;
    out.action = make_action(sc, Agent::robot, args);
  };
  switch (f) {
    case Form::none: return out;
    case Form::examine: make(Schema::examine, {}); break;
    case Form::inventory: make(Schema::inventory, {}); break;
    case Form::move: make(Schema::move, {here, obj[0]}); break;
    case Form::pick: make(Schema::pick_up_at_loc, {obj[0], here}); break;
    case Form::pick_from: make(Schema::pick_up_from_rec_at_loc, {obj[0], obj[1], here}); break;
    case Form::put_in:
      if (u.is_location(obj[1])) make(Schema::put_inside_loc, {obj[0], obj[1]});
      else make(Schema::put_inside_rec_at_loc, {obj[0], obj[1], here});
      break;
    case Form::put_on:
      if (u.is_location(obj[1])) make(Schema::put_ontop_loc, {obj[0], obj[1]});
      else make(Schema::put_ontop_rec_at_loc, {obj[0], obj[1], here});
      break;
    case Form::open:
      if (u.is_location(obj[0])) make(Schema::open_loc, {obj[0]});
      else make(Schema::open_rec_at_loc, {obj[0], here});
      break;
    case Form::close:
      if (u.is_location(obj[0])) make(Schema::close_loc, {obj[0]});
      else make(Schema::close_rec_at_loc, {obj[0], here});
      break;
    case Form::on:
      if (u.is_location(obj[0])) make(Schema::toggle_on_loc, {obj[0]});
      else make(Schema::toggle_on_obj_at_loc, {obj[0], here});
      break;
    case Form::off:
      if (u.is_location(obj[0])) make(Schema::toggle_off_loc, {obj[0]});
      else make(Schema::toggle_off_obj_at_loc, {obj[0], here});
      break;
    case Form::heat: make(Schema::heat_obj, {obj[0], here}); break;
    case Form::cool: make(Schema::cool_obj, {obj[0], here}); break;
    case Form::soak: make(Schema::soak_obj, {obj[0], here}); break;
    case Form::slice: make(Schema::slice_obj, {obj[0], obj[1], here}); break;
    case Form::clean:
      if (u.is_location(obj[0])) make(Schema::clean_loc, {obj[1], obj[0]});
      else make(Schema::clean_obj_at_loc, {obj[0], obj[1], here});
      break;
    case Form::give: make(Schema::bring_to_human, {obj[0]}); break;
    case Form::take: make(Schema::take_from_human, {obj[0]}); break;
  }
  (void)schema;
  out.kind = applicable(s, out.action) ? K::action : K::cant_do;
  return out;
}

bool check_success(const WorldState& s, const std::vector<GroundedSubgoal>& members) {
  return std::any_of(members.begin(), members.end(), [&](const GroundedSubgoal& g) { return holds(s, g); });
}

bool check_success(const WorldState& s, const LiftedSubgoal& m, const WorldState& s_T) {
  return check_success(s, grounding_set(m, s_T).members(s_T.universe()));
}

Session::Session(EpisodeSpec episode, Observability mode) : episode_(std::move(episode)), mode_(mode) {
  s_T_ = episode_.quest_state();
  members_ = grounding_set(episode_.subgoal, s_T_).members(s_T_.universe());
  trajectory_text_ = render_trajectory(episode_.scene, episode_.trajectory, mode_);
  utterance_text_ = render_utterance_block(episode_.utterance_text);
  state_ = s_T_;
}

Session Session::open(const std::string& path, Observability mode) { return Session(load_episode(path), mode); }

std::string Session::scene_observation() const {
  return render_welcome(s_T_) + "\n" + render_examine(s_T_, mode_);
}

std::string Session::reset() {
  state_ = s_T_;
  steps_ = 0;
  score_ = 0.0;
  done_ = false;
  success_ = false;
  if (check_success(state_, members_)) {
    done_ = success_ = true;
    score_ = kSuccessReward;
  }
  return render_welcome(s_T_) + "\n" + trajectory_text_ + "\n" + utterance_text_ + "\n" + render_examine(s_T_, mode_);
}

StepResult Session::step(std::string_view command) {
  if (done_) throw std::logic_error("step after the episode is done");
  StepResult r;
  const auto parsed = parse_command(state_, command);
  ++steps_;
  if (parsed.kind != ParsedCommand::Kind::action) {
    r.observation = std::string(parsed.kind == ParsedCommand::Kind::cant_do ? kCantDo : kCantUnderstand);
    r.score_delta = -1.0;
    r.info = "invalid";
  } else {
    const auto& a = parsed.action;
    r.info = "action";
    r.score_delta = -action_cost(state_, a);
    if (a.schema == Schema::examine) {
      r.observation = render_examine(state_, mode_);
    } else if (a.schema == Schema::inventory) {
      r.observation = render_inventory(state_, trajectory_text_ + "\n" + utterance_text_);
    } else {
      r.observation = render_effect(state_, a);
      state_ = apply(state_, a);
      if (a.schema == Schema::move && mode_ == Observability::partial) {
        r.observation += "\n" + render_examine(state_, mode_);
      }
    }
    if (check_success(state_, members_)) {
      success_ = done_ = true;
      r.score_delta += kSuccessReward;
      r.info = "success";
    }
  }
  if (!done_ && steps_ >= kMaxSteps) {
    done_ = true;
    r.info = "step_limit";
  }
  score_ += r.score_delta;
  r.done = done_;
  return r;
}

std::vector<std::string> Session::valid_commands() const {
  std::vector<std::string> out;
  for (const auto& a : valid_actions(state_, Agent::robot)) out.push_back(render_command(state_.universe(), a));
  return out;
}

}  // namespace pragworld
