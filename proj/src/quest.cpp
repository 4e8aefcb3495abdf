#include "pragworld/quest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>

namespace pragworld {

namespace {

constexpr double kUsefulThreshold = 0.5;  // gains are whole action counts

std::uint64_t human_view_hash(const WorldState& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  };
  for (const auto& st : s.object_states()) {
    mix((static_cast<std::uint64_t>(static_cast<std::uint16_t>(st.holder)) << 16) |
        (static_cast<std::uint64_t>(st.relation) << 8) | st.flags);
  }
  mix(static_cast<std::uint64_t>(static_cast<std::uint16_t>(s.agent_location(Agent::human))));
  mix(static_cast<std::uint64_t>(static_cast<std::uint16_t>(s.holding(Agent::human))) << 20 |
      static_cast<std::uint16_t>(s.holding(Agent::robot)));
  return h;
}

// Goal literal objects, tools the goal needs, and the holders above them.
std::vector<char> goal_core(const WorldState& s, const CompiledGoal& goal) {
  const auto& u = s.universe();
  std::vector<char> in(u.size(), 0);
  bool knife = false, cleaner = false;
  for (const auto& l : goal.literals()) {
    in[static_cast<std::size_t>(l.x)] = 1;
    if (l.kind == LitKind::position) in[static_cast<std::size_t>(l.y)] = 1;
    if (l.kind == LitKind::flag) {
      knife = knife || (l.flag == Flag::sliced && l.value);
      cleaner = cleaner || ((l.flag == Flag::dusty || l.flag == Flag::stained) && !l.value);
    }
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& name = u.category_of(static_cast<ObjectIndex>(i)).name;
    if ((knife && is_knife_category(name)) || (cleaner && is_cleaning_tool_category(name))) in[i] = 1;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!in[i]) continue;
    for (ObjectIndex h = s.at(static_cast<ObjectIndex>(i)).holder; h >= 0; h = s.at(h).holder) {
      in[static_cast<std::size_t>(h)] = 1;
    }
  }
  return in;
}

}  // namespace

WorldState unroll_subgoal(const WorldState& s, const GroundedSubgoal& mg, const PlannerConfig& config) {
  const auto g = compile(s.universe(), mg);
  return execute(s, plan(s, Agent::robot, g, config).actions);
}

QuestContext::QuestContext(WorldState s_T, const GroundGoal& goal, QuestOptions options)
    : s_(std::move(s_T)), opt_(options) {
  validate(opt_.rsa);
  validate(opt_.planner);
  goal_ = CompiledGoal::compile(s_.universe(), goal);
  if (goal_.evaluate(s_)) throw QuestError("goal already satisfied at the quest state");
  try {
    v0_ = human_cost(s_);
  } catch (const NoPlanError& e) {
    throw QuestError(std::string("human cannot reach the goal: ") + e.what());
  }
}

double QuestContext::human_cost(const WorldState& s) {
  const auto key = human_view_hash(s);
  if (auto it = human_memo_.find(key); it != human_memo_.end()) return it->second;
  const double v = cost_to_go(s, Agent::human, goal_, opt_.planner);
  human_memo_.emplace(key, v);
  return v;
}

double QuestContext::exact_gain(const GroundedSubgoal& mg) {
  if (holds(s_, mg)) return 0.0;
  WorldState landing;
  try {
    landing = unroll_subgoal(s_, mg, opt_.planner);
  } catch (const NoPlanError&) {
    return 0.0;
  }
  try {
    return v0_ - human_cost(landing);
  } catch (const NoPlanError&) {
    return 0.0;
  }
}

void QuestContext::precompute_gains() {
  if (gains_ready_) return;
  gains_ready_ = true;
  const auto& u = s_.universe();
  const auto n = u.size();
  core_ = goal_core(s_, goal_);
  special_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    if (core_[i] || s_.holding(Agent::human) == x) {
      special_[i] = 1;
      continue;
    }
    for (ObjectIndex c = x, h = s_.at(x).holder; h >= 0; c = h, h = s_.at(h).holder) {
      if (core_[static_cast<std::size_t>(h)] && s_.at(c).relation == Relation::in && s_.closed_container(h)) {
        special_[i] = 1;
        break;
      }
    }
  }
  auto representative = [&](auto pred) -> ObjectIndex {
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<ObjectIndex>(i);
      if (!special_[i] && u.is_movable(x) && pred(x)) return x;
    }
    return kNone;
  };
  // Special objects outside the core only matter through where they sit, so they share
  // gains per (holder, relation, receptacle-ness, held by the human).
  std::vector<std::int64_t> xcls(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    xcls[i] = core_[i] ? static_cast<std::int64_t>(i)
                       : (std::int64_t{1} << 24) + (static_cast<std::int64_t>(s_.at(x).holder) + 1) * 16 +
                             static_cast<std::int64_t>(s_.at(x).relation) * 4 + (u.is_receptacle(x) ? 2 : 0) +
                             (s_.holding(Agent::human) == x ? 1 : 0);
  }
  std::map<std::tuple<int, int, std::int64_t, std::int64_t, bool>, double> memo;
  auto shared_gain = [&](const GroundedSubgoal& mg, std::int64_t tcls) {
    const bool done = holds(s_, mg);
    const auto key = std::make_tuple(static_cast<int>(mg.type), static_cast<int>(mg.verb),
                                     xcls[static_cast<std::size_t>(mg.object)], tcls, done);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const double g = exact_gain(mg);
    memo.emplace(key, g);
    return g;
  };

  // bring-me
  bring_gain_.assign(n, 0.0);
  double ordinary_bring = 0.0;
  if (auto r = representative([](ObjectIndex) { return true; }); r != kNone) {
    ordinary_bring = exact_gain(GroundedSubgoal{QuestType::bring_me, r, kNone, Verb::none});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    if (!u.is_movable(x)) continue;
    bring_gain_[i] =
        special_[i] ? shared_gain(GroundedSubgoal{QuestType::bring_me, x, kNone, Verb::none}, -1) : ordinary_bring;
  }

  // change-state: ordinary objects gain nothing
  for (Verb v : kQuestVerbs) {
    auto& g = state_gain_[v];
    g.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<ObjectIndex>(i);
      if (special_[i] && verb_applies(u, x, v)) g[i] = shared_gain(GroundedSubgoal{QuestType::change_state, x, kNone, v}, -1);
    }
  }

  // move-to: targets outside the goal core are interchangeable per (location, closed, held)
  std::vector<ObjectIndex> targets;
  for (std::size_t i = 0; i < n; ++i) {
    if (target_admissible(u, static_cast<ObjectIndex>(i))) targets.push_back(static_cast<ObjectIndex>(i));
  }
  std::vector<std::int64_t> cls(n, -1);
  for (auto t : targets) {
    if (core_[static_cast<std::size_t>(t)] || u.is_location(t)) {
      cls[static_cast<std::size_t>(t)] = t;
    } else {
      cls[static_cast<std::size_t>(t)] = (1 << 20) + s_.resolved_location(t) * 4 + (s_.closed_container(t) ? 2 : 0) +
                                         (s_.at(t).holder < 0 ? 1 : 0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    if (!special_[i] || !u.is_movable(x)) continue;
    auto& row = move_gain_[x];
    row.assign(n, 0.0);
    for (auto t : targets) {
      if (!valid_pair(u, x, t)) continue;
      row[static_cast<std::size_t>(t)] =
          shared_gain(GroundedSubgoal{QuestType::move_to, x, t, Verb::none}, cls[static_cast<std::size_t>(t)]);
    }
  }
  into_gain_.assign(n, 0.0);
  const auto filler = representative([&](ObjectIndex x) { return !u.is_receptacle(x); });
  if (filler != kNone) {
    for (auto t : targets) {
      if (core_[static_cast<std::size_t>(t)] && s_.closed_container(t)) {
        into_gain_[static_cast<std::size_t>(t)] = exact_gain(GroundedSubgoal{QuestType::move_to, filler, t, Verb::none});
      }
    }
  }
}

double QuestContext::gain(const GroundedSubgoal& mg) {
  precompute_gains();
  const auto x = static_cast<std::size_t>(mg.object);
  switch (mg.type) {
    case QuestType::bring_me: return bring_gain_.at(x);
    case QuestType::change_state: {
      auto it = state_gain_.find(mg.verb);
      return it == state_gain_.end() ? 0.0 : it->second.at(x);
    }
    case QuestType::move_to: {
      if (!valid_pair(s_.universe(), mg.object, mg.target)) return 0.0;
      const auto t = static_cast<std::size_t>(mg.target);
      if (auto it = move_gain_.find(mg.object); it != move_gain_.end()) return it->second[t];
      return into_gain_[t];
    }
  }
  return 0.0;
}

double QuestContext::utility(const GroundingSet& a) {
  precompute_gains();
  const auto size = a.size();
  if (size == 0) throw QuestError("utility of an empty grounding set");
  const auto& u = s_.universe();
  double total = 0.0;
  if (a.type != QuestType::move_to) {
    if (a.type == QuestType::change_state && !state_gain_.count(a.verb)) return 0.0;
    const auto& g = a.type == QuestType::bring_me ? bring_gain_ : state_gain_.at(a.verb);
    for (auto x = a.objects.find_first(); x != Bitset::npos; x = a.objects.find_next(x)) total += g[x];
    return total / static_cast<double>(size);
  }
  std::vector<std::size_t> into_targets;
  for (auto t = a.targets.find_first(); t != Bitset::npos; t = a.targets.find_next(t)) {
    if (into_gain_[t] != 0.0) into_targets.push_back(t);
  }
  for (auto x = a.objects.find_first(); x != Bitset::npos; x = a.objects.find_next(x)) {
    const auto xi = static_cast<ObjectIndex>(x);
    if (auto it = move_gain_.find(xi); it != move_gain_.end()) {
      for (auto t = a.targets.find_first(); t != Bitset::npos; t = a.targets.find_next(t)) total += it->second[t];
    } else {
      for (auto t : into_targets) {
        if (valid_pair(u, xi, static_cast<ObjectIndex>(t))) total += into_gain_[t];
      }
    }
  }
  return total / static_cast<double>(size);
}

std::vector<GroundedSubgoal> QuestContext::useful_members(const GroundingSet& a) {
  std::vector<GroundedSubgoal> out;
  for (const auto& mg : a.members(s_.universe())) {
    if (useful(mg)) out.push_back(mg);
  }
  return out;
}

void QuestContext::build_lattice() {
  if (lattice_ready_) return;
  lattice_ready_ = true;
  precompute_gains();
  const auto& u = s_.universe();
  const auto& cat = Catalog::instance();
  const auto n = u.size();

  // Seeds: individually planned useful groundings.
  std::vector<GroundedSubgoal> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<ObjectIndex>(i);
    if (!special_[i]) continue;
    if (bring_gain_[i] > kUsefulThreshold) seeds.push_back({QuestType::bring_me, x, kNone, Verb::none});
    for (Verb v : kQuestVerbs) {
      if (state_gain_[v][i] > kUsefulThreshold) seeds.push_back({QuestType::change_state, x, kNone, v});
    }
    // Only the best targets for each object seed the lattice.
    if (auto it = move_gain_.find(x); it != move_gain_.end()) {
      const double best = *std::max_element(it->second.begin(), it->second.end());
      for (std::size_t t = 0; t < n && best > kUsefulThreshold; ++t) {
        if (it->second[t] == best) seeds.push_back({QuestType::move_to, x, static_cast<ObjectIndex>(t), Verb::none});
      }
    }
  }
  if (opt_.bring_me_only) {
    std::erase_if(seeds, [](const GroundedSubgoal& g) { return g.type != QuestType::bring_me; });
  }
  if (seeds.empty()) throw QuestError("no useful subgoal at the quest state");

  struct Entry {
    int kind;  // 0 attr, 1 source, 2 target
    Attr attr;
  };
  std::vector<LiftedSubgoal> specs;
  for (const auto& mg : seeds) {
    const auto x = mg.object;
    const auto& spec = u.category_of(x);
    std::vector<Entry> entries;
    for (const auto& a : object_attrs(s_, x, mg.verb)) entries.push_back({0, a});
    const auto src = object_source(s_, x);
    if (src) entries.push_back({1, {}});
    if (mg.type == QuestType::move_to) entries.push_back({2, {}});
    const std::pair<Tier, std::uint16_t> tiers[] = {{Tier::none, 0},
                                                    {Tier::cls, static_cast<std::uint16_t>(spec.cls)},
                                                    {Tier::subclass, spec.subclass},
                                                    {Tier::category, u.object(x).category}};
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      for (const auto& [tier, id] : tiers) {
        LiftedSubgoal m;
        m.type = mg.type;
        m.verb = mg.verb;
        m.tier = tier;
        m.tier_id = id;
        for (int c : chosen) {
          const auto& e = entries[static_cast<std::size_t>(c)];
          if (e.kind == 0) m.attrs.push_back(e.attr);
          if (e.kind == 1) m.source = src;
          if (e.kind == 2) m.target = u.object(mg.target).category;
        }
        if (index_.emplace(m, static_cast<std::int32_t>(specs.size())).second) specs.push_back(std::move(m));
      }
      if (static_cast<int>(chosen.size()) >= opt_.max_entries) return;
      for (std::size_t i = start; i < entries.size(); ++i) {
        chosen.push_back(static_cast<int>(i));
        rec(i + 1);
        chosen.pop_back();
      }
    };
    rec(0);
  }
  (void)cat;

  // Satisfied groundings at s_T, to keep them out of the meanings.
  const auto human_held = s_.holding(Agent::human);
  std::map<Verb, Bitset> satisfied_state;
  for (Verb v : kQuestVerbs) {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<ObjectIndex>(i);
      if (verb_applies(u, x, v) && holds(s_, GroundedSubgoal{QuestType::change_state, x, kNone, v})) b.set(i);
    }
    satisfied_state.emplace(v, std::move(b));
  }

  lattice_.reserve(specs.size());
  for (auto& m : specs) {
    LatticeEntry e;
    e.set = grounding_set(m, s_);
    e.spec = std::move(m);
    bool sat = false;
    switch (e.spec.type) {
      case QuestType::bring_me: sat = human_held >= 0 && e.set.objects.test(static_cast<std::size_t>(human_held)); break;
      case QuestType::change_state: sat = e.set.objects.intersects(satisfied_state.at(e.spec.verb)); break;
      case QuestType::move_to:
        for (auto x = e.set.objects.find_first(); x != Bitset::npos && !sat; x = e.set.objects.find_next(x)) {
          const auto h = s_.at(static_cast<ObjectIndex>(x)).holder;
          sat = h >= 0 && e.set.targets.test(static_cast<std::size_t>(h)) &&
                valid_pair(u, static_cast<ObjectIndex>(x), h);
        }
        break;
    }
    e.meaning = !sat && !e.set.empty();
    lattice_.push_back(std::move(e));
  }
  std::vector<double> cost;
  for (std::size_t i = 0; i < lattice_.size(); ++i) {
    auto& e = lattice_[i];
    if (!e.meaning) continue;
    e.meaning_index = static_cast<std::int32_t>(meanings_.size());
    meanings_.push_back(static_cast<std::int32_t>(i));
    utility_.push_back(utility(e.set));
    cost.push_back(quest_cost(e.spec));
  }
  if (meanings_.empty()) throw QuestError("empty meaning lattice");
  log_prior_ = boltzmann_log_probs(utility_, cost, opt_.rsa);
}

const std::vector<LatticeEntry>& QuestContext::lattice() {
  build_lattice();
  return lattice_;
}

const std::vector<std::int32_t>& QuestContext::meanings() {
  build_lattice();
  return meanings_;
}

const std::vector<double>& QuestContext::meaning_log_prior() {
  build_lattice();
  return log_prior_;
}

const std::vector<double>& QuestContext::meaning_utility() {
  build_lattice();
  return utility_;
}

std::int32_t QuestContext::find(const LiftedSubgoal& spec) {
  build_lattice();
  auto it = index_.find(spec);
  return it == index_.end() ? -1 : it->second;
}

std::int32_t QuestContext::sample_subgoal(Rng& rng) {
  build_lattice();
  // Quest type first, uniform over the types with a meaning; then Boltzmann within it.
  std::map<QuestType, std::vector<std::size_t>> by_type;
  for (std::size_t i = 0; i < meanings_.size(); ++i) {
    by_type[lattice_[static_cast<std::size_t>(meanings_[i])].spec.type].push_back(i);
  }
  auto it = by_type.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(rng.below(by_type.size())));
  std::vector<double> logw;
  for (auto i : it->second) logw.push_back(log_prior_[i]);
  return meanings_[it->second[rng.sample_log_weights(logw)]];
}

QuestContext::Partition& QuestContext::partition(QuestType type, Verb verb) {
  build_lattice();
  auto& p = partitions_[{type, verb}];
  if (p.solution) return p;
  for (std::size_t i = 0; i < lattice_.size(); ++i) {
    const auto& e = lattice_[i];
    if (e.spec.type != type || e.spec.verb != verb) continue;
    p.u_pos.emplace(static_cast<std::int32_t>(i), static_cast<std::int32_t>(p.utterances.size()));
    p.utterances.push_back(static_cast<std::int32_t>(i));
    if (e.meaning) {
      p.m_pos.emplace(static_cast<std::int32_t>(i), static_cast<std::int32_t>(p.meanings.size()));
      p.meanings.push_back(static_cast<std::int32_t>(i));
    }
  }
  RsaProblem prob;
  std::vector<std::size_t> m_size;
  for (auto mi : p.meanings) {
    const auto& e = lattice_[static_cast<std::size_t>(mi)];
    prob.log_prior.push_back(log_prior_[static_cast<std::size_t>(e.meaning_index)]);
    m_size.push_back(e.set.size());
  }
  // Bucket meanings by their first live subject: a covering utterance must contain it.
  std::vector<std::vector<std::int32_t>> bucket(s_.universe().size());
  for (std::size_t mj = 0; mj < p.meanings.size(); ++mj) {
    const auto live = lattice_[static_cast<std::size_t>(p.meanings[mj])].set.live_objects();
    const auto first = live.find_first();
    if (first != Bitset::npos) bucket[first].push_back(static_cast<std::int32_t>(mj));
  }
  prob.support.resize(p.utterances.size());
  for (std::size_t ui = 0; ui < p.utterances.size(); ++ui) {
    const auto& eu = lattice_[static_cast<std::size_t>(p.utterances[ui])];
    prob.utterance_cost.push_back(quest_cost(eu.spec));
    const auto u_size = eu.set.size();
    auto& sup = prob.support[ui];
    for (auto x = eu.set.objects.find_first(); x != Bitset::npos; x = eu.set.objects.find_next(x)) {
      for (auto mj : bucket[x]) {
        if (m_size[static_cast<std::size_t>(mj)] > u_size) continue;
        if (subset_of(lattice_[static_cast<std::size_t>(p.meanings[static_cast<std::size_t>(mj)])].set, eu.set)) {
          sup.push_back(mj);
        }
      }
    }
  }
  p.solution = solve_rsa(prob, opt_.rsa);
  max_rsa_err_ = std::max(max_rsa_err_, p.solution->max_normalisation_error());
  return p;
}

const RsaSolution& QuestContext::rsa_for(QuestType type, Verb verb) { return *partition(type, verb).solution; }

std::vector<std::pair<std::int32_t, double>> QuestContext::speaker(std::int32_t m) {
  const auto& spec = lattice().at(static_cast<std::size_t>(m)).spec;
  auto& p = partition(spec.type, spec.verb);
  auto it = p.m_pos.find(m);
  if (it == p.m_pos.end()) throw QuestError("not a meaning: " + describe(spec));
  std::vector<std::pair<std::int32_t, double>> out;
  for (auto [ui, prob] : p.solution->speaker(it->second)) out.emplace_back(p.utterances[static_cast<std::size_t>(ui)], prob);
  return out;
}

std::int32_t QuestContext::sample_utterance(std::int32_t m, Rng& rng) {
  const auto dist = speaker(m);
  std::vector<double> logw;
  logw.reserve(dist.size());
  for (const auto& d : dist) logw.push_back(std::log(d.second));
  return dist[rng.sample_log_weights(logw)].first;
}

std::int32_t QuestContext::listener_argmax(std::int32_t u) {
  const auto& spec = lattice().at(static_cast<std::size_t>(u)).spec;
  auto& p = partition(spec.type, spec.verb);
  const auto dist = p.solution->listener(p.u_pos.at(u));
  if (dist.empty()) throw QuestError("utterance covers no meaning: " + describe(spec));
  std::int32_t best = -1;
  double best_p = -1.0;
  for (auto [mi, prob] : dist) {
    const auto li = p.meanings[static_cast<std::size_t>(mi)];
    if (best < 0) {
      best = li;
      best_p = prob;
      continue;
    }
    const double tol = 1e-12 * std::max(prob, best_p);
    if (prob > best_p + tol) {
      best = li;
      best_p = prob;
    } else if (std::abs(prob - best_p) <= tol) {
      const auto& a = lattice_[static_cast<std::size_t>(li)].spec;
      const auto& b = lattice_[static_cast<std::size_t>(best)].spec;
      const int ca = quest_cost(a), cb = quest_cost(b);
      if (ca < cb || (ca == cb && describe(a) < describe(b))) {
        best = li;
        best_p = std::max(prob, best_p);
      }
    }
  }
  return best;
}

int QuestContext::classify(std::int32_t m, std::int32_t u) {
  const auto& lat = lattice();
  const auto& am = lat.at(static_cast<std::size_t>(m)).set;
  const auto& au = lat.at(static_cast<std::size_t>(u)).set;
  if (!subset_of(am, au)) throw QuestError("meaning is not covered by the utterance");
  if (same_set(am, au)) return 1;
  const auto& univ = s_.universe();
  if (am.members(univ) == useful_members(au)) return 2;
  const auto r = listener_argmax(u);
  if (same_set(am, lat[static_cast<std::size_t>(r)].set)) return 3;
  return 4;
}

double subgoal_utility(const WorldState& s_T, const LiftedSubgoal& m, const GroundGoal& g, const QuestOptions& o) {
  QuestContext ctx(s_T, g, o);
  return ctx.utility(grounding_set(m, s_T));
}

LiftedSubgoal sample_subgoal(const WorldState& s_T, const GroundGoal& g, Rng& rng, const QuestOptions& o) {
  QuestContext ctx(s_T, g, o);
  const auto i = ctx.sample_subgoal(rng);
  return ctx.lattice()[static_cast<std::size_t>(i)].spec;
}

std::vector<double> rsa_speaker(const WorldState& s, const LiftedSubgoal& m, const std::vector<LiftedSubgoal>& meanings,
                                const std::vector<double>& prior, const std::vector<LiftedSubgoal>& utterances,
                                const RsaParams& params) {
  if (prior.size() != meanings.size()) throw std::invalid_argument("prior size differs from meaning count");
  const auto it = std::find(meanings.begin(), meanings.end(), m);
  if (it == meanings.end()) throw std::invalid_argument("meaning not among the candidates");
  std::vector<GroundingSet> ms;
  for (const auto& x : meanings) ms.push_back(grounding_set(x, s));
  RsaProblem prob;
  for (double p : prior) prob.log_prior.push_back(p > 0 ? std::log(p) : -INFINITY);
  for (const auto& uu : utterances) {
    const auto us = grounding_set(uu, s);
    prob.utterance_cost.push_back(quest_cost(uu));
    std::vector<std::int32_t> sup;
    for (std::size_t j = 0; j < meanings.size(); ++j) {
      if (meanings[j].type == uu.type && meanings[j].verb == uu.verb && literal_meaning(us, ms[j])) {
        sup.push_back(static_cast<std::int32_t>(j));
      }
    }
    prob.support.push_back(std::move(sup));
  }
  const auto sol = solve_rsa(prob, params);
  std::vector<double> out(utterances.size(), 0.0);
  for (auto [ui, p] : sol.speaker(static_cast<std::int32_t>(it - meanings.begin()))) out[static_cast<std::size_t>(ui)] = p;
  return out;
}

}  // namespace pragworld
