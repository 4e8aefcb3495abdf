#include "pragworld/episode.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pragworld/render.hpp"
#include "pragworld/serialize.hpp"

namespace pragworld {

namespace {

Json actions_to_json(const Universe& u, const std::vector<GroundedAction>& actions) {
  Json arr = Json::array();
  for (const auto& a : actions) arr.push_back(action_to_json(u, a));
  return arr;
}

std::vector<GroundedAction> actions_from_json(const Universe& u, const Json& j) {
  std::vector<GroundedAction> out;
  for (const auto& a : j) out.push_back(action_from_json(u, a));
  return out;
}

// First goal conjunct open at s_T that the rest of the human plan closes earliest.
std::string pursued_conjunct(const GroundGoal& goal, const WorldState& s_T, const std::vector<GroundedAction>& rest) {
  const auto texts = goal.conjunct_texts();
  std::vector<FormulaPtr> forms;
  std::vector<char> open;
  for (const auto& b : goal.blocks) {
    forms.push_back(b.formula());
    open.push_back(!evaluate(s_T, *forms.back()));
  }
  WorldState s = s_T;
  for (const auto& a : rest) {
    apply_in_place(s, a);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (open[i] && evaluate(s, *forms[i])) return texts[i];
    }
  }
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (open[i]) return texts[i];
  }
  return texts.empty() ? std::string() : texts.front();
}

}  // namespace

WorldState EpisodeSpec::quest_state() const { return execute(scene, trajectory); }

Json episode_to_json(const EpisodeSpec& e) {
  const auto& u = e.scene.universe();
  Json j;
  j["seed"] = e.seed;
  j["version"] = version_name(e.version);
  j["scene"] = state_to_json(e.scene);
  Json bindings = Json::array();
  for (const auto& [k, v] : e.goal.bindings) bindings.push_back(Json::array({k, v}));
  j["goal"] = Json{{"template", e.goal.template_name}, {"bindings", bindings}, {"conjuncts", e.goal.conjunct_texts()}};
  j["trajectory"] = actions_to_json(u, e.trajectory);
  j["plan_length"] = e.plan_length;
  j["s_T_digest"] = e.s_T_digest;
  j["subgoal"] = to_json(e.subgoal);
  j["utterance"] = to_json(e.utterance);
  j["utterance_text"] = e.utterance_text;
  j["hardness"] = e.hardness;
  j["split"] = e.split;
  j["expert_demo"] = actions_to_json(u, e.expert_demo);
  j["subgoal_annotation"] = e.subgoal_annotation;
  return j;
}

EpisodeSpec episode_from_json(const Json& j) {
  EpisodeSpec e;
  e.seed = j.at("seed").get<std::uint64_t>();
  e.version = parse_version(j.at("version").get<std::string>());
  e.scene = state_from_json(j.at("scene"));
  const auto& g = j.at("goal");
  std::vector<std::pair<std::string, std::string>> bindings;
  for (const auto& b : g.at("bindings")) bindings.emplace_back(b.at(0).get<std::string>(), b.at(1).get<std::string>());
  e.goal = ground_with(find_template(g.at("template").get<std::string>()), bindings);
  const auto& u = e.scene.universe();
  e.trajectory = actions_from_json(u, j.at("trajectory"));
  e.plan_length = j.at("plan_length").get<std::size_t>();
  e.s_T_digest = j.at("s_T_digest").get<std::string>();
  e.subgoal = lifted_from_json(j.at("subgoal"));
  e.utterance = lifted_from_json(j.at("utterance"));
  e.utterance_text = j.at("utterance_text").get<std::string>();
  e.hardness = j.at("hardness").get<int>();
  e.split = j.at("split").get<std::string>();
  e.expert_demo = actions_from_json(u, j.at("expert_demo"));
  e.subgoal_annotation = j.at("subgoal_annotation").get<std::string>();
  return e;
}

std::string episode_to_string(const EpisodeSpec& e) { return episode_to_json(e).dump() + "\n"; }

EpisodeSpec load_episode(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open episode file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& ex) {
    throw std::runtime_error("malformed episode file " + path + ": " + ex.what());
  }
  try {
    return episode_from_json(j);
  } catch (const std::exception& ex) {
    throw std::runtime_error("malformed episode file " + path + ": " + ex.what());
  }
}

void save_episode(const std::string& path, const EpisodeSpec& e) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write episode file: " + path);
  out << episode_to_string(e);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void validate(const GenerationOptions& o) {
  if (o.target_level && (*o.target_level < 1 || *o.target_level > 4)) throw std::invalid_argument("level must be in 1..4");
  if (o.retry_budget < 1) throw std::invalid_argument("retry budget must be positive");
  if (o.level_draws < 1) throw std::invalid_argument("level draws must be positive");
  if (o.demo_candidates < 1) throw std::invalid_argument("demo candidates must be positive");
  validate(o.quest.rsa);
  validate(o.planner);
}

Plan cheapest_grounding_plan(const WorldState& s, const std::vector<GroundedSubgoal>& candidates, int k,
                             const PlannerConfig& config, std::size_t* chosen) {
  const auto& u = s.universe();
  std::vector<std::pair<int, std::size_t>> ranked;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const int h = relaxed_heuristic(s, Agent::robot, compile(u, candidates[i]));
    if (h >= 0) ranked.emplace_back(h, i);
  }
  std::sort(ranked.begin(), ranked.end());
  if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(static_cast<std::size_t>(k));
  std::optional<Plan> best;
  std::size_t best_i = 0;
  for (const auto& [h, i] : ranked) {
    try {
      auto p = plan(s, Agent::robot, compile(u, candidates[i]), config);
      if (!best || p.total_cost < best->total_cost || (p.total_cost == best->total_cost && i < best_i)) {
        best = std::move(p);
        best_i = i;
      }
    } catch (const NoPlanError&) {
    }
  }
  if (!best) throw NoPlanError(NoPlanError::Reason::budget_exhausted, "no candidate grounding could be planned");
  if (chosen) *chosen = best_i;
  return *best;
}

std::vector<GroundedSubgoal> subgoal_members(const EpisodeSpec& e) {
  const auto s_T = e.quest_state();
  return grounding_set(e.subgoal, s_T).members(s_T.universe());
}

Plan expert_demo(const EpisodeSpec& e, int k, const PlannerConfig& config) {
  return cheapest_grounding_plan(e.quest_state(), subgoal_members(e), k, config);
}

EpisodeSpec generate_episode(std::uint64_t seed, const GenerationOptions& opt) {
  validate(opt);
  const Rng root(seed);
  const bool v2 = opt.version == Version::v2;
  QuestOptions qo = opt.quest;
  qo.bring_me_only = qo.bring_me_only || v2;
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < opt.retry_budget; ++attempt) {
    const Rng r = root.split("attempt", static_cast<std::uint64_t>(attempt));
    try {
      SceneConfig sc;
      sc.rng_seed = r.split("scene").seed();
      EpisodeSpec e;
      e.seed = seed;
      e.version = opt.version;
      e.scene = sample_scene(sc);
      Rng rg = r.split("goal");
      e.goal = sample_goal(opt.version, rg);
      const auto goal = CompiledGoal::compile(e.scene.universe(), e.goal);
      if (goal.evaluate(e.scene)) {
        last_failure = "goal satisfied in the initial scene";
        continue;
      }
      const Plan full = plan(e.scene, Agent::human, goal, opt.planner);
      Rng rt = r.split("truncate");
      auto tr = truncate(e.scene, full, rt, v2 ? TruncateMode::v2_predictable : TruncateMode::v1_uniform);
      e.trajectory = tr.prefix;
      e.plan_length = full.size();
      e.s_T_digest = state_digest(tr.state);

      QuestContext ctx(tr.state, e.goal, qo);
      const auto& lat = ctx.lattice();
      Rng rq = r.split("quest");
      const int draws = opt.target_level ? opt.level_draws : 1;
      std::int32_t m = -1, u = -1;
      int level = 0;
      for (int d = 0; d < draws; ++d) {
        const auto mi = ctx.sample_subgoal(rq);
        const auto ui = ctx.sample_utterance(mi, rq);
        const int lv = ctx.classify(mi, ui);
        if (opt.target_level && lv != *opt.target_level) continue;
        m = mi;
        u = ui;
        level = lv;
        break;
      }
      if (m < 0) {
        last_failure = "level not reached";
        continue;
      }
      e.subgoal = lat[static_cast<std::size_t>(m)].spec;
      e.utterance = lat[static_cast<std::size_t>(u)].spec;
      e.hardness = level;
      Rng rr = r.split("render");
      e.utterance_text = render_utterance(e.utterance, rr);

      const auto members = lat[static_cast<std::size_t>(m)].set.members(tr.state.universe());
      e.expert_demo = cheapest_grounding_plan(tr.state, members, opt.demo_candidates, opt.planner).actions;
      e.subgoal_annotation = pursued_conjunct(
          e.goal, tr.state, std::vector<GroundedAction>(full.actions.begin() + static_cast<std::ptrdiff_t>(tr.step), full.actions.end()));
      return e;
    } catch (const NoPlanError& ex) {
      last_failure = std::string("planner: ") + ex.what();
    } catch (const TruncationError& ex) {
      last_failure = std::string("truncation: ") + ex.what();
    } catch (const QuestError& ex) {
      last_failure = std::string("quest: ") + ex.what();
    }
  }
  throw GenerationError("retry budget exhausted for seed " + std::to_string(seed) + " (last: " + last_failure + ")");
}

int rederive_hardness(const EpisodeSpec& e, const QuestOptions& o) {
  QuestOptions qo = o;
  qo.bring_me_only = qo.bring_me_only || e.version == Version::v2;
  QuestContext ctx(e.quest_state(), e.goal, qo);
  const auto m = ctx.find(e.subgoal), u = ctx.find(e.utterance);
  if (m < 0 || u < 0) throw QuestError("subgoal or utterance missing from the rebuilt lattice");
  return ctx.classify(m, u);
}

std::vector<std::string> episode_problems(const EpisodeSpec& e, bool check_hardness) {
  std::vector<std::string> out;
  WorldState s_T;
  try {
    s_T = e.quest_state();
  } catch (const std::exception& ex) {
    out.push_back(std::string("trajectory does not replay: ") + ex.what());
    return out;
  }
  if (state_digest(s_T) != e.s_T_digest) out.push_back("s_T digest mismatch");
  const auto am = grounding_set(e.subgoal, s_T);
  const auto au = grounding_set(e.utterance, s_T);
  if (am.empty()) out.push_back("empty A(m)");
  if (!subset_of(am, au)) out.push_back("A(m) is not a subset of A(u)");
  if (literal_meaning(au, am) != 1) out.push_back("literal meaning of (u, m) is not 1");
  if (e.version == Version::v2 && e.subgoal.type != QuestType::bring_me) out.push_back("v2 quest is not bring-me");
  if (e.hardness < 1 || e.hardness > 4) out.push_back("hardness out of range");
  for (const auto& mg : am.members(s_T.universe())) {
    if (holds(s_T, mg)) {
      out.push_back("subgoal already satisfied at s_T");
      break;
    }
  }
  try {
    WorldState s = s_T;
    for (const auto& a : e.expert_demo) {
      if (a.agent != Agent::robot) throw std::logic_error("demo action not by the robot");
      s = apply(s, a);
    }
    bool ok = false;
    for (const auto& mg : am.members(s_T.universe())) ok = ok || holds(s, mg);
    if (!ok) out.push_back("expert demo does not achieve the subgoal");
  } catch (const std::exception& ex) {
    out.push_back(std::string("expert demo does not replay: ") + ex.what());
  }
  if (check_hardness) {
    try {
      if (rederive_hardness(e) != e.hardness) out.push_back("hardness does not re-derive");
    } catch (const std::exception& ex) {
      out.push_back(std::string("hardness re-derivation failed: ") + ex.what());
    }
  }
  return out;
}

void validate(const DatasetOptions& o) {
  double sum = 0.0;
  for (double r : o.split_ratios) {
    if (r < 0) throw std::invalid_argument("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("split ratios must sum to 1");
  if (o.level && (*o.level < 1 || *o.level > 4)) throw std::invalid_argument("level must be in 1..4");
  validate(o.generation);
}

DatasetPlan plan_dataset(const DatasetOptions& o) {
  validate(o);
  DatasetPlan p;
  const Rng root(o.seed);
  for (std::size_t i = 0; i < o.n; ++i) {
    p.seeds.push_back(root.split("episode", i).seed());
    if (o.level) {
      p.levels.emplace_back(*o.level);
    } else if (o.stratify && o.version == Version::v1) {
      p.levels.emplace_back(static_cast<int>(i % 4) + 1);
    } else {
      p.levels.emplace_back(std::nullopt);
    }
  }
  std::vector<std::size_t> order(o.n);
  std::iota(order.begin(), order.end(), 0);
  Rng rs = root.split("split");
  rs.shuffle(order);
  const auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(o.n) * o.split_ratios[0]));
  const auto n_val = std::min(o.n - std::min(o.n, n_train),
                              static_cast<std::size_t>(std::llround(static_cast<double>(o.n) * o.split_ratios[1])));
  p.splits.assign(o.n, "test");
  for (std::size_t k = 0; k < o.n; ++k) {
    if (k < n_train) {
      p.splits[order[k]] = "train";
    } else if (k < n_train + n_val) {
      p.splits[order[k]] = "validation";
    }
  }
  return p;
}

namespace {

EpisodeSpec generate_indexed(const DatasetOptions& o, const DatasetPlan& p, std::size_t i) {
  GenerationOptions g = o.generation;
  g.version = o.version;
  g.target_level = p.levels[i];
  // A seed whose budget runs out is replaced by a derived one.
  std::string failures;
  for (std::uint64_t k = 0; k < 8; ++k) {
    const auto seed = k == 0 ? p.seeds[i] : Rng(p.seeds[i]).split("reseed", k).seed();
    try {
      auto e = generate_episode(seed, g);
      e.split = p.splits[i];
      return e;
    } catch (const GenerationError& ex) {
      failures = ex.what();
    }
  }
  throw GenerationError("episode " + std::to_string(i) + ": " + failures);
}

}  // namespace

std::vector<EpisodeSpec> generate_dataset_serial(const DatasetOptions& o) {
  const auto p = plan_dataset(o);
  std::vector<EpisodeSpec> out;
  out.reserve(o.n);
  for (std::size_t i = 0; i < o.n; ++i) out.push_back(generate_indexed(o, p, i));
  return out;
}

std::vector<EpisodeSpec> generate_dataset_parallel(const DatasetOptions& o, int threads) {
  const auto p = plan_dataset(o);
  std::vector<EpisodeSpec> out(o.n);
  std::vector<std::string> errors(o.n);
  const auto n = static_cast<std::int64_t>(o.n);
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = generate_indexed(o, p, static_cast<std::size_t>(i));
    } catch (const std::exception& ex) {
      errors[static_cast<std::size_t>(i)] = ex.what();
    }
  }
  (void)threads;
  for (const auto& err : errors) {
    if (!err.empty()) throw GenerationError(err);
  }
  return out;
}

std::vector<ManifestRecord> write_dataset(const std::string& out_dir, const std::vector<EpisodeSpec>& episodes) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<ManifestRecord> records;
  std::ofstream manifest(fs::path(out_dir) / "manifest.jsonl", std::ios::binary);
  if (!manifest) throw std::runtime_error("cannot write manifest in " + out_dir);
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "episode_%05zu.json", i);
    save_episode((fs::path(out_dir) / name).string(), episodes[i]);
    ManifestRecord r{name, i, episodes[i].seed, episodes[i].hardness, episodes[i].subgoal.type, episodes[i].split};
    Json j{{"path", r.path},   {"index", r.index}, {"seed", r.seed}, {"level", r.level},
           {"type", quest_type_name(r.type)}, {"split", r.split}};
    manifest << j.dump() << "\n";
    records.push_back(std::move(r));
  }
  if (!manifest) throw std::runtime_error("manifest write failed in " + out_dir);
  return records;
}

std::vector<ManifestRecord> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  std::vector<ManifestRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = Json::parse(line);
    out.push_back(ManifestRecord{j.at("path").get<std::string>(), j.at("index").get<std::size_t>(),
                                 j.at("seed").get<std::uint64_t>(), j.at("level").get<int>(),
                                 parse_quest_type(j.at("type").get<std::string>()), j.at("split").get<std::string>()});
  }
  return out;
}

std::vector<EpisodeSpec> load_dataset(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<EpisodeSpec> out;
  for (const auto& r : read_manifest((fs::path(dir) / "manifest.jsonl").string())) {
    out.push_back(load_episode((fs::path(dir) / r.path).string()));
  }
  return out;
}

Json manifest_summary(const std::vector<ManifestRecord>& records) {
  std::map<std::string, int> levels, types, splits;
  for (const auto& r : records) {
    levels[std::to_string(r.level)]++;
    types[std::string(quest_type_name(r.type))]++;
    splits[r.split]++;
  }
  return Json{{"episodes", records.size()}, {"levels", levels}, {"types", types}, {"splits", splits}};
}

}  // namespace pragworld
