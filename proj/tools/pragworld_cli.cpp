// pragworld: generate corpora, play episodes, evaluate baselines and audit statistics.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "pragworld/agents.hpp"
#include "pragworld/stats.hpp"

using namespace pragworld;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitGeneration = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusFlags {
  std::string data;  // dataset directory; generated on the fly when empty
  std::uint64_t seed = 0;
  std::string version = "v1";
  std::size_t episodes = 100;
  std::optional<int> level;
  bool no_stratify = false;
  int threads = 0;
};

void add_corpus_flags(CLI::App* sub, CorpusFlags& f, bool with_data) {
  if (with_data) sub->add_option("--data", f.data, "Dataset directory holding manifest.jsonl");
  sub->add_option("--seed", f.seed, "Root seed");
  sub->add_option("--version", f.version, "Dataset version")->check(CLI::IsMember({"v1", "v2"}));
  sub->add_option("--episodes", f.episodes, "Number of episodes")->check(CLI::PositiveNumber);
  sub->add_option("--level", f.level, "Generate every episode at this hardness level")->check(CLI::Range(1, 4));
  sub->add_flag("--no-stratify", f.no_stratify, "Do not balance v1 levels");
  sub->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

DatasetOptions dataset_options(const CorpusFlags& f) {
  DatasetOptions o;
  o.n = f.episodes;
  o.seed = f.seed;
  o.version = parse_version(f.version);
  o.generation.version = o.version;
  o.level = f.level;
  o.stratify = !f.no_stratify && o.version == Version::v1 && !f.level;
  validate(o);
  return o;
}

std::vector<EpisodeSpec> corpus(const CorpusFlags& f) {
  if (!f.data.empty()) return load_dataset(f.data);
  return generate_dataset_parallel(dataset_options(f), f.threads);
}

int cmd_generate(const CorpusFlags& f, const std::string& out) {
  if (out.empty()) throw UsageError("generate needs --out");
  const auto episodes = generate_dataset_parallel(dataset_options(f), f.threads);
  const auto records = write_dataset(out, episodes);
  std::cout << manifest_summary(records).dump(2) << "\n";
  return kExitOk;
}

// Commits the robot to an object: a give, a put or a state change.
bool is_commitment(Schema s) {
  switch (s) {
    case Schema::move:
    case Schema::pick_up_at_loc:
    case Schema::pick_up_from_rec_at_loc:
    case Schema::open_loc:
    case Schema::close_loc:
    case Schema::open_rec_at_loc:
    case Schema::close_rec_at_loc:
    case Schema::take_from_human:
    case Schema::examine:
    case Schema::inventory: return false;
    default: return true;
  }
}

int cmd_play(const std::string& path, const std::string& mode, bool one_trial) {
  if (path.empty()) throw UsageError("play needs an episode path");
  Session session = Session::open(path, parse_observability(mode));
  std::cout << session.reset() << "\n";
  std::string line;
  bool quit = false;
  while (!session.done()) {
    std::cout << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::cout << line << "\n";
    if (line == "quit" || line == "exit") {
      quit = true;
      break;
    }
    if (line.empty()) continue;
    const auto parsed = parse_command(session.state(), line);
    const auto r = session.step(line);
    std::cout << r.observation << "\n";
    if (one_trial && !session.done() && parsed.kind == ParsedCommand::Kind::action && is_commitment(parsed.action.schema)) {
      std::cout << "One trial used.\n";
      break;
    }
  }
  const char* outcome = session.success() ? "success" : (quit ? "quit" : "failure");
  std::printf("\nResult: %s. Score %.1f after %d moves.\n", outcome, session.score(), session.steps_taken());
  return kExitOk;
}

int cmd_eval(const CorpusFlags& f, const std::string& agent, const std::string& mode, bool json) {
  const auto kind = parse_agent_kind(agent);
  const auto obs = parse_observability(mode);
  if (kind == AgentKind::heuristic && obs != Observability::full) {
    throw UsageError("the heuristic agent needs --mode full");
  }
  const auto episodes = corpus(f);
  const auto report = evaluate(kind, episodes, obs, f.seed, f.threads);
  std::cout << (json ? report.to_json().dump(2) + "\n" : report.table());
  return kExitOk;
}

int cmd_stats(const CorpusFlags& f, bool json) {
  const auto stats = summarize(measure_all(corpus(f), f.threads));
  std::cout << (json ? stats.to_json().dump(2) + "\n" : stats.report());
  return kExitOk;
}

int cmd_inspect(const std::string& path, bool lexicon, bool demo) {
  if (lexicon) {
    for (const auto& w : vocabulary()) std::cout << w << "\n";
    return kExitOk;
  }
  if (path.empty()) throw UsageError("inspect needs an episode path or --lexicon");
  const auto e = load_episode(path);
  const auto& u = e.scene.universe();
  if (demo) {
    for (const auto& a : e.expert_demo) std::cout << render_command(u, a) << "\n";
    return kExitOk;
  }
  std::cout << "seed " << e.seed << " (" << version_name(e.version) << ", " << e.split << ")\n"
            << "goal " << e.goal.template_name << "\n"
            << "trajectory " << e.trajectory.size() << " of " << e.plan_length << " actions\n"
            << "meaning " << describe(e.subgoal) << "\n"
            << "utterance " << describe(e.utterance) << "\n"
            << "text \"" << e.utterance_text << "\"\n"
            << "level " << e.hardness << "\n"
            << "subgoal " << e.subgoal_annotation << "\n"
            << "demo";
  for (const auto& a : e.expert_demo) std::cout << " [" << render_command(u, a) << "]";
  std::cout << "\n";
  const auto problems = episode_problems(e, false);
  for (const auto& p : problems) std::cout << "problem: " << p << "\n";
  return problems.empty() ? kExitOk : kExitGeneration;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pragmatic instruction-following episodes in a household text world"};
  app.require_subcommand(1);

  CorpusFlags gen_flags, eval_flags, stats_flags;
  std::string out_dir, episode_path, mode = "full", agent = "heuristic", inspect_path;
  bool one_trial = false, json = false, lexicon = false, demo = false;

  auto* gen = app.add_subcommand("generate", "Generate a dataset directory");
  add_corpus_flags(gen, gen_flags, false);
  gen->add_option("--out", out_dir, "Output directory");

  auto* play = app.add_subcommand("play", "Play one episode on stdin/stdout");
  play->add_option("episode", episode_path, "Episode JSON file");
  play->add_option("--mode", mode, "Observability")->check(CLI::IsMember({"full", "partial"}));
  play->add_flag("--one-trial", one_trial, "End after the first give, put or state change");

  auto* ev = app.add_subcommand("eval", "Evaluate a baseline agent");
  add_corpus_flags(ev, eval_flags, true);
  ev->add_option("--agent", agent, "Agent")->check(CLI::IsMember({"random", "heuristic"}));
  ev->add_option("--mode", mode, "Observability")->check(CLI::IsMember({"full", "partial"}));
  ev->add_flag("--json", json, "Print JSON");

  auto* st = app.add_subcommand("stats", "Corpus statistics");
  add_corpus_flags(st, stats_flags, true);
  st->add_flag("--json", json, "Print JSON");

  auto* ins = app.add_subcommand("inspect", "Summarize an episode file or dump the lexicon");
  ins->add_option("episode", inspect_path, "Episode JSON file");
  ins->add_flag("--lexicon", lexicon, "Print the vocabulary, one word per line");
  ins->add_flag("--demo", demo, "Print the expert demonstration as commands");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(gen_flags, out_dir);
    if (*play) return cmd_play(episode_path, mode, one_trial);
    if (*ev) return cmd_eval(eval_flags, agent, mode, json);
    if (*st) return cmd_stats(stats_flags, json);
    if (*ins) return cmd_inspect(inspect_path, lexicon, demo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneration;
  }
  return kExitUsage;
}
