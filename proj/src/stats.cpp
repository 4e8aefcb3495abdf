#include "pragworld/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "pragworld/env.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pragworld {

EpisodeMeasures measure(const EpisodeSpec& e) {
  EpisodeMeasures m;
  const auto& u = e.scene.universe();
  m.objects = u.size();
  std::set<CategoryId> cats;
  for (const auto& o : u.objects()) cats.insert(o.category);
  m.categories = cats.size();
  m.omega = e.trajectory.size();
  m.plan = e.plan_length;
  m.demo = e.expert_demo.size();
  m.tokens_full = count_tokens(Session(e, Observability::full).scene_observation());
  m.tokens_partial = count_tokens(Session(e, Observability::partial).scene_observation());
  m.level = e.hardness;
  m.type = e.subgoal.type;
  m.split = e.split;
  return m;
}

std::vector<EpisodeMeasures> measure_all(const std::vector<EpisodeSpec>& episodes, int threads) {
  std::vector<EpisodeMeasures> out(episodes.size());
  const auto n = static_cast<std::int64_t>(episodes.size());
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
#endif
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = measure(episodes[static_cast<std::size_t>(i)]);
  (void)threads;
  return out;
}

CorpusStats summarize(const std::vector<EpisodeMeasures>& ms) {
  CorpusStats s;
  s.episodes = ms.size();
  if (ms.empty()) return s;
  for (const auto& m : ms) {
    s.mean_objects += static_cast<double>(m.objects);
    s.mean_categories += static_cast<double>(m.categories);
    s.mean_omega += static_cast<double>(m.omega);
    s.mean_plan += static_cast<double>(m.plan);
    s.mean_demo += static_cast<double>(m.demo);
    s.mean_tokens_full += static_cast<double>(m.tokens_full);
    s.mean_tokens_partial += static_cast<double>(m.tokens_partial);
    ++s.objects_hist[m.objects];
    ++s.omega_hist[m.omega];
    ++s.plan_hist[m.plan];
    ++s.demo_hist[m.demo];
    ++s.tokens_full_hist[m.tokens_full / 50 * 50];
    ++s.tokens_partial_hist[m.tokens_partial / 10 * 10];
    ++s.level_type[m.level][std::string(quest_type_name(m.type))];
    ++s.splits[m.split];
  }
  const auto n = static_cast<double>(ms.size());
  for (auto* v : {&s.mean_objects, &s.mean_categories, &s.mean_omega, &s.mean_plan, &s.mean_demo,
                  &s.mean_tokens_full, &s.mean_tokens_partial}) {
    *v /= n;
  }
  // Smallest length among the most frequent ones.
  s.demo_mode = std::max_element(s.demo_hist.begin(), s.demo_hist.end(), [](const auto& a, const auto& b) {
                  return a.second < b.second;
                })->first;
  return s;
}

namespace {

Json hist_json(const std::map<std::size_t, std::size_t>& h) {
  Json j = Json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

std::string hist_text(const std::string& title, const std::map<std::size_t, std::size_t>& h, std::size_t total) {
  std::string out = title + "\n";
  std::size_t peak = 1;
  for (const auto& [k, v] : h) peak = std::max(peak, v);
  for (const auto& [k, v] : h) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  %6zu %6zu %5.1f%% ", k, v, 100.0 * static_cast<double>(v) / static_cast<double>(total));
    out += buf + std::string(v * 40 / peak, '#') + "\n";
  }
  return out;
}

}  // namespace

Json CorpusStats::to_json() const {
  Json lt = Json::object();
  for (const auto& [lv, types] : level_type) {
    Json t = Json::object();
    for (const auto& [name, c] : types) t[name] = c;
    lt[std::to_string(lv)] = t;
  }
  return Json{{"episodes", episodes},
              {"mean_objects", mean_objects},
              {"mean_categories", mean_categories},
              {"mean_omega_length", mean_omega},
              {"mean_plan_length", mean_plan},
              {"mean_demo_length", mean_demo},
              {"demo_length_mode", demo_mode},
              {"mean_tokens_full", mean_tokens_full},
              {"mean_tokens_partial", mean_tokens_partial},
              {"histograms",
               {{"objects", hist_json(objects_hist)},
                {"omega_length", hist_json(omega_hist)},
                {"plan_length", hist_json(plan_hist)},
                {"demo_length", hist_json(demo_hist)},
                {"tokens_full", hist_json(tokens_full_hist)},
                {"tokens_partial", hist_json(tokens_partial_hist)}}},
              {"level_type", lt},
              {"splits", splits}};
}

std::string CorpusStats::report() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "episodes %zu\nmean objects %.1f, categories %.1f\nmean trajectory length %.2f, full plan %.2f\n"
                "mean demo length %.2f (mode %zu)\nmean observation tokens: full %.1f, partial %.1f\n\n",
                episodes, mean_objects, mean_categories, mean_omega, mean_plan, mean_demo, demo_mode,
                mean_tokens_full, mean_tokens_partial);
  std::string out = buf;
  out += hist_text("scene objects", objects_hist, episodes);
  out += hist_text("trajectory length", omega_hist, episodes);
  out += hist_text("full plan length", plan_hist, episodes);
  out += hist_text("demo length", demo_hist, episodes);
  out += hist_text("full observation tokens (bucket 50)", tokens_full_hist, episodes);
  out += hist_text("partial observation tokens (bucket 10)", tokens_partial_hist, episodes);

  const char* names[] = {"bring-me", "move-to", "change-state"};
  out += "\nLevel   | bring-me | move-to | change-state | total\n";
  std::map<std::string, std::size_t> col;
  for (const auto& [lv, types] : level_type) {
    std::size_t row = 0;
    std::snprintf(buf, sizeof buf, "Level %d", lv);
    std::string line = buf;
    for (const char* n : names) {
      const auto it = types.find(n);
      const std::size_t c = it == types.end() ? 0 : it->second;
      col[n] += c;
      row += c;
      std::snprintf(buf, sizeof buf, " | %zu", c);
      line += buf;
    }
    std::snprintf(buf, sizeof buf, " | %zu\n", row);
    out += line + buf;
  }
  std::snprintf(buf, sizeof buf, "Total   | %zu | %zu | %zu | %zu\n", col["bring-me"], col["move-to"], col["change-state"],
                episodes);
  out += buf;
  out += "\nsplits:";
  for (const auto& [k, v] : splits) out += " " + k + "=" + std::to_string(v);
  return out + "\n";
}

}  // namespace pragworld
