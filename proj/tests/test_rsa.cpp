#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pragworld/quest.hpp"
#include "pragworld/rsa.hpp"
#include "rsa_fixture_values.hpp"

using namespace pragworld;
using namespace oracles;

TEST_CASE("solve_rsa reproduces the brute-force fixture at every level") {
  const auto sol = solve_rsa(rsa_fixture_problem(), RsaParams{}, true);
  REQUIRE(sol.levels() == 10);
  for (int j = 0; j <= 10; ++j) {
    const auto l = sol.listener_table(j);
    for (int u = 0; u < 3; ++u) {
      for (int m = 0; m < 3; ++m) CHECK(std::abs(l[u][m] - rsa_fixture::kListener[j][u][m]) < 1e-9);
    }
  }
  for (int j = 1; j <= 10; ++j) {
    const auto s = sol.speaker_table(j);
    for (int u = 0; u < 3; ++u) {
      for (int m = 0; m < 3; ++m) {
        CHECK(std::abs(s[u][m] - rsa_fixture::kSpeaker[j][u][m]) < 1e-9);
      }
    }
  }
  CHECK(sol.max_normalisation_error() < 1e-9);
}

TEST_CASE("rsa_speaker over grounding sets matches the fixture for k = 1..10") {
  const auto scene = rsa_scene();
  const auto& s = scene.s;
  const auto& meanings = scene.meanings;
  const auto& utterances = scene.utterances;
  for (int u = 0; u < 3; ++u) {
    CHECK(quest_cost(utterances[u]) == rsa_fixture::kCost[u]);
    for (int m = 0; m < 3; ++m) CHECK(literal_meaning(utterances[u], meanings[m], s) == rsa_fixture::kLiteral[u][m]);
  }
  const std::vector<double> prior(std::begin(rsa_fixture::kPrior), std::end(rsa_fixture::kPrior));
  for (int j = 1; j <= 10; ++j) {
    RsaParams p;
    p.k = j;
    for (int m = 0; m < 3; ++m) {
      const auto sp = rsa_speaker(s, meanings[m], meanings, prior, utterances, p);
      for (int u = 0; u < 3; ++u) CHECK(std::abs(sp[u] - rsa_fixture::kSpeaker[j][u][m]) < 1e-9);
    }
  }
}

TEST_CASE("speaker odds follow the cost difference for one meaning") {
  RsaProblem p;
  p.log_prior = {0.0};
  p.utterance_cost = {0.0, 2.0};
  p.support = {{0}, {0}};
  const auto sol = solve_rsa(p, RsaParams{});
  const auto sp = sol.speaker(0);
  REQUIRE(sp.size() == 2);
  CHECK(sp[0].second / sp[1].second == doctest::Approx(std::exp(4.0)));
}

TEST_CASE("Boltzmann prior uses beta1 times utility minus beta2 times cost") {
  const auto lp = boltzmann_log_probs({5.0, 2.0}, {1.0, 1.0}, RsaParams{});
  CHECK(lp[0] - lp[1] == doctest::Approx(9.0));
  CHECK(std::exp(lp[0]) + std::exp(lp[1]) == doctest::Approx(1.0));
  const auto lc = boltzmann_log_probs({1.0, 1.0}, {0.0, 2.0}, RsaParams{});
  CHECK(lc[0] - lc[1] == doctest::Approx(3.0));
}

TEST_CASE("log_sum_exp is stable") {
  CHECK(log_sum_exp({1000.0, 1000.0}) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_sum_exp({-INFINITY, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("invalid RSA inputs are rejected") {
  RsaParams bad;
  bad.k = 0;
  CHECK_THROWS(validate(bad));
  const auto sol = solve_rsa(rsa_fixture_problem(), RsaParams{});
  RsaProblem lonely = rsa_fixture_problem();
  lonely.log_prior.push_back(0.0);  // a meaning no utterance covers
  const auto s2 = solve_rsa(lonely, RsaParams{});
  CHECK_THROWS_AS(s2.speaker(3), RsaError);
  CHECK(sol.listener(2).size() == 1);
}
