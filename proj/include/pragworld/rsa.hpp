// Iterated rational speech acts over a sparse literal relation.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pragworld {

struct RsaParams {
  double beta1 = 3.0;  // subgoal utility
  double beta2 = 1.5;  // subgoal cost
  double alpha = 2.0;
  double alpha_prime = 1.0;
  int k = 10;
};

void validate(const RsaParams& p);

// Meanings and utterances are dense indices. `support[u]` lists the meanings m with
// literal value 1 for utterance u.
struct RsaProblem {
  std::vector<double> log_prior;       // per meaning; need not be normalised
  std::vector<double> utterance_cost;  // per utterance
  std::vector<std::vector<std::int32_t>> support;
};

class RsaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RsaSolution {
 public:
  // Log probabilities over the nonzero (u, m) pairs.
  std::size_t pair_count() const { return pair_u_.size(); }
  std::int32_t pair_utterance(std::size_t p) const { return pair_u_[p]; }
  std::int32_t pair_meaning(std::size_t p) const { return pair_m_[p]; }

  // Final speaker P_Sk(.|m) as (utterance, probability); throws RsaError when m has no support.
  std::vector<std::pair<std::int32_t, double>> speaker(std::int32_t m) const;
  // Final listener P_Lk(.|u) as (meaning, probability).
  std::vector<std::pair<std::int32_t, double>> listener(std::int32_t u) const;

  // Dense tables for tracing: level j of the listener (j = 0..k) or speaker (j = 1..k),
  // indexed [u][m]. Only available when solved with keep_trace.
  std::vector<std::vector<double>> listener_table(int j) const;
  std::vector<std::vector<double>> speaker_table(int j) const;
  int levels() const { return k_; }

  // Largest |sum - 1| over every normalised distribution computed.
  double max_normalisation_error() const { return max_norm_err_; }

  friend RsaSolution solve_rsa(const RsaProblem& problem, const RsaParams& params, bool keep_trace);

 private:
  std::vector<std::int32_t> pair_u_, pair_m_;
  std::vector<std::vector<std::size_t>> by_meaning_, by_utterance_;
  std::vector<double> log_l_, log_s_;  // final L_k and S_k
  std::vector<std::vector<double>> trace_l_, trace_s_;
  std::size_t n_meanings_ = 0, n_utterances_ = 0;
  int k_ = 0;
  double max_norm_err_ = 0.0;
};

RsaSolution solve_rsa(const RsaProblem& problem, const RsaParams& params, bool keep_trace = false);

// Boltzmann log-weights beta1 * utility - beta2 * cost, normalised to log probabilities.
std::vector<double> boltzmann_log_probs(const std::vector<double>& utility, const std::vector<double>& cost,
                                        const RsaParams& params);

double log_sum_exp(const std::vector<double>& v);

}  // namespace pragworld
