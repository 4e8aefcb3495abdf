#include "pragworld/rsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pragworld {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Normalises log values of the listed pairs in place; returns |sum - 1| of the result.
double normalise(std::vector<double>& logv, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 0.0;
  double mx = kNegInf;
  for (auto p : idx) mx = std::max(mx, logv[p]);
  if (!std::isfinite(mx)) throw RsaError("distribution with no finite mass");
  double total = 0.0;
  for (auto p : idx) total += std::exp(logv[p] - mx);
  const double lz = mx + std::log(total);
  double sum = 0.0;
  for (auto p : idx) {
    logv[p] -= lz;
    sum += std::exp(logv[p]);
  }
  return std::abs(sum - 1.0);
}

}  // namespace

void validate(const RsaParams& p) {
  if (!(p.beta1 > 0 && p.beta2 > 0 && p.alpha > 0 && p.alpha_prime > 0)) {
    throw std::invalid_argument("RSA temperatures and weights must be positive");
  }
  if (p.k < 1) throw std::invalid_argument("RSA depth k must be at least 1");
}

double log_sum_exp(const std::vector<double>& v) {
  double mx = kNegInf;
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double total = 0.0;
  for (double x : v) total += std::exp(x - mx);
  return mx + std::log(total);
}

std::vector<double> boltzmann_log_probs(const std::vector<double>& utility, const std::vector<double>& cost,
                                        const RsaParams& params) {
  if (utility.size() != cost.size()) throw std::invalid_argument("utility/cost size mismatch");
  std::vector<double> w(utility.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = params.beta1 * utility[i] - params.beta2 * cost[i];
  const double lz = log_sum_exp(w);
  for (auto& x : w) x -= lz;
  return w;
}

RsaSolution solve_rsa(const RsaProblem& problem, const RsaParams& params, bool keep_trace) {
  validate(params);
  const auto n_m = problem.log_prior.size();
  const auto n_u = problem.utterance_cost.size();
  if (problem.support.size() != n_u) throw std::invalid_argument("support size differs from utterance count");

  RsaSolution sol;
  sol.n_meanings_ = n_m;
  sol.n_utterances_ = n_u;
  sol.k_ = params.k;
  sol.by_meaning_.resize(n_m);
  sol.by_utterance_.resize(n_u);
  for (std::size_t u = 0; u < n_u; ++u) {
    auto ms = problem.support[u];
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    for (auto m : ms) {
      if (m < 0 || static_cast<std::size_t>(m) >= n_m) throw std::invalid_argument("support meaning out of range");
      if (!std::isfinite(problem.log_prior[static_cast<std::size_t>(m)])) continue;  // zero prior
      const auto p = sol.pair_u_.size();
      sol.pair_u_.push_back(static_cast<std::int32_t>(u));
      sol.pair_m_.push_back(m);
      sol.by_utterance_[u].push_back(p);
      sol.by_meaning_[static_cast<std::size_t>(m)].push_back(p);
    }
  }
  const auto n_pairs = sol.pair_u_.size();

  // L0(m|u) proportional to l(u, m) P(m)
  std::vector<double> log_l(n_pairs), log_s(n_pairs);
  for (std::size_t p = 0; p < n_pairs; ++p) log_l[p] = problem.log_prior[static_cast<std::size_t>(sol.pair_m_[p])];
  for (const auto& idx : sol.by_utterance_) sol.max_norm_err_ = std::max(sol.max_norm_err_, normalise(log_l, idx));
  if (keep_trace) sol.trace_l_.push_back(log_l);

  for (int j = 1; j <= params.k; ++j) {
    // S_j(u|m) proportional to exp(alpha (log L_{j-1}(m|u) - alpha' c(u)))
    for (std::size_t p = 0; p < n_pairs; ++p) {
      const double c = problem.utterance_cost[static_cast<std::size_t>(sol.pair_u_[p])];
      log_s[p] = params.alpha * (log_l[p] - params.alpha_prime * c);
    }
    for (const auto& idx : sol.by_meaning_) sol.max_norm_err_ = std::max(sol.max_norm_err_, normalise(log_s, idx));
    // L_j(m|u) proportional to S_j(u|m) P(m)
    for (std::size_t p = 0; p < n_pairs; ++p) {
      log_l[p] = log_s[p] + problem.log_prior[static_cast<std::size_t>(sol.pair_m_[p])];
    }
    for (const auto& idx : sol.by_utterance_) sol.max_norm_err_ = std::max(sol.max_norm_err_, normalise(log_l, idx));
    if (keep_trace) {
      sol.trace_s_.push_back(log_s);
      sol.trace_l_.push_back(log_l);
    }
  }
  sol.log_l_ = std::move(log_l);
  sol.log_s_ = std::move(log_s);
  return sol;
}

std::vector<std::pair<std::int32_t, double>> RsaSolution::speaker(std::int32_t m) const {
  const auto& idx = by_meaning_.at(static_cast<std::size_t>(m));
  if (idx.empty()) throw RsaError("meaning has no literal support");
  std::vector<std::pair<std::int32_t, double>> out;
  for (auto p : idx) out.emplace_back(pair_u_[p], std::exp(log_s_[p]));
  return out;
}

std::vector<std::pair<std::int32_t, double>> RsaSolution::listener(std::int32_t u) const {
  std::vector<std::pair<std::int32_t, double>> out;
  for (auto p : by_utterance_.at(static_cast<std::size_t>(u))) out.emplace_back(pair_m_[p], std::exp(log_l_[p]));
  return out;
}

std::vector<std::vector<double>> RsaSolution::listener_table(int j) const {
  if (trace_l_.empty()) throw std::logic_error("RSA solved without trace");
  const auto& v = trace_l_.at(static_cast<std::size_t>(j));
  std::vector<std::vector<double>> t(n_utterances_, std::vector<double>(n_meanings_, 0.0));
  for (std::size_t p = 0; p < v.size(); ++p) {
    t[static_cast<std::size_t>(pair_u_[p])][static_cast<std::size_t>(pair_m_[p])] = std::exp(v[p]);
  }
  return t;
}

std::vector<std::vector<double>> RsaSolution::speaker_table(int j) const {
  if (trace_s_.empty()) throw std::logic_error("RSA solved without trace");
  if (j < 1) throw std::out_of_range("speaker levels start at 1");
  const auto& v = trace_s_.at(static_cast<std::size_t>(j - 1));
  std::vector<std::vector<double>> t(n_utterances_, std::vector<double>(n_meanings_, 0.0));
  for (std::size_t p = 0; p < v.size(); ++p) {
    t[static_cast<std::size_t>(pair_u_[p])][static_cast<std::size_t>(pair_m_[p])] = std::exp(v[p]);
  }
  return t;
}

}  // namespace pragworld
