//
// Copyright 2026 The dphs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dphs/selector.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dphs/empirical.h"
#include "dphs/prompting.h"
#include "dphs/proxy_state.h"

namespace dphs {
namespace {

absl::Status CheckInputs(double alpha, double beta, double eps, size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError("alpha must lie in (0, 1)");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1)");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be positive");
  }
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  return absl::OkStatus();
}

int64_t CeilToCount(double x) {
  if (!(x < 9.0e18)) return std::numeric_limits<int64_t>::max();
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(x)));
}

absl::StatusOr<SelectionParams> Finish(SelectionParams p) {
  p.gamma = p.alpha / 4.0;
  p.sigma = p.alpha / 4.0;
  p.sigma_prime = p.sigma / 2.0;
  p.eta = p.beta / 4.0;
  p.eta_prime = p.eta / 4.0;
  if (p.rounds > static_cast<int64_t>(p.n)) {
    return absl::InvalidArgumentError(
        absl::StrCat("round count ", p.rounds, " exceeds n = ", p.n));
  }
  if (p.s < 1) return absl::InvalidArgumentError("s must be positive");
  absl::StatusOr<PrivacyBudget> budget =
      PrivacyBudget::Create(p.eps, p.k, p.rounds);
  if (!budget.ok()) return budget.status();
  p.budget = *budget;
  if (absl::Status s = CheckConstraints(p); !s.ok()) return s;
  return p;
}

}  // namespace

std::vector<ConstraintCheck> EvaluateConstraints(const SelectionParams& p) {
  const double n = static_cast<double>(p.n);
  const double s = static_cast<double>(p.s);
  const double t = static_cast<double>(p.rounds);
  const double k = static_cast<double>(p.k);
  const double eps_exp = p.budget.eps_exp;
  const double eps_svt = p.budget.eps_svt;
  const double delta = 1.0 / s;

  std::vector<ConstraintCheck> out;
  auto add = [&](std::string name, double lhs, double rhs, bool ok) {
    out.push_back({std::move(name), lhs, rhs, ok});
  };
  {
    const double rhs =
        std::log(12.0 * n / p.beta) / (2.0 * p.gamma * p.gamma);
    add("1: s >= log(12n/beta) / (2 gamma^2)", s, rhs, s >= rhs);
  }
  {
    const double rhs = 12.0 * std::log(6.0 * n * t / p.beta) / p.eta;
    add("2: k >= 12 log(6nT/beta) / eta", k, rhs, k >= rhs);
  }
  {
    const double rhs =
        64.0 / (p.sigma * eps_svt) * std::log(12.0 * n * t / p.beta);
    add("3: s >= 64 log(12nT/beta) / (sigma eps_svt)", s, rhs, s >= rhs);
  }
  {
    const double rhs = 8.0 * delta / eps_exp * std::log(4.0 * n / p.beta);
    add("4: alpha >= (8 Delta / eps_exp) log(4n/beta)", p.alpha, rhs,
        p.alpha >= rhs);
  }
  {
    const double lhs = std::exp(-eps_exp * p.sigma_prime / (2.0 * delta));
    add("5: exp(-eps_exp sigma' / (2 Delta)) < 1/2", lhs, 0.5, lhs < 0.5);
  }
  {
    const double bound = (std::log(n) + eps_exp / (2.0 * delta)) /
                         std::log1p(p.eta_prime / 2.0);
    const double rhs = std::min(n, bound);
    add("6: T >= min(n, (log n + eps_exp / (2 Delta)) / log(1 + eta'/2))", t,
        rhs, t >= rhs);
  }
  return out;
}

absl::Status CheckConstraints(const SelectionParams& params) {
  for (const ConstraintCheck& c : EvaluateConstraints(params)) {
    if (!c.satisfied) {
      return absl::FailedPreconditionError(
          absl::StrCat("parameter constraint ", c.name, " violated: lhs = ",
                       c.lhs, ", rhs = ", c.rhs));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<SelectionParams> DeriveParams(double alpha, double beta,
                                             double eps, size_t n,
                                             ConstantPreset preset,
                                             DeskFactors desk) {
  if (absl::Status s = CheckInputs(alpha, beta, eps, n); !s.ok()) return s;
  if (preset == ConstantPreset::kPaper) desk = DeskFactors{};
  if (!(desk.c_s > 0.0) || !(desk.c_t > 0.0) || !(desk.c_k > 0.0)) {
    return absl::InvalidArgumentError("DESK factors must be positive");
  }
  SelectionParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.eps = eps;
  p.n = n;
  p.preset = preset;
  p.desk = desk;
  const double log_term = std::log(6.0 * static_cast<double>(n) / beta);
  p.s = CeilToCount(kSampleConstant / desk.c_s /
                    (beta * beta * alpha * alpha * eps) * log_term * log_term *
                    log_term);
  p.rounds = std::min<int64_t>(
      CeilToCount(kRoundConstant / desk.c_t / (beta * alpha) * log_term),
      static_cast<int64_t>(n));
  p.k = CeilToCount(kListConstant / desk.c_k / beta * log_term);
  return Finish(p);
}

absl::StatusOr<SelectionParams> ParamsWithCounts(double alpha, double beta,
                                                 double eps, size_t n,
                                                 int64_t s, int64_t rounds,
                                                 int64_t k) {
  if (absl::Status st = CheckInputs(alpha, beta, eps, n); !st.ok()) return st;
  if (s < 1 || rounds < 1 || k < 1) {
    return absl::InvalidArgumentError("s, T and k must be positive");
  }
  SelectionParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.eps = eps;
  p.n = n;
  p.preset = ConstantPreset::kDesk;
  p.s = s;
  p.rounds = rounds;
  p.k = k;
  return Finish(p);
}

double RoundBound(const SelectionParams& params, double opt) {
  const double n = static_cast<double>(params.n);
  const double rate =
      params.budget.eps_exp * static_cast<double>(params.s) / 2.0;
  const double bound =
      (std::log(n) + rate * opt) / std::log1p(params.eta_prime / 2.0);
  return std::min(n, bound);
}

nlohmann::json SelectionTrace::ToJson() const {
  nlohmann::json j;
  j["rounds_executed"] = rounds_executed;
  j["output_index"] = output_index;
  j["halted_early"] = halted_early;
  j["final_log_z"] = final_log_z;
  j["final_proxy_hash"] = final_proxy_hash;
  j["prompting_set"] = prompting_set;
  j["semidistance_queries"] = semidistance_queries;
  nlohmann::json rs = nlohmann::json::array();
  for (const RoundRecord& r : rounds) {
    nlohmann::json jr;
    jr["chosen"] = r.chosen ? nlohmann::json(*r.chosen) : nlohmann::json();
    jr["proxy_hash"] = r.proxy_hash;
    jr["log_z"] = r.log_z;
    jr["candidates_visited"] = r.candidates_visited;
    rs.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rs);
  return j;
}

absl::StatusOr<SelectionResult> SelectHypothesisOnDataset(
    const HypothesisClass& hypotheses, const Dataset& dataset,
    const SelectionParams& params, Rng& rng) {
  const size_t n = hypotheses.size();
  if (params.n != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "params were derived for n = ", params.n, ", class has ", n));
  }
  if (dataset.empty()) {
    return absl::InvalidArgumentError("selection needs a nonempty dataset");
  }
  absl::StatusOr<SemiDistanceOracle> oracle =
      SemiDistanceOracle::Create(hypotheses, dataset);
  if (!oracle.ok()) return oracle.status();

  const double delta = 1.0 / static_cast<double>(dataset.size());
  const PromptingSearch search{.eps = params.budget.eps_svt,
                               .delta = 2.0 * delta,
                               .lift_bound = params.sigma,
                               .eta = params.eta};
  ProxyState state(n);
  SelectionTrace trace;

  for (int64_t t = 0; t < params.rounds; ++t) {
    absl::StatusOr<ExpMechDistribution> q =
        BuildExpMech(state, params.budget.eps_exp, delta);
    if (!q.ok()) return q.status();
    RoundRecord record;
    record.proxy_hash = state.Hash();
    record.log_z = q->log_normalizer();
    record.proxies.assign(state.proxies().begin(), state.proxies().end());
    record.sample_list = DrawK(*q, rng, static_cast<size_t>(params.k));

    const std::vector<size_t> candidates = state.RemainingCandidates();
    absl::StatusOr<SvtOutcome> found = FindPromptingHypothesis(
        search, candidates, record.sample_list, *oracle, state, rng);
    if (!found.ok()) return found.status();
    record.chosen = found->index;
    record.candidates_visited = found->candidates_visited;
    trace.rounds.push_back(std::move(record));
    ++trace.rounds_executed;

    if (!found->index) {
      trace.halted_early = true;
      break;
    }
    if (absl::Status s = state.AddPromptingHypothesis(*found->index, *oracle);
        !s.ok()) {
      return s;
    }
  }

  absl::StatusOr<ExpMechDistribution> q =
      BuildExpMech(state, params.budget.eps_exp, delta);
  if (!q.ok()) return q.status();
  trace.final_log_z = q->log_normalizer();
  trace.final_proxy_hash = state.Hash();
  trace.output_index = q->Draw(rng);
  trace.prompting_set.assign(state.prompting_set().begin(),
                             state.prompting_set().end());
  trace.semidistance_queries = oracle->query_count();
  return SelectionResult{trace.output_index, std::move(trace)};
}

absl::StatusOr<SelectionResult> SelectHypothesis(
    const HypothesisClass& hypotheses, const DiscreteDistribution& p,
    const SelectionParams& params, Rng& rng) {
  if (p.domain_size() != hypotheses.domain_size()) {
    return absl::InvalidArgumentError(
        "data distribution and hypotheses have different domains");
  }
  const Dataset dataset = Sample(p, rng, static_cast<size_t>(params.s));
  return SelectHypothesisOnDataset(hypotheses, dataset, params, rng);
}

}  // namespace dphs
