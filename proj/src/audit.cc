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

#include "dphs/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dphs/dp_mech.h"
#include "dphs/empirical.h"
#include "dphs/prompting.h"
#include "dphs/proxy_state.h"

namespace dphs {
namespace {

absl::Status CheckNeighborGuard(size_t s, size_t d) {
  if (d == 0) return absl::InvalidArgumentError("domain must be nonempty");
  if (s > kNeighborGuard / d) {
    return absl::OutOfRangeError(absl::StrCat(
        "s * d = ", s, " * ", d, " exceeds the enumeration guard ",
        kNeighborGuard));
  }
  return absl::OkStatus();
}

// Index of a dataset in EnumerateDatasets order.
size_t DatasetIndex(std::span<const uint32_t> samples, size_t d) {
  size_t index = 0;
  for (uint32_t x : samples) index = index * d + x;
  return index;
}

}  // namespace

absl::StatusOr<std::vector<Dataset>> EnumerateNeighbors(const Dataset& dataset,
                                                        size_t domain_size) {
  if (dataset.domain_size() != domain_size) {
    return absl::InvalidArgumentError("dataset domain does not match");
  }
  if (absl::Status s = CheckNeighborGuard(dataset.size(), domain_size);
      !s.ok()) {
    return s;
  }
  std::vector<Dataset> out;
  out.reserve(dataset.size() * (domain_size - 1));
  for (size_t pos = 0; pos < dataset.size(); ++pos) {
    for (uint32_t v = 0; v < domain_size; ++v) {
      if (v != dataset[pos]) out.push_back(dataset.WithSubstitution(pos, v));
    }
  }
  return out;
}

absl::StatusOr<std::vector<Dataset>> EnumerateDatasets(size_t s,
                                                       size_t domain_size) {
  if (domain_size == 0) {
    return absl::InvalidArgumentError("domain must be nonempty");
  }
  size_t count = 1;
  for (size_t i = 0; i < s; ++i) {
    if (count > kDatasetGuard / domain_size) {
      return absl::OutOfRangeError("d^s exceeds the dataset enumeration guard");
    }
    count *= domain_size;
  }
  std::vector<Dataset> out;
  out.reserve(count);
  std::vector<uint32_t> digits(s, 0);
  for (size_t c = 0; c < count; ++c) {
    size_t rest = c;
    for (size_t pos = s; pos-- > 0;) {
      digits[pos] = static_cast<uint32_t>(rest % domain_size);
      rest /= domain_size;
    }
    absl::StatusOr<Dataset> ds = Dataset::Create(digits, domain_size);
    if (!ds.ok()) return ds.status();
    out.push_back(*std::move(ds));
  }
  return out;
}

absl::StatusOr<double> MaxSensitivity(const DatasetStatistic& f,
                                      const Dataset& dataset,
                                      size_t domain_size) {
  absl::StatusOr<std::vector<Dataset>> neighbors =
      EnumerateNeighbors(dataset, domain_size);
  if (!neighbors.ok()) return neighbors.status();
  absl::StatusOr<double> base = f(dataset);
  if (!base.ok()) return base.status();
  double worst = 0.0;
  for (const Dataset& other : *neighbors) {
    absl::StatusOr<double> v = f(other);
    if (!v.ok()) return v.status();
    worst = std::max(worst, std::fabs(*v - *base));
  }
  return worst;
}

absl::StatusOr<OptResult> ExactOpt(const HypothesisClass& hypotheses,
                                   const DiscreteDistribution& p) {
  if (hypotheses.domain_size() != p.domain_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain sizes differ: class ", hypotheses.domain_size(),
                     ", distribution ", p.domain_size()));
  }
  OptResult best{std::numeric_limits<double>::infinity(), 0};
  for (size_t j = 0; j < hypotheses.size(); ++j) {
    absl::StatusOr<double> tv = TvDistance(hypotheses.hypothesis(j), p);
    if (!tv.ok()) return tv.status();
    if (*tv < best.opt) best = {*tv, j};
  }
  return best;
}

absl::StatusOr<SensitivityReport> AuditSensitivityExhaustive(
    size_t s, size_t domain_size, const VectorStatistic& f, double bound) {
  if (absl::Status st = CheckNeighborGuard(s, domain_size); !st.ok()) {
    return st;
  }
  absl::StatusOr<std::vector<Dataset>> all = EnumerateDatasets(s, domain_size);
  if (!all.ok()) return all.status();
  std::vector<std::vector<double>> values;
  values.reserve(all->size());
  for (const Dataset& ds : *all) {
    absl::StatusOr<std::vector<double>> v = f(ds);
    if (!v.ok()) return v.status();
    if (!values.empty() && v->size() != values.front().size()) {
      return absl::InvalidArgumentError("statistic length varies by dataset");
    }
    values.push_back(*std::move(v));
  }
  SensitivityReport report;
  std::vector<uint32_t> samples;
  for (size_t a = 0; a < all->size(); ++a) {
    const Dataset& ds = (*all)[a];
    samples.assign(ds.samples().begin(), ds.samples().end());
    for (size_t pos = 0; pos < s; ++pos) {
      const uint32_t original = samples[pos];
      for (uint32_t x = 0; x < domain_size; ++x) {
        if (x == original) continue;
        samples[pos] = x;
        const std::vector<double>& lhs = values[a];
        const std::vector<double>& rhs = values[DatasetIndex(samples, domain_size)];
        ++report.pairs;
        for (size_t c = 0; c < lhs.size(); ++c) {
          const double change = std::fabs(lhs[c] - rhs[c]);
          ++report.comparisons;
          report.max_change = std::max(report.max_change, change);
          if (change > bound + kAuditSlack) ++report.violations;
        }
      }
      samples[pos] = original;
    }
  }
  return report;
}

absl::StatusOr<RatioReport> AuditExpMechRatio(size_t s, size_t domain_size,
                                              const VectorStatistic& distances,
                                              double eps0, double log_slack) {
  if (s == 0) return absl::InvalidArgumentError("s must be positive");
  const double sensitivity = 1.0 / static_cast<double>(s);
  // Log-probabilities of each outcome, per dataset.
  VectorStatistic log_probs =
      [&](const Dataset& ds) -> absl::StatusOr<std::vector<double>> {
    absl::StatusOr<std::vector<double>> d = distances(ds);
    if (!d.ok()) return d.status();
    absl::StatusOr<ExpMechDistribution> q =
        BuildExpMech(*d, eps0, sensitivity);
    if (!q.ok()) return q.status();
    const double rate = eps0 / (2.0 * sensitivity);
    std::vector<double> out(d->size());
    for (size_t j = 0; j < d->size(); ++j) {
      out[j] = -rate * (*d)[j] - q->log_normalizer();
    }
    return out;
  };
  absl::StatusOr<SensitivityReport> r = AuditSensitivityExhaustive(
      s, domain_size, log_probs, eps0 + log_slack - kAuditSlack);
  if (!r.ok()) return r.status();
  return RatioReport{r->pairs, r->violations, r->max_change};
}

absl::StatusOr<TraceAudit> AuditTrace(const HypothesisClass& hypotheses,
                                      const Dataset& dataset,
                                      const SelectionParams& params,
                                      const SelectionTrace& trace) {
  absl::StatusOr<SemiDistanceOracle> oracle =
      SemiDistanceOracle::Create(hypotheses, dataset);
  if (!oracle.ok()) return oracle.status();
  const double delta = 1.0 / static_cast<double>(dataset.size());
  const double z_bound = std::log1p(-params.eta_prime / 2.0);

  TraceAudit audit;
  audit.max_log_z_ratio = -std::numeric_limits<double>::infinity();
  const std::span<const size_t> added = trace.prompting_set;
  for (size_t t = 0; t < trace.rounds.size(); ++t) {
    const RoundRecord& record = trace.rounds[t];
    if (!record.chosen) continue;
    if (t >= added.size()) {
      return absl::InvalidArgumentError("trace prompting set is too short");
    }
    ++audit.added_rounds;
    absl::StatusOr<ProxyState> state =
        ProxyState::FromPromptingSet(added.first(t), *oracle);
    if (!state.ok()) return state.status();
    if (state->Hash() != record.proxy_hash) audit.hashes_consistent = false;
    absl::StatusOr<ExpMechDistribution> q =
        BuildExpMech(*state, params.budget.eps_exp, delta);
    if (!q.ok()) return q.status();
    absl::StatusOr<double> prob = PromptingProbability(
        *state, *oracle, *q, *record.chosen, params.sigma_prime);
    if (!prob.ok()) return prob.status();
    if (*prob < params.eta_prime) {
      audit.all_prompting = false;
      continue;
    }
    ++audit.prompting_rounds;
    const double next_log_z = t + 1 < trace.rounds.size()
                                  ? trace.rounds[t + 1].log_z
                                  : trace.final_log_z;
    const double log_ratio = next_log_z - record.log_z;
    audit.max_log_z_ratio = std::max(audit.max_log_z_ratio, log_ratio);
    if (log_ratio > z_bound + kAuditSlack) ++audit.z_ratio_violations;
  }
  return audit;
}

}  // namespace dphs

namespace dphs {
namespace {

nlohmann::json SensitivityJson(const SensitivityReport& r) {
  return {{"pairs", r.pairs},
          {"comparisons", r.comparisons},
          {"violations", r.violations},
          {"max_change", r.max_change}};
}

std::vector<std::vector<size_t>> PromptingSets(size_t n) {
  std::vector<std::vector<size_t>> sets;
  if (n <= 10) {
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
      std::vector<size_t> a;
      for (size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) a.push_back(i);
      }
      sets.push_back(std::move(a));
    }
  } else {
    for (size_t m = 0; m <= n; ++m) {
      std::vector<size_t> a(m);
      for (size_t i = 0; i < m; ++i) a[i] = i;
      sets.push_back(std::move(a));
    }
  }
  return sets;
}

}  // namespace

bool InstanceAuditReport::passed() const {
  return semi_distance.violations == 0 && proxy.violations == 0 &&
         score.violations == 0 && proxy_mechanism.violations == 0 &&
         mde_mechanism.violations == 0;
}

nlohmann::json InstanceAuditReport::ToJson() const {
  return {{"passed", passed()},
          {"semi_distance", SensitivityJson(semi_distance)},
          {"proxy", SensitivityJson(proxy)},
          {"score", SensitivityJson(score)},
          {"proxy_mechanism",
           {{"pairs", proxy_mechanism.pairs},
            {"violations", proxy_mechanism.violations},
            {"max_log_ratio", proxy_mechanism.max_log_ratio}}},
          {"mde_mechanism",
           {{"pairs", mde_mechanism.pairs},
            {"violations", mde_mechanism.violations},
            {"max_log_ratio", mde_mechanism.max_log_ratio}}}};
}

absl::StatusOr<InstanceAuditReport> AuditInstance(
    const HypothesisClass& hypotheses, const InstanceAuditConfig& config) {
  const size_t n = hypotheses.size();
  const size_t d = hypotheses.domain_size();
  if (config.s < 1) return absl::InvalidArgumentError("s must be positive");
  if (config.max_list < 1) {
    return absl::InvalidArgumentError("max_list must be positive");
  }
  const double inv_s = 1.0 / static_cast<double>(config.s);
  const std::vector<std::vector<size_t>> sets = PromptingSets(n);

  Rng rng(MixSeed(config.seed));
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  std::vector<std::vector<size_t>> lists;
  for (size_t len = 1; len <= config.max_list; ++len) {
    for (size_t r = 0; r < config.lists; ++r) {
      std::vector<size_t> k(len);
      for (size_t& j : k) j = pick(rng);
      lists.push_back(std::move(k));
    }
  }

  auto with_oracle = [&](const Dataset& ds, auto&& body)
      -> absl::StatusOr<std::vector<double>> {
    absl::StatusOr<SemiDistanceOracle> oracle =
        SemiDistanceOracle::Create(hypotheses, ds);
    if (!oracle.ok()) return oracle.status();
    std::vector<double> out;
    if (absl::Status st = body(*oracle, out); !st.ok()) return st;
    return out;
  };

  VectorStatistic semi = [&](const Dataset& ds) {
    return with_oracle(ds, [&](const SemiDistanceOracle& o,
                               std::vector<double>& out) {
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) out.push_back(o.SemiDistance(i, j));
      }
      return absl::OkStatus();
    });
  };
  VectorStatistic proxies = [&](const Dataset& ds) {
    return with_oracle(ds, [&](const SemiDistanceOracle& o,
                               std::vector<double>& out) {
      for (const auto& a : sets) {
        absl::StatusOr<ProxyState> st = ProxyState::FromPromptingSet(a, o);
        if (!st.ok()) return st.status();
        out.insert(out.end(), st->proxies().begin(), st->proxies().end());
      }
      return absl::OkStatus();
    });
  };
  VectorStatistic scores = [&](const Dataset& ds) {
    return with_oracle(ds, [&](const SemiDistanceOracle& o,
                               std::vector<double>& out) {
      for (const auto& a : sets) {
        absl::StatusOr<ProxyState> st = ProxyState::FromPromptingSet(a, o);
        if (!st.ok()) return st.status();
        for (const auto& k : lists) {
          for (double eta : config.etas) {
            for (size_t i = 0; i < n; ++i) {
              absl::StatusOr<double> v = ComputeScore({i, eta, k}, o, *st);
              if (!v.ok()) return v.status();
              out.push_back(*v);
            }
          }
        }
      }
      return absl::OkStatus();
    });
  };

  InstanceAuditReport report;
  absl::StatusOr<SensitivityReport> r =
      AuditSensitivityExhaustive(config.s, d, semi, inv_s);
  if (!r.ok()) return r.status();
  report.semi_distance = *r;
  r = AuditSensitivityExhaustive(config.s, d, proxies, inv_s);
  if (!r.ok()) return r.status();
  report.proxy = *r;
  r = AuditSensitivityExhaustive(config.s, d, scores, 2.0 * inv_s);
  if (!r.ok()) return r.status();
  report.score = *r;

  // Proxy mechanism, one prompting set at a time.
  RatioReport proxy_ratio;
  for (const auto& a : sets) {
    VectorStatistic f = [&](const Dataset& ds)
        -> absl::StatusOr<std::vector<double>> {
      absl::StatusOr<SemiDistanceOracle> o =
          SemiDistanceOracle::Create(hypotheses, ds);
      if (!o.ok()) return o.status();
      absl::StatusOr<ProxyState> st = ProxyState::FromPromptingSet(a, *o);
      if (!st.ok()) return st.status();
      return std::vector<double>(st->proxies().begin(), st->proxies().end());
    };
    absl::StatusOr<RatioReport> rr =
        AuditExpMechRatio(config.s, d, f, config.eps0, 1e-9);
    if (!rr.ok()) return rr.status();
    proxy_ratio.pairs += rr->pairs;
    proxy_ratio.violations += rr->violations;
    proxy_ratio.max_log_ratio =
        std::max(proxy_ratio.max_log_ratio, rr->max_log_ratio);
  }
  report.proxy_mechanism = proxy_ratio;

  VectorStatistic max_semi = [&](const Dataset& ds)
      -> absl::StatusOr<std::vector<double>> {
    absl::StatusOr<SemiDistanceOracle> o =
        SemiDistanceOracle::Create(hypotheses, ds);
    if (!o.ok()) return o.status();
    std::vector<double> w(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
      for (size_t i = 0; i < n; ++i) w[j] = std::max(w[j], o->SemiDistance(i, j));
    }
    return w;
  };
  absl::StatusOr<RatioReport> mr =
      AuditExpMechRatio(config.s, d, max_semi, config.eps0, 1e-9);
  if (!mr.ok()) return mr.status();
  report.mde_mechanism = *mr;
  return report;
}

}  // namespace dphs
