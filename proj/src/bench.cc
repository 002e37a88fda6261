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

#include "dphs/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dphs/audit.h"
#include "dphs/baselines.h"
#include "dphs/empirical.h"
#include "dphs/random.h"

namespace dphs {
namespace {

constexpr int kMaxPlantAttempts = 10000;

std::vector<double> Normalize(std::vector<double> v) {
  double total = 0.0;
  for (double x : v) total += x;
  for (double& x : v) x /= total;
  return v;
}

std::vector<double> DrawDirichlet(size_t d, double concentration, Rng& rng) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> v(d);
  double total = 0.0;
  do {
    total = 0.0;
    for (double& x : v) {
      x = gamma(rng);
      total += x;
    }
  } while (!(total > 0.0));
  return Normalize(std::move(v));
}

std::vector<double> BinomialPmf(size_t d, double p) {
  const int m = static_cast<int>(d) - 1;
  std::vector<double> v(d);
  for (int x = 0; x <= m; ++x) {
    const double log_choose =
        std::lgamma(m + 1.0) - std::lgamma(x + 1.0) - std::lgamma(m - x + 1.0);
    v[x] = std::exp(log_choose + x * std::log(p) + (m - x) * std::log1p(-p));
  }
  return Normalize(std::move(v));
}

absl::StatusOr<Instance> MakeInstance(std::vector<std::vector<double>> pmfs,
                                      std::vector<double> p, uint64_t seed) {
  std::vector<DiscreteDistribution> hyps;
  hyps.reserve(pmfs.size());
  for (auto& pmf : pmfs) {
    absl::StatusOr<DiscreteDistribution> h =
        DiscreteDistribution::Create(std::move(pmf));
    if (!h.ok()) return h.status();
    hyps.push_back(*std::move(h));
  }
  absl::StatusOr<HypothesisClass> cls = HypothesisClass::Create(std::move(hyps));
  if (!cls.ok()) return cls.status();
  absl::StatusOr<DiscreteDistribution> truth =
      DiscreteDistribution::Create(std::move(p));
  if (!truth.ok()) return truth.status();
  return Instance{*std::move(cls), *std::move(truth), seed};
}

absl::StatusOr<Instance> GeneratePlanted(const GeneratorConfig& c, Rng& rng) {
  const std::vector<double> uniform(c.d, 1.0 / static_cast<double>(c.d));
  for (int attempt = 0; attempt < kMaxPlantAttempts; ++attempt) {
    std::vector<std::vector<double>> pmfs;
    for (size_t j = 0; j < c.n; ++j) {
      pmfs.push_back(DrawDirichlet(c.d, c.concentration, rng));
    }
    const size_t m = std::uniform_int_distribution<size_t>(0, c.n - 1)(rng);
    std::vector<double> p = pmfs[m];
    if (c.opt_target > 0.0) {
      double tv_uniform = 0.0;
      for (size_t x = 0; x < c.d; ++x) {
        tv_uniform += std::fabs(pmfs[m][x] - uniform[x]);
      }
      tv_uniform /= 2.0;
      const double lambda = c.opt_target / tv_uniform;
      if (!(lambda <= 1.0)) continue;
      for (size_t x = 0; x < c.d; ++x) {
        p[x] = (1.0 - lambda) * pmfs[m][x] + lambda * uniform[x];
      }
      p = Normalize(std::move(p));
    }
    absl::StatusOr<Instance> inst =
        MakeInstance(std::move(pmfs), std::move(p), c.seed);
    if (!inst.ok()) return inst.status();
    absl::StatusOr<OptResult> opt =
        ExactOpt(inst->hypotheses, inst->true_distribution);
    if (!opt.ok()) return opt.status();
    if (opt->opt >= 0.5 * c.opt_target && opt->opt <= 1.5 * c.opt_target) {
      return inst;
    }
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "could not plant an instance with OPT near ", c.opt_target, " after ",
      kMaxPlantAttempts, " attempts"));
}

double MillisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

template <typename Row>
double MeanOf(const std::vector<Row>& rows, double (*field)(const Row&)) {
  if (rows.empty()) return 0.0;
  double total = 0.0;
  for (const Row& r : rows) total += field(r);
  return total / static_cast<double>(rows.size());
}

}  // namespace

absl::StatusOr<GeneratorModel> ParseGeneratorModel(const std::string& name) {
  if (name == "dirichlet-random") return GeneratorModel::kDirichletRandom;
  if (name == "planted-near-hypothesis") {
    return GeneratorModel::kPlantedNearHypothesis;
  }
  if (name == "grid-cover") return GeneratorModel::kGridCover;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown generator model '", name, "'"));
}

std::string GeneratorModelName(GeneratorModel model) {
  switch (model) {
    case GeneratorModel::kDirichletRandom:
      return "dirichlet-random";
    case GeneratorModel::kPlantedNearHypothesis:
      return "planted-near-hypothesis";
    case GeneratorModel::kGridCover:
      return "grid-cover";
  }
  return "unknown";
}

absl::StatusOr<Instance> GenerateInstance(const GeneratorConfig& config) {
  if (config.n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (config.d < 1) return absl::InvalidArgumentError("d must be at least 1");
  if (!(config.concentration > 0.0)) {
    return absl::InvalidArgumentError("concentration must be positive");
  }
  if (!(config.opt_target >= 0.0 && config.opt_target <= 1.0)) {
    return absl::InvalidArgumentError("OPT target must lie in [0, 1]");
  }
  Rng rng(MixSeed(config.seed));
  switch (config.model) {
    case GeneratorModel::kDirichletRandom: {
      std::vector<std::vector<double>> pmfs;
      for (size_t j = 0; j < config.n; ++j) {
        pmfs.push_back(DrawDirichlet(config.d, config.concentration, rng));
      }
      std::vector<double> p = DrawDirichlet(config.d, config.concentration, rng);
      return MakeInstance(std::move(pmfs), std::move(p), config.seed);
    }
    case GeneratorModel::kPlantedNearHypothesis:
      return GeneratePlanted(config, rng);
    case GeneratorModel::kGridCover: {
      if (config.d < 2) {
        return absl::InvalidArgumentError("grid-cover needs d >= 2");
      }
      std::vector<std::vector<double>> pmfs;
      for (size_t j = 0; j < config.n; ++j) {
        const double p = (static_cast<double>(j) + 0.5) /
                         static_cast<double>(config.n);
        pmfs.push_back(BinomialPmf(config.d, p));
      }
      const double p_true = UniformOpen01(rng);
      return MakeInstance(std::move(pmfs), BinomialPmf(config.d, p_true),
                          config.seed);
    }
  }
  return absl::InvalidArgumentError("unknown generator model");
}

absl::StatusOr<Algorithm> ParseAlgorithm(const std::string& name) {
  if (name == "fast" || name == "private-fast") return Algorithm::kPrivateFast;
  if (name == "mde" || name == "private-mde") return Algorithm::kPrivateMde;
  if (name == "nonprivate" || name == "nonprivate-mde") {
    return Algorithm::kNonprivateMde;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown algorithm '", name, "'"));
}

std::string AlgorithmName(Algorithm algo) {
  switch (algo) {
    case Algorithm::kPrivateFast:
      return "private-fast";
    case Algorithm::kPrivateMde:
      return "private-mde";
    case Algorithm::kNonprivateMde:
      return "nonprivate-mde";
  }
  return "unknown";
}

absl::StatusOr<int64_t> BaselineSampleSize(Algorithm algo, double alpha,
                                           double beta, double eps, size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("alpha and beta must lie in (0, 1)");
  }
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  const double gamma = alpha / 4.0;
  const double nn = static_cast<double>(n);
  switch (algo) {
    case Algorithm::kNonprivateMde:
      return RequiredSamplesForAccuracy(n, gamma, beta);
    case Algorithm::kPrivateMde: {
      if (!(eps > 0.0)) return absl::InvalidArgumentError("eps must be positive");
      const double accuracy =
          std::ceil(std::log(4.0 * nn / beta) / (2.0 * gamma * gamma));
      const double selection =
          std::ceil(8.0 / (alpha * eps) * std::log(2.0 * nn / beta));
      return static_cast<int64_t>(std::max(accuracy, selection));
    }
    case Algorithm::kPrivateFast:
      break;
  }
  return absl::InvalidArgumentError(
      "the fast selector's sample size comes from its parameters");
}

BinomialInterval WilsonInterval(size_t successes, size_t trials, double z) {
  if (trials == 0) return {0.0, 0.0, 1.0};
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double center = (p + z2 / (2.0 * t)) / (1.0 + z2 / t);
  const double half =
      z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / (1.0 + z2 / t);
  return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

size_t ExperimentReport::far_count() const {
  return static_cast<size_t>(
      std::count_if(rows.begin(), rows.end(), [](const TrialRow& r) { return r.far; }));
}

double ExperimentReport::mean_queries() const {
  return MeanOf<TrialRow>(rows, [](const TrialRow& r) {
    return static_cast<double>(r.queries);
  });
}

double ExperimentReport::mean_rounds() const {
  return MeanOf<TrialRow>(rows, [](const TrialRow& r) {
    return static_cast<double>(r.rounds);
  });
}

double ExperimentReport::mean_wall_ms() const {
  return MeanOf<TrialRow>(rows, [](const TrialRow& r) { return r.wall_ms; });
}

std::string ExperimentReport::ToCsv(bool include_timing) const {
  std::ostringstream out;
  out << "trial,seed,algo,output_index,tv,far,rounds,queries,eps_spent,"
         "wall_ms\n";
  const std::string name = AlgorithmName(algo);
  for (const TrialRow& r : rows) {
    out << r.trial << ',' << r.seed << ',' << name << ',' << r.output_index
        << ',' << absl::StrFormat("%.17g", r.tv) << ',' << (r.far ? 1 : 0)
        << ',' << r.rounds << ',' << r.queries << ','
        << absl::StrFormat("%.17g", r.eps_spent) << ','
        << (include_timing ? absl::StrFormat("%.3f", r.wall_ms) : "") << '\n';
  }
  if (!rows.empty()) {
    const BinomialInterval ci = far_rate();
    out << absl::StrFormat(
        "# n=%d s=%d opt=%.17g alpha=%g beta=%g eps=%g\n"
        "# far=%d/%d rate=%.6f ci95=[%.6f,%.6f]\n"
        "# mean_rounds=%.6f mean_queries=%.6f\n",
        n, s, opt, alpha, beta, eps, far_count(), rows.size(), ci.estimate,
        ci.lower, ci.upper, mean_rounds(), mean_queries());
  }
  return out.str();
}

nlohmann::json ExperimentReport::ToJson(bool include_timing) const {
  nlohmann::json j;
  j["algo"] = AlgorithmName(algo);
  j["n"] = n;
  j["s"] = s;
  j["opt"] = opt;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["eps"] = eps;
  j["seed"] = seed;
  if (params) {
    j["params"] = {{"s", params->s},
                   {"T", params->rounds},
                   {"k", params->k},
                   {"eps_exp", params->budget.eps_exp},
                   {"eps_svt", params->budget.eps_svt}};
  }
  nlohmann::json trials = nlohmann::json::array();
  for (const TrialRow& r : rows) {
    nlohmann::json t = {{"trial", r.trial},
                        {"seed", r.seed},
                        {"output_index", r.output_index},
                        {"tv", r.tv},
                        {"far", r.far},
                        {"rounds", r.rounds},
                        {"queries", r.queries},
                        {"eps_spent", r.eps_spent}};
    if (include_timing) t["wall_ms"] = r.wall_ms;
    trials.push_back(std::move(t));
  }
  j["trials"] = std::move(trials);
  const BinomialInterval ci = far_rate();
  j["aggregate"] = {{"trials", rows.size()},
                    {"far", far_count()},
                    {"far_rate", ci.estimate},
                    {"far_ci95", {ci.lower, ci.upper}},
                    {"mean_rounds", mean_rounds()},
                    {"mean_queries", mean_queries()}};
  if (include_timing) j["aggregate"]["mean_wall_ms"] = mean_wall_ms();
  return j;
}

absl::StatusOr<ExperimentReport> RunExperiment(const Instance& instance,
                                               const ExperimentConfig& config) {
  const HypothesisClass& cls = instance.hypotheses;
  const size_t n = cls.size();
  ExperimentReport report;
  report.algo = config.algo;
  report.n = n;
  report.alpha = config.alpha;
  report.beta = config.beta;
  report.eps = config.eps;
  report.seed = config.seed;

  if (config.algo == Algorithm::kPrivateFast) {
    absl::StatusOr<SelectionParams> params =
        config.counts
            ? ParamsWithCounts(config.alpha, config.beta, config.eps, n,
                               config.counts->s, config.counts->rounds,
                               config.counts->k)
            : DeriveParams(config.alpha, config.beta, config.eps, n,
                           config.preset, config.desk);
    if (!params.ok()) return params.status();
    report.params = *params;
    report.s = params->s;
  } else if (config.counts) {
    if (config.counts->s < 1) {
      return absl::InvalidArgumentError("s must be positive");
    }
    if (config.algo == Algorithm::kPrivateMde && !(config.eps > 0.0)) {
      return absl::InvalidArgumentError("eps must be positive");
    }
    report.s = config.counts->s;
  } else {
    absl::StatusOr<int64_t> s = BaselineSampleSize(
        config.algo, config.alpha, config.beta, config.eps, n);
    if (!s.ok()) return s.status();
    report.s = *s;
  }

  std::vector<double> tv(n);
  for (size_t j = 0; j < n; ++j) {
    absl::StatusOr<double> d =
        TvDistance(cls.hypothesis(j), instance.true_distribution);
    if (!d.ok()) return d.status();
    tv[j] = *d;
  }
  report.opt = *std::min_element(tv.begin(), tv.end());
  const double far_threshold = 3.0 * report.opt + config.alpha;

  auto run_trial = [&](size_t t) -> absl::StatusOr<TrialRow> {
    TrialRow row;
    row.trial = t;
    row.seed = DeriveSeed(config.seed, t);
    Rng rng(row.seed);
    const Dataset data = Sample(instance.true_distribution, rng,
                                static_cast<size_t>(report.s));
    const auto start = std::chrono::steady_clock::now();
    switch (config.algo) {
      case Algorithm::kPrivateFast: {
        absl::StatusOr<SelectionResult> r =
            SelectHypothesisOnDataset(cls, data, *report.params, rng);
        if (!r.ok()) return r.status();
        row.output_index = r->index;
        row.rounds = r->trace.rounds_executed;
        row.queries = r->trace.semidistance_queries;
        row.eps_spent = report.params->budget.Spent(row.rounds);
        break;
      }
      case Algorithm::kPrivateMde:
      case Algorithm::kNonprivateMde: {
        absl::StatusOr<SemiDistanceOracle> oracle =
            SemiDistanceOracle::Create(cls, data);
        if (!oracle.ok()) return oracle.status();
        if (config.algo == Algorithm::kPrivateMde) {
          absl::StatusOr<size_t> idx = MdePrivate(*oracle, config.eps, rng);
          if (!idx.ok()) return idx.status();
          row.output_index = *idx;
          row.eps_spent = config.eps;
        } else {
          row.output_index = MdeNonprivate(*oracle);
        }
        row.queries = oracle->query_count();
        break;
      }
    }
    row.wall_ms = MillisSince(start);
    row.tv = tv[row.output_index];
    row.far = row.tv > far_threshold;
    return row;
  };

  report.rows.resize(config.trials);
  std::vector<absl::Status> errors(config.trials);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t = next++; t < config.trials; t = next++) {
      absl::StatusOr<TrialRow> row = run_trial(t);
      if (row.ok()) {
        report.rows[t] = *row;
      } else {
        errors[t] = row.status();
      }
    }
  };
  const size_t threads =
      std::max<size_t>(1, std::min(config.threads, config.trials));
  std::vector<std::thread> pool;
  for (size_t w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  for (const absl::Status& e : errors) {
    if (!e.ok()) return e;
  }
  return report;
}

absl::StatusOr<double> LogLogSlope(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    return absl::InvalidArgumentError("need at least two paired points");
  }
  double mx = 0.0, my = 0.0;
  const double m = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      return absl::InvalidArgumentError("log-log fit needs positive values");
    }
    mx += std::log(x[i]) / m;
    my += std::log(y[i]) / m;
  }
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (!(sxx > 0.0)) return absl::InvalidArgumentError("x values are all equal");
  return sxy / sxx;
}

nlohmann::json ScalingReport::ToJson(bool include_timing) const {
  nlohmann::json j;
  j["s"] = counts.s;
  j["T_max"] = counts.rounds;
  j["k"] = counts.k;
  j["fast_slope"] = fast_slope;
  j["mde_slope"] = mde_slope;
  nlohmann::json pts = nlohmann::json::array();
  for (const ScalingPoint& p : points) {
    nlohmann::json jp = {{"n", p.n},
                         {"fast_queries", p.fast_queries},
                         {"mde_queries", p.mde_queries},
                         {"fast_rounds", p.fast_rounds}};
    if (include_timing) {
      jp["fast_wall_ms"] = p.fast_wall_ms;
      jp["mde_wall_ms"] = p.mde_wall_ms;
    }
    pts.push_back(std::move(jp));
  }
  j["points"] = std::move(pts);
  return j;
}

absl::StatusOr<ScalingReport> ScalingBenchmark(const ScalingConfig& config) {
  if (config.ns.size() < 3) {
    return absl::InvalidArgumentError("scaling needs at least three values of n");
  }
  if (config.trials < 1) {
    return absl::InvalidArgumentError("scaling needs at least one trial");
  }
  const size_t n_max = *std::max_element(config.ns.begin(), config.ns.end());
  absl::StatusOr<SelectionParams> top =
      DeriveParams(config.alpha, config.beta, config.eps, n_max,
                   config.preset, config.desk);
  if (!top.ok()) return top.status();

  ScalingReport report;
  report.counts = {top->s, top->rounds, top->k};
  std::vector<double> xs, fast_q, mde_q;
  for (size_t idx = 0; idx < config.ns.size(); ++idx) {
    const size_t n = config.ns[idx];
    GeneratorConfig gen = config.family;
    gen.n = n;
    gen.seed = DeriveSeed(config.seed, 2 * idx);
    absl::StatusOr<Instance> inst = GenerateInstance(gen);
    if (!inst.ok()) return inst.status();

    ExperimentConfig exp;
    exp.alpha = config.alpha;
    exp.beta = config.beta;
    exp.eps = config.eps;
    exp.counts = Counts{top->s, std::min<int64_t>(top->rounds, n), top->k};
    exp.trials = config.trials;
    exp.seed = DeriveSeed(config.seed, 2 * idx + 1);
    exp.threads = config.threads;

    exp.algo = Algorithm::kPrivateFast;
    absl::StatusOr<ExperimentReport> fast = RunExperiment(*inst, exp);
    if (!fast.ok()) return fast.status();
    exp.algo = Algorithm::kPrivateMde;
    absl::StatusOr<ExperimentReport> mde = RunExperiment(*inst, exp);
    if (!mde.ok()) return mde.status();

    ScalingPoint p;
    p.n = n;
    p.fast_queries = fast->mean_queries();
    p.mde_queries = mde->mean_queries();
    p.fast_wall_ms = fast->mean_wall_ms();
    p.mde_wall_ms = mde->mean_wall_ms();
    p.fast_rounds = fast->mean_rounds();
    report.points.push_back(p);
    xs.push_back(static_cast<double>(n));
    fast_q.push_back(p.fast_queries);
    mde_q.push_back(p.mde_queries);
  }
  absl::StatusOr<double> fs = LogLogSlope(xs, fast_q);
  if (!fs.ok()) return fs.status();
  absl::StatusOr<double> ms = LogLogSlope(xs, mde_q);
  if (!ms.ok()) return ms.status();
  report.fast_slope = *fs;
  report.mde_slope = *ms;
  return report;
}

}  // namespace dphs
