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

// Command-line front end: instance generation, experiment runs, scaling
// benchmarks and exhaustive audits.
//
// Exit codes: 0 success, 1 audit violation or internal error, 2 invalid
// input, 3 parameter-constraint violation.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dphs/audit.h"
#include "dphs/bench.h"
#include "dphs/instance.h"
#include "dphs/selector.h"

namespace {

using dphs::ConstantPreset;
using dphs::DeskFactors;

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
      return 2;
    case absl::StatusCode::kFailedPrecondition:
      return 3;
    default:
      return 1;
  }
}

// Reports a non-OK status and maps it to an exit code.
int Finish(const absl::Status& status) {
  if (status.ok()) return 0;
  std::cerr << "error: " << status.message() << "\n";
  return ExitCode(status);
}

absl::Status WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return absl::OkStatus();
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::InvalidArgumentError(absl::StrCat("cannot write ", path));
  out << text;
  return out ? absl::OkStatus()
             : absl::InternalError(absl::StrCat("write to ", path, " failed"));
}

absl::StatusOr<DeskFactors> ParseDeskFactors(const std::string& text) {
  std::vector<std::string> parts = absl::StrSplit(text, ',');
  if (parts.size() != 3) {
    return absl::InvalidArgumentError("--desk-factors takes c_s,c_T,c_k");
  }
  double v[3];
  for (int i = 0; i < 3; ++i) {
    if (!absl::SimpleAtod(parts[i], &v[i]) || !(v[i] > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad desk factor '", parts[i], "'"));
    }
  }
  return DeskFactors{v[0], v[1], v[2]};
}

struct ParamFlags {
  double alpha = 0.25;
  double beta = 0.25;
  double eps = 1.0;
  std::string preset = "desk";
  std::string desk_factors = "1,1,1";

  void Register(CLI::App* app) {
    app->add_option("--alpha", alpha, "Additive error");
    app->add_option("--beta", beta, "Failure probability");
    app->add_option("--eps", eps, "Privacy budget");
    app->add_option("--preset", preset, "Constant preset")
        ->check(CLI::IsMember({"paper", "desk"}));
    app->add_option("--desk-factors", desk_factors,
                    "DESK divisors c_s,c_T,c_k");
  }

  absl::Status Resolve(ConstantPreset& out_preset, DeskFactors& out_desk) const {
    out_preset = preset == "paper" ? ConstantPreset::kPaper : ConstantPreset::kDesk;
    absl::StatusOr<DeskFactors> f = ParseDeskFactors(desk_factors);
    if (!f.ok()) return f.status();
    out_desk = *f;
    return absl::OkStatus();
  }
};

struct GeneratorFlags {
  std::string model = "dirichlet-random";
  size_t n = 10;
  size_t d = 20;
  double opt_target = 0.0;
  double concentration = 1.0;

  void Register(CLI::App* app, bool with_n) {
    app->add_option("--model", model, "Generator model")
        ->check(CLI::IsMember(
            {"dirichlet-random", "planted-near-hypothesis", "grid-cover"}));
    if (with_n) app->add_option("--n", n, "Number of hypotheses");
    app->add_option("--d", d, "Domain size");
    app->add_option("--opt-target", opt_target, "Target OPT (planted model)");
    app->add_option("--concentration", concentration, "Dirichlet parameter");
  }

  absl::StatusOr<dphs::GeneratorConfig> Resolve(uint64_t seed) const {
    absl::StatusOr<dphs::GeneratorModel> m = dphs::ParseGeneratorModel(model);
    if (!m.ok()) return m.status();
    return dphs::GeneratorConfig{*m, n, d, opt_target, concentration, seed};
  }
};

int RunGenerate(const GeneratorFlags& gen, uint64_t seed,
                const std::string& out) {
  absl::StatusOr<dphs::GeneratorConfig> config = gen.Resolve(seed);
  if (!config.ok()) return Finish(config.status());
  absl::StatusOr<dphs::Instance> inst = dphs::GenerateInstance(*config);
  if (!inst.ok()) return Finish(inst.status());
  if (out.empty() || out == "-") {
    std::cout << dphs::InstanceToJson(*inst).dump(1) << "\n";
    return 0;
  }
  return Finish(dphs::SaveInstance(*inst, out));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private hypothesis selection"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  size_t threads = 1;
  size_t trials = 0;
  bool no_timing = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--out", out, "Output path (stdout when omitted)");
  };

  CLI::App* generate = app.add_subcommand("generate", "Write a random instance");
  GeneratorFlags gen_flags;
  gen_flags.Register(generate, true);
  add_common(generate);

  CLI::App* run = app.add_subcommand("run", "Run repeated trials of one algorithm");
  std::string instance_path;
  std::string algo = "fast";
  ParamFlags run_params;
  int64_t s_override = 0, t_override = 0, k_override = 0;
  run->add_option("--instance", instance_path, "Instance JSON")->required();
  run->add_option("--algo", algo, "Algorithm")
      ->check(CLI::IsMember({"fast", "mde", "nonprivate"}));
  run_params.Register(run);
  run->add_option("--samples", s_override, "Override s");
  run->add_option("--rounds", t_override, "Override T (fast only)");
  run->add_option("--list-size", k_override, "Override k (fast only)");
  run->add_option("--trials", trials, "Number of trials");
  run->add_option("--threads", threads, "Worker threads");
  run->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--no-timing", no_timing, "Omit wall-clock columns");
  add_common(run);

  CLI::App* bench = app.add_subcommand("bench", "Query-count scaling benchmark");
  GeneratorFlags bench_gen;
  bench_gen.model = "planted-near-hypothesis";
  bench_gen.d = 50;
  bench_gen.opt_target = 0.05;
  bench_gen.Register(bench, false);
  ParamFlags bench_params;
  bench_params.alpha = 0.5;
  bench_params.beta = 0.5;
  bench_params.eps = 100.0;
  bench_params.desk_factors = "100,1,1.1";
  bench_params.Register(bench);
  std::vector<size_t> ns = {50, 100, 200, 400};
  size_t bench_trials = 3;
  bench->add_option("--ns", ns, "Class sizes")->delimiter(',');
  bench->add_option("--trials", bench_trials, "Trials per point");
  bench->add_option("--threads", threads, "Worker threads");
  bench->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  bench->add_flag("--no-timing", no_timing, "Omit wall-clock columns");
  add_common(bench);

  CLI::App* audit = app.add_subcommand("audit", "Exhaustive neighbor audits");
  std::string audit_instance;
  dphs::InstanceAuditConfig audit_config;
  audit->add_option("--instance", audit_instance, "Instance JSON")->required();
  audit->add_option("--samples", audit_config.s, "Dataset size to enumerate");
  audit->add_option("--lists", audit_config.lists, "Sample lists per length");
  audit->add_option("--max-list", audit_config.max_list, "Longest sample list");
  audit->add_option("--eps0", audit_config.eps0, "Mechanism parameter");
  add_common(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*generate) return RunGenerate(gen_flags, seed, out);

  if (*run) {
    absl::StatusOr<dphs::Instance> inst = dphs::LoadInstance(instance_path);
    if (!inst.ok()) return Finish(inst.status());
    absl::StatusOr<dphs::Algorithm> a = dphs::ParseAlgorithm(algo);
    if (!a.ok()) return Finish(a.status());
    dphs::ExperimentConfig config;
    config.algo = *a;
    config.alpha = run_params.alpha;
    config.beta = run_params.beta;
    config.eps = run_params.eps;
    if (absl::Status st = run_params.Resolve(config.preset, config.desk);
        !st.ok()) {
      return Finish(st);
    }
    if (s_override || t_override || k_override) {
      if (*a == dphs::Algorithm::kPrivateFast &&
          (!s_override || !t_override || !k_override)) {
        return Finish(absl::InvalidArgumentError(
            "--samples, --rounds and --list-size go together for fast"));
      }
      if (*a != dphs::Algorithm::kPrivateFast && !s_override) {
        return Finish(absl::InvalidArgumentError("baselines take only --samples"));
      }
      config.counts = dphs::Counts{s_override, t_override, k_override};
    }
    config.trials = trials;
    config.seed = seed;
    config.threads = threads;
    absl::StatusOr<dphs::ExperimentReport> report =
        dphs::RunExperiment(*inst, config);
    if (!report.ok()) return Finish(report.status());
    const std::string text = format == "json"
                                 ? report->ToJson(!no_timing).dump(1) + "\n"
                                 : report->ToCsv(!no_timing);
    return Finish(WriteOutput(out, text));
  }

  if (*bench) {
    absl::StatusOr<dphs::GeneratorConfig> family = bench_gen.Resolve(seed);
    if (!family.ok()) return Finish(family.status());
    dphs::ScalingConfig config;
    config.family = *family;
    config.ns = ns;
    config.alpha = bench_params.alpha;
    config.beta = bench_params.beta;
    config.eps = bench_params.eps;
    if (absl::Status st = bench_params.Resolve(config.preset, config.desk);
        !st.ok()) {
      return Finish(st);
    }
    config.trials = bench_trials;
    config.seed = seed;
    config.threads = threads;
    absl::StatusOr<dphs::ScalingReport> report = dphs::ScalingBenchmark(config);
    if (!report.ok()) return Finish(report.status());
    std::string text;
    if (format == "json") {
      text = report->ToJson(!no_timing).dump(1) + "\n";
    } else {
      std::ostringstream csv;
      csv << "n,fast_queries,mde_queries,fast_rounds,fast_wall_ms,mde_wall_ms\n";
      for (const dphs::ScalingPoint& p : report->points) {
        csv << p.n << ',' << p.fast_queries << ',' << p.mde_queries << ','
            << p.fast_rounds << ',';
        if (!no_timing) csv << p.fast_wall_ms << ',' << p.mde_wall_ms;
        else csv << ',';
        csv << '\n';
      }
      csv << "# fast_slope=" << report->fast_slope
          << " mde_slope=" << report->mde_slope << '\n';
      text = csv.str();
    }
    return Finish(WriteOutput(out, text));
  }

  if (*audit) {
    absl::StatusOr<dphs::Instance> inst = dphs::LoadInstance(audit_instance);
    if (!inst.ok()) return Finish(inst.status());
    audit_config.seed = seed;
    absl::StatusOr<dphs::InstanceAuditReport> report =
        dphs::AuditInstance(inst->hypotheses, audit_config);
    if (!report.ok()) return Finish(report.status());
    if (absl::Status st = WriteOutput(out, report->ToJson().dump(1) + "\n");
        !st.ok()) {
      return Finish(st);
    }
    return report->passed() ? 0 : 1;
  }
  return 0;
}
