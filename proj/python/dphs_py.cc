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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dphs/audit.h"
#include "dphs/baselines.h"
#include "dphs/bench.h"
#include "dphs/distributions.h"
#include "dphs/empirical.h"
#include "dphs/instance.h"
#include "dphs/selector.h"

namespace py = pybind11;

namespace {

PyObject* g_constraint_error = nullptr;

void Raise(const absl::Status& status) {
  const std::string msg(status.message());
  switch (status.code()) {
    case absl::StatusCode::kFailedPrecondition:
      PyErr_SetString(g_constraint_error, msg.c_str());
      throw py::error_already_set();
    case absl::StatusCode::kOutOfRange:
      throw py::index_error(msg);
    default:
      throw py::value_error(msg);
  }
}

template <typename T>
T Unwrap(absl::StatusOr<T> v) {
  if (!v.ok()) Raise(v.status());
  return *std::move(v);
}

dphs::Instance ParseInstance(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw py::value_error("instance is not valid JSON");
  return Unwrap(dphs::InstanceFromJson(j));
}

dphs::SelectionParams Params(double alpha, double beta, double eps, size_t n,
                             const std::string& preset,
                             std::vector<double> desk) {
  if (preset != "paper" && preset != "desk") {
    throw py::value_error("preset must be 'paper' or 'desk'");
  }
  if (desk.size() != 3) throw py::value_error("desk factors are c_s, c_T, c_k");
  return Unwrap(dphs::DeriveParams(
      alpha, beta, eps, n,
      preset == "paper" ? dphs::ConstantPreset::kPaper
                        : dphs::ConstantPreset::kDesk,
      dphs::DeskFactors{desk[0], desk[1], desk[2]}));
}

py::dict ParamsDict(const dphs::SelectionParams& p) {
  py::dict d;
  d["alpha"] = p.alpha;
  d["beta"] = p.beta;
  d["eps"] = p.eps;
  d["n"] = p.n;
  d["s"] = p.s;
  d["T"] = p.rounds;
  d["k"] = p.k;
  d["gamma"] = p.gamma;
  d["sigma"] = p.sigma;
  d["sigma_prime"] = p.sigma_prime;
  d["eta"] = p.eta;
  d["eta_prime"] = p.eta_prime;
  d["eps_exp"] = p.budget.eps_exp;
  d["eps_svt"] = p.budget.eps_svt;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dphs, m) {
  m.doc() = "Differentially private hypothesis selection";
  // The module attribute keeps the exception type alive.
  g_constraint_error =
      py::exception<std::runtime_error>(m, "ConstraintError", PyExc_ValueError)
          .ptr();

  m.def(
      "tv_distance",
      [](std::vector<double> p, std::vector<double> q) {
        auto a = Unwrap(dphs::DiscreteDistribution::Create(std::move(p)));
        auto b = Unwrap(dphs::DiscreteDistribution::Create(std::move(q)));
        return Unwrap(dphs::TvDistance(a, b));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "derive_params",
      [](double alpha, double beta, double eps, size_t n,
         const std::string& preset, std::vector<double> desk) {
        return ParamsDict(Params(alpha, beta, eps, n, preset, std::move(desk)));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("eps"), py::arg("n"),
      py::arg("preset") = "desk",
      py::arg("desk_factors") = std::vector<double>{1.0, 1.0, 1.0});

  m.def(
      "generate_instance",
      [](const std::string& model, size_t n, size_t d, double opt_target,
         uint64_t seed) {
        dphs::GeneratorConfig c;
        c.model = Unwrap(dphs::ParseGeneratorModel(model));
        c.n = n;
        c.d = d;
        c.opt_target = opt_target;
        c.seed = seed;
        return dphs::InstanceToJson(Unwrap(dphs::GenerateInstance(c))).dump();
      },
      py::arg("model"), py::arg("n"), py::arg("d"), py::arg("opt_target") = 0.0,
      py::arg("seed") = 0);

  m.def(
      "exact_opt",
      [](const std::string& instance) {
        dphs::Instance inst = ParseInstance(instance);
        dphs::OptResult r =
            Unwrap(dphs::ExactOpt(inst.hypotheses, inst.true_distribution));
        return std::make_pair(r.opt, r.index);
      },
      py::arg("instance"));

  m.def(
      "select_hypothesis",
      [](const std::string& instance, double alpha, double beta, double eps,
         const std::string& preset, std::vector<double> desk, uint64_t seed) {
        dphs::Instance inst = ParseInstance(instance);
        dphs::SelectionParams params = Params(
            alpha, beta, eps, inst.hypotheses.size(), preset, std::move(desk));
        dphs::Rng rng(seed);
        absl::StatusOr<dphs::SelectionResult> result;
        {
          py::gil_scoped_release release;
          result = dphs::SelectHypothesis(inst.hypotheses,
                                          inst.true_distribution, params, rng);
        }
        dphs::SelectionResult r = Unwrap(std::move(result));
        return std::make_pair(r.index, r.trace.ToJson().dump());
      },
      py::arg("instance"), py::arg("alpha"), py::arg("beta"), py::arg("eps"),
      py::arg("preset") = "desk",
      py::arg("desk_factors") = std::vector<double>{1.0, 1.0, 1.0},
      py::arg("seed") = 0);

  m.def(
      "mde",
      [](const std::string& instance, std::vector<uint32_t> samples,
         double eps, uint64_t seed) -> size_t {
        dphs::Instance inst = ParseInstance(instance);
        dphs::Dataset data = Unwrap(dphs::Dataset::Create(
            std::move(samples), inst.hypotheses.domain_size()));
        auto oracle = Unwrap(dphs::SemiDistanceOracle::Create(inst.hypotheses, data));
        if (eps <= 0.0) return dphs::MdeNonprivate(oracle);
        dphs::Rng rng(seed);
        return Unwrap(dphs::MdePrivate(oracle, eps, rng));
      },
      py::arg("instance"), py::arg("samples"), py::arg("eps") = 0.0,
      py::arg("seed") = 0,
      "Minimum distance estimate on given samples; private when eps > 0.");

  m.def(
      "run_experiment",
      [](const std::string& instance, const std::string& algo, double alpha,
         double beta, double eps, const std::string& preset,
         std::vector<double> desk, size_t trials, uint64_t seed,
         size_t threads) {
        dphs::Instance inst = ParseInstance(instance);
        if (desk.size() != 3) throw py::value_error("desk factors are c_s, c_T, c_k");
        dphs::ExperimentConfig c;
        c.algo = Unwrap(dphs::ParseAlgorithm(algo));
        c.alpha = alpha;
        c.beta = beta;
        c.eps = eps;
        c.preset = preset == "paper" ? dphs::ConstantPreset::kPaper
                                     : dphs::ConstantPreset::kDesk;
        c.desk = {desk[0], desk[1], desk[2]};
        c.trials = trials;
        c.seed = seed;
        c.threads = threads;
        absl::StatusOr<dphs::ExperimentReport> report;
        {
          py::gil_scoped_release release;
          report = dphs::RunExperiment(inst, c);
        }
        return Unwrap(std::move(report)).ToJson(false).dump();
      },
      py::arg("instance"), py::arg("algo"), py::arg("alpha"), py::arg("beta"),
      py::arg("eps"), py::arg("preset") = "desk",
      py::arg("desk_factors") = std::vector<double>{1.0, 1.0, 1.0},
      py::arg("trials") = 1, py::arg("seed") = 0, py::arg("threads") = 1);
}
