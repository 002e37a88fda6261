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

#include "dphs/instance.h"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dphs {
namespace {

absl::StatusOr<std::vector<double>> ReadPmf(const nlohmann::json& j,
                                            const std::string& what) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(absl::StrCat(what, " must be an array"));
  }
  std::vector<double> pmf;
  pmf.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError(
          absl::StrCat(what, " contains a non-numeric entry"));
    }
    pmf.push_back(v.get<double>());
  }
  return pmf;
}

absl::StatusOr<DiscreteDistribution> ReadDistribution(const nlohmann::json& j,
                                                      size_t domain_size,
                                                      const std::string& what) {
  absl::StatusOr<std::vector<double>> pmf = ReadPmf(j, what);
  if (!pmf.ok()) return pmf.status();
  if (pmf->size() != domain_size) {
    return absl::InvalidArgumentError(absl::StrCat(
        what, " has ", pmf->size(), " entries, expected ", domain_size));
  }
  absl::StatusOr<DiscreteDistribution> dist =
      DiscreteDistribution::Create(*std::move(pmf));
  if (!dist.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, ": ", dist.status().message()));
  }
  return dist;
}

}  // namespace

absl::StatusOr<Instance> InstanceFromJson(const nlohmann::json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("instance must be a JSON object");
  }
  for (const char* key :
       {"domain_size", "hypotheses", "true_distribution", "seed"}) {
    if (!j.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("instance is missing \"", key, "\""));
    }
  }
  if (!j["domain_size"].is_number_integer() ||
      j["domain_size"].get<int64_t>() < 1) {
    return absl::InvalidArgumentError("domain_size must be a positive integer");
  }
  if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
    return absl::InvalidArgumentError("seed must be an unsigned integer");
  }
  const size_t d = j["domain_size"].get<size_t>();
  const nlohmann::json& hyps = j["hypotheses"];
  if (!hyps.is_array() || hyps.empty()) {
    return absl::InvalidArgumentError("hypotheses must be a nonempty array");
  }
  std::vector<DiscreteDistribution> hypotheses;
  hypotheses.reserve(hyps.size());
  for (size_t i = 0; i < hyps.size(); ++i) {
    absl::StatusOr<DiscreteDistribution> h =
        ReadDistribution(hyps[i], d, absl::StrCat("hypothesis ", i));
    if (!h.ok()) return h.status();
    hypotheses.push_back(*std::move(h));
  }
  absl::StatusOr<DiscreteDistribution> p =
      ReadDistribution(j["true_distribution"], d, "true_distribution");
  if (!p.ok()) return p.status();
  absl::StatusOr<HypothesisClass> cls =
      HypothesisClass::Create(std::move(hypotheses));
  if (!cls.ok()) return cls.status();
  return Instance{*std::move(cls), *std::move(p), j["seed"].get<uint64_t>()};
}

nlohmann::json InstanceToJson(const Instance& instance) {
  nlohmann::json j;
  j["domain_size"] = instance.hypotheses.domain_size();
  nlohmann::json hyps = nlohmann::json::array();
  for (const DiscreteDistribution& h : instance.hypotheses.hypotheses()) {
    hyps.push_back(std::vector<double>(h.pmf().begin(), h.pmf().end()));
  }
  j["hypotheses"] = std::move(hyps);
  const auto pmf = instance.true_distribution.pmf();
  j["true_distribution"] = std::vector<double>(pmf.begin(), pmf.end());
  j["seed"] = instance.seed;
  return j;
}

absl::StatusOr<Instance> LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, " is not valid JSON"));
  }
  return InstanceFromJson(j);
}

absl::Status SaveInstance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  }
  out << InstanceToJson(instance).dump(1) << "\n";
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace dphs
