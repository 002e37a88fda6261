# Copyright 2026 The dphs Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import subprocess

import pytest

import dphs

DESK = (5500.0, 1.0, 1.3)


def test_tv_distance():
    assert dphs.tv_distance([0.5, 0.5], [1.0, 0.0]) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        dphs.tv_distance([0.5, 0.5], [1.0])


def test_derive_params_and_errors():
    p = dphs.derive_params(0.25, 0.25, 10.0, 20, "desk", list(DESK))
    assert p["s"] == 1776590
    assert p["T"] == 20
    assert p["k"] == 1824
    with pytest.raises(dphs.ConstraintError):
        dphs.derive_params(0.25, 0.25, 10.0, 20, "desk", [1e9, 1.0, 1.0])
    with pytest.raises(ValueError):
        dphs.derive_params(1.5, 0.25, 10.0, 20)
    assert issubclass(dphs.ConstraintError, ValueError)


def test_generate_and_exact_opt():
    inst = dphs.generate_instance("planted-near-hypothesis", 20, 50, 0.05, 3)
    assert inst == dphs.generate_instance("planted-near-hypothesis", 20, 50,
                                          0.05, 3)
    opt, index = dphs.exact_opt(inst)
    assert 0.025 <= opt <= 0.075
    assert 0 <= index < 20


def test_select_hypothesis():
    inst = dphs.generate_instance("planted-near-hypothesis", 20, 50, 0.05, 4)
    opt, _ = dphs.exact_opt(inst)
    index, trace = dphs.select_hypothesis(inst, 0.25, 0.25, 10.0,
                                          desk_factors=DESK, seed=1)
    assert 0 <= index < 20
    assert trace["output_index"] == index
    assert 1 <= trace["rounds_executed"] <= 20
    again, _ = dphs.select_hypothesis(inst, 0.25, 0.25, 10.0,
                                      desk_factors=DESK, seed=1)
    assert again == index


def test_mde():
    inst = dphs.generate_instance("planted-near-hypothesis", 5, 8, 0.0, 2)
    _, star = dphs.exact_opt(inst)
    p = inst["true_distribution"]
    samples = [x for x, w in enumerate(p) for _ in range(round(1000 * w))]
    assert dphs.mde(inst, samples) == star
    assert 0 <= dphs.mde(inst, samples, eps=1.0, seed=3) < 5
    with pytest.raises(ValueError):
        dphs.mde(inst, [99])


def test_run_experiment():
    inst = dphs.generate_instance("planted-near-hypothesis", 10, 20, 0.0, 5)
    report = dphs.run_experiment(inst, "nonprivate", 0.2, 0.1, 1.0, trials=5)
    assert len(report["trials"]) == 5
    assert all(row["queries"] == 100 for row in report["trials"])


CLI = os.environ.get("DPHS_CLI")


@pytest.mark.skipif(not CLI, reason="DPHS_CLI not set")
def test_cli_exit_codes(tmp_path):
    inst = tmp_path / "inst.json"
    gen = subprocess.run([CLI, "generate", "--model", "planted-near-hypothesis",
                          "--n", "10", "--d", "20", "--opt-target", "0.05",
                          "--seed", "1", "--out", str(inst)])
    assert gen.returncode == 0
    json.loads(inst.read_text())

    ok = subprocess.run([CLI, "run", "--instance", str(inst), "--algo",
                         "nonprivate", "--trials", "3", "--no-timing"],
                        capture_output=True, text=True)
    assert ok.returncode == 0
    assert ok.stdout.startswith("trial,seed,algo,output_index")

    bad = subprocess.run([CLI, "run", "--instance", str(inst), "--alpha", "2"],
                         capture_output=True)
    assert bad.returncode == 2
    missing = subprocess.run([CLI, "run", "--instance",
                              str(tmp_path / "nope.json")], capture_output=True)
    assert missing.returncode == 2
    infeasible = subprocess.run([CLI, "run", "--instance", str(inst),
                                 "--desk-factors", "1e9,1,1"],
                                capture_output=True)
    assert infeasible.returncode == 3
