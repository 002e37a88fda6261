#
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
#

"""Differentially private hypothesis selection over finite domains."""

import json

from . import _dphs
from ._dphs import ConstraintError, derive_params, tv_distance

__all__ = [
    "ConstraintError",
    "derive_params",
    "exact_opt",
    "generate_instance",
    "mde",
    "run_experiment",
    "select_hypothesis",
    "tv_distance",
]


def _dump(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def generate_instance(model, n, d, opt_target=0.0, seed=0):
    """Returns a random instance as a dict in the JSON file format."""
    return json.loads(_dphs.generate_instance(model, n, d, opt_target, seed))


def select_hypothesis(instance, alpha, beta, eps, preset="desk",
                      desk_factors=(1.0, 1.0, 1.0), seed=0):
    """Runs the private selector; returns (index, trace dict)."""
    index, trace = _dphs.select_hypothesis(
        _dump(instance), alpha, beta, eps, preset, list(desk_factors), seed)
    return index, json.loads(trace)


def mde(instance, samples, eps=0.0, seed=0):
    return _dphs.mde(_dump(instance), list(samples), eps, seed)


def run_experiment(instance, algo, alpha, beta, eps, preset="desk",
                   desk_factors=(1.0, 1.0, 1.0), trials=1, seed=0, threads=1):
    return json.loads(_dphs.run_experiment(
        _dump(instance), algo, alpha, beta, eps, preset, list(desk_factors),
        trials, seed, threads))


def exact_opt(instance):
    """Returns (OPT, argmin index) for an instance."""
    return _dphs.exact_opt(_dump(instance))
