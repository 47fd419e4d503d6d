# Copyright 2026 The hdc-decomp Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Decomposed hyperdimensional classifiers.

Thin Python layer over the C++ core. Heavy lifting (encoding, training,
scoring, quantization, bit flips) happens in the extension module.
"""

import json as _json

from ._hdc_decomp import (
    ConfigError,
    DataError,
    DimensionError,
    DomainError,
    HdcError,
    InputError,
    Model,
    TrainingError,
    _run_experiment_json,
    budget_table,
    footprint,
    inject_bitflips,
    load_csv,
    make_synthetic,
    precision_formats,
    quantize,
    select_layers,
)

__all__ = [
    "ConfigError",
    "DataError",
    "DimensionError",
    "DomainError",
    "HdcError",
    "InputError",
    "Model",
    "TrainingError",
    "budget_table",
    "footprint",
    "inject_bitflips",
    "load_csv",
    "load_model",
    "make_synthetic",
    "model_metadata",
    "precision_formats",
    "quantize",
    "run_experiment",
    "select_layers",
]


def run_experiment(config, verbose=False):
    """Run a sweep described by a config dict (same schema as the CLI's JSON).

    Returns a dict with "results", "robustness", "warnings" and "manifest".
    Output files land in config["output_dir"].
    """
    out = _json.loads(_run_experiment_json(_json.dumps(config), verbose))
    out.setdefault("results", [])
    out.setdefault("robustness", [])
    return out


def load_model(path):
    return Model.load(str(path))


def model_metadata(model):
    return _json.loads(model.metadata_json)

