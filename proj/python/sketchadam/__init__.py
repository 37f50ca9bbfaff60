# Copyright 2026 The sketchadam Authors. All Rights Reserved.
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
# ==============================================================================
"""Count Sketch compression and sketched AMSGrad simulation."""

import json as _json

from ._sketchadam import (
    AggregationResult,
    ConfigError,
    CountSketch,
    InvariantViolation,
    NumericError,
    ProtocolConfig,
    SketchConfig,
    SparseUpdate,
    UnsketchMode,
    bucket_hash,
    compression_rate,
    merge,
    resolve_config,
    run_config,
    scale,
    sign_compress,
    sign_hash,
    sketch_vector,
    sketched_topk_aggregate,
    sketched_topk_aggregate_scaled,
    top_k,
    verify,
)

__version__ = "0.1.0"


def run(config, seed=None):
    """Runs one experiment. `config` is a dict or a JSON string."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return run_config(text, seed)


__all__ = [
    "AggregationResult",
    "ConfigError",
    "CountSketch",
    "InvariantViolation",
    "NumericError",
    "ProtocolConfig",
    "SketchConfig",
    "SparseUpdate",
    "UnsketchMode",
    "bucket_hash",
    "compression_rate",
    "merge",
    "resolve_config",
    "run",
    "run_config",
    "scale",
    "sign_compress",
    "sign_hash",
    "sketch_vector",
    "sketched_topk_aggregate",
    "sketched_topk_aggregate_scaled",
    "top_k",
    "verify",
]
