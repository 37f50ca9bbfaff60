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

import json

import numpy as np
import pytest

import sketchadam as sa


def test_single_item_sketch_is_exact():
    cfg = sa.SketchConfig(rows=5, cols=64, seed=3, dim=20)
    x = np.zeros(20)
    x[5] = 3.0
    sk = sa.sketch_vector(cfg, x)
    assert sk.estimate(5) == 3.0
    assert sk.heavy_candidates(1) == [5]
    assert sk.table.shape == (5, 64)


def test_sketch_is_linear_and_serializes():
    rng = np.random.default_rng(0)
    cfg = sa.SketchConfig(rows=3, cols=16, seed=1, dim=40)
    a = rng.integers(-5, 5, 40).astype(float)
    b = rng.integers(-5, 5, 40).astype(float)
    merged = sa.merge(sa.sketch_vector(cfg, a), sa.sketch_vector(cfg, b))
    assert merged == sa.sketch_vector(cfg, a + b)
    data = merged.serialize()
    assert len(data) == 32 + 8 * 3 * 16
    assert sa.CountSketch.deserialize(data) == merged


def test_top_k_and_sign_compress():
    u = sa.top_k(np.array([3.0, -5.0, 1.0]), 1)
    assert u.indices == [1] and u.values == [-5.0]
    assert sa.top_k(np.array([2.0, -2.0, 0.5]), 1).indices == [0]
    np.testing.assert_array_equal(sa.sign_compress(np.array([3.0, 1.0])), [2.0, 2.0])


def test_scaled_aggregation_changes_argmax():
    proto = sa.ProtocolConfig(k=1, p_factor=2, sketch=sa.SketchConfig(5, 64, 0, 2))
    agg = sa.sketched_topk_aggregate_scaled([np.array([3.0, 2.0])], np.array([100.0, 1.0]), proto)
    assert agg.chosen_indices == [1]
    assert agg.upstream_scalars == 5 * 64 + 2
    with pytest.raises(ValueError):
        sa.sketched_topk_aggregate_scaled([np.array([3.0, 2.0])], np.array([1.0, 0.0]), proto)


def test_run_matches_dense_without_compression():
    base = {
        "problem": {"kind": "quadratic", "dim": 12, "noise_std": 0.5, "n_samples": 64},
        "hyper": {"alpha": 0.1, "epsilon": 0.01, "horizon": 30},
        "n_workers": 2,
        "protocol": {"k": 12, "p_factor": 1, "rows": 3, "cols": 8},
        "batch_size": 4,
        "seed": 5,
    }
    ga = sa.run(dict(base, variant="ga"))
    dense = sa.run(dict(base, variant="dense_amsgrad"))
    np.testing.assert_allclose(ga["x"], dense["x"], atol=1e-12, rtol=0)
    assert len(ga["trace"]["iter"]) == 30
    assert ga["summary"]["iterations"] == 30
    assert np.all(ga["trace"]["shadow_gap"] <= 1e-9)


def test_run_is_deterministic_and_config_errors_raise():
    cfg = {
        "problem": {"kind": "quadratic", "dim": 40},
        "protocol": {"k": 4, "p_factor": 2, "rows": 5, "cols": 16},
        "hyper": {"horizon": 10},
    }
    a = sa.run(cfg)
    b = sa.run(json.dumps(cfg))
    np.testing.assert_array_equal(a["x"], b["x"])
    assert not np.array_equal(a["x"], sa.run(cfg, seed=9)["x"])
    with pytest.raises(sa.ConfigError):
        sa.run({"hyper": {"learning_rate": 0.1}})
    resolved = json.loads(sa.resolve_config(json.dumps(cfg)))
    assert resolved["protocol"]["k"] == 4


def test_verify_sketch_suite_passes():
    results = sa.verify("sketch", 7)
    assert results
    assert all(r["passed"] or r["informational"] for r in results)
