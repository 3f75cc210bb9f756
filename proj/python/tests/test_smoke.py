# Copyright 2026 The adtypes Authors
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

import pytest

import adtypes

ZERO_ONE = {
    "slots": 2,
    "curves": {"A": [1.0, 0.0], "B": [1.0, 1.0]},
    "bidders": [
        {"id": 0, "type": "A", "value": 0.99},
        {"id": 1, "type": "B", "value": 1.0},
    ],
}


def test_formats():
    assert adtypes.FORMATS == ["GreedyGSP", "GreedyVCG", "OptGSP", "OptVCG"]


def test_zero_one_auction():
    out = adtypes.run_auction(ZERO_ONE, [0.0, 1.0], "GreedyGSP")
    assert out["revenue"] == 0.0
    assert out["true_welfare"] == 1.0
    assert adtypes.optimal_welfare(ZERO_ONE) == pytest.approx(1.99)


def test_bad_format_raises():
    with pytest.raises(ValueError):
        adtypes.run_auction(ZERO_ONE, [0.0, 1.0], "FirstPrice")


def test_equilibrium_revenue_matches_simulation():
    closed = adtypes.equilibrium_revenue(0.5, 0.6667, "GreedyGSP")
    assert closed == pytest.approx(0.12963, abs=1e-5)
    mc = adtypes.revenue_mc(0.5, 0.6667, "GreedyGSP", samples=200000, seed=4)
    assert abs(mc["mean"] - closed) <= 4 * mc["std_error"]


def test_poa_suite():
    rows = adtypes.poa_suite()
    assert [r["format"] for r in rows] == ["GreedyGSP", "GreedyVCG", "OptGSP"]
    assert all(r["ok"] for r in rows)
    assert rows[0]["ratio"] == pytest.approx(1.99)


def test_cli(tmp_path):
    code = adtypes.run_cli(["poa", "--seed", "1", "--out", str(tmp_path)])
    assert code == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["ok"] and summary["command"] == "poa"
