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
"""Position auctions with ad types."""

import json

from ._core import (
    FORMATS,
    equilibrium_revenue,
    poa_suite,
    revenue_mc,
    run_cli,
)
from . import _core

__all__ = [
    "FORMATS",
    "equilibrium_revenue",
    "optimal_welfare",
    "poa_suite",
    "revenue_mc",
    "run_auction",
    "run_cli",
]


def run_auction(instance, bids, format):
    """Runs one mechanism on an instance dict and returns the outcome dict."""
    return json.loads(_core.run_auction_json(json.dumps(instance), list(bids), format))


def optimal_welfare(instance):
    return _core.optimal_welfare_json(json.dumps(instance))
