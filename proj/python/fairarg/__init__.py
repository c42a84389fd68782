# Copyright 2026 The fairarg Authors.
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

"""Fairness, relevance and diversity evaluation of stance-labeled rankings."""

from ._fairarg import (
    IoError,
    ValidationError,
    __version__,
    correlate,
    evaluate,
    harmonic_combine,
    kendall_tau_b,
    kendall_test,
    normalization_bounds,
    patterns,
    rkl,
    rnd,
    rrd,
    synth,
)

__all__ = [
    "IoError",
    "ValidationError",
    "__version__",
    "correlate",
    "evaluate",
    "harmonic_combine",
    "kendall_tau_b",
    "kendall_test",
    "normalization_bounds",
    "patterns",
    "rkl",
    "rnd",
    "rrd",
    "synth",
]
