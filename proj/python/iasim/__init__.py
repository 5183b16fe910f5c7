# SPDX-License-Identifier: Apache-2.0
#
# iasim: closed-form interference alignment under distributed CSIT
# Copyright (C) 2026 The iasim authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Closed-form 3-user MIMO interference alignment with distributed CSIT."""

from ._core import (
    IasimError,
    RatePoint,
    SweepResult,
    canonical_scenario_text,
    chordal_distance,
    generate_channel,
    golden_scenario_text,
    leakage,
    prop2_experiment,
    quantizer_study,
    run_sweep,
    solve_links,
    validate,
)

__all__ = [
    "IasimError",
    "RatePoint",
    "SweepResult",
    "canonical_scenario_text",
    "chordal_distance",
    "generate_channel",
    "golden_scenario_text",
    "leakage",
    "prop2_experiment",
    "quantizer_study",
    "run_sweep",
    "solve_links",
    "validate",
]
