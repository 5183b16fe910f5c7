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

import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

import iasim

SMALL = """
name = smoke
K = 3
M = 4
N = 4
d = 2
snr_grid_db = 20:10:60
trials = 40
seed = 7
receiver = perfect_ia
csit = perfect
"""


def test_golden_text_round_trips():
    text = iasim.golden_scenario_text()
    assert iasim.canonical_scenario_text(text) == text


def test_sweep_slopes_and_outputs():
    r = iasim.run_sweep(SMALL)
    assert r.trials == 40
    assert len(r.points) == 5
    assert all(abs(k - 2.0) < 0.2 for k in r.dof_slope)
    csv = r.to_csv().splitlines()
    assert csv[0] == "snr_db,user,mean_rate,stderr,degenerate_fraction"
    assert len(csv) == 1 + 5 * 3
    root = ET.fromstring(r.to_svg("smoke").encode())
    assert root.tag.endswith("svg")
    assert "href" not in r.to_svg("smoke")


def test_sweep_is_deterministic():
    assert iasim.run_sweep(SMALL).digest() == iasim.run_sweep(SMALL).digest()
    assert iasim.run_sweep(SMALL, seed=8).digest() != iasim.run_sweep(SMALL).digest()


def test_perfect_solution_aligns():
    links = iasim.generate_channel(seed=3, trial=5)
    assert isinstance(links[0][1], np.ndarray)
    sol = iasim.solve_links(links, 2)
    assert iasim.leakage(links, sol["precoders"], sol["filters"]) < 1e-16
    for u in sol["precoders"]:
        assert math.isclose(np.linalg.norm(u), 1.0, abs_tol=1e-12)


def test_injected_errors_and_quantizer():
    r = iasim.prop2_experiment([1.0, 1.0, 1.0], SMALL)
    assert all(k > 1.5 for k in r.dof_slope)
    q = iasim.quantizer_study(2, 2, [3, 6, 9], 100, 1)
    assert q["mean_distortion_sq"][0] > q["mean_distortion_sq"][-1]


def test_errors_carry_codes():
    with pytest.raises(iasim.IasimError) as info:
        iasim.run_sweep("trials = -1\n")
    assert info.value.code in {"parse_error", "invalid_argument"}
    singular = [[np.zeros((4, 4), complex) for _ in range(3)] for _ in range(3)]
    with pytest.raises(iasim.IasimError) as info:
        iasim.solve_links(singular, 2)
    assert info.value.code == "singular_matrix"
