// SPDX-License-Identifier: Apache-2.0
//
// iasim: closed-form interference alignment under distributed CSIT
// Copyright (C) 2026 The iasim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "iasim/metrics.hpp"
#include "iasim/scenario.hpp"
#include "iasim/stats.hpp"

namespace iasim {

struct SweepResult {
    std::vector<RatePoint> points;           // one per grid entry
    DofEstimate dof;                         // empty when the grid is shorter than the window
    std::vector<double> degenerate_fraction; // per point
    std::vector<double> failed_fraction;     // per point
    std::size_t trials = 0;                  // channel realizations averaged
    std::size_t draws = 0;                   // realizations drawn, including filtered ones
    std::uint64_t scenario_hash = 0;

    // FNV-1a over every number in the result, for determinism checks.
    std::uint64_t digest() const;
};

// Per SNR point and trial: draw the channel, form the CSIT estimates, solve (perfect
// or distributed), evaluate each user's rate with the configured receiver, average.
// A point with more than 1% numerically failed trials throws SweepAborted.
SweepResult run_sweep(const Scenario& scenario);

// Perfect-CSIT solution with injected precoder errors:
// U_j = normalize_F(U_j* + P^{-beta_j / 2} E_j), E_j random with ||E_j||_F = 1.
SweepResult prop2_experiment(const std::array<double, 3>& beta, const Scenario& scenario);

struct QuantizerRow {
    int bits = 0;
    MeanStat distortion_sq;
};

struct QuantizerStudy {
    int N = 0;
    int M = 0;
    std::vector<QuantizerRow> rows;
    double exponent = 0.0; // slope of log2(mean distortion^2) against bits; NaN with < 2 rows
    double r2 = 0.0;
};

QuantizerStudy quantizer_study(int N, int M, std::span<const int> bits, int trials, std::uint64_t seed);

struct ScalingRow {
    double a_min = 0.0;
    std::vector<double> P;
    std::vector<MeanStat> frob_sq;    // canonical-form ||U1^(1) - U1*||_F^2
    std::vector<MeanStat> aligned_sq; // column phases matched to U1*
    std::vector<MeanStat> chordal_sq;
    double exponent_frob = 0.0; // slope of log E[.] against log P
    double exponent_aligned = 0.0;
    double exponent_chordal = 0.0;
    std::size_t failed = 0;
};

struct ScalingStudy {
    std::vector<ScalingRow> rows;
    std::size_t trials = 0;
    std::size_t draws = 0;
};

// For each A_min, sets every exponent to A_min (Gaussian model) and regresses the
// precoder error of TX 1 against P. P comes from the scenario's SNR grid; the
// scenario's filter_eps restricts the channels to H^eps.
ScalingStudy precoder_scaling_study(std::span<const double> a_min_values, const Scenario& scenario);

// Indices of the first `scenario.trials` channel draws that pass the H^eps filter
// (all of 0..trials-1 without a filter). Second member: total draws inspected.
std::pair<std::vector<std::uint64_t>, std::size_t> select_trials(const Scenario& scenario);

} // namespace iasim
