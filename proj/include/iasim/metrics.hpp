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

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "iasim/channel.hpp"
#include "iasim/numkit.hpp"

namespace iasim {

struct RatePoint {
    double snr_db = 0.0;
    std::vector<double> per_user_rate;   // bits per channel use, trial mean
    std::vector<double> per_user_stderr; // standard error of that mean
};

struct DofEstimate {
    std::vector<double> per_user_slope;
    std::pair<double, double> window_db{0.0, 0.0};
    std::vector<double> r2;
};

struct PrecoderError {
    double frob_sq = 0.0;    // ||u - u_star||_F^2 of the canonical forms
    double aligned_sq = 0.0; // same after matching each column's phase to u_star
    double chordal_sq = 0.0; // basis-free subspace distance squared
};

namespace metrics {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// log2 |I + P Rbar^{-1} G^H H_ii U_i U_i^H H_ii^H G| with
// Rbar = I + P sum_{l != i} G^H H_il U_l U_l^H H_il^H G, on the channel as given.
// Evaluated as log2|Rbar + P S| - log2|Rbar| with Cholesky factors.
double rate_user(const MultiUserChannel& channel, std::span<const CMatrix> precoders,
                 std::span<const CMatrix> filters, double P, int user);

// sum_i sum_{j != i} ||G_i^H H_ij U_j||_F^2.
double leakage(const LinkGrid& links, std::span<const CMatrix> precoders, std::span<const CMatrix> filters);
double leakage(const MultiUserChannel& channel, std::span<const CMatrix> precoders, std::span<const CMatrix> filters);

PrecoderError precoder_error(const CMatrix& u, const CMatrix& u_star);

// Least-squares slope of rate against log2(P) over the top `window_points` SNR points.
DofEstimate dof_slope(std::span<const RatePoint> points, int window_points);

// Orthonormal basis of the MMSE filter span, R_in^{-1} H_ii U_i, scaled to unit Frobenius norm.
std::vector<CMatrix> mmse_filters(const MultiUserChannel& channel, std::span<const CMatrix> precoders, double P);

} // namespace metrics
} // namespace iasim
