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

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "iasim/channel.hpp"
#include "iasim/rng.hpp"

namespace iasim {

enum class CsitModel { Gaussian, Rvq };

// Unit: error entries have variance 1/(N M), so E||sigma N||_F^2 = sigma^2.
// PerEntry: error entries are CN(0, 1), i.e. N M times more error energy.
enum class ErrorNorm { Unit, PerEntry };

// Per-transmitter CSIT scaling exponents. at(i, k, j) is the accuracy of TX j's
// estimate of the link from TX k to RX i. +inf marks a perfectly known link.
struct CsitProfile {
    int K = 0;
    std::vector<double> A; // K*K*K, index (i*K + k)*K + j
    CsitModel model = CsitModel::Gaussian;
    double C = 1.0;
    ErrorNorm error_norm = ErrorNorm::Unit;
    int b_max = 24;

    static CsitProfile uniform(int users, double value, CsitModel model = CsitModel::Gaussian);

    double& at(int i, int k, int j) { return A[index(i, k, j)]; }
    double at(int i, int k, int j) const { return A[index(i, k, j)]; }

    // Throws InvalidArgument on negative/NaN exponents, C <= 0 or a size mismatch.
    void validate() const;

    bool operator==(const CsitProfile&) const = default;

private:
    std::size_t index(int i, int k, int j) const { return static_cast<std::size_t>((i * K + k) * K + j); }
};

inline constexpr double kPerfectLink = std::numeric_limits<double>::infinity();

// TX j's view of the whole channel.
struct CsitEstimate {
    int owner = 0;
    LinkGrid links;
    std::vector<double> sigmas; // K*K, index i*K + k

    double sigma(int i, int k) const { return sigmas[static_cast<std::size_t>(i * links.users() + k)]; }
};

namespace csit {

// sigma = sqrt(C 2^{-B/(N M - 1)}).
double sigma_from_bits(int bits, int N, int M, double C = 1.0);

// round(A (N M - 1) log2 P). A = +inf has no finite bit budget and throws.
int bits_from_scaling(double A, double P, int N, int M);

// sigma = sqrt(C P^{-A}); 0 for A = +inf.
double sigma_from_scaling(double A, double P, double C = 1.0);

// Isotropic unit-norm N x M codeword with vec(W)_1 real and nonnegative.
CMatrix draw_codeword(int rows, int cols, RngStream& rng);

struct Quantized {
    CMatrix word;
    double distortion = 0.0; // ||tilde - word||_F
};

// Exhaustive nearest-codeword search; the first of equally distant words wins.
Quantized rvq_search(const CMatrix& tilde, std::span<const CMatrix> codebook);

// Streams 2^bits codewords from rng and keeps the nearest one. Nothing is
// materialised, so memory stays flat. Throws CodebookTooLarge if bits > b_max.
Quantized rvq_quantize(const NormalizedLink& link, int bits, RngStream& rng, int b_max = 24);

// tilde + sigma N, N i.i.d. complex Gaussian scaled per error_norm; not renormalised.
CMatrix gaussian_perturb(const NormalizedLink& link, double sigma, RngStream& rng,
                         ErrorNorm error_norm = ErrorNorm::Unit);

// TX `owner`'s estimate. Link (i, k) noise comes from the stream key.child({owner, i, k}),
// so each TX's estimate depends only on its own streams.
CsitEstimate make_estimate(const MultiUserChannel& channel, const CsitProfile& profile, double P,
                           const StreamKey& key, int owner);

// All K estimates.
std::vector<CsitEstimate> make_estimates(const MultiUserChannel& channel, const CsitProfile& profile,
                                         double P, const StreamKey& key);

} // namespace csit
} // namespace iasim
