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

#include "iasim/csit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "iasim/errors.hpp"

namespace iasim {

CsitProfile CsitProfile::uniform(int users, double value, CsitModel model) {
    CsitProfile p;
    p.K = users;
    p.A.assign(static_cast<std::size_t>(users * users * users), value);
    p.model = model;
    return p;
}

void CsitProfile::validate() const {
    require(K > 0 && A.size() == static_cast<std::size_t>(K * K * K), ErrorCode::InvalidArgument,
            "csit profile: expected K^3 scaling exponents");
    for (double a : A)
        require(a >= 0.0, ErrorCode::InvalidArgument, "csit profile: scaling exponents must be >= 0");
    require(C > 0.0 && std::isfinite(C), ErrorCode::InvalidArgument, "csit profile: C must be positive");
    require(b_max >= 0 && b_max <= 40, ErrorCode::InvalidArgument, "csit profile: b_max out of range");
}

namespace csit {

namespace {

// Fills `out` (column-major, rows*cols) with i.i.d. CN(0, 1) draws.
void draw_gaussian(CMatrix& out, RngStream& rng) {
    for (Eigen::Index c = 0; c < out.cols(); ++c)
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            out(r, c) = rng.complex_normal();
}

void to_codeword(CMatrix& g) {
    const cdouble first = g(0, 0);
    const double mag = std::abs(first);
    const cdouble rot = mag > 0.0 ? std::conj(first) / mag : cdouble(1.0, 0.0);
    g *= rot / g.norm();
    g(0, 0) = cdouble(std::abs(g(0, 0)), 0.0);
}

} // namespace

double sigma_from_bits(int bits, int N, int M, double C) {
    require(bits >= 0, ErrorCode::InvalidArgument, "sigma_from_bits: negative bit count");
    require(N * M >= 2, ErrorCode::InvalidArgument, "sigma_from_bits: need N*M >= 2");
    return std::sqrt(C * std::exp2(-static_cast<double>(bits) / (N * M - 1)));
}

int bits_from_scaling(double A, double P, int N, int M) {
    require(P >= 1.0, ErrorCode::InvalidArgument, "bits_from_scaling: need P >= 1");
    require(A >= 0.0 && std::isfinite(A), ErrorCode::InvalidArgument, "bits_from_scaling: A must be finite and >= 0");
    const double bits = std::round(A * (N * M - 1) * std::log2(P));
    require(bits < 2.0e9, ErrorCode::InvalidArgument, "bits_from_scaling: bit budget overflows");
    return static_cast<int>(bits);
}

double sigma_from_scaling(double A, double P, double C) {
    require(P >= 1.0, ErrorCode::InvalidArgument, "sigma_from_scaling: need P >= 1");
    require(A >= 0.0, ErrorCode::InvalidArgument, "sigma_from_scaling: A must be >= 0");
    if (std::isinf(A))
        return 0.0;
    return std::sqrt(C * std::pow(P, -A));
}

CMatrix draw_codeword(int rows, int cols, RngStream& rng) {
    CMatrix g(rows, cols);
    draw_gaussian(g, rng);
    to_codeword(g);
    return g;
}

Quantized rvq_search(const CMatrix& tilde, std::span<const CMatrix> codebook) {
    require(!codebook.empty(), ErrorCode::InvalidArgument, "rvq_search: empty codebook");
    Quantized best{codebook.front(), (tilde - codebook.front()).norm()};
    for (std::size_t w = 1; w < codebook.size(); ++w) {
        const double dist = (tilde - codebook[w]).norm();
        if (dist < best.distortion)
            best = {codebook[w], dist};
    }
    return best;
}

Quantized rvq_quantize(const NormalizedLink& link, int bits, RngStream& rng, int b_max) {
    if (bits < 0)
        throw Error(ErrorCode::InvalidArgument, "rvq_quantize: negative bit count");
    if (bits > b_max)
        throw CodebookTooLarge("rvq_quantize: " + std::to_string(bits) + " bits exceeds the limit of " + std::to_string(b_max));

    const CMatrix& x = link.tilde;
    const std::uint64_t words = std::uint64_t{1} << bits;

    // ||x - w||^2 = ||x||^2 + 1 - 2 Re<x, w> with w = g conj(g_1) / (|g_1| ||g||),
    // so only the best raw draw is kept and rotated at the end.
    CMatrix g(x.rows(), x.cols());
    CMatrix best_raw;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::uint64_t w = 0; w < words; ++w) {
        draw_gaussian(g, rng);
        const cdouble* gp = g.data();
        const cdouble* xp = x.data();
        cdouble inner = 0.0;
        double g_sq = 0.0;
        for (Eigen::Index e = 0; e < g.size(); ++e) {
            inner += xp[e] * std::conj(gp[e]);
            g_sq += std::norm(gp[e]);
        }
        const double mag = std::abs(gp[0]);
        const cdouble rot = mag > 0.0 ? gp[0] / mag : cdouble(1.0, 0.0);
        const double score = (inner * rot).real() / std::sqrt(g_sq);
        if (score > best_score) {
            best_score = score;
            best_raw = g;
        }
    }
    to_codeword(best_raw);
    return {best_raw, (x - best_raw).norm()};
}

CMatrix gaussian_perturb(const NormalizedLink& link, double sigma, RngStream& rng, ErrorNorm error_norm) {
    require(sigma >= 0.0, ErrorCode::InvalidArgument, "gaussian_perturb: sigma must be >= 0");
    if (sigma == 0.0)
        return link.tilde;
    CMatrix noise(link.tilde.rows(), link.tilde.cols());
    draw_gaussian(noise, rng);
    const double entry_scale = error_norm == ErrorNorm::Unit ? 1.0 / std::sqrt(static_cast<double>(noise.size())) : 1.0;
    return link.tilde + (sigma * entry_scale) * noise;
}

CsitEstimate make_estimate(const MultiUserChannel& channel, const CsitProfile& profile, double P,
                           const StreamKey& key, int owner) {
    const int K = channel.dims.K;
    require(profile.K == K, ErrorCode::DimensionMismatch, "make_estimate: profile and channel disagree on K");
    require(owner >= 0 && owner < K, ErrorCode::InvalidArgument, "make_estimate: owner out of range");

    CsitEstimate est{owner, LinkGrid(K), std::vector<double>(static_cast<std::size_t>(K * K), 0.0)};
    for (int i = 0; i < K; ++i) {
        for (int k = 0; k < K; ++k) {
            const NormalizedLink link = channel::normalize_link(channel.links(i, k));
            const double A = profile.at(i, k, owner);
            auto& sigma = est.sigmas[static_cast<std::size_t>(i * K + k)];
            if (std::isinf(A)) {
                est.links(i, k) = link.tilde;
                continue;
            }
            RngStream rng(key.child({static_cast<std::uint64_t>(owner), static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)}));
            if (profile.model == CsitModel::Gaussian) {
                sigma = sigma_from_scaling(A, P, profile.C);
                est.links(i, k) = gaussian_perturb(link, sigma, rng, profile.error_norm);
            } else {
                const int rows = static_cast<int>(link.tilde.rows());
                const int cols = static_cast<int>(link.tilde.cols());
                const int bits = bits_from_scaling(A, P, rows, cols);
                sigma = sigma_from_bits(bits, rows, cols, profile.C);
                est.links(i, k) = rvq_quantize(link, bits, rng, profile.b_max).word;
            }
        }
    }
    return est;
}

std::vector<CsitEstimate> make_estimates(const MultiUserChannel& channel, const CsitProfile& profile,
                                         double P, const StreamKey& key) {
    std::vector<CsitEstimate> out;
    out.reserve(static_cast<std::size_t>(channel.dims.K));
    for (int j = 0; j < channel.dims.K; ++j)
        out.push_back(make_estimate(channel, profile, P, key, j));
    return out;
}

} // namespace csit
} // namespace iasim
