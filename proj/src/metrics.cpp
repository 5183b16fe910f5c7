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

#include "iasim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "iasim/errors.hpp"
#include "iasim/stats.hpp"

namespace iasim::metrics {

namespace {

double log2_det_hpd(const CMatrix& a) {
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() == Eigen::Success) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            acc += std::log2(llt.matrixLLT()(i, i).real());
        return 2.0 * acc;
    }
    // Only reachable through rounding on a numerically singular Rbar + P S.
    return std::log2(std::abs(Eigen::PartialPivLU<CMatrix>(a).determinant()));
}

void check_user_lists(const LinkGrid& links, std::span<const CMatrix> precoders, std::span<const CMatrix> filters) {
    const auto K = static_cast<std::size_t>(links.users());
    require(precoders.size() == K && filters.size() == K, ErrorCode::DimensionMismatch,
            "metrics: need one precoder and one filter per user");
}

} // namespace

double rate_user(const MultiUserChannel& channel, std::span<const CMatrix> precoders,
                 std::span<const CMatrix> filters, double P, int user) {
    const auto& links = channel.links;
    check_user_lists(links, precoders, filters);
    require(user >= 0 && user < links.users(), ErrorCode::InvalidArgument, "rate_user: user out of range");
    require(P >= 0.0, ErrorCode::InvalidArgument, "rate_user: P must be >= 0");

    const auto i = static_cast<std::size_t>(user);
    const CMatrix& g = filters[i];
    const Eigen::Index d = g.cols();
    CMatrix rbar = CMatrix::Identity(d, d);
    for (int l = 0; l < links.users(); ++l) {
        if (l == user)
            continue;
        const CMatrix a = g.adjoint() * links(user, l) * precoders[static_cast<std::size_t>(l)];
        rbar += P * (a * a.adjoint());
    }
    const CMatrix b = g.adjoint() * links(user, user) * precoders[i];
    const CMatrix total = rbar + P * (b * b.adjoint());
    return std::max(0.0, log2_det_hpd(total) - log2_det_hpd(rbar));
}

double leakage(const LinkGrid& links, std::span<const CMatrix> precoders, std::span<const CMatrix> filters) {
    check_user_lists(links, precoders, filters);
    CompensatedSum sum;
    for (int i = 0; i < links.users(); ++i)
        for (int j = 0; j < links.users(); ++j)
            if (i != j)
                sum.add((filters[static_cast<std::size_t>(i)].adjoint() * links(i, j) * precoders[static_cast<std::size_t>(j)]).squaredNorm());
    return sum.value();
}

double leakage(const MultiUserChannel& channel, std::span<const CMatrix> precoders, std::span<const CMatrix> filters) {
    return leakage(channel.links, precoders, filters);
}

PrecoderError precoder_error(const CMatrix& u, const CMatrix& u_star) {
    if (u.rows() != u_star.rows() || u.cols() != u_star.cols())
        throw Error(ErrorCode::DimensionMismatch, "precoder_error: shapes differ");
    PrecoderError out;
    out.frob_sq = (u - u_star).squaredNorm();
    double aligned = 0.0;
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        const double cross = std::abs(u.col(c).dot(u_star.col(c)));
        aligned += u.col(c).squaredNorm() + u_star.col(c).squaredNorm() - 2.0 * cross;
    }
    out.aligned_sq = std::max(0.0, aligned);
    const double chordal = numkit::chordal_distance(u, u_star);
    out.chordal_sq = chordal * chordal;
    return out;
}

DofEstimate dof_slope(std::span<const RatePoint> points, int window_points) {
    require(window_points >= 2, ErrorCode::InvalidArgument, "dof_slope: window needs at least 2 points");
    require(points.size() >= static_cast<std::size_t>(window_points), ErrorCode::InvalidArgument,
            "dof_slope: " + std::to_string(points.size()) + " points, window needs " + std::to_string(window_points));
    for (std::size_t p = 1; p < points.size(); ++p)
        require(points[p].snr_db > points[p - 1].snr_db, ErrorCode::InvalidArgument, "dof_slope: points must be sorted by SNR");

    const std::size_t first = points.size() - static_cast<std::size_t>(window_points);
    const std::size_t users = points.front().per_user_rate.size();
    std::vector<double> x;
    for (std::size_t p = first; p < points.size(); ++p)
        x.push_back(points[p].snr_db * std::log2(10.0) / 10.0);

    DofEstimate out;
    out.window_db = {points[first].snr_db, points.back().snr_db};
    for (std::size_t u = 0; u < users; ++u) {
        std::vector<double> y;
        for (std::size_t p = first; p < points.size(); ++p) {
            require(points[p].per_user_rate.size() == users, ErrorCode::DimensionMismatch, "dof_slope: ragged rate table");
            y.push_back(points[p].per_user_rate[u]);
        }
        const LinearFit fit = linear_fit(x, y);
        out.per_user_slope.push_back(fit.slope);
        out.r2.push_back(fit.r2);
    }
    return out;
}

std::vector<CMatrix> mmse_filters(const MultiUserChannel& channel, std::span<const CMatrix> precoders, double P) {
    const auto& links = channel.links;
    const int K = links.users();
    require(precoders.size() == static_cast<std::size_t>(K), ErrorCode::DimensionMismatch, "mmse_filters: one precoder per user");
    std::vector<CMatrix> out;
    for (int i = 0; i < K; ++i) {
        const Eigen::Index n = links(i, i).rows();
        CMatrix r = CMatrix::Identity(n, n);
        for (int l = 0; l < K; ++l) {
            if (l == i)
                continue;
            const CMatrix a = links(i, l) * precoders[static_cast<std::size_t>(l)];
            r += P * (a * a.adjoint());
        }
        const CMatrix w = r.llt().solve(links(i, i) * precoders[static_cast<std::size_t>(i)]);
        const CMatrix q = numkit::orthonormal_basis(w);
        out.push_back(q / std::sqrt(static_cast<double>(q.cols())));
    }
    return out;
}

} // namespace iasim::metrics
