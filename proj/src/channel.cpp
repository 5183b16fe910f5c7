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

#include "iasim/channel.hpp"

#include <cmath>
#include <string>

#include "iasim/errors.hpp"
#include "iasim/rng.hpp"

namespace iasim {

Dims Dims::square(int users, int antennas, int streams) {
    Dims dims;
    dims.K = users;
    dims.M.assign(static_cast<std::size_t>(users), antennas);
    dims.N.assign(static_cast<std::size_t>(users), antennas);
    dims.d.assign(static_cast<std::size_t>(users), streams);
    return dims;
}

void Dims::validate() const {
    require(K > 0, ErrorCode::InvalidArgument, "dims: K must be positive");
    const auto k = static_cast<std::size_t>(K);
    require(M.size() == k && N.size() == k && d.size() == k, ErrorCode::InvalidArgument,
            "dims: M, N and d must each have K = " + std::to_string(K) + " entries");
    for (std::size_t i = 0; i < k; ++i) {
        require(M[i] > 0 && N[i] > 0 && d[i] > 0, ErrorCode::InvalidArgument, "dims: antenna and stream counts must be positive");
        require(d[i] <= M[i] && d[i] <= N[i], ErrorCode::InvalidArgument, "dims: more streams than antennas");
    }
}

bool Dims::is_square_three_user() const {
    if (K != 3 || M.size() != 3 || N.size() != 3 || d.size() != 3)
        return false;
    for (int i = 0; i < 3; ++i)
        if (d[i] != d[0] || M[i] != 2 * d[i] || N[i] != 2 * d[i])
            return false;
    return d[0] > 0;
}

bool LinkGrid::operator==(const LinkGrid& other) const {
    if (K_ != other.K_)
        return false;
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const auto& a = links_[i];
        const auto& b = other.links_[i];
        if (a.rows() != b.rows() || a.cols() != b.cols() || a != b)
            return false;
    }
    return true;
}

CMatrix NormalizedLink::reconstruct() const {
    return (norm * std::polar(1.0, -phase)) * tilde;
}

namespace channel {

MultiUserChannel generate_channel(const Dims& dims, std::uint64_t seed, std::uint64_t trial) {
    dims.validate();
    MultiUserChannel out{dims, LinkGrid(dims.K)};
    const StreamKey trial_key = StreamKey(seed).child({domain::channel, trial});
    for (int i = 0; i < dims.K; ++i) {
        for (int k = 0; k < dims.K; ++k) {
            const int rows = dims.N[static_cast<std::size_t>(i)];
            const int cols = dims.M[static_cast<std::size_t>(k)];
            CMatrix h(rows, cols);
            for (std::uint64_t attempt = 0;; ++attempt) {
                RngStream rng(trial_key.child({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k), attempt}));
                // column-major fill so vec(H) is drawn in order
                for (int c = 0; c < cols; ++c)
                    for (int r = 0; r < rows; ++r)
                        h(r, c) = rng.complex_normal();
                if (numkit::min_singular_value(h) > numkit::kSingularTolerance)
                    break;
            }
            out.links(i, k) = std::move(h);
        }
    }
    return out;
}

NormalizedLink normalize_link(const CMatrix& h) {
    numkit::require_finite(h, "normalize_link");
    const double norm = h.norm();
    if (h.size() == 0 || norm == 0.0)
        throw Error(ErrorCode::InvalidArgument, "normalize_link: zero matrix");
    const cdouble first = h(0, 0);
    const double phase = (first == cdouble(0.0, 0.0)) ? 0.0 : -std::arg(first);
    NormalizedLink out;
    out.tilde = (std::polar(1.0, phase) / norm) * h;
    out.tilde(0, 0) = cdouble(std::abs(first) / norm, 0.0);
    out.phase = phase;
    out.norm = norm;
    return out;
}

LinkGrid normalized_links(const MultiUserChannel& channel) {
    const int K = channel.dims.K;
    LinkGrid out(K);
    for (int i = 0; i < K; ++i)
        for (int k = 0; k < K; ++k)
            out(i, k) = normalize_link(channel.links(i, k)).tilde;
    return out;
}

} // namespace channel
} // namespace iasim
