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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "iasim/numkit.hpp"

namespace iasim {

// User count and per-user antenna/stream counts. Users are 0-based in the API
// and 1-based in files and on the command line.
struct Dims {
    int K = 0;
    std::vector<int> M; // transmit antennas per TX
    std::vector<int> N; // receive antennas per RX
    std::vector<int> d; // streams per user

    static Dims square(int users, int antennas, int streams);

    // Throws InvalidArgument unless every count is positive and the lists have K entries.
    void validate() const;

    // K = 3, M_i = N_i = 2 d_i, equal d: the setting the closed-form solver handles.
    bool is_square_three_user() const;

    bool operator==(const Dims&) const = default;
};

// K x K grid of matrices, entry (i, k) is the link from TX k to RX i.
class LinkGrid {
public:
    LinkGrid() = default;
    explicit LinkGrid(int users) : K_(users), links_(static_cast<std::size_t>(users * users)) {}

    int users() const noexcept { return K_; }

    CMatrix& operator()(int i, int k) { return links_[index(i, k)]; }
    const CMatrix& operator()(int i, int k) const { return links_[index(i, k)]; }

    bool operator==(const LinkGrid& other) const;

private:
    std::size_t index(int i, int k) const { return static_cast<std::size_t>(i * K_ + k); }

    int K_ = 0;
    std::vector<CMatrix> links_;
};

struct MultiUserChannel {
    Dims dims;
    LinkGrid links;
};

// e^{j phase} h / ||h||_F with vec(tilde)_1 real and nonnegative.
struct NormalizedLink {
    CMatrix tilde;
    double phase = 0.0;
    double norm = 0.0;

    CMatrix reconstruct() const;
};

namespace channel {

// Rayleigh fading: every entry i.i.d. CN(0, 1). Link (i, k) of trial t is drawn from
// the stream keyed (seed, trial, i, k), so trials can be generated in any order. A link
// whose smallest singular value falls below 1e-12 is redrawn.
MultiUserChannel generate_channel(const Dims& dims, std::uint64_t seed, std::uint64_t trial = 0);

NormalizedLink normalize_link(const CMatrix& h);

// Grid of normalized links tilde(H_{i,k}).
LinkGrid normalized_links(const MultiUserChannel& channel);

} // namespace channel
} // namespace iasim
