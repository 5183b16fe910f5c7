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
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace iasim {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The key is the
// 64-bit seed; counter words 2..3 hold the stream id, words 0..1 the block index.
// Streams with distinct ids never share a counter value.
class Philox4x32 {
public:
    using result_type = std::uint32_t;

    Philox4x32(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    result_type operator()() noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    // Raw block function, exposed for the known-answer test.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned next_ = 4;
};

// Hierarchical key: seed plus a hashed path, e.g. key.child(trial).child(tx).
class StreamKey {
public:
    explicit StreamKey(std::uint64_t seed) noexcept : seed_(seed), path_(0x9e3779b97f4a7c15ULL) {}

    StreamKey child(std::uint64_t index) const noexcept;
    StreamKey child(std::initializer_list<std::uint64_t> indices) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t path() const noexcept { return path_; }

private:
    StreamKey(std::uint64_t seed, std::uint64_t path) noexcept : seed_(seed), path_(path) {}

    std::uint64_t seed_;
    std::uint64_t path_;
};

// Top-level stream domains so that e.g. channel draws and estimation noise of the
// same trial never collide.
namespace domain {
inline constexpr std::uint64_t channel = 1;
inline constexpr std::uint64_t estimate = 2;
inline constexpr std::uint64_t codebook = 3;
inline constexpr std::uint64_t source = 4;
inline constexpr std::uint64_t perturbation = 5;
inline constexpr std::uint64_t validation = 6;
} // namespace domain

class RngStream {
public:
    explicit RngStream(const StreamKey& key) : engine_(key.seed(), key.path()) {}

    double uniform() { return uniform_(engine_); }
    double normal() { return normal_(engine_); }

    // Circularly-symmetric complex Gaussian, zero mean, E|z|^2 = 1.
    std::complex<double> complex_normal() {
        constexpr double s = 0.70710678118654752440;
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

    Philox4x32& engine() noexcept { return engine_; }

private:
    Philox4x32 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    boost::random::normal_distribution<double> normal_{0.0, 1.0}; // ziggurat
};

} // namespace iasim
