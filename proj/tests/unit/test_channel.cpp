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

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "iasim/channel.hpp"
#include "iasim/errors.hpp"

using namespace iasim;

TEST_SUITE("channel") {

TEST_CASE("dims") {
    const Dims d = Dims::square(3, 4, 2);
    CHECK(d.K == 3);
    CHECK(d.M == std::vector<int>{4, 4, 4});
    CHECK(d.is_square_three_user());
    CHECK_FALSE(Dims::square(3, 4, 1).is_square_three_user());
    CHECK_FALSE(Dims::square(2, 4, 2).is_square_three_user());
    Dims bad = d;
    bad.d[1] = 5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = d;
    bad.N.pop_back();
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("generate_channel shape and determinism") {
    const Dims d = Dims::square(3, 4, 2);
    const auto a = channel::generate_channel(d, 99, 5);
    const auto b = channel::generate_channel(d, 99, 5);
    const auto c = channel::generate_channel(d, 99, 6);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            CHECK(a.links(i, k).rows() == 4);
            CHECK(a.links(i, k).cols() == 4);
            CHECK(std::memcmp(a.links(i, k).data(), b.links(i, k).data(), 16 * sizeof(cdouble)) == 0);
        }
    CHECK_FALSE(a.links == c.links);

    Dims uneven{3, {2, 3, 4}, {5, 6, 7}, {1, 1, 1}};
    const auto u = channel::generate_channel(uneven, 1);
    CHECK(u.links(2, 0).rows() == 7);
    CHECK(u.links(2, 0).cols() == 2);
}

TEST_CASE("scalar link second moment") {
    const Dims d{1, {1}, {1}, {1}};
    double power = 0.0;
    cdouble mean = 0.0;
    const int n = 10000;
    for (int t = 0; t < n; ++t) {
        const cdouble h = channel::generate_channel(d, 2013, static_cast<std::uint64_t>(t)).links(0, 0)(0, 0);
        power += std::norm(h);
        mean += h;
    }
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(mean / double(n)) < 0.05);
}

TEST_CASE("normalize_link examples") {
    CMatrix h(2, 2);
    h << 2, 0, 0, 0;
    auto n = channel::normalize_link(h);
    CMatrix expected(2, 2);
    expected << 1, 0, 0, 0;
    CHECK(n.tilde == expected);
    CHECK(n.phase == 0.0);
    CHECK(n.norm == 2.0);

    h(0, 0) = cdouble(0, 2);
    n = channel::normalize_link(h);
    CHECK(std::abs(n.tilde(0, 0) - cdouble(1, 0)) < 1e-15);
    CHECK(n.tilde(0, 0).imag() == 0.0);
    CHECK(n.phase == doctest::Approx(-M_PI / 2));

    CHECK_THROWS_AS(channel::normalize_link(CMatrix::Zero(2, 2)), Error);
}

TEST_CASE("normalize_link properties on random links") {
    const Dims d = Dims::square(3, 4, 2);
    for (int t = 0; t < 50; ++t) {
        const auto ch = channel::generate_channel(d, 8, static_cast<std::uint64_t>(t));
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                const CMatrix& h = ch.links(i, k);
                const auto n = channel::normalize_link(h);
                CHECK(std::abs(n.tilde.norm() - 1.0) <= 1e-12);
                CHECK(n.tilde(0, 0).imag() == 0.0);
                CHECK(n.tilde(0, 0).real() >= 0.0);
                CHECK((n.reconstruct() - h).norm() <= 1e-12 * h.norm());
                CHECK((channel::normalize_link(n.tilde).tilde - n.tilde).norm() <= 1e-12);
                // phase/norm encode exactly the scalar removed
                CHECK((std::polar(1.0, n.phase) * h / n.norm - n.tilde).norm() <= 1e-14);
            }
    }
}

TEST_CASE("normalized_links matches per-link normalization") {
    const auto ch = channel::generate_channel(Dims::square(3, 4, 2), 4, 1);
    const LinkGrid g = channel::normalized_links(ch);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            CHECK(g(i, k) == channel::normalize_link(ch.links(i, k)).tilde);
}
}
