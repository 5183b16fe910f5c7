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
#include <vector>

#include "iasim/channel.hpp"
#include "iasim/csit.hpp"
#include "iasim/errors.hpp"
#include "iasim/ia3.hpp"
#include "iasim/metrics.hpp"
#include "iasim/stats.hpp"

using namespace iasim;

namespace {

const Dims kSquare = Dims::square(3, 4, 2);

CMatrix random_unit(RngStream& rng, int rows, int cols) {
    CMatrix a(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            a(r, c) = rng.complex_normal();
    return a / a.norm();
}

std::vector<RatePoint> trace(const std::vector<double>& db, double (*f)(double)) {
    std::vector<RatePoint> out;
    for (double x : db)
        out.push_back({x, {f(std::pow(10.0, x / 10.0))}, {0.0}});
    return out;
}

// log2 det(I + P Rbar^-1 S) through a plain LU determinant.
double direct_rate(const MultiUserChannel& ch, const std::vector<CMatrix>& u, const std::vector<CMatrix>& g, double P, int i) {
    const auto ii = static_cast<std::size_t>(i);
    CMatrix rbar = CMatrix::Identity(g[ii].cols(), g[ii].cols());
    for (int l = 0; l < 3; ++l)
        if (l != i) {
            const CMatrix a = g[ii].adjoint() * ch.links(i, l) * u[static_cast<std::size_t>(l)];
            rbar += P * a * a.adjoint();
        }
    const CMatrix b = g[ii].adjoint() * ch.links(i, i) * u[ii];
    const CMatrix m = CMatrix::Identity(rbar.rows(), rbar.cols()) + P * rbar.inverse() * b * b.adjoint();
    return std::log2(std::abs(m.determinant()));
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("rate is zero at zero power") {
    const auto ch = channel::generate_channel(kSquare, 1, 0);
    const auto sol = ia3::solve_perfect(ch, 2);
    for (int i = 0; i < 3; ++i)
        CHECK(metrics::rate_user(ch, sol.precoders, sol.filters, 0.0, i) == 0.0);
    CHECK_THROWS_AS(metrics::rate_user(ch, sol.precoders, sol.filters, -1.0, 0), Error);
    CHECK_THROWS_AS(metrics::rate_user(ch, sol.precoders, sol.filters, 1.0, 3), Error);
}

TEST_CASE("rate without interference reduces to the single-user log-det") {
    for (int t = 0; t < 20; ++t) {
        const auto ch = channel::generate_channel(kSquare, 2, static_cast<std::uint64_t>(t));
        const auto sol = ia3::solve_perfect(ch, 2);
        for (double P : {1.0, 1e3, 1e6})
            for (int i = 0; i < 3; ++i) {
                const CMatrix b = sol.filters[i].adjoint() * ch.links(i, i) * sol.precoders[i];
                const double expected = std::log2(std::abs((CMatrix::Identity(2, 2) + P * b * b.adjoint()).determinant()));
                CHECK(metrics::rate_user(ch, sol.precoders, sol.filters, P, i) ==
                      doctest::Approx(expected).epsilon(1e-9));
            }
    }
}

TEST_CASE("scalar interference channel") {
    const cdouble c(0.3, -0.4);
    MultiUserChannel ch{Dims{2, {1, 1}, {1, 1}, {1, 1}}, LinkGrid(2)};
    ch.links(0, 0) = CMatrix::Constant(1, 1, 1.0);
    ch.links(0, 1) = CMatrix::Constant(1, 1, c);
    ch.links(1, 0) = CMatrix::Constant(1, 1, 0.7);
    ch.links(1, 1) = CMatrix::Constant(1, 1, 2.0);
    const std::vector<CMatrix> one(2, CMatrix::Constant(1, 1, 1.0));
    for (double P : {0.5, 10.0, 1e4}) {
        const double expected = std::log2(1.0 + P / (1.0 + P * std::norm(c)));
        CHECK(metrics::rate_user(ch, one, one, P, 0) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("rate matches a direct determinant with interference") {
    RngStream rng(StreamKey(3));
    for (int t = 0; t < 30; ++t) {
        const auto ch = channel::generate_channel(kSquare, 3, static_cast<std::uint64_t>(t));
        std::vector<CMatrix> u, g;
        for (int j = 0; j < 3; ++j) {
            u.push_back(random_unit(rng, 4, 2));
            g.push_back(random_unit(rng, 4, 2));
        }
        for (double P : {1.0, 1e2, 1e5})
            for (int i = 0; i < 3; ++i)
                CHECK(metrics::rate_user(ch, u, g, P, i) == doctest::Approx(direct_rate(ch, u, g, P, i)).epsilon(1e-9));
    }
}

TEST_CASE("rate is nondecreasing in P without leakage") {
    for (int t = 0; t < 20; ++t) {
        const auto ch = channel::generate_channel(kSquare, 4, static_cast<std::uint64_t>(t));
        const auto sol = ia3::solve_perfect(ch, 2);
        for (int i = 0; i < 3; ++i) {
            double prev = 0.0;
            for (int db = 0; db <= 80; db += 5) {
                const double r = metrics::rate_user(ch, sol.precoders, sol.filters, metrics::db_to_linear(db), i);
                CHECK(r >= prev);
                prev = r;
            }
        }
    }
}

TEST_CASE("mmse receiver never loses to the zero-forcing filter") {
    RngStream rng(StreamKey(5));
    for (int t = 0; t < 30; ++t) {
        const auto ch = channel::generate_channel(kSquare, 5, static_cast<std::uint64_t>(t));
        const auto sol = ia3::solve_perfect(ch, 2);
        std::vector<CMatrix> u(sol.precoders.begin(), sol.precoders.end());
        if (t % 2)
            for (auto& x : u)
                x = random_unit(rng, 4, 2);
        for (double P : {1.0, 1e2, 1e4}) {
            const auto g = metrics::mmse_filters(ch, u, P);
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(g[static_cast<std::size_t>(i)].norm() - 1.0) <= 1e-12);
                CHECK(metrics::rate_user(ch, u, g, P, i) >=
                      metrics::rate_user(ch, u, sol.filters, P, i) - 1e-9);
            }
        }
    }
}

TEST_CASE("leakage") {
    const auto ch = channel::generate_channel(kSquare, 6, 0);
    const auto sol = ia3::solve_perfect(ch, 2);
    CHECK(metrics::leakage(channel::normalized_links(ch), sol.precoders, sol.filters) <= 1e-18);

    RngStream rng(StreamKey(6));
    std::vector<CMatrix> u, g;
    for (int j = 0; j < 3; ++j) {
        u.push_back(random_unit(rng, 4, 2));
        g.push_back(random_unit(rng, 4, 2));
    }
    const double base = metrics::leakage(ch, u, g);
    CHECK(base > 0.0);

    // scaling H_{1,2} by c scales only that term by |c|^2
    auto scaled = ch;
    const cdouble c(1.5, -2.0);
    scaled.links(0, 1) *= c;
    const double term = (g[0].adjoint() * ch.links(0, 1) * u[1]).squaredNorm();
    CHECK(metrics::leakage(scaled, u, g) == doctest::Approx(base + (std::norm(c) - 1.0) * term).epsilon(1e-12));
}

TEST_CASE("leakage of distributed precoders decays like the CSIT error") {
    const double power[] = {1e2, 1e3, 1e4, 1e5, 1e6};
    std::vector<double> x, y;
    for (double P : power) {
        std::vector<double> values;
        int used = 0;
        for (int t = 0; used < 300; ++t) {
            const auto ch = channel::generate_channel(kSquare, 7, static_cast<std::uint64_t>(t));
            if (!ia3::conditioning_filter(ch, 0.05))
                continue;
            ++used;
            const auto perfect = ia3::solve_perfect(ch, 2);
            const auto est = csit::make_estimates(ch, CsitProfile::uniform(3, 1.0), P, StreamKey(7).child(static_cast<std::uint64_t>(t)));
            const auto dist = ia3::solve_distributed(est, 2);
            REQUIRE(dist.ok());
            values.push_back(metrics::leakage(channel::normalized_links(ch), dist.used_precoders, perfect.filters));
        }
        x.push_back(std::log10(P));
        y.push_back(std::log10(mean_stat(values).mean));
    }
    CHECK(linear_fit(x, y).slope == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("precoder_error") {
    RngStream rng(StreamKey(8));
    const CMatrix u = random_unit(rng, 4, 2);
    const auto same = metrics::precoder_error(u, u);
    CHECK(same.frob_sq == 0.0);
    CHECK(same.aligned_sq <= 1e-15);
    CHECK(same.chordal_sq <= 1e-20);

    // same span, different basis
    CMatrix rot(2, 2);
    rot << std::cos(0.4), -std::sin(0.4), std::sin(0.4), std::cos(0.4);
    const auto turned = metrics::precoder_error(u * rot, u);
    CHECK(turned.chordal_sq <= 1e-20);
    CHECK(turned.frob_sq > 1e-3);

    // a column phase flip only shows in the canonical-form distance
    CMatrix flipped = u;
    flipped.col(1) *= -1.0;
    const auto flip = metrics::precoder_error(flipped, u);
    CHECK(flip.frob_sq == doctest::Approx(4.0 * u.col(1).squaredNorm()));
    CHECK(flip.aligned_sq <= 1e-15);
    CHECK(flip.chordal_sq <= 1e-20);

    CHECK_THROWS_AS(metrics::precoder_error(u, random_unit(rng, 4, 1)), Error);
}

TEST_CASE("canonical precoder error stays within twice the chordal error") {
    int used = 0;
    for (int t = 0; used < 100; ++t) {
        const auto ch = channel::generate_channel(kSquare, 9, static_cast<std::uint64_t>(t));
        if (!ia3::conditioning_filter(ch, 0.05))
            continue;
        ++used;
        const auto perfect = ia3::solve_perfect(ch, 2);
        const auto est = csit::make_estimate(ch, CsitProfile::uniform(3, 1.0), 1e8, StreamKey(9).child(static_cast<std::uint64_t>(t)), 0);
        const auto sol = ia3::solve_links(est.links, 2);
        const auto err = metrics::precoder_error(sol.precoders[0], perfect.precoders[0]);
        CHECK(err.frob_sq <= 2.0 * err.chordal_sq + 1e-6);
    }
}

TEST_CASE("dof_slope") {
    const std::vector<double> db{0, 10, 20, 30, 40, 50, 60};
    auto two = metrics::dof_slope(trace(db, [](double P) { return 2.0 * std::log2(P); }), 3);
    CHECK(two.per_user_slope[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(two.r2[0] == doctest::Approx(1.0));
    CHECK(two.window_db == std::pair<double, double>{40.0, 60.0});

    auto flat = metrics::dof_slope(trace(db, [](double) { return 3.5; }), 3);
    CHECK(std::abs(flat.per_user_slope[0]) <= 1e-12);

    const std::vector<double> high{40, 50, 60};
    auto half = metrics::dof_slope(trace(high, [](double P) { return std::log2(1.0 + std::sqrt(P)); }), 3);
    CHECK(std::abs(half.per_user_slope[0] - 0.5) <= 0.02);

    CHECK_THROWS_AS(metrics::dof_slope(trace({10.0}, [](double) { return 1.0; }), 2), Error);
    CHECK_THROWS_AS(metrics::dof_slope(trace(db, [](double) { return 1.0; }), 1), Error);
    auto unsorted = trace(db, [](double) { return 1.0; });
    std::swap(unsorted[1], unsorted[2]);
    CHECK_THROWS_AS(metrics::dof_slope(unsorted, 3), Error);
}

TEST_CASE("dof_slope is linear in the traces") {
    RngStream rng(StreamKey(10));
    std::vector<RatePoint> pts;
    for (int db = 0; db <= 60; db += 10) {
        const double a = rng.normal() + 0.3 * db, b = rng.uniform() * db;
        pts.push_back({static_cast<double>(db), {a, b, a + b}, {0, 0, 0}});
    }
    for (int w = 2; w <= 7; ++w) {
        const auto dof = metrics::dof_slope(pts, w);
        CHECK(dof.per_user_slope[2] == doctest::Approx(dof.per_user_slope[0] + dof.per_user_slope[1]).epsilon(1e-12));
    }
}
}
