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

#include "iasim/errors.hpp"
#include "iasim/stats.hpp"

using namespace iasim;

TEST_SUITE("stats") {

TEST_CASE("compensated sum keeps small addends") {
    CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i)
        s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1000.0);
}

TEST_CASE("compensated sum is order insensitive on a mixed-scale set") {
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i)
        v.push_back(std::pow(-1.0, i) * std::pow(10.0, i % 17) / (i + 1));
    CompensatedSum fwd, rev;
    for (double x : v)
        fwd.add(x);
    for (auto it = v.rbegin(); it != v.rend(); ++it)
        rev.add(*it);
    CHECK(std::abs(fwd.value() - rev.value()) <= 1e-9 * std::abs(fwd.value()));
}

TEST_CASE("mean_stat") {
    const std::vector<double> v{1, 2, 3, 4};
    const auto m = mean_stat(v);
    CHECK(m.mean == 2.5);
    CHECK(m.count == 4);
    CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(mean_stat(std::vector<double>{}).count == 0);
    CHECK(mean_stat(std::vector<double>{7.0}).std_error == 0.0);
}

TEST_CASE("linear_fit") {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    const auto f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(linear_fit(x, std::vector<double>{4, 4, 4, 4}).r2 == 1.0);
    CHECK_THROWS_AS(linear_fit(std::vector<double>{1}, std::vector<double>{1}), Error);
    CHECK_THROWS_AS(linear_fit(std::vector<double>{1, 1}, std::vector<double>{1, 2}), Error);
    CHECK_THROWS_AS(linear_fit(x, std::vector<double>{1, 2}), Error);
}
}
