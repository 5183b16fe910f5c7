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

#include <string>

#include "iasim/errors.hpp"
#include "iasim/scenario.hpp"

using namespace iasim;

namespace {

ErrorCode code_of(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("parse succeeded: " << text);
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal file") {
    const Scenario s = parse_scenario("snr_grid_db = 0:10:30\n");
    CHECK(s.dims == Dims::square(3, 4, 2));
    CHECK(s.snr_grid_db == std::vector<double>{0, 10, 20, 30});
    CHECK_FALSE(s.csit.has_value());
    CHECK(s.receiver == Receiver::PerfectIa);
    CHECK(s.dof_window == 3);
}

TEST_CASE("weak link profile in a short file") {
    const Scenario s = parse_scenario(R"(
# one weak link
name = weak
K = 3
M = 4
N = 4, 4, 4
d = 2
snr_grid_db = 0, 20, 40
trials = 10
seed = 5
csit = gaussian
error_norm = per_entry
A.default = 1
A.3.2.2 = 0.5   # TX2's view of H32
A.3.2.3 = 0
)");
    REQUIRE(s.csit.has_value());
    CHECK(*s.csit == [] {
        auto p = single_weak_link_profile();
        p.error_norm = ErrorNorm::PerEntry;
        return p;
    }());
    CHECK(s.error_norm == ErrorNorm::PerEntry);
    CHECK(s.seed == 5);
    CHECK(s.trials == 10);
}

TEST_CASE("text form round trips") {
    Scenario s = golden_scenario();
    CHECK(parse_scenario(s.to_text()) == s);
    s.csit = single_weak_link_profile();
    s.csit->at(0, 0, 0) = kPerfectLink;
    s.csit->C = 0.25;
    s.csit->model = CsitModel::Rvq;
    s.receiver = Receiver::Mmse;
    s.filter_eps = 0.05;
    s.snr_grid_db = {1.0 / 3.0, 0.5, 7};
    CHECK(parse_scenario(s.to_text()) == s);
    CHECK(parse_scenario(s.to_text()).hash() == s.hash());
    CHECK(golden_scenario().hash() != s.hash());
}

TEST_CASE("golden scenario") {
    const Scenario g = golden_scenario();
    CHECK(g.dims == Dims::square(3, 4, 2));
    CHECK(g.snr_grid_db == std::vector<double>{0, 10, 20, 30, 40, 50, 60});
    CHECK(g.trials == 2000);
    CHECK_FALSE(g.csit.has_value());
}

TEST_CASE("errors carry line numbers") {
    try {
        parse_scenario("snr_grid_db = 0:10:20\nbogus = 1\n");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("rejected inputs") {
    CHECK(code_of("trials = 1\ntrials = 2\n") == ErrorCode::ParseError);
    CHECK(code_of("snr_grid_db = 10, 0\n") == ErrorCode::ParseError);
    CHECK(code_of("trials = 0\n") == ErrorCode::ParseError);
    CHECK(code_of("A.1.1.1 = 1\n") == ErrorCode::ParseError);
    CHECK(code_of("csit = gaussian\nA.4.1.1 = 1\n") == ErrorCode::ParseError);
    CHECK(code_of("csit = gaussian\nA.1.1.1 = -1\n") == ErrorCode::ParseError);
    CHECK(code_of("csit = magic\n") == ErrorCode::ParseError);
    CHECK(code_of("receiver = oracle\n") == ErrorCode::ParseError);
    CHECK(code_of("M = 4, 4\n") == ErrorCode::ParseError);
    CHECK(code_of("trials = 12x\n") == ErrorCode::ParseError);
    CHECK(code_of("no equals sign\n") == ErrorCode::ParseError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.scn"), Error);
}

TEST_CASE("scenario validation") {
    Scenario s = golden_scenario();
    s.trials = 0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = golden_scenario();
    s.snr_grid_db = {0, 10, 10};
    CHECK_THROWS_AS(s.validate(), Error);
    s = golden_scenario();
    s.csit = CsitProfile::uniform(2, 1.0);
    CHECK_THROWS_AS(s.validate(), Error);
}
}
