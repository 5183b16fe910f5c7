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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iasim/channel.hpp"
#include "iasim/csit.hpp"

namespace iasim {

enum class Receiver { PerfectIa, Mmse };

// One Monte-Carlo experiment. Text form (one `key = value` per line, `#` comments):
//
//   K = 3
//   M = 4                 # scalar, or one value per user: 4, 4, 4
//   N = 4
//   d = 2
//   snr_grid_db = 0:10:60 # start:step:stop, or a comma list
//   trials = 2000
//   seed = 20130601
//   receiver = perfect_ia # or mmse
//   csit = gaussian       # perfect | gaussian | rvq
//   csit.C = 1
//   csit.b_max = 24
//   error_norm = unit     # or per_entry
//   filter_eps = none     # or a positive real
//   dof_window = 3
//   A.default = 1
//   A.3.2.2 = 0.5         # A.i.k.j, 1-based: TX j's estimate of the link TX k -> RX i
//   A.3.2.3 = 0
struct Scenario {
    std::string name = "scenario";
    Dims dims = Dims::square(3, 4, 2);
    std::vector<double> snr_grid_db;
    int trials = 1;
    std::optional<CsitProfile> csit; // nullopt: perfect CSIT
    Receiver receiver = Receiver::PerfectIa;
    std::uint64_t seed = 1;
    std::optional<double> filter_eps;
    ErrorNorm error_norm = ErrorNorm::Unit;
    int dof_window = 3;

    // Throws InvalidArgument on a non-increasing grid, trials < 1, etc.
    void validate() const;

    // Canonical text form; parse_scenario(to_text()) reproduces the scenario.
    std::string to_text() const;

    // 64-bit FNV-1a of to_text().
    std::uint64_t hash() const;

    bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// M = N = 4, d = 2, 0..60 dB in 10 dB steps, 2000 trials, perfect CSIT.
Scenario golden_scenario();

// All exponents 1 except A_{3,2}^{(2)} = 0.5 and A_{3,2}^{(3)} = 0.
CsitProfile single_weak_link_profile();

std::string_view receiver_name(Receiver r) noexcept;
std::string_view error_norm_name(ErrorNorm e) noexcept;
std::string_view csit_model_name(CsitModel m) noexcept;

std::string hex64(std::uint64_t value);

} // namespace iasim
