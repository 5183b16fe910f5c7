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
#include <functional>
#include <string>
#include <vector>

namespace iasim {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::size_t failures() const;
};

struct ValidationOptions {
    std::uint64_t seed = 20130601;
    int trials = 0; // > 0 replaces every randomized check's instance count
};

// Runs the per-module invariant suites. Never throws for a failed check; an
// exception inside a check is recorded as that check's failure.
ValidationReport run_validation(const ValidationOptions& options = {},
                                const std::function<void(const CheckResult&)>& on_check = {});

} // namespace iasim
